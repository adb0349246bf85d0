//! Actions of reflections on Picard lattices of blow-up models.

use std::cmp::Ordering;

use serde::Serialize;

use crate::algebra::{factor_over_rationals, isolate_real_roots, AlgebraicReal, RatMatrix, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardBasis {
    labels: Vec<String>,
}

impl PicardBasis {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::InvalidArgument(format!("duplicate basis label {l:?}")));
            }
        }
        Ok(PicardBasis { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Pullback/pushforward matrix acting on column vectors of class coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardAction {
    basis: PicardBasis,
    matrix: RatMatrix,
}

impl PicardAction {
    pub fn new(basis: PicardBasis, matrix: RatMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if matrix.rows() != basis.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: matrix.rows() });
        }
        if !matrix.is_integer() {
            return Err(Error::NonInteger);
        }
        Ok(PicardAction { basis, matrix })
    }

    pub fn basis(&self) -> &PicardBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn char_poly(&self) -> UniPoly {
        self.matrix.char_poly().expect("square by construction")
    }

    /// Whether the minimal polynomial is square-free over the complex numbers.
    pub fn is_diagonalizable(&self) -> Result<bool> {
        let m = self.matrix.minimal_poly()?;
        Ok(m.gcd(&m.derivative()).degree() == Some(0))
    }

    /// Largest absolute value of an eigenvalue. Only available when every
    /// eigenvalue is real.
    pub fn spectral_radius(&self) -> Result<AlgebraicReal> {
        let cp = self.char_poly();
        let mut real = 0;
        let mut best: Option<AlgebraicReal> = None;
        for (f, mult) in factor_over_rationals(&cp)? {
            let roots = isolate_real_roots(&f)?;
            real += roots.len() * mult;
            for r in roots {
                let abs = if r.compare_rational(&Default::default()) == Ordering::Less { negate(&r)? } else { r };
                if best.as_ref().is_none_or(|b| abs.compare(b) == Ordering::Greater) {
                    best = Some(abs);
                }
            }
        }
        if real != self.matrix.rows() {
            return Err(Error::NotCertifiable("characteristic polynomial has non-real roots".into()));
        }
        best.ok_or(Error::ZeroPolynomial)
    }
}

fn negate(r: &AlgebraicReal) -> Result<AlgebraicReal> {
    let reflected = UniPoly::new(
        r.poly().coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
    );
    let target = r.interval().neg();
    let mut roots = isolate_real_roots(&reflected)?;
    roots.retain(|z| *z.lo() <= target.hi && target.lo <= *z.hi());
    let mut eps = r.width();
    let mut r = r.clone();
    while roots.len() > 1 {
        eps = eps / crate::algebra::int(4);
        r = r.refine(&eps);
        let target = r.interval().neg();
        roots = roots.iter().map(|z| z.refine(&eps)).collect();
        roots.retain(|z| *z.lo() <= target.hi && target.lo <= *z.hi());
    }
    roots.pop().ok_or_else(|| Error::InconsistentState("negation not isolated".into()))
}

/// One reflection on the blow-up at `p` and along the surface of lines through `p`.
pub fn single_reflection_action() -> PicardAction {
    PicardAction::new(
        PicardBasis::new(["H~", "E~(p)", "F~(p)"]).unwrap(),
        RatMatrix::from_ints(&[&[2, 1, 0], &[-3, -2, 0], &[-1, -1, 1]]),
    )
    .unwrap()
}

/// Composition of reflections in two points of a line contained in a cubic threefold.
pub fn two_point_action() -> PicardAction {
    PicardAction::new(
        PicardBasis::new(["H", "P", "Q", "R"]).unwrap(),
        RatMatrix::from_ints(&[&[4, 2, 0, 1], &[0, 0, 1, 0], &[-6, -3, 0, -2], &[-3, -2, 0, 0]]),
    )
    .unwrap()
}

/// `a . b` on a shared basis.
pub fn compose(a: &PicardAction, b: &PicardAction) -> Result<PicardAction> {
    if a.basis != b.basis {
        return Err(Error::BasisMismatch);
    }
    Ok(PicardAction { basis: a.basis.clone(), matrix: a.matrix.mul_checked(&b.matrix)? })
}

/// Dynamical degrees `(lambda_1, lambda_2, lambda_3)` of a composition of
/// reflections in `n` general points of a smooth cubic threefold.
pub fn degree_tuple_generic(n: u32) -> Result<[AlgebraicReal; 3]> {
    let v = match n {
        0 => return Err(Error::InvalidArgument("at least one reflection point is required".into())),
        1 | 2 => 1,
        _ if n >= 63 => return Err(Error::InvalidArgument(format!("n = {n} overflows 2^n"))),
        _ => 1i64 << n,
    };
    let a = AlgebraicReal::from_int(v);
    Ok([a.clone(), a.clone(), a])
}
