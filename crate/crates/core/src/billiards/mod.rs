//! Exact pointwise reflection dynamics on cubic surfaces over the rationals.

pub mod check;
pub mod config;
pub mod mobius;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{fmt_rational, serde_rational};
use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

pub use check::{bad_points, check_configuration, check_seed, search_seeds, BadPointSet, CheckReport, CheckStatus, SeedSearch};
pub use config::{build_configuration, reflect_on_line, Configuration, Word};
pub use mobius::{attractor_analysis, return_map, AttractorReport, MobiusMap, ReturnMap};

/// Projective point with rational coordinates, scaled so the first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RationalPoint {
    #[serde(with = "serde_rational::vec")]
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let Some(k) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::InvalidArgument("all coordinates vanish".into()));
        };
        let s = coords[k].clone();
        Ok(RationalPoint { coords: coords.iter().map(|c| c / &s).collect() })
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `s * self + t * other`.
    pub fn combine(&self, s: &Rational, other: &RationalPoint, t: &Rational) -> Result<RationalPoint> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| s * a + t * b).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rational).collect()
    }
}

/// Zero set of a nonzero cubic form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicHypersurface {
    form: MultiPoly,
}

impl CubicHypersurface {
    pub fn new(form: MultiPoly) -> Result<Self> {
        if form.is_zero() || !form.is_homogeneous_of(3) {
            return Err(Error::InvalidArgument("expected a nonzero cubic form".into()));
        }
        Ok(CubicHypersurface { form })
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn nvars(&self) -> usize {
        self.form.nvars()
    }

    /// Dimension of the ambient projective space.
    pub fn ambient_dimension(&self) -> usize {
        self.nvars() - 1
    }

    pub fn eval(&self, p: &RationalPoint) -> Result<Rational> {
        self.form.eval(p.coords())
    }

    pub fn contains(&self, p: &RationalPoint) -> Result<bool> {
        Ok(self.eval(p)?.is_zero())
    }

    pub fn gradient_at(&self, p: &RationalPoint) -> Result<Vec<Rational>> {
        self.form.gradient().iter().map(|g| g.eval(p.coords())).collect()
    }

    pub fn is_smooth_at(&self, p: &RationalPoint) -> Result<bool> {
        Ok(self.gradient_at(p)?.iter().any(|g| !g.is_zero()))
    }
}

/// The third point of `K` on the line through `p` and `y`.
///
/// Writing `F(s y + t p) = s t (alpha s + beta t)`, the result is `beta y - alpha p`.
pub fn third_intersection(x: &CubicHypersurface, p: &RationalPoint, y: &RationalPoint) -> Result<RationalPoint> {
    if p.dim() != x.nvars() || y.dim() != x.nvars() {
        return Err(Error::DimensionMismatch { expected: x.nvars(), found: p.dim().min(y.dim()) });
    }
    if p == y {
        return Err(Error::CoincidentPoints);
    }
    if !x.contains(p)? || !x.contains(y)? {
        return Err(Error::OffSurface);
    }
    let c = x.form.binary_restriction(y.coords(), p.coords())?;
    let (alpha, beta) = (&c[1], &c[2]);
    if alpha.is_zero() && beta.is_zero() {
        return Err(Error::LineInSurface);
    }
    y.combine(beta, p, &-alpha)
}

/// Random nonzero integer in `[-bound, bound]`.
pub(crate) fn small_nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let mut a = 0;
    while a == 0 {
        a = rng.gen_range(-bound..=bound);
    }
    Rational::from_integer(a.into())
}

/// Random cubic form in `n` variables vanishing at the given points (at most two).
pub fn random_cubic_through<R: Rng + ?Sized>(rng: &mut R, n: usize, points: &[RationalPoint]) -> Result<CubicHypersurface> {
    if points.len() > 2 {
        return Err(Error::InvalidArgument("at most two prescribed points".into()));
    }
    let monomials = crate::algebra::mpoly::monomials(n, 3);
    for _ in 0..64 {
        let mut g = MultiPoly::zero(n);
        for e in &monomials {
            if rng.gen_bool(0.6) {
                g.add_term(e.clone(), crate::reflection_maps::small_rational(rng));
            }
        }
        // correct with two random monomials so that every point lies on the zero set
        let m1 = monomials[rng.gen_range(0..monomials.len())].clone();
        let m2 = monomials[rng.gen_range(0..monomials.len())].clone();
        if m1 == m2 {
            continue;
        }
        let mono = |e: &Vec<u32>, p: &RationalPoint| MultiPoly::monomial(n, e.clone(), Rational::one()).eval(p.coords());
        let rows: Vec<Vec<Rational>> =
            points.iter().map(|p| Ok(vec![mono(&m1, p)?, mono(&m2, p)?])).collect::<Result<_>>()?;
        let rhs: Vec<Rational> = points.iter().map(|p| g.eval(p.coords()).map(|v| -v)).collect::<Result<_>>()?;
        let sol = if points.is_empty() {
            Some(vec![Rational::zero(), Rational::zero()])
        } else {
            let m: Vec<Vec<Rational>> = rows.iter().zip(&rhs).map(|(r, b)| [r.clone(), vec![b.clone()]].concat()).collect();
            solve_small(&m)
        };
        let Some(sol) = sol else { continue };
        let f = &(&g + &MultiPoly::monomial(n, m1, sol[0].clone())) + &MultiPoly::monomial(n, m2, sol[1].clone());
        if let Ok(c) = CubicHypersurface::new(f) {
            return Ok(c);
        }
    }
    Err(Error::InvalidArgument("could not construct a cubic through the points".into()))
}

/// Any solution of an augmented system with two unknowns.
fn solve_small(aug: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let a: Vec<Vec<Rational>> = aug.iter().map(|r| r[..2].to_vec()).collect();
    let b: Vec<Rational> = aug.iter().map(|r| r[2].clone()).collect();
    crate::algebra::linalg::solve(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fermat() -> CubicHypersurface {
        let f = (0..4).fold(MultiPoly::zero(4), |acc, i| &acc + &MultiPoly::var(4, i).pow(3));
        CubicHypersurface::new(f).unwrap()
    }

    fn pt(v: &[i64]) -> RationalPoint {
        RationalPoint::from_ints(v).unwrap()
    }

    #[test]
    fn normalization() {
        let p = RationalPoint::from_ints(&[0, 2, -4]).unwrap();
        assert_eq!(p.coords(), &[int(0), int(1), int(-2)]);
        assert!(RationalPoint::from_ints(&[0, 0]).is_err());
    }

    #[test]
    fn fermat_examples() {
        let x = fermat();
        // x0 = -x1, x2 = -x3 is a line on the Fermat cubic
        assert_eq!(third_intersection(&x, &pt(&[1, -1, 0, 0]), &pt(&[0, 0, 1, -1])).unwrap_err(), Error::LineInSurface);
        let z = third_intersection(&x, &pt(&[1, -1, 0, 0]), &pt(&[1, 0, -1, 0])).unwrap();
        assert_eq!(z, pt(&[0, 1, -1, 0]));
        assert!(x.contains(&z).unwrap());
        let p = pt(&[1, -1, 0, 0]);
        assert_eq!(third_intersection(&x, &p, &p).unwrap_err(), Error::CoincidentPoints);
        assert_eq!(third_intersection(&x, &p, &pt(&[1, 0, 0, 0])).unwrap_err(), Error::OffSurface);
    }

    #[test]
    fn tangent_line_returns_y() {
        // F = x0 x3^2 + x1 x2 x3 + x1^3 + x2^3 has tangent plane x0 = 0 at y = (0:0:0:1)
        let v = |i| MultiPoly::var(4, i);
        let f = &(&(&(&v(0) * &v(3).pow(2)) + &(&(&v(1) * &v(2)) * &v(3))) + &v(1).pow(3)) + &v(2).pow(3);
        let x = CubicHypersurface::new(f).unwrap();
        let y = pt(&[0, 0, 0, 1]);
        let p = pt(&[0, 1, 1, -2]);
        assert!(x.contains(&p).unwrap());
        assert_eq!(third_intersection(&x, &p, &y).unwrap(), y);
    }

    #[test]
    fn involution_on_random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0;
        while checked < 100 {
            let p = RationalPoint::new((0..4).map(|_| small_nonzero(&mut rng, 9)).collect()).unwrap();
            let y = RationalPoint::new((0..4).map(|_| small_nonzero(&mut rng, 9)).collect()).unwrap();
            if p == y {
                continue;
            }
            let x = random_cubic_through(&mut rng, 4, &[p.clone(), y.clone()]).unwrap();
            let Ok(z) = third_intersection(&x, &p, &y) else { continue };
            assert!(x.contains(&z).unwrap());
            let Ok(back) = third_intersection(&x, &p, &z) else { continue };
            assert_eq!(back, y);
            checked += 1;
        }
    }
}
