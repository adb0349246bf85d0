//! Certification of a simple, positive, strictly dominant eigenvalue and of
//! the two nondegeneracy conditions that make it the growth rate of `m^k v0`.
//!
//! Everything is decided exactly: the eigenvalue lives in the number field
//! `K = Q(mu)` of its irreducible factor, eigenvectors are computed over `K`,
//! and dominance over the remaining roots is shown by Graeffe root-squaring
//! over `K` followed by a Fujiwara bound evaluated in rational interval
//! arithmetic.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::StateVector;
use crate::algebra::algebraic::AlgebraicReport;
use crate::algebra::interval::Interval;
use crate::algebra::linalg::{self, FieldElem};
use crate::algebra::rational::{fmt_rational, from_bigint, int};
use crate::algebra::{factor_over_rationals, isolate_real_roots, AlgebraicReal, NumberField, NumberFieldElement, RatMatrix, Rational, UniPoly};
use crate::error::{Error, Result};

/// Root-squaring steps attempted before dominance is declared uncertifiable.
pub const MAX_GRAEFFE_STEPS: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisFlags {
    /// Multiplicity one in the characteristic polynomial.
    pub simple: bool,
    pub positive: bool,
    /// Every other eigenvalue has strictly smaller absolute value.
    pub strictly_dominant: bool,
    /// A left eigenvector `w` has `w . v0 != 0`.
    pub v0_sees_eigenspace: bool,
    /// A right eigenvector has nonzero first coordinate.
    pub eigenvector_sees_first: bool,
}

impl HypothesisFlags {
    pub fn all(&self) -> bool {
        self.simple && self.positive && self.strictly_dominant && self.v0_sees_eigenspace && self.eigenvector_sees_first
    }

    pub fn failed(&self) -> Vec<String> {
        [
            ("simple", self.simple),
            ("positive", self.positive),
            ("strictly_dominant", self.strictly_dominant),
            ("v0_sees_eigenspace", self.v0_sees_eigenspace),
            ("eigenvector_sees_first", self.eigenvector_sees_first),
        ]
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n.to_string())
        .collect()
    }
}

/// Witness for strict dominance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceCertificate {
    /// Number of root-squaring steps applied to `charpoly / (x - mu)`.
    pub graeffe_steps: u32,
    /// Lower endpoint of the interval for `mu` used in the bound.
    pub mu_lower: String,
    /// Upper bounds for `|c_{d-j}|` of the squared polynomial, `j = 1..=d`.
    pub coefficient_bounds: Vec<String>,
    /// Degree of the polynomial carrying the remaining roots.
    pub remaining_degree: usize,
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub mu1: AlgebraicReal,
    /// Irreducible factor of the characteristic polynomial with root `mu1`.
    pub factor: UniPoly,
    pub multiplicity: usize,
    pub char_poly: UniPoly,
    pub flags: HypothesisFlags,
    pub dominance: Option<DominanceCertificate>,
    /// Coordinates in `K = Q(mu1)`, as polynomials in `a = mu1`.
    pub left_eigenvector: Vec<String>,
    pub right_eigenvector: Vec<String>,
    pub left_pairing: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub mu1: AlgebraicReport,
    pub char_poly: String,
    pub factor: String,
    pub multiplicity: usize,
    pub flags: HypothesisFlags,
    pub dominance: Option<DominanceCertificate>,
    pub left_eigenvector: Vec<String>,
    pub right_eigenvector: Vec<String>,
    pub left_pairing: String,
}

impl SpectralData {
    pub fn report(&self, digits: u32) -> SpectralReport {
        SpectralReport {
            mu1: self.mu1.to_report(digits),
            char_poly: self.char_poly.pretty(),
            factor: self.factor.pretty(),
            multiplicity: self.multiplicity,
            flags: self.flags.clone(),
            dominance: self.dominance.clone(),
            left_eigenvector: self.left_eigenvector.clone(),
            right_eigenvector: self.right_eigenvector.clone(),
            left_pairing: self.left_pairing.clone(),
        }
    }
}

type KPoly = Vec<NumberFieldElement>;

fn kpoly_trim(mut p: KPoly) -> KPoly {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn kpoly_mul(a: &KPoly, b: &KPoly) -> KPoly {
    let zero = a[0].zero_like();
    let mut c = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] = c[i + j].add(&x.mul(y));
        }
    }
    kpoly_trim(c)
}

/// Polynomial over `K` whose roots are the squares of the roots of `p`.
fn kpoly_graeffe(p: &KPoly) -> KPoly {
    let zero = p[0].zero_like();
    let even: KPoly = p.iter().step_by(2).cloned().collect();
    let odd: KPoly = p.iter().skip(1).step_by(2).cloned().collect();
    let e2 = kpoly_mul(&even, &even);
    let n = p.len() - 1;
    let mut c = vec![zero.clone(); n + 1];
    for (k, v) in e2.iter().enumerate() {
        c[k] = c[k].add(v);
    }
    if !odd.is_empty() {
        let o2 = kpoly_mul(&odd, &odd);
        for (k, v) in o2.iter().enumerate() {
            c[k + 1] = c[k + 1].sub(v);
        }
    }
    if n % 2 == 1 {
        c = c.iter().map(|x| zero.sub(x)).collect();
    }
    kpoly_trim(c)
}

fn interval_eval(rep: &UniPoly, alpha: &Interval) -> Interval {
    let mut acc = Interval::point(Rational::zero());
    for c in rep.coeffs().iter().rev() {
        acc = acc.mul(alpha).add(&Interval::point(c.clone()));
    }
    acc
}

/// Try to show every root of the monic `rest` is smaller in modulus than `mu`.
fn certify_dominance(rest: &KPoly, mu: &AlgebraicReal) -> Option<DominanceCertificate> {
    let d = rest.len() - 1;
    if d == 0 {
        return Some(DominanceCertificate {
            graeffe_steps: 0,
            mu_lower: fmt_rational(mu.lo()),
            coefficient_bounds: vec![],
            remaining_degree: 0,
        });
    }
    let mut g = rest.clone();
    for k in 0..=MAX_GRAEFFE_STEPS {
        // Relative error of lo^(2^k) is about 2^k eps / mu.
        let bits = 64 + 8 * (1usize << k);
        let eps = Rational::new(One::one(), num_traits::pow(num_bigint::BigInt::from(2), bits));
        let a = mu.refine(&eps);
        if a.lo().is_positive() {
            let ai = a.interval();
            let thresh = Interval::point(a.lo().clone()).pow(1 << k).lo / int(2);
            let mut bounds = Vec::with_capacity(d);
            let mut ok = true;
            for j in 1..=d {
                let c = interval_eval(g[d - j].rep(), &ai).abs().hi;
                if c >= num_traits::pow(thresh.clone(), j) {
                    ok = false;
                    break;
                }
                bounds.push(fmt_rational(&c));
            }
            if ok {
                return Some(DominanceCertificate {
                    graeffe_steps: k,
                    mu_lower: fmt_rational(a.lo()),
                    coefficient_bounds: bounds,
                    remaining_degree: d,
                });
            }
        }
        g = kpoly_graeffe(&g);
    }
    None
}

/// `mu` repeated, or `-mu` also a root.
fn provable_tie(cp: &UniPoly, factor: &UniPoly, multiplicity: usize) -> bool {
    let reflected = UniPoly::new(
        factor.coeffs().iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
    );
    multiplicity > 1 || reflected.divides(cp)
}

fn show(e: &NumberFieldElement) -> String {
    e.rep().pretty_in("a")
}

/// Compute the spectral data and all hypothesis flags without failing on them.
pub fn analyze_spectrum(m: &RatMatrix, v0: &StateVector) -> Result<SpectralData> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_integer() {
        return Err(Error::NonInteger);
    }
    let n = m.rows();
    if v0.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v0.dim() });
    }
    let cp = m.char_poly()?;
    let factors = factor_over_rationals(&cp)?;

    let mut best: Option<(AlgebraicReal, UniPoly, usize)> = None;
    for (f, mult) in &factors {
        if let Some(r) = isolate_real_roots(f)?.pop() {
            let better = match &best {
                None => true,
                Some((b, _, _)) => r.compare(b) == Ordering::Greater,
            };
            if better {
                best = Some((r, f.clone(), *mult));
            }
        }
    }
    let (mu1, factor, multiplicity) = best.ok_or(Error::NoDominantRoot)?;
    let positive = mu1.compare_rational(&Rational::zero()) == Ordering::Greater;
    if !positive {
        return Err(Error::NoDominantRoot);
    }

    let k = NumberField::new(&factor)?;
    let alpha = k.gen();
    let lift = |c: &Rational| k.from_rational(c);

    // charpoly / (x - alpha) by synthetic division over K.
    let a: Vec<NumberFieldElement> = cp.coeffs().iter().map(lift).collect();
    let deg = a.len() - 1;
    let mut rest = vec![k.zero(); deg];
    let mut carry = k.zero();
    for i in (1..=deg).rev() {
        carry = a[i].add(&carry.mul(&alpha));
        rest[i - 1] = carry.clone();
    }
    let remainder = a[0].add(&carry.mul(&alpha));
    debug_assert!(remainder.is_zero());
    let simple = multiplicity == 1;
    let dominance = if provable_tie(&cp, &factor, multiplicity) { None } else { certify_dominance(&rest, &mu1) };

    // Eigenvectors over K.
    let shifted = |t: &RatMatrix| -> Vec<Vec<NumberFieldElement>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let e = lift(t.get(i, j));
                        if i == j {
                            e.sub(&alpha)
                        } else {
                            e
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let left = linalg::kernel(&shifted(&m.transpose()), n, &k.zero());
    let right = linalg::kernel(&shifted(m), n, &k.zero());
    let v0k: Vec<NumberFieldElement> = v0.v.iter().map(|x| lift(&from_bigint(x))).collect();
    let pair = |w: &Vec<NumberFieldElement>| w.iter().zip(&v0k).fold(k.zero(), |acc, (x, y)| acc.add(&x.mul(y)));
    let left_pick = left.iter().find(|w| !pair(w).is_zero()).or(left.first()).cloned().unwrap_or_default();
    let right_pick = right.iter().find(|u| !u[0].is_zero()).or(right.first()).cloned().unwrap_or_default();
    let pairing = if left_pick.is_empty() { k.zero() } else { pair(&left_pick) };

    let flags = HypothesisFlags {
        simple,
        positive,
        strictly_dominant: dominance.is_some(),
        v0_sees_eigenspace: !pairing.is_zero(),
        eigenvector_sees_first: right_pick.first().is_some_and(|x| !x.is_zero()),
    };
    Ok(SpectralData {
        mu1,
        factor: factor.clone(),
        multiplicity,
        char_poly: cp,
        flags,
        dominance,
        left_eigenvector: left_pick.iter().map(show).collect(),
        right_eigenvector: right_pick.iter().map(show).collect(),
        left_pairing: show(&pairing),
    })
}

/// The certified dominant eigenvalue, or an error naming the failed hypotheses.
pub fn dominant_growth(m: &RatMatrix, v0: &StateVector) -> Result<SpectralData> {
    let data = analyze_spectrum(m, v0)?;
    if data.flags.all() {
        return Ok(data);
    }
    let failed = data.flags.failed();
    if failed == ["strictly_dominant"] && !provable_tie(&data.char_poly, &data.factor, data.multiplicity) {
        return Err(Error::NotCertifiable(format!("no separation after {MAX_GRAEFFE_STEPS} root-squaring steps")));
    }
    Err(Error::HypothesisFailed(failed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::transitions::{conic_line_matrix, conic_line_word_matrix, triangle_product, Reflection};

    #[test]
    fn conic_line_all_hypotheses() {
        let d = dominant_growth(&conic_line_matrix(), &StateVector::from_ints(0, &[0, 0, 1])).unwrap();
        assert_eq!(d.factor, UniPoly::from_ints(&[-2, -5, 1]));
        assert!(d.flags.all());
        let r = d.mu1.refine(&rat(1, 10_000_000_000));
        assert!(*r.lo() > rat(5_372_281_322, 1_000_000_000));
        assert!((r.to_f64() - (5.0 + 33f64.sqrt()) / 2.0).abs() < 1e-9);
    }

    #[test]
    fn triangle_all_hypotheses() {
        let d = dominant_growth(&triangle_product(), &StateVector::basis(6, 0)).unwrap();
        assert_eq!(d.factor, UniPoly::from_ints(&[-1, -4, 1]));
        assert!((d.mu1.refine(&rat(1, 1 << 40)).to_f64() - (2.0 + 5f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn identity_fails_simplicity_and_dominance() {
        let err = dominant_growth(&RatMatrix::identity(3), &StateVector::basis(3, 0)).unwrap_err();
        match err {
            Error::HypothesisFailed(f) => {
                assert!(f.contains(&"simple".to_string()));
                assert!(f.contains(&"strictly_dominant".to_string()));
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn tie_with_negative_root_detected() {
        // Eigenvalues 2 and -2.
        let m = RatMatrix::from_ints(&[&[0, 4], &[1, 0]]);
        let err = dominant_growth(&m, &StateVector::basis(2, 0)).unwrap_err();
        assert_eq!(err, Error::HypothesisFailed(vec!["strictly_dominant".into()]));
    }

    #[test]
    fn complex_pair_of_larger_modulus_rejected() {
        // Eigenvalues 1 and 2 +- 2i (modulus sqrt 8 > 1), block diagonal.
        let m = RatMatrix::from_ints(&[&[1, 0, 0], &[0, 2, -2], &[0, 2, 2]]);
        assert!(dominant_growth(&m, &StateVector::basis(3, 0)).is_err());
    }

    #[test]
    fn hypothesis_iii_can_fail() {
        // v0 in the eigenspace of the smaller eigenvalue.
        let m = RatMatrix::from_ints(&[&[3, 0], &[0, 1]]);
        let err = dominant_growth(&m, &StateVector::basis(2, 1)).unwrap_err();
        assert_eq!(err, Error::HypothesisFailed(vec!["v0_sees_eigenspace".into()]));
        let err = dominant_growth(&RatMatrix::from_ints(&[&[1, 0], &[0, 3]]), &StateVector::from_ints(0, &[1, 1]))
            .unwrap_err();
        assert_eq!(err, Error::HypothesisFailed(vec!["eigenvector_sees_first".into()]));
    }

    #[test]
    fn reversed_word_same_growth() {
        use Reflection::*;
        let fwd = dominant_growth(&conic_line_word_matrix(&[P, Q, R]), &StateVector::from_ints(0, &[0, 0, 1])).unwrap();
        let rev = dominant_growth(&conic_line_word_matrix(&[R, Q, P]), &StateVector::from_ints(0, &[0, 0, 1])).unwrap();
        assert_eq!(fwd.mu1.compare(&rev.mu1), Ordering::Equal);
    }

    #[test]
    fn non_integer_rejected() {
        let m = RatMatrix::from_rows(vec![vec![rat(1, 2)]]).unwrap();
        assert_eq!(dominant_growth(&m, &StateVector::basis(1, 0)).unwrap_err(), Error::NonInteger);
    }
}
