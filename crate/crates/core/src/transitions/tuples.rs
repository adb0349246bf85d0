//! Dynamical degree tuples `(lambda_0, ..., lambda_n)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::algebra::algebraic::AlgebraicReport;
use crate::algebra::rational::fmt_rational;
use crate::algebra::{AlgebraicReal, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct DegreeTuple {
    values: Vec<AlgebraicReal>,
}

impl DegreeTuple {
    /// Requires at least two entries, both ends equal to 1, all entries `>= 1`.
    pub fn new(values: Vec<AlgebraicReal>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument("a degree tuple has at least two entries".into()));
        }
        let one = Rational::one();
        for (i, v) in values.iter().enumerate() {
            let c = v.compare_rational(&one);
            if c == Ordering::Less {
                return Err(Error::InvalidArgument(format!("entry {i} is below 1")));
            }
            if (i == 0 || i + 1 == values.len()) && c != Ordering::Equal {
                return Err(Error::InvalidArgument(format!("entry {i} must equal 1")));
            }
        }
        Ok(DegreeTuple { values })
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        Self::new(v.iter().map(|&x| AlgebraicReal::from_int(x)).collect())
    }

    /// `(1, mu, ..., mu, 1)` with `n - 1` interior copies.
    pub fn constant_interior(mu: &AlgebraicReal, n: usize) -> Result<Self> {
        let mut v = vec![AlgebraicReal::from_int(1)];
        v.extend(std::iter::repeat(mu.clone()).take(n.saturating_sub(1)));
        v.push(AlgebraicReal::from_int(1));
        Self::new(v)
    }

    pub fn values(&self) -> &[AlgebraicReal] {
        &self.values
    }

    /// Dimension `n` of the variety; the tuple has `n + 1` entries.
    pub fn dimension(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.values.len();
        (0..n / 2).all(|i| self.values[i].compare(&self.values[n - 1 - i]) == Ordering::Equal)
    }

    pub fn equals(&self, other: &DegreeTuple) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| a.compare(b) == Ordering::Equal)
    }

    pub fn report(&self, digits: u32) -> Vec<AlgebraicReport> {
        self.values.iter().map(|v| v.to_report(digits)).collect()
    }
}

/// Degrees of a map on a fibration with one-dimensional fibres over a base map:
/// `lambda_k = max(base_k, base_{k-1})`, with the out-of-range terms omitted.
pub fn fibration_degrees(base: &DegreeTuple) -> DegreeTuple {
    let b = &base.values;
    let n = b.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(b[0].clone());
    for k in 1..n {
        let m = if b[k].compare(&b[k - 1]) == Ordering::Less { &b[k - 1] } else { &b[k] };
        out.push(m.clone());
    }
    out.push(b[n - 1].clone());
    DegreeTuple { values: out }
}

/// Tuple of the inverse map: `lambda_i(f^-1) = lambda_{n-i}(f)`.
pub fn inverse_tuple(t: &DegreeTuple) -> DegreeTuple {
    DegreeTuple { values: t.values.iter().rev().cloned().collect() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ComparisonMethod {
    Exact,
    Equal,
    Interval,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcavityStep {
    pub index: usize,
    pub method: ComparisonMethod,
    /// Enclosure of `lambda_j^2`.
    pub square: [String; 2],
    /// Enclosure of `lambda_{j-1} lambda_{j+1}`.
    pub product: [String; 2],
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogConcavityCertificate {
    pub holds: bool,
    pub steps: Vec<ConcavityStep>,
}

fn pow2(k: u32) -> Rational {
    Rational::new(One::one(), num_traits::pow(BigInt::from(2), k as usize))
}

fn pair(i: &crate::algebra::interval::Interval) -> [String; 2] {
    [fmt_rational(&i.lo), fmt_rational(&i.hi)]
}

fn compare_step(a: &AlgebraicReal, b: &AlgebraicReal, c: &AlgebraicReal, index: usize) -> Result<ConcavityStep> {
    if let (Some(x), Some(y), Some(z)) = (a.exact_value(), b.exact_value(), c.exact_value()) {
        let sq = y * y;
        let pr = x * z;
        return Ok(ConcavityStep {
            index,
            method: ComparisonMethod::Exact,
            square: [fmt_rational(&sq), fmt_rational(&sq)],
            product: [fmt_rational(&pr), fmt_rational(&pr)],
            holds: sq >= pr,
        });
    }
    if a.compare(b) == Ordering::Equal && b.compare(c) == Ordering::Equal {
        let sq = b.interval().pow(2);
        return Ok(ConcavityStep {
            index,
            method: ComparisonMethod::Equal,
            square: pair(&sq),
            product: pair(&a.interval().mul(&c.interval())),
            holds: true,
        });
    }
    let mut k: u32 = 8;
    while k <= 256 {
        let eps = pow2(k);
        let (a, b, c) = (a.refine(&eps), b.refine(&eps), c.refine(&eps));
        let sq = b.interval().pow(2);
        let pr = a.interval().mul(&c.interval());
        let holds = if pr.strictly_below(&sq) {
            Some(true)
        } else if sq.strictly_below(&pr) {
            Some(false)
        } else {
            None
        };
        if let Some(holds) = holds {
            return Ok(ConcavityStep { index, method: ComparisonMethod::Interval, square: pair(&sq), product: pair(&pr), holds });
        }
        k *= 2;
    }
    // Intervals still overlap: compare the two products exactly.
    let sq = b.mul(b)?;
    let pr = a.mul(c)?;
    let order = sq.compare(&pr);
    Ok(ConcavityStep {
        index,
        method: if order == Ordering::Equal { ComparisonMethod::Equal } else { ComparisonMethod::Exact },
        square: pair(&sq.interval()),
        product: pair(&pr.interval()),
        holds: order != Ordering::Less,
    })
}

/// Decide `lambda_j^2 >= lambda_{j-1} lambda_{j+1}` for every interior `j`.
pub fn check_log_concavity(t: &DegreeTuple) -> Result<LogConcavityCertificate> {
    let v = &t.values;
    let mut steps = Vec::new();
    for j in 1..v.len().saturating_sub(1) {
        steps.push(compare_step(&v[j - 1], &v[j], &v[j + 1], j)?);
    }
    Ok(LogConcavityCertificate { holds: steps.iter().all(|s| s.holds), steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UniPoly;
    use proptest::prelude::*;

    fn mu_conic() -> AlgebraicReal {
        AlgebraicReal::largest_root(&UniPoly::from_ints(&[-2, -5, 1])).unwrap().unwrap()
    }

    #[test]
    fn validation() {
        assert!(DegreeTuple::from_ints(&[1, 2, 1]).is_ok());
        assert!(DegreeTuple::from_ints(&[2, 2, 1]).is_err());
        assert!(DegreeTuple::from_ints(&[1, 0, 1]).is_err());
        assert!(DegreeTuple::from_ints(&[1]).is_err());
    }

    #[test]
    fn fibration_examples() {
        let t = |v: &[i64]| DegreeTuple::from_ints(v).unwrap();
        assert!(fibration_degrees(&t(&[1, 1, 1, 1])).equals(&t(&[1, 1, 1, 1, 1])));
        assert!(fibration_degrees(&t(&[1, 2, 1])).equals(&t(&[1, 2, 2, 1])));
        assert!(fibration_degrees(&t(&[1, 3, 2, 1])).equals(&t(&[1, 3, 3, 2, 1])));
    }

    #[test]
    fn inverse_examples() {
        let t = DegreeTuple::from_ints(&[1, 2, 3, 4, 1]).unwrap();
        assert!(inverse_tuple(&t).equals(&DegreeTuple::from_ints(&[1, 4, 3, 2, 1]).unwrap()));
        let g = DegreeTuple::from_ints(&[1, 8, 8, 8, 1]).unwrap();
        assert!(inverse_tuple(&g).equals(&g));
    }

    #[test]
    fn concavity_examples() {
        let c = check_log_concavity(&DegreeTuple::constant_interior(&mu_conic(), 4).unwrap()).unwrap();
        assert!(c.holds);
        assert_eq!(c.steps[1].method, ComparisonMethod::Equal);
        assert!(!check_log_concavity(&DegreeTuple::from_ints(&[1, 2, 5, 2, 1]).unwrap()).unwrap().holds);
        assert!(check_log_concavity(&DegreeTuple::from_ints(&[1, 4, 4, 4, 1]).unwrap()).unwrap().holds);
    }

    #[test]
    fn mixed_irrational_comparison() {
        let s2 = AlgebraicReal::largest_root(&UniPoly::from_ints(&[-2, 0, 1])).unwrap().unwrap();
        let s3 = AlgebraicReal::largest_root(&UniPoly::from_ints(&[-3, 0, 1])).unwrap().unwrap();
        let t = DegreeTuple::new(vec![AlgebraicReal::from_int(1), s2.clone(), s3.clone(), AlgebraicReal::from_int(1)]).unwrap();
        // 2 >= sqrt 3, 3 >= sqrt 2
        assert!(check_log_concavity(&t).unwrap().holds);
        let bad = DegreeTuple::new(vec![AlgebraicReal::from_int(1), s2, AlgebraicReal::from_int(3), s3, AlgebraicReal::from_int(1)]).unwrap();
        assert!(!check_log_concavity(&bad).unwrap().holds);
    }

    proptest! {
        #[test]
        fn fibration_preserves_concavity(v in proptest::collection::vec(1i64..50, 1..6)) {
            let mut vals = vec![1i64];
            vals.extend(v);
            vals.push(1);
            let t = DegreeTuple::from_ints(&vals).unwrap();
            if check_log_concavity(&t).unwrap().holds {
                prop_assert!(check_log_concavity(&fibration_degrees(&t)).unwrap().holds);
            }
            prop_assert!(inverse_tuple(&inverse_tuple(&t)).equals(&t));
        }
    }
}
