//! Truncated power series in one local parameter `t`.
//!
//! A series is stored as `t^offset * (c_0 + c_1 t + ... + c_{n-1} t^{n-1}) + O(t^{offset+n})`
//! with `c_0 != 0` unless the series is zero to the stored precision. Valuations
//! can therefore grow far beyond the number of stored coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    offset: u64,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Plain series `sum coeffs[i] t^i + O(t^order)`; coefficients past `order` are dropped.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        Self::from_parts(0, coeffs)
    }

    /// `t^offset * sum unit[i] t^i + O(t^(offset + unit.len()))`.
    pub fn from_parts(offset: u64, unit: Vec<Rational>) -> Self {
        let lead = unit.iter().position(|c| !c.is_zero()).unwrap_or(unit.len());
        TruncatedSeries { offset: offset + lead as u64, coeffs: unit[lead..].to_vec() }
    }

    pub fn zero(order: u64) -> Self {
        TruncatedSeries { offset: order, coeffs: vec![] }
    }

    pub fn constant(c: Rational, order: u64) -> Self {
        let mut v = vec![Rational::zero(); order as usize];
        if order > 0 {
            v[0] = c;
        }
        Self::from_parts(0, v)
    }

    /// Absolute truncation order: the series is known modulo `t^truncation`.
    pub fn truncation(&self) -> u64 {
        self.offset + self.coeffs.len() as u64
    }

    /// Number of known coefficients past the leading term.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// Coefficients of the unit part, leading one first.
    pub fn unit(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k`; `None` beyond the truncation.
    pub fn coeff(&self, k: u64) -> Option<Rational> {
        if k >= self.truncation() {
            return None;
        }
        if k < self.offset {
            return Some(Rational::zero());
        }
        Some(self.coeffs[(k - self.offset) as usize].clone())
    }

    /// Order of vanishing at `t = 0`.
    pub fn valuation(&self) -> Result<u64> {
        if self.coeffs.is_empty() {
            return Err(Error::TruncationExhausted);
        }
        Ok(self.offset)
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let trunc = self.truncation().min(o.truncation());
        let off = self.offset.min(o.offset).min(trunc);
        let mut v = vec![Rational::zero(); (trunc - off) as usize];
        for s in [self, o] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let k = s.offset + i as u64;
                if k < trunc {
                    v[(k - off) as usize] += c;
                }
            }
        }
        Self::from_parts(off, v)
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { offset: self.offset, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.truncation());
        }
        TruncatedSeries { offset: self.offset, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.coeffs.len().min(o.coeffs.len());
        // clear denominators and convolve over the integers
        let (a, da) = integer_parts(&self.coeffs[..n]);
        let (b, db) = integer_parts(&o.coeffs[..n]);
        let mut v = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().take(n - i).enumerate() {
                v[i + j] += x * y;
            }
        }
        let d = da * db;
        Self::from_parts(self.offset + o.offset, v.into_iter().map(|c| Rational::new(c, d.clone())).collect())
    }

    /// Divide by `t^k`; errors if the series is not divisible to its precision.
    pub fn shift_down(&self, k: u64) -> Result<Self> {
        if self.offset < k {
            return Err(Error::InvalidArgument(format!("series of valuation {} is not divisible by t^{k}", self.offset)));
        }
        Ok(TruncatedSeries { offset: self.offset - k, coeffs: self.coeffs.clone() })
    }

    /// Forget everything from `t^order` on.
    pub fn truncate(&self, order: u64) -> Self {
        if order >= self.truncation() {
            return self.clone();
        }
        if order <= self.offset {
            return Self::zero(order);
        }
        TruncatedSeries { offset: self.offset, coeffs: self.coeffs[..(order - self.offset) as usize].to_vec() }
    }

    /// Same valuation, new unit part of the given length.
    pub fn with_unit(&self, unit: Vec<Rational>) -> Result<Self> {
        if unit.first().is_none_or(|c| c.is_zero()) {
            return Err(Error::InvalidArgument("unit part needs a nonzero leading coefficient".into()));
        }
        Ok(TruncatedSeries { offset: self.offset, coeffs: unit })
    }
}

/// Integer numerators over a common denominator.
fn integer_parts(c: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let v = c.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (v, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::int;

    fn s(c: &[i64], order: usize) -> TruncatedSeries {
        TruncatedSeries::new(c.iter().map(|&x| int(x)).collect(), order)
    }

    #[test]
    fn valuations() {
        assert_eq!(s(&[0, 0, 1, 1], 6).valuation().unwrap(), 2);
        assert_eq!(s(&[3, 1], 6).valuation().unwrap(), 0);
        assert_eq!(s(&[0, 0], 4).valuation(), Err(Error::TruncationExhausted));
    }

    #[test]
    fn multiplication_tracks_precision() {
        let a = s(&[0, 1, 2], 5); // t + 2t^2 + O(t^5)
        let b = s(&[1, 1], 5); // 1 + t + O(t^5)
        let p = a.mul(&b);
        assert_eq!(p, s(&[0, 1, 3, 2], 5));
        assert_eq!(p.truncation(), 5);
    }

    #[test]
    fn addition_aligns_offsets() {
        let a = TruncatedSeries::from_parts(3, vec![int(1), int(2)]); // t^3 + 2t^4 + O(t^5)
        let b = s(&[0, 1, 0, 0, 0, 0, 7], 8);
        let c = a.add(&b);
        assert_eq!(c.truncation(), 5);
        assert_eq!(c.valuation().unwrap(), 1);
        assert_eq!(c.coeff(3), Some(int(1)));
        assert_eq!(c.coeff(5), None);
        let z = a.sub(&a);
        assert!(z.is_zero_to_precision());
        assert_eq!(z.truncation(), 5);
    }

    #[test]
    fn shifting() {
        let a = TruncatedSeries::from_parts(3, vec![int(1)]);
        assert_eq!(a.shift_down(2).unwrap().valuation().unwrap(), 1);
        assert!(a.shift_down(4).is_err());
    }
}
