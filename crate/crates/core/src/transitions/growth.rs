//! Empirical growth diagnostics for integer degree sequences.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::algebra::rational::{fmt_rational, to_f64};
use crate::algebra::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// `d_{m+1} / d_m`, exact.
    #[serde(serialize_with = "ser_ratios")]
    pub ratios: Vec<Rational>,
    /// `d_m^(1/m)` for `m >= 1`, in floating point.
    pub roots: Vec<f64>,
}

fn ser_ratios<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(fmt_rational).collect::<Vec<_>>().serialize(s)
}

fn ln_big(n: &BigInt) -> f64 {
    if let Some(f) = n.to_f64().filter(|f| f.is_finite()) {
        return f.ln();
    }
    let shift = n.bits().saturating_sub(64);
    (n >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn growth_estimate(seq: &[BigInt]) -> Result<GrowthEstimate> {
    if seq.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    if let Some(bad) = seq.iter().find(|d| !d.is_positive()) {
        return Err(Error::InvalidArgument(format!("sequence entries must be at least 1, found {bad}")));
    }
    let ratios = seq.windows(2).map(|w| Rational::new(w[1].clone(), w[0].clone())).collect();
    let roots = seq
        .iter()
        .enumerate()
        .skip(1)
        .map(|(m, d)| if d.is_one() { 1.0 } else { (ln_big(d) / m as f64).exp() })
        .collect();
    Ok(GrowthEstimate { ratios, roots })
}

impl GrowthEstimate {
    pub fn ratios_f64(&self) -> Vec<f64> {
        self.ratios.iter().map(to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn ratios_of_conic_line_deltas() {
        let g = growth_estimate(&big(&[1, 6, 36, 196, 1056])).unwrap();
        assert_eq!(g.ratios, vec![int(6), int(6), rat(49, 9), rat(264, 49)]);
        assert!((g.roots[0] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn trivial_sequences() {
        assert_eq!(growth_estimate(&big(&[5, 5, 5])).unwrap().ratios, vec![int(1), int(1)]);
        let pw: Vec<BigInt> = (0..10).map(|k| BigInt::from(1u64 << k)).collect();
        assert!(growth_estimate(&pw).unwrap().ratios.iter().all(|r| *r == int(2)));
        assert!(growth_estimate(&[]).is_err());
        assert!(growth_estimate(&big(&[1, 0])).is_err());
    }

    #[test]
    fn huge_entries() {
        let d = num_traits::pow(BigInt::from(10), 400);
        let g = growth_estimate(&[BigInt::from(1), BigInt::from(10), d]).unwrap();
        assert!((g.roots[1].log10() - 200.0).abs() < 1e-9);
    }
}
