//! Degree-evolution transition systems and degree-tuple utilities.

pub mod conic_line;
pub mod growth;
pub mod spectral;
pub mod triangle;
pub mod tuples;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::rational::serde_bigint_vec;
use crate::algebra::RatMatrix;
use crate::error::{Error, Result};

pub use conic_line::{conic_line_matrix, conic_line_step, conic_line_table, conic_line_word_matrix, Reflection};
pub use growth::{growth_estimate, GrowthEstimate};
pub use spectral::{analyze_spectrum, dominant_growth, HypothesisFlags, SpectralData};
pub use triangle::{triangle_product, triangle_system};
pub use tuples::{check_log_concavity, fibration_degrees, inverse_tuple, DegreeTuple, LogConcavityCertificate};

/// Integer state vector tagged with the phase of the next matrix to apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateVector {
    pub phase: usize,
    #[serde(with = "serde_bigint_vec")]
    pub v: Vec<BigInt>,
}

impl StateVector {
    pub fn new(phase: usize, v: Vec<BigInt>) -> Self {
        StateVector { phase, v }
    }

    pub fn from_ints(phase: usize, v: &[i64]) -> Self {
        StateVector { phase, v: v.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// Standard basis vector `e_i` of length `n`, phase 0.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![BigInt::from(0); n];
        v[i] = BigInt::from(1);
        StateVector { phase: 0, v }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }
}

/// A periodic sequence of square integer matrices of a common dimension;
/// phase `i` uses matrix `i mod period`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSystem {
    matrices: Vec<Vec<Vec<BigInt>>>,
    dim: usize,
}

impl TransitionSystem {
    pub fn new(matrices: Vec<RatMatrix>) -> Result<Self> {
        let first = matrices.first().ok_or_else(|| Error::InvalidArgument("a transition system needs at least one matrix".into()))?;
        let dim = first.rows();
        let mut ints = Vec::with_capacity(matrices.len());
        for m in &matrices {
            if !m.is_square() {
                return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
            }
            if m.rows() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: m.rows() });
            }
            ints.push(m.to_int_rows()?);
        }
        Ok(TransitionSystem { matrices: ints, dim })
    }

    pub fn single(m: RatMatrix) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn period(&self) -> usize {
        self.matrices.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, phase: usize) -> RatMatrix {
        RatMatrix::from_int_rows(&self.matrices[phase % self.period()]).expect("validated at construction")
    }

    /// Product over one full period, later phases on the left.
    pub fn period_product(&self) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.dim);
        for k in 0..self.period() {
            acc = &self.matrix(k) * &acc;
        }
        acc
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector> {
        if s.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: s.dim() });
        }
        let m = &self.matrices[s.phase % self.period()];
        let v = m.iter().map(|row| row.iter().zip(&s.v).map(|(a, b)| a * b).sum()).collect();
        Ok(StateVector { phase: (s.phase + 1) % self.period(), v })
    }
}

/// `[v0, v1, ..., v_steps]` with `v_{k+1} = M_{phase(v_k)} v_k`.
pub fn iterate(sys: &TransitionSystem, v0: &StateVector, steps: usize) -> Result<Vec<StateVector>> {
    if v0.dim() != sys.dim() {
        return Err(Error::DimensionMismatch { expected: sys.dim(), found: v0.dim() });
    }
    let mut out = Vec::with_capacity(steps + 1);
    out.push(StateVector { phase: v0.phase % sys.period(), v: v0.v.clone() });
    for _ in 0..steps {
        let next = sys.apply(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct SystemWire {
    period: usize,
    #[serde(with = "matrices_wire")]
    matrices: Vec<Vec<Vec<BigInt>>>,
}

mod matrices_wire {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct M(#[serde(with = "serde_bigint_vec::rows")] Vec<Vec<BigInt>>);

    pub fn serialize<S: Serializer>(v: &[Vec<Vec<BigInt>>], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|m| M(m.clone())).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Vec<BigInt>>>, D::Error> {
        Ok(Vec::<M>::deserialize(d)?.into_iter().map(|m| m.0).collect())
    }
}

impl Serialize for TransitionSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SystemWire { period: self.period(), matrices: self.matrices.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransitionSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = SystemWire::deserialize(d)?;
        if w.period != w.matrices.len() {
            return Err(serde::de::Error::custom(format!(
                "period {} does not match {} matrices",
                w.period,
                w.matrices.len()
            )));
        }
        let ms: Result<Vec<RatMatrix>> = w.matrices.iter().map(|m| RatMatrix::from_int_rows(m)).collect();
        ms.and_then(TransitionSystem::new).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_steps_returns_start() {
        let sys = triangle_system();
        let v0 = StateVector::basis(6, 0);
        assert_eq!(iterate(&sys, &v0, 0).unwrap(), vec![v0]);
    }

    #[test]
    fn dimension_checked() {
        let sys = triangle_system();
        assert!(iterate(&sys, &StateVector::from_ints(0, &[1, 0]), 2).is_err());
        assert!(TransitionSystem::new(vec![RatMatrix::identity(2), RatMatrix::identity(3)]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let sys = triangle_system();
        let s = serde_json::to_string(&sys).unwrap();
        assert!(s.starts_with(r#"{"period":3,"matrices":[[[2,0,0,-1,-1,0]"#));
        assert_eq!(serde_json::from_str::<TransitionSystem>(&s).unwrap(), sys);
        let v = StateVector::from_ints(2, &[1, -3]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"phase":2,"v":[1,-3]}"#);
        assert!(serde_json::from_str::<TransitionSystem>(r#"{"period":2,"matrices":[[[1]]]}"#).is_err());
    }
}
