//! Degree bookkeeping for three reflections in two points of a line `L` and a
//! point of a residual conic `C` on a cubic surface section.
//!
//! A state `(lambda, gamma, delta)` records the degree `delta` of an image
//! surface, the number `lambda` of points (with multiplicity) it has on `L`,
//! and the number `gamma` of points it has on `C`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::StateVector;
use crate::algebra::RatMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reflection {
    P,
    Q,
    R,
}

impl FromStr for Reflection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Reflection::P),
            "q" => Ok(Reflection::Q),
            "r" => Ok(Reflection::R),
            _ => Err(Error::Parse(format!("unknown reflection {s:?}"))),
        }
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reflection::P => "p",
            Reflection::Q => "q",
            Reflection::R => "r",
        })
    }
}

impl Reflection {
    /// Matrix of a single reflection acting on `(lambda, gamma, delta)`.
    ///
    /// Reflecting in a point of `L`: the line is mapped to itself, the new
    /// degree is `2 delta - lambda`, and the new count on `L` is the old degree.
    /// Reflecting in the point of `C`: points on `C` become points on `L`, and
    /// both `L`-points and the degree feed the new `C` count.
    pub fn step_matrix(self) -> RatMatrix {
        match self {
            Reflection::P | Reflection::Q => RatMatrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[-1, 0, 2]]),
            Reflection::R => RatMatrix::from_ints(&[&[0, 1, 0], &[1, 0, 1], &[0, 0, 2]]),
        }
    }
}

fn check_state(s: &StateVector) -> Result<()> {
    if s.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: s.dim() });
    }
    if s.v[0] > s.v[2] {
        return Err(Error::InconsistentState(format!(
            "lambda = {} exceeds delta = {}",
            s.v[0], s.v[2]
        )));
    }
    Ok(())
}

/// Apply one reflection to `(lambda, gamma, delta)`.
pub fn conic_line_step(s: &StateVector, reflection: Reflection) -> Result<StateVector> {
    check_state(s)?;
    let (l, g, d) = (&s.v[0], &s.v[1], &s.v[2]);
    let two = BigInt::from(2);
    let v = match reflection {
        Reflection::P | Reflection::Q => vec![d.clone(), g.clone(), &two * d - l],
        Reflection::R => vec![g.clone(), l + d, &two * d],
    };
    Ok(StateVector { phase: s.phase, v })
}

/// States after `p`, after `q p`, and after `r q p`, each expressed from the
/// same starting state: `(delta, gamma, 2delta - lambda)`,
/// `(2delta - lambda, gamma, 3delta - 2lambda)`, `(gamma, 5delta - 3lambda, 6delta - 4lambda)`.
pub fn conic_line_table(s: &StateVector) -> Result<[StateVector; 3]> {
    let a = conic_line_step(s, Reflection::P)?;
    let b = conic_line_step(&a, Reflection::Q)?;
    let c = conic_line_step(&b, Reflection::R)?;
    Ok([a, b, c])
}

/// Matrix of the composition `sigma_r sigma_q sigma_p` on `(lambda, gamma, delta)`.
pub fn conic_line_matrix() -> RatMatrix {
    RatMatrix::from_ints(&[&[0, 1, 0], &[-3, 0, 5], &[-4, 0, 6]])
}

/// Product of step matrices for reflections applied in the given order
/// (first element first).
pub fn conic_line_word_matrix(word: &[Reflection]) -> RatMatrix {
    word.iter().fold(RatMatrix::identity(3), |acc, r| &r.step_matrix() * &acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transitions::{iterate, TransitionSystem};
    use Reflection::*;

    fn st(v: &[i64]) -> StateVector {
        StateVector::from_ints(0, v)
    }

    #[test]
    fn single_steps() {
        assert_eq!(conic_line_step(&st(&[0, 0, 1]), P).unwrap(), st(&[1, 0, 2]));
        assert_eq!(conic_line_step(&st(&[1, 0, 2]), Q).unwrap(), st(&[2, 0, 3]));
        assert_eq!(conic_line_step(&st(&[2, 0, 3]), R).unwrap(), st(&[0, 5, 6]));
        assert!(matches!(conic_line_step(&st(&[3, 0, 1]), P), Err(Error::InconsistentState(_))));
    }

    #[test]
    fn table_rows_from_initial_state() {
        let [a, b, c] = conic_line_table(&st(&[1, 2, 4])).unwrap();
        // (delta, gamma, 2delta - lambda), (2delta - lambda, gamma, 3delta - 2lambda),
        // (gamma, 5delta - 3lambda, 6delta - 4lambda)
        assert_eq!(a, st(&[4, 2, 7]));
        assert_eq!(b, st(&[7, 2, 10]));
        assert_eq!(c, st(&[2, 17, 20]));
    }

    #[test]
    fn composition_matches_displayed_matrix() {
        assert_eq!(conic_line_word_matrix(&[P, Q, R]), conic_line_matrix());
    }

    #[test]
    fn steps_agree_with_matrix_on_grid() {
        let m = conic_line_matrix();
        for l in 0..=20i64 {
            for g in 0..=20i64 {
                for d in l..=20i64 {
                    let s = st(&[l, g, d]);
                    let [_, _, c] = conic_line_table(&s).unwrap();
                    let v: Vec<BigInt> = (0..3)
                        .map(|i| {
                            m.row(i)
                                .iter()
                                .zip(&s.v)
                                .map(|(a, b)| a.to_integer() * b)
                                .sum()
                        })
                        .collect();
                    assert_eq!(c.v, v, "state {:?}", (l, g, d));
                }
            }
        }
    }

    #[test]
    fn delta_sequence() {
        let sys = TransitionSystem::single(conic_line_matrix()).unwrap();
        let orbit = iterate(&sys, &st(&[0, 0, 1]), 4).unwrap();
        let deltas: Vec<i64> = orbit.iter().map(|s| i64::try_from(&s.v[2]).unwrap()).collect();
        assert_eq!(deltas, vec![1, 6, 36, 196, 1056]);
        assert_eq!(orbit[1], st(&[0, 5, 6]));
    }

    #[test]
    fn parse_reflections() {
        assert_eq!("q".parse::<Reflection>().unwrap(), Q);
        assert!("s".parse::<Reflection>().is_err());
    }
}
