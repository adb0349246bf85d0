//! Return maps on `L` as Moebius transformations in the `(a, b)` frame.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::config::{normalize_pair, Configuration, Word};
use crate::algebra::linalg;
use crate::algebra::rational::fmt_rational;
use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Probes used for the fit; the rest certify it.
const FIT_PROBES: usize = 3;
const MIN_PROBES: usize = 6;
const MAX_PROBE_ATTEMPTS: i64 = 64;

/// Invertible 2x2 matrix acting on line parameters `(s : t)`, scaled so the
/// first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusMap {
    matrix: RatMatrix,
}

impl MobiusMap {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: m.rows().max(m.cols()) });
        }
        if determinant(&m).is_zero() {
            return Err(Error::NotMobius);
        }
        let lead = m.to_rows().into_iter().flatten().find(|c| !c.is_zero()).unwrap();
        Ok(MobiusMap { matrix: m.scale(&(Rational::one() / lead)) })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn apply(&self, st: &[Rational; 2]) -> [Rational; 2] {
        let v = self.matrix.mul_vec(st).expect("2x2");
        let [s, t]: [Rational; 2] = v.try_into().unwrap();
        normalize_pair(s, t)
    }

    pub fn fixes(&self, st: &[Rational; 2]) -> bool {
        self.apply(st) == normalize_pair(st[0].clone(), st[1].clone())
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == RatMatrix::identity(2)
    }

    pub fn to_strings(&self) -> [[String; 2]; 2] {
        let g = |i, j| fmt_rational(self.matrix.get(i, j));
        [[g(0, 0), g(0, 1)], [g(1, 0), g(1, 1)]]
    }
}

fn determinant(m: &RatMatrix) -> Rational {
    m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbePair {
    pub input: [String; 2],
    pub output: [String; 2],
    pub used_for_fit: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReturnMap {
    pub word: String,
    pub map: MobiusMap,
    pub probes: Vec<ProbePair>,
    /// Probes skipped because an orbit hit an indeterminacy.
    pub skipped: Vec<String>,
    pub certified: bool,
}

/// The map induced on `L` by `word`, fitted on three probes and checked exactly
/// on the others.
pub fn return_map(cfg: &Configuration, word: &Word) -> Result<ReturnMap> {
    let mut pairs: Vec<([Rational; 2], [Rational; 2])> = Vec::new();
    let mut skipped = Vec::new();
    let mut k = 1i64;
    while pairs.len() < MIN_PROBES && k <= MAX_PROBE_ATTEMPTS {
        let st = [Rational::one(), Rational::from_integer(k.into())];
        k += 1;
        let x = cfg.line_point(&st)?;
        let image = match word.apply(cfg, &x) {
            Ok(y) => y,
            Err(e) => {
                skipped.push(format!("(1:{}): {e}", k - 1));
                continue;
            }
        };
        if !cfg.on_line(&image) {
            return Err(Error::InconsistentState(format!("word {word} does not return to L")));
        }
        pairs.push((st, cfg.line_param(&image)?));
    }
    if pairs.len() < MIN_PROBES {
        return Err(Error::Indeterminate("too many probes hit indeterminacies".into()));
    }
    let map = fit(&pairs[..FIT_PROBES])?;
    let certified = pairs[FIT_PROBES..].iter().all(|(x, y)| map.apply(x) == *y);
    if !certified {
        return Err(Error::NotMobius);
    }
    let probes = pairs
        .iter()
        .enumerate()
        .map(|(i, (x, y))| ProbePair {
            input: [fmt_rational(&x[0]), fmt_rational(&x[1])],
            output: [fmt_rational(&y[0]), fmt_rational(&y[1])],
            used_for_fit: i < FIT_PROBES,
        })
        .collect();
    Ok(ReturnMap { word: word.to_string(), map, probes, skipped, certified })
}

/// Solves `y x (M x) = 0` for the four entries of `M`.
fn fit(pairs: &[([Rational; 2], [Rational; 2])]) -> Result<MobiusMap> {
    let rows: Vec<Vec<Rational>> = pairs
        .iter()
        .map(|([s, t], [u, v])| {
            // u (m10 s + m11 t) - v (m00 s + m01 t) = 0
            vec![-(v * s), -(v * t), u * s, u * t]
        })
        .collect();
    let ker = linalg::kernel(&rows, 4, &Rational::one());
    if ker.len() != 1 {
        return Err(Error::NotMobius);
    }
    let m = &ker[0];
    MobiusMap::new(RatMatrix::from_rows(vec![vec![m[0].clone(), m[1].clone()], vec![m[2].clone(), m[3].clone()]])?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Attractor {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AttractorReport {
    /// Eigenvalues on the lines spanned by `a` and `b`, up to a common scale.
    pub mu_a: String,
    pub mu_b: String,
    /// `mu_a / mu_b`.
    pub ratio: String,
    pub attractor: Option<Attractor>,
    /// Chart on `L` in which the attractor sits at 0 and the other fixed point at infinity.
    pub chart: String,
    #[serde(skip)]
    pub ratio_value: Rational,
}

impl AttractorReport {
    pub fn distinct_absolute_values(&self) -> bool {
        self.attractor.is_some()
    }
}

/// Diagonalizes `m` in the frame of its fixed points `a`, `b`.
pub fn attractor_analysis(m: &MobiusMap, a: &[Rational; 2], b: &[Rational; 2]) -> Result<AttractorReport> {
    if !m.fixes(a) || !m.fixes(b) {
        return Err(Error::NotFixed);
    }
    let frame = RatMatrix::from_rows(vec![vec![a[0].clone(), b[0].clone()], vec![a[1].clone(), b[1].clone()]])?;
    if determinant(&frame).is_zero() {
        return Err(Error::NotDiagonalizable);
    }
    let ma = m.matrix.mul_vec(a)?;
    let mb = m.matrix.mul_vec(b)?;
    let ratio_of = |img: &[Rational], v: &[Rational; 2]| {
        let i = if v[0].is_zero() { 1 } else { 0 };
        &img[i] / &v[i]
    };
    let (mu_a, mu_b) = (ratio_of(&ma, a), ratio_of(&mb, b));
    let ratio = &mu_a / &mu_b;
    let attractor = match ratio.abs().cmp(&Rational::one()) {
        std::cmp::Ordering::Less => Some(Attractor::B),
        std::cmp::Ordering::Greater => Some(Attractor::A),
        std::cmp::Ordering::Equal => None,
    };
    let chart = match attractor {
        Some(Attractor::A) => "z = t/s (a at 0, b at infinity)",
        _ => "z = s/t (b at 0, a at infinity)",
    };
    Ok(AttractorReport {
        mu_a: fmt_rational(&mu_a),
        mu_b: fmt_rational(&mu_b),
        ratio: fmt_rational(&ratio),
        attractor,
        chart: chart.into(),
        ratio_value: ratio,
    })
}
