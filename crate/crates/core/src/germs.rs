//! Valuation dynamics of curve traits under the triangle reflections.
//!
//! A trait `gamma = (f_0 : ... : f_5)` of power series in `t` is pushed
//! through `sigma_{p_0}, sigma_{p_1}, sigma_{p_2}` cyclically. Its valuation
//! vector evolves by the transition matrices `P_0, P_1, P_2` as long as the
//! minimal pair of each quadric `Q_l` is the predicted one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::rational::from_bigint;
use crate::algebra::{Rational, TruncatedSeries};
use crate::reflection_maps::{monomial_supports, small_rational, triangle_formulas, TriangleChart};
use crate::error::{Error, Result};
use crate::transitions::{triangle_system, StateVector, TransitionSystem};

pub const DEFAULT_TRUNCATION: usize = 64;

/// Pair of coordinates realising the minimum of `Q_l` at phase `l`.
pub const PREDICTED_PAIRS: [(usize, usize); 3] = [(3, 4), (3, 5), (4, 5)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationVector {
    pub d: [i64; 6],
    /// Index of the next reflection to apply.
    pub phase: usize,
}

impl ValuationVector {
    pub fn new(d: [i64; 6], phase: usize) -> Result<Self> {
        if d.iter().any(|&x| x < 0) {
            return Err(Error::InvalidArgument("valuations are nonnegative".into()));
        }
        if phase >= 3 {
            return Err(Error::InvalidArgument(format!("phase {phase} is not in 0..3")));
        }
        Ok(ValuationVector { d, phase })
    }

    /// A trait transverse to `T_{p_0} X`: `(1, 0, 0, 0, 0, 0)`.
    pub fn transverse() -> Self {
        ValuationVector { d: [1, 0, 0, 0, 0, 0], phase: 0 }
    }

    /// Every one of `d_0, d_1, d_2` is at least every one of `d_3, d_4, d_5`.
    pub fn is_dominant(&self) -> bool {
        let lo = self.d[3..].iter().max().unwrap();
        self.d[..3].iter().all(|x| x >= lo)
    }

    pub fn is_normalized(&self) -> bool {
        self.d.contains(&0)
    }

    pub fn to_state(&self) -> StateVector {
        StateVector::from_ints(self.phase, &self.d)
    }
}

/// Raw image valuations at phase `l`: `d_l + d_i` in every coordinate except
/// `5 - l`, which gets the minimum of `d_mu + d_nu` over `M_l`.
fn raw_image(v: &ValuationVector) -> Result<([i64; 6], Vec<(usize, usize)>)> {
    let l = v.phase;
    let support = &monomial_supports()[l];
    let d = &v.d;
    let add = |a: i64, b: i64| a.checked_add(b).ok_or_else(|| Error::InvalidArgument("valuation overflow".into()));
    let mut qmin = i64::MAX;
    let mut pairs = Vec::new();
    for e in support.monomials() {
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
        let (mu, nu) = (idx[0], idx[1]);
        let s = add(d[mu], d[nu])?;
        if s < qmin {
            qmin = s;
            pairs.clear();
        }
        if s == qmin {
            pairs.push((mu, nu));
        }
    }
    let mut raw = [0i64; 6];
    for i in 0..6 {
        raw[i] = if i == TriangleChart::marked_coordinate(l) { qmin } else { add(d[l], d[i])? };
    }
    Ok((raw, pairs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    pub next: ValuationVector,
    pub raw: [i64; 6],
    /// All pairs attaining the minimum of `Q_l`.
    pub minimal_pairs: Vec<(usize, usize)>,
    pub predicted_pair: (usize, usize),
    /// Whether the result equals `P_l d`.
    pub matches_transition: bool,
}

fn step_unchecked(sys: &TransitionSystem, v: &ValuationVector) -> Result<StepOutcome> {
    let (raw, minimal_pairs) = raw_image(v)?;
    let m = *raw.iter().min().unwrap();
    let next_d = raw.map(|x| x - m);
    let expected = sys.apply(&v.to_state())?;
    let matches_transition = expected.v.iter().zip(&next_d).all(|(a, &b)| *a == b.into());
    Ok(StepOutcome {
        next: ValuationVector { d: next_d, phase: (v.phase + 1) % 3 },
        raw,
        minimal_pairs,
        predicted_pair: PREDICTED_PAIRS[v.phase],
        matches_transition,
    })
}

fn step_checked(sys: &TransitionSystem, v: &ValuationVector, step: usize) -> Result<StepOutcome> {
    if !v.is_dominant() {
        return Err(Error::DominanceViolated { step, valuations: v.d.to_vec() });
    }
    let out = step_unchecked(sys, v)?;
    if !out.minimal_pairs.contains(&out.predicted_pair) {
        return Err(Error::PairMismatch { step, predicted: out.predicted_pair });
    }
    if !out.matches_transition {
        return Err(Error::InconsistentState(format!("step {step}: image valuations differ from the transition matrix")));
    }
    Ok(out)
}

/// One application of `sigma_{p_phase}` to a valuation vector.
pub fn valuation_step(v: &ValuationVector) -> Result<StepOutcome> {
    step_checked(&triangle_system(), v, 1)
}

/// `steps` consecutive valuation steps from `v0`; entry `k` is the vector after `k + 1` steps.
pub fn valuation_chain(v0: &ValuationVector, steps: usize) -> Result<Vec<StepOutcome>> {
    let sys = triangle_system();
    let mut cur = v0.clone();
    let mut out = Vec::with_capacity(steps);
    for k in 1..=steps {
        let s = step_checked(&sys, &cur, k)?;
        cur = s.next.clone();
        out.push(s);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEntry {
    pub step: usize,
    pub phase: usize,
    pub valuations: [i64; 6],
    pub minimal_pair: (usize, usize),
    pub predicted_pair: (usize, usize),
    #[serde(rename = "match")]
    pub matches: bool,
    pub tied_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub entries: Vec<PairEntry>,
    pub first_mismatch: Option<usize>,
    pub all_match: bool,
}

pub fn verify_minimal_pairs(steps: usize) -> Result<PairReport> {
    verify_minimal_pairs_with(&triangle_system(), steps)
}

/// As `verify_minimal_pairs`, checking agreement against the given period-three system.
/// A step matches when the predicted pair attains the minimum and the image
/// equals the system's matrix applied to the current vector.
pub fn verify_minimal_pairs_with(sys: &TransitionSystem, steps: usize) -> Result<PairReport> {
    if steps < 3 {
        return Err(Error::InvalidArgument("at least one full period (3 steps) is required".into()));
    }
    if sys.dim() != 6 || sys.period() != 3 {
        return Err(Error::InvalidArgument("expected a period-three system on six coordinates".into()));
    }
    let mut cur = ValuationVector::transverse();
    let mut entries = Vec::with_capacity(steps);
    for step in 1..=steps {
        let s = step_unchecked(sys, &cur)?;
        let predicted_attains = s.minimal_pairs.contains(&s.predicted_pair);
        let minimal_pair = if predicted_attains { s.predicted_pair } else { s.minimal_pairs[0] };
        entries.push(PairEntry {
            step,
            phase: cur.phase,
            valuations: cur.d,
            minimal_pair,
            predicted_pair: s.predicted_pair,
            matches: predicted_attains && s.matches_transition && cur.is_dominant(),
            tied_pairs: s.minimal_pairs.len(),
        });
        cur = s.next;
    }
    let first_mismatch = entries.iter().find(|e| !e.matches).map(|e| e.step);
    Ok(PairReport { all_match: first_mismatch.is_none(), first_mismatch, entries })
}

/// Six power series in `t` with their valuation vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveTrait {
    series: Vec<TruncatedSeries>,
    valuations: ValuationVector,
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| small_rational(rng)).collect()
}

impl CurveTrait {
    pub fn new(series: Vec<TruncatedSeries>, phase: usize) -> Result<Self> {
        if series.len() != 6 {
            return Err(Error::ArityMismatch { expected: 6, found: series.len() });
        }
        let mut d = [0i64; 6];
        for (i, s) in series.iter().enumerate() {
            d[i] = s.valuation()? as i64;
        }
        let valuations = ValuationVector::new(d, phase)?;
        Ok(CurveTrait { series, valuations })
    }

    /// Random trait with valuations `(1, 0, 0, 0, 0, 0)`.
    pub fn transverse<R: Rng + ?Sized>(rng: &mut R, truncation: usize) -> Self {
        let series = (0..6)
            .map(|i| TruncatedSeries::from_parts(u64::from(i == 0), random_unit(rng, truncation)))
            .collect();
        CurveTrait { series, valuations: ValuationVector::transverse() }
    }

    pub fn series(&self) -> &[TruncatedSeries] {
        &self.series
    }

    pub fn valuations(&self) -> &ValuationVector {
        &self.valuations
    }
}

#[derive(Clone, Debug)]
pub struct EvolveOptions {
    /// Unit-part length restored after every step.
    pub truncation: usize,
    /// Leading unit coefficients kept when the rest is redrawn.
    pub guard: usize,
    pub seed: u64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        EvolveOptions { truncation: DEFAULT_TRUNCATION, guard: 0, seed: 0 }
    }
}

/// Push the trait through the reflections for `steps` steps, dividing by the
/// common power of `t` each time and checking the observed valuations against
/// the valuation step. After each step the unit parts past `guard` are redrawn
/// with random nonzero small rationals, which keeps valuations and coefficient
/// sizes bounded.
pub fn series_evolve(
    start: &CurveTrait,
    steps: usize,
    chart: &TriangleChart,
    opts: &EvolveOptions,
) -> Result<Vec<ValuationVector>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be at least 1".into()));
    }
    if opts.truncation == 0 {
        return Err(Error::InvalidArgument("truncation must be positive".into()));
    }
    let maps = triangle_formulas(chart)?;
    let sys = triangle_system();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cur = start.clone();
    let mut out = Vec::with_capacity(steps);
    for step in 1..=steps {
        let predicted = step_checked(&sys, &cur.valuations, step)?;
        let phase = cur.valuations.phase;
        let images: Vec<TruncatedSeries> =
            maps[phase].components().iter().map(|p| p.substitute_series_unchecked(&cur.series)).collect();
        let mut vals = [0i64; 6];
        for (i, s) in images.iter().enumerate() {
            vals[i] = s.valuation()? as i64;
        }
        let m = *vals.iter().min().unwrap();
        for i in 0..6 {
            let observed = vals[i] - m;
            if observed != predicted.next.d[i] {
                return Err(Error::Cancellation { step, component: i, predicted: predicted.next.d[i], observed });
            }
        }
        let mut series = Vec::with_capacity(6);
        for s in &images {
            let shifted = s.shift_down(m as u64)?;
            let mut unit: Vec<Rational> = shifted.unit().iter().take(opts.guard).cloned().collect();
            unit.extend(random_unit(&mut rng, opts.truncation.saturating_sub(unit.len())));
            series.push(shifted.with_unit(unit)?);
        }
        cur = CurveTrait { series, valuations: predicted.next.clone() };
        out.push(predicted.next);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct DrawResult {
    pub draw: usize,
    pub seed: u64,
    pub agrees: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub steps: usize,
    pub draws: Vec<DrawResult>,
    pub all_agree: bool,
}

/// Run `draws` independent series evolutions (random chart, random transverse
/// trait) and compare each with the valuation chain.
pub fn cross_check(draws: usize, steps: usize, seed: u64, truncation: usize) -> Result<CrossCheck> {
    let chain: Vec<ValuationVector> =
        valuation_chain(&ValuationVector::transverse(), steps)?.into_iter().map(|s| s.next).collect();
    let results: Vec<DrawResult> = (0..draws)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let chart = TriangleChart::random(&mut rng);
            let start = CurveTrait::transverse(&mut rng, truncation);
            let opts = EvolveOptions { truncation, guard: 0, seed: rng.gen() };
            match series_evolve(&start, steps, &chart, &opts) {
                Ok(v) => DrawResult { draw: i, seed: s, agrees: v == chain, error: None },
                Err(e) => DrawResult { draw: i, seed: s, agrees: false, error: Some(e.to_string()) },
            }
        })
        .collect();
    Ok(CrossCheck { steps, all_agree: results.iter().all(|r| r.agrees), draws: results })
}

/// `d_0` after `3k` steps divided by `d_0` after `3(k-1)` steps, for `k >= 1`.
pub fn block_ratios(v0: &ValuationVector, blocks: usize) -> Result<Vec<Rational>> {
    let sys = triangle_system();
    let orbit = crate::transitions::iterate(&sys, &v0.to_state(), 3 * blocks)?;
    Ok((1..=blocks)
        .map(|k| from_bigint(&orbit[3 * k].v[0]) / from_bigint(&orbit[3 * (k - 1)].v[0]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::to_f64;
    use crate::algebra::RatMatrix;
    use crate::transitions::triangle::{p0, p1, p2};

    #[test]
    fn first_three_steps() {
        let a = valuation_step(&ValuationVector::transverse()).unwrap();
        assert_eq!(a.next.d, [2, 1, 1, 1, 1, 0]);
        assert!(a.minimal_pairs.contains(&(3, 4)));
        let b = valuation_step(&a.next).unwrap();
        assert_eq!(b.next.d, [2, 1, 1, 1, 0, 0]);
        let c = valuation_step(&b.next).unwrap();
        assert_eq!(c.next.d, [3, 2, 2, 0, 1, 1]);
        assert_eq!(c.next.phase, 0);
    }

    #[test]
    fn chain_matches_matrix_products_and_stays_dominant() {
        let chain = valuation_chain(&ValuationVector::transverse(), 60).unwrap();
        let orbit = crate::transitions::iterate(&triangle_system(), &StateVector::basis(6, 0), 60).unwrap();
        for (k, s) in chain.iter().enumerate() {
            assert!(s.next.is_dominant() && s.next.is_normalized());
            assert_eq!(s.next.to_state(), orbit[k + 1]);
        }
    }

    #[test]
    fn minimal_pairs_match() {
        let r = verify_minimal_pairs(30).unwrap();
        assert!(r.all_match);
        let r3 = verify_minimal_pairs(3).unwrap();
        let pairs: Vec<_> = r3.entries.iter().map(|e| e.minimal_pair).collect();
        assert_eq!(pairs, vec![(3, 4), (3, 5), (4, 5)]);
    }

    #[test]
    fn permuted_matrix_detected() {
        let mut rows = p1().to_rows();
        rows.swap(0, 1);
        let broken = TransitionSystem::new(vec![p0(), RatMatrix::from_rows(rows).unwrap(), p2()]).unwrap();
        let r = verify_minimal_pairs_with(&broken, 30).unwrap();
        assert_eq!(r.first_mismatch, Some(2));
    }

    #[test]
    fn dominance_violation_reported() {
        let v = ValuationVector::new([0, 0, 0, 1, 0, 0], 0).unwrap();
        assert!(matches!(valuation_step(&v), Err(Error::DominanceViolated { .. })));
    }

    #[test]
    fn series_follow_valuations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let chart = TriangleChart::random(&mut rng);
        let start = CurveTrait::transverse(&mut rng, 16);
        let opts = EvolveOptions { truncation: 16, guard: 0, seed: 9 };
        let v = series_evolve(&start, 3, &chart, &opts).unwrap();
        assert_eq!(v[0].d, [2, 1, 1, 1, 1, 0]);
        assert_eq!(v[1].d, [2, 1, 1, 1, 0, 0]);
        assert_eq!(v[2].d, [3, 2, 2, 0, 1, 1]);
        assert!(series_evolve(&start, 0, &chart, &opts).is_err());
    }

    #[test]
    fn series_cross_check_small() {
        let c = cross_check(4, 12, 100, 8).unwrap();
        assert!(c.all_agree, "{c:?}");
    }

    #[test]
    fn block_ratio_converges() {
        let r = block_ratios(&ValuationVector::transverse(), 15).unwrap();
        let last = to_f64(r.last().unwrap());
        assert!((last - (2.0 + 5f64.sqrt())).abs() < 1e-6);
    }
}
