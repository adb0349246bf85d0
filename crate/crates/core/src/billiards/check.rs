//! Bad points on `L` and the backward-orbit genericity check.
//!
//! Reflections are indexed cyclically: `sigma_k` has centre `p_{k mod 3}` with
//! `(p_0, p_1, p_2) = (p, q, r)`, so `sigma_0 ... sigma_5` is the default return word.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::config::{apply_reflection, reflect_on_line, Configuration, Word};
use super::mobius::{attractor_analysis, return_map, Attractor, AttractorReport, ReturnMap};
use super::RationalPoint;
use crate::algebra::rational::{decimal_enclosure, fmt_rational};
use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::transitions::Reflection;

fn centre_letter(k: i64) -> Reflection {
    match k.rem_euclid(3) {
        0 => Reflection::P,
        1 => Reflection::Q,
        _ => Reflection::R,
    }
}

/// `p'_i`: the residual point of `(T_{p_i} K . K)` on `L` besides `p_i`.
///
/// For a centre on `L` this is the second point of the residual conic on `L`;
/// for `r` it is where the tangent line of `C` at `r` meets `L`.
pub fn companion_point(cfg: &Configuration, c: Reflection) -> Result<RationalPoint> {
    let x = cfg.center(c);
    if cfg.on_line(x) {
        return reflect_on_line(cfg, x);
    }
    let g: Vec<Rational> = cfg.conic_form().gradient().iter().take(3).map(|d| d.eval(x.coords())).collect::<Result<_>>()?;
    let l: Vec<Rational> = (0..3).map(|i| {
        let mut e = vec![0; 4];
        e[i] = 1;
        cfg.line_form().coeff(&e)
    }).collect();
    let cross = vec![
        &g[1] * &l[2] - &g[2] * &l[1],
        &g[2] * &l[0] - &g[0] * &l[2],
        &g[0] * &l[1] - &g[1] * &l[0],
        Rational::zero(),
    ];
    RationalPoint::new(cross).map_err(|_| Error::InconsistentState("tangent line of C equals L".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadPoint {
    pub label: String,
    pub point: RationalPoint,
    /// `(s : t)` with respect to `a` and `b`.
    pub param: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BadPointSet {
    pub points: Vec<BadPoint>,
    /// `p_i` and `p'_i` for `i = 0, 1, 2`.
    pub forbidden: Vec<[RationalPoint; 2]>,
    pub collisions: Vec<String>,
}

/// The six bad points
/// `s5 s4 s3 s2 s1 (p_0)`, `s5 s4 s3 s2 s1 (p'_0)`, `s5 s4 s3 s2 (p_1)`,
/// `s5 s4 s3 s2 (p'_1)`, `s5 s4 s3 (p_2)`, `p'_2`.
pub fn bad_points(cfg: &Configuration) -> Result<BadPointSet> {
    let mut forbidden = Vec::new();
    let mut collisions = Vec::new();
    for (i, c) in [Reflection::P, Reflection::Q, Reflection::R].into_iter().enumerate() {
        let pc = companion_point(cfg, c)?;
        if pc == *cfg.center(c) {
            collisions.push(format!("p'_{i} = p_{i}"));
        }
        if pc == *cfg.a() || pc == *cfg.b() {
            collisions.push(format!("p'_{i} lies on C"));
        }
        forbidden.push([cfg.center(c).clone(), pc]);
    }
    let push = |first: i64, x: &RationalPoint| -> Result<RationalPoint> {
        (first..=5).try_fold(x.clone(), |y, k| apply_reflection(cfg, centre_letter(k), &y))
    };
    let sources: [(i64, usize, usize, &str); 6] = [
        (1, 0, 0, "s5s4s3s2s1(p_0)"),
        (1, 0, 1, "s5s4s3s2s1(p'_0)"),
        (2, 1, 0, "s5s4s3s2(p_1)"),
        (2, 1, 1, "s5s4s3s2(p'_1)"),
        (3, 2, 0, "s5s4s3(p_2)"),
        (6, 2, 1, "p'_2"),
    ];
    let mut points: Vec<BadPoint> = Vec::new();
    for (first, i, j, label) in sources {
        let point = push(first, &forbidden[i][j])?;
        if !cfg.on_line(&point) {
            return Err(Error::InconsistentState(format!("bad point {label} is off L")));
        }
        let st = cfg.line_param(&point)?;
        if let Some(prev) = points.iter().find(|b| b.point == point) {
            collisions.push(format!("{label} = {}", prev.label));
        }
        points.push(BadPoint { label: label.into(), point, param: [fmt_rational(&st[0]), fmt_rational(&st[1])] });
    }
    Ok(BadPointSet { points, forbidden, collisions })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Success,
    Rejected,
    Inconclusive,
}

/// One distinguished point `p_i` pushed backwards: `x_k = sigma_k (x_{k+1})`, `x_i = p_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCheck {
    pub i: i64,
    pub status: CheckStatus,
    pub k0: Option<i64>,
    /// Enclosure of `|z(x_{k0})|` in the attractor chart.
    pub distance: Option<(String, String)>,
    pub steps: usize,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub word: String,
    pub status: CheckStatus,
    pub attractor: AttractorReport,
    pub chart: String,
    /// Enclosure of `min |z(y)|` over the bad points.
    pub safe_radius: Option<(String, String)>,
    pub precision: u32,
    pub bad_points: Vec<BadPoint>,
    pub collisions: Vec<String>,
    pub orbits: Vec<OrbitCheck>,
    pub reason: Option<String>,
}

impl CheckReport {
    /// The `k0` values recorded for the three residues.
    pub fn k0s(&self) -> Vec<i64> {
        self.orbits.iter().filter_map(|o| o.k0).collect()
    }
}

/// `|z|` in the chart putting the attractor at 0; `None` at infinity.
fn chart_abs(st: &[Rational; 2], att: Attractor) -> Option<Rational> {
    let (num, den) = match att {
        Attractor::B => (&st[0], &st[1]),
        Attractor::A => (&st[1], &st[0]),
    };
    (!den.is_zero()).then(|| (num / den).abs())
}

/// Checks that the backward orbits of `p, q, r` avoid every `p_{k-1}, p'_{k-1}`
/// until they enter the disc around the attractor bounded by the bad points.
pub fn check_configuration(cfg: &Configuration, horizon: usize, precision: u32) -> Result<CheckReport> {
    let word = Word::default_return();
    let rm: ReturnMap = return_map(cfg, &word)?;
    let a = cfg.line_param(cfg.a())?;
    let b = cfg.line_param(cfg.b())?;
    let attractor = attractor_analysis(&rm.map, &a, &b)?;
    let chart = attractor.chart.clone();
    let mut report = CheckReport {
        seed: cfg.seed,
        word: word.to_string(),
        status: CheckStatus::Inconclusive,
        attractor: attractor.clone(),
        chart,
        safe_radius: None,
        precision,
        bad_points: Vec::new(),
        collisions: Vec::new(),
        orbits: Vec::new(),
        reason: None,
    };
    let Some(att) = attractor.attractor else {
        report.reason = Some("eigenvalues of the return map have equal absolute value".into());
        return Ok(report);
    };
    let bad = match bad_points(cfg) {
        Ok(b) => b,
        Err(e) => {
            report.status = CheckStatus::Rejected;
            report.reason = Some(format!("bad points: {e}"));
            return Ok(report);
        }
    };
    report.bad_points = bad.points.clone();
    report.collisions = bad.collisions.clone();
    let radius = bad
        .points
        .iter()
        .filter_map(|p| chart_abs(&cfg.line_param(&p.point).unwrap(), att))
        .min();
    let Some(radius) = radius else {
        report.reason = Some("every bad point sits at the repelling fixed point".into());
        return Ok(report);
    };
    if radius.is_zero() {
        report.reason = Some("a bad point coincides with the attractor".into());
        return Ok(report);
    }
    report.safe_radius = Some(decimal_enclosure(&radius, precision));
    for i in 3..6 {
        report.orbits.push(backward_orbit(cfg, &bad.forbidden, i, horizon, &radius, att, precision));
    }
    report.status = if report.orbits.iter().any(|o| o.status == CheckStatus::Rejected) {
        CheckStatus::Rejected
    } else if report.orbits.iter().all(|o| o.status == CheckStatus::Success) {
        CheckStatus::Success
    } else {
        CheckStatus::Inconclusive
    };
    Ok(report)
}

fn backward_orbit(
    cfg: &Configuration,
    forbidden: &[[RationalPoint; 2]],
    i: i64,
    horizon: usize,
    radius: &Rational,
    att: Attractor,
    precision: u32,
) -> OrbitCheck {
    let mut out = OrbitCheck { i, status: CheckStatus::Inconclusive, k0: None, distance: None, steps: 0, reason: None };
    let mut x = cfg.center(centre_letter(i)).clone();
    let mut k = i;
    loop {
        // x = x_k; it must avoid p_{k-1} and p'_{k-1}
        let f = &forbidden[(k - 1).rem_euclid(3) as usize];
        if x == f[0] || x == f[1] {
            out.status = CheckStatus::Rejected;
            out.reason = Some(format!("x_{k} collides with a forbidden point of index {}", k - 1));
            return out;
        }
        if k < i && k.rem_euclid(3) == 0 && cfg.on_line(&x) {
            let st = cfg.line_param(&x).expect("on L");
            if let Some(d) = chart_abs(&st, att) {
                if &d < radius {
                    out.status = CheckStatus::Success;
                    out.k0 = Some(k);
                    out.distance = Some(decimal_enclosure(&d, precision));
                    return out;
                }
            }
        }
        if out.steps >= horizon {
            out.reason = Some(format!("horizon {horizon} exhausted"));
            return out;
        }
        k -= 1;
        x = match apply_reflection(cfg, centre_letter(k), &x) {
            Ok(y) => y,
            Err(e) => {
                out.status = CheckStatus::Rejected;
                out.reason = Some(format!("x_{k}: {e}"));
                return out;
            }
        };
        out.steps += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedSearch {
    pub range: (u64, u64),
    /// Seeds examined, in order; the search stops after the chunk holding the first success.
    pub examined: usize,
    /// Examined seeds whose return map has eigenvalues of distinct absolute value.
    pub distinct_seeds: Vec<u64>,
    pub first_success: Option<CheckReport>,
}

/// Runs `check_configuration` over `seeds` in parallel chunks and keeps the
/// smallest passing seed.
pub fn search_seeds(seeds: std::ops::Range<u64>, horizon: usize, precision: u32) -> SeedSearch {
    let chunk = (4 * rayon::current_num_threads()).max(1) as u64;
    let mut out = SeedSearch { range: (seeds.start, seeds.end), examined: 0, distinct_seeds: vec![], first_success: None };
    let mut lo = seeds.start;
    while lo < seeds.end && out.first_success.is_none() {
        let hi = (lo + chunk).min(seeds.end);
        let results: Vec<Option<CheckReport>> =
            (lo..hi).into_par_iter().map(|s| check_seed(s, horizon, precision)).collect();
        out.examined += (hi - lo) as usize;
        for r in results.into_iter().flatten() {
            if r.attractor.distinct_absolute_values() {
                out.distinct_seeds.push(r.seed);
            }
            if out.first_success.is_none() && r.status == CheckStatus::Success {
                out.first_success = Some(r);
            }
        }
        lo = hi;
    }
    out
}

/// Builds and checks one seed; `None` if the seed yields no usable configuration.
pub fn check_seed(seed: u64, horizon: usize, precision: u32) -> Option<CheckReport> {
    let cfg = super::build_configuration(seed).ok()?;
    check_configuration(&cfg, horizon, precision).ok()
}
