//! Run reports and the end-to-end pipelines behind the command-line tool.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::rational::{decimal_enclosure, fmt_rational, from_bigint, ten_to_minus};
use crate::algebra::{AlgebraicReal, Rational, UniPoly};
use crate::billiards::{self, Configuration, RationalPoint, Word};
use crate::elliptic;
use crate::error::{Error, Result};
use crate::germs::{self, ValuationVector};
use crate::picard;
use crate::transitions::triangle::{displayed_product, triangle_system};
use crate::transitions::{
    check_log_concavity, conic_line_matrix, dominant_growth, growth_estimate, inverse_tuple, iterate, DegreeTuple,
    SpectralData, StateVector, TransitionSystem,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Certificate {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Certificate { name: name.into(), passed, detail: detail.into() }
    }
}

/// Rows for CSV output; the first columns are always `step, phase`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: Value,
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            inputs: BTreeMap::new(),
            outputs: Value::Null,
            certificates: Vec::new(),
            table: None,
            timing_ms: None,
        }
    }

    pub fn input(mut self, k: &str, v: impl Serialize) -> Self {
        self.inputs.insert(k.into(), serde_json::to_value(v).expect("serializable input"));
        self
    }

    pub fn certify(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.certificates.push(Certificate::new(name, passed, detail));
    }

    pub fn passed(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }

    pub fn certificate(&self, name: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The table if there is one, otherwise the certificates.
    pub fn to_csv(&self) -> String {
        if let Some(t) = &self.table {
            return t.to_csv();
        }
        let mut t = Table::new(&["certificate", "passed", "detail"]);
        for c in &self.certificates {
            t.rows.push(vec![c.name.clone(), c.passed.to_string(), csv_field(&c.detail)]);
        }
        t.to_csv()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn tuple_json(t: &DegreeTuple, digits: u32) -> Value {
    json!(t.report(digits))
}

fn tuple_checks(r: &mut RunReport, label: &str, t: &DegreeTuple) -> Result<()> {
    let lc = check_log_concavity(t)?;
    r.certify(&format!("log_concave{label}"), lc.holds, format!("{} interior comparisons", lc.steps.len()));
    r.certify(&format!("inverse_fixed{label}"), inverse_tuple(t).equals(t), "tuple equals its reverse");
    Ok(())
}

/// `|x - a| < tol`, decided with an enclosure of `a` of width below `tol / 100`.
pub fn within(x: &Rational, a: &AlgebraicReal, tol: &Rational) -> bool {
    let a = a.refine(&(tol / Rational::from_integer(100.into())));
    let close = |d: Rational| &-tol < &d && &d < tol;
    close(x - a.lo()) && close(x - a.hi())
}

/// Degree tuple `(1, 2^N, 2^N, 2^N, 1)` for `N` very general points, with the
/// orbit avoidance check on an elliptic plane section when `N >= 3`.
pub fn reproduce_general(n: u32, digits: u32, horizon: usize) -> Result<RunReport> {
    let mut r = RunReport::new("reproduce general").input("n", n).input("precision", digits).input("horizon", horizon);
    let [l1, l2, l3] = picard::degree_tuple_generic(n)?;
    let one = AlgebraicReal::from_int(1);
    let t = DegreeTuple::new(vec![one.clone(), l1, l2, l3, one])?;
    let display = format!(
        "({})",
        t.values().iter().map(|v| fmt_rational(v.exact_value().expect("integer degrees"))).map(|s| s.trim_end_matches("/1").to_string()).collect::<Vec<_>>().join(", ")
    );
    let mut outputs = json!({ "tuple": display, "degrees": tuple_json(&t, digits) });
    tuple_checks(&mut r, "", &t)?;
    if n >= 3 {
        let av = elliptic::avoidance_check(n as usize, horizon)?;
        r.certify(
            "elliptic_avoidance",
            av.passed(),
            format!("{} hits over {} starts, horizon {horizon}", av.hits.len(), n),
        );
        outputs["elliptic"] = json!({
            "N": n,
            "hits": av.hits,
            "returns": av.returns.len(),
            "certificate": av.coeffs_after_sigma1().map(|c| json!({ "coeffs_after_sigma1": &c[..c.len().min(8)] })),
        });
    }
    r.outputs = outputs;
    Ok(r)
}

fn interior_bounds(mu: &AlgebraicReal) -> Result<[DegreeTuple; 2]> {
    let one = AlgebraicReal::from_int(1);
    let sq = mu.mul(mu)?;
    Ok([
        DegreeTuple::new(vec![one.clone(), mu.clone(), mu.clone(), mu.clone(), one.clone()])?,
        DegreeTuple::new(vec![one.clone(), mu.clone(), sq, mu.clone(), one])?,
    ])
}

/// `lambda_1 = lambda_3 = mu`; `lambda_2` is only bracketed, `mu <= lambda_2 <= mu^2`.
fn fourfold_tuple(r: &mut RunReport, sd: &SpectralData, digits: u32) -> Result<Value> {
    let [low, high] = interior_bounds(&sd.mu1)?;
    tuple_checks(r, "_lower", &low)?;
    tuple_checks(r, "_upper", &high)?;
    Ok(json!({
        "lambda_1": sd.mu1.to_report(digits),
        "lambda_3": sd.mu1.to_report(digits),
        "lambda_2_bounds": [low.values()[2].to_report(digits), high.values()[2].to_report(digits)],
    }))
}

fn spectral_certs(r: &mut RunReport, sd: &SpectralData) {
    r.certify("hypotheses", sd.flags.all(), format!("failed: {:?}", sd.flags.failed()));
    r.certify("dominance", sd.dominance.is_some(), "Graeffe root squaring with a Fujiwara bound");
}

pub fn conic_line_start() -> StateVector {
    StateVector::from_ints(0, &[0, 0, 1])
}

/// Growth for reflections in two points of a line and one point of a residual conic.
pub fn reproduce_conic_line(digits: u32) -> Result<RunReport> {
    let mut r = RunReport::new("reproduce conic-line").input("precision", digits);
    let m = conic_line_matrix();
    let cp = m.char_poly()?;
    let expected = &UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[-2, -5, 1]);
    r.certify("char_poly", cp == expected, format!("{} = (x - 1)(x^2 - 5x - 2)", cp.pretty()));
    let sd = dominant_growth(&m, &conic_line_start())?;
    spectral_certs(&mut r, &sd);
    r.certify("defining_polynomial", sd.factor == UniPoly::from_ints(&[-2, -5, 1]), sd.factor.pretty());
    let sys = TransitionSystem::single(m.clone())?;
    let orbit = iterate(&sys, &conic_line_start(), 13)?;
    let deltas: Vec<BigInt> = orbit.iter().map(|s| s.v[2].clone()).collect();
    let first: Vec<i64> = deltas.iter().take(5).map(|d| d.to_i64().unwrap()).collect();
    r.certify("delta_sequence", first == [1, 6, 36, 196, 1056], format!("{first:?}"));
    let g = growth_estimate(&deltas)?;
    let ok = within(&g.ratios[11], &sd.mu1, &ten_to_minus(6));
    r.certify("ratio_step_12", ok, format!("d_12/d_11 = {}", decimal_enclosure(&g.ratios[11], digits).0));
    let tuple = fourfold_tuple(&mut r, &sd, digits)?;
    r.outputs = json!({
        "matrix": m.to_rows().iter().map(|row| row.iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "spectral": sd.report(digits),
        "degrees": tuple,
        "delta_sequence": deltas.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    });
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleOptions {
    pub steps: usize,
    pub draws: usize,
    pub series_steps: usize,
    pub seed: u64,
    pub truncation: usize,
}

impl Default for TriangleOptions {
    fn default() -> Self {
        TriangleOptions { steps: 60, draws: 10, series_steps: 30, seed: 0, truncation: germs::DEFAULT_TRUNCATION }
    }
}

/// Growth for reflections in the vertices of a triangle of lines.
pub fn reproduce_triangle(digits: u32, opts: &TriangleOptions) -> Result<RunReport> {
    let mut r = RunReport::new("reproduce triangle").input("precision", digits).input("options", opts);
    let sys = triangle_system();
    let p = sys.period_product();
    r.certify("product", p == displayed_product(), "P_2 P_1 P_0 equals the displayed matrix");
    let cp = p.char_poly()?;
    let quoted = &(&UniPoly::x().pow(2) * &UniPoly::from_ints(&[-1, 1]).pow(2)) * &UniPoly::from_ints(&[-1, -4, 1]);
    r.certify("char_poly", cp == quoted, cp.pretty());
    let minimal = p.minimal_poly()?;
    let sd = dominant_growth(&p, &StateVector::basis(6, 0))?;
    spectral_certs(&mut r, &sd);
    r.certify("defining_polynomial", sd.factor == UniPoly::from_ints(&[-1, -4, 1]), sd.factor.pretty());
    let chain = germs::valuation_chain(&ValuationVector::transverse(), opts.steps)?;
    let orbit = iterate(&sys, &StateVector::basis(6, 0), opts.steps)?;
    let chain_ok = chain.iter().zip(&orbit[1..]).all(|(s, o)| s.next.to_state() == *o);
    r.certify("valuation_chain", chain_ok, format!("{} steps against P_i products", opts.steps));
    let pairs = germs::verify_minimal_pairs(opts.steps)?;
    r.certify("minimal_pairs", pairs.all_match, format!("first mismatch: {:?}", pairs.first_mismatch));
    let cc = germs::cross_check(opts.draws, opts.series_steps, opts.seed, opts.truncation)?;
    r.certify(
        "series_cross_check",
        cc.all_agree,
        format!("{} of {} draws agree over {} steps", cc.draws.iter().filter(|d| d.agrees).count(), cc.draws.len(), cc.steps),
    );
    let tuple = fourfold_tuple(&mut r, &sd, digits)?;
    r.outputs = json!({
        "char_poly": cp.pretty(),
        "minimal_poly": minimal.pretty(),
        "spectral": sd.report(digits),
        "degrees": tuple,
        "cross_check": cc,
    });
    Ok(r)
}

pub fn billiard_build(seed: u64) -> Result<(RunReport, Configuration)> {
    let cfg = billiards::build_configuration(seed)?;
    let mut r = RunReport::new("billiard build").input("seed", seed);
    r.certify("configuration", cfg.validate().is_ok(), "plane section splits as line times conic");
    r.outputs = configuration_json(&cfg);
    Ok((r, cfg))
}

pub fn configuration_json(cfg: &Configuration) -> Value {
    json!({
        "seed": cfg.seed,
        "surface": cfg.surface().form().pretty(),
        "line": cfg.line_form().pretty(),
        "conic": cfg.conic_form().pretty(),
        "quadric": cfg.quadric().pretty(),
        "a": cfg.a(),
        "b": cfg.b(),
        "p": cfg.center(crate::transitions::Reflection::P),
        "q": cfg.center(crate::transitions::Reflection::Q),
        "r": cfg.center(crate::transitions::Reflection::R),
    })
}

/// Parses `(x0:x1:x2:x3)`, `x0:x1:x2:x3` or comma-separated rationals.
pub fn parse_point(s: &str) -> Result<RationalPoint> {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let coords = inner
        .split([':', ','])
        .map(crate::algebra::rational::parse_rational)
        .collect::<Result<Vec<_>>>()?;
    RationalPoint::new(coords)
}

/// Orbit of `start` under repeated application of `word`, one reflection per step.
pub fn billiard_orbit(seed: u64, start: Option<&str>, word: &Word, steps: usize) -> Result<RunReport> {
    let cfg = billiards::build_configuration(seed)?;
    let x0 = match start {
        Some(s) => parse_point(s)?,
        None => cfg.line_point(&[Rational::one(), Rational::from_integer(2.into())])?,
    };
    if !cfg.surface().contains(&x0)? {
        return Err(Error::OffSurface);
    }
    let mut r = RunReport::new("billiard orbit").input("seed", seed).input("word", word.to_string()).input("steps", steps);
    let mut t = Table::new(&["step", "phase", "x0", "x1", "x2", "x3", "on_line", "s", "t"]);
    let letters: Vec<_> = word.letters().iter().rev().copied().collect();
    let mut x = x0;
    let mut failure = None;
    let mut on_surface = true;
    for step in 0..=steps {
        let (s, tt) = match cfg.line_param(&x) {
            Ok(st) => (fmt_rational(&st[0]), fmt_rational(&st[1])),
            Err(_) => (String::new(), String::new()),
        };
        let phase = if step == 0 { String::new() } else { letters[(step - 1) % letters.len()].to_string() };
        let mut row = vec![step.to_string(), phase];
        row.extend(x.to_strings());
        row.extend([cfg.on_line(&x).to_string(), s, tt]);
        t.rows.push(row);
        if step == steps {
            break;
        }
        match billiards::config::apply_reflection(&cfg, letters[step % letters.len()], &x) {
            Ok(y) => {
                on_surface &= cfg.surface().contains(&y)?;
                x = y;
            }
            Err(e) => {
                failure = Some(format!("step {}: {e}", step + 1));
                break;
            }
        }
    }
    r.certify("on_surface", on_surface, "every orbit point satisfies the cubic exactly");
    r.certify("orbit_defined", failure.is_none(), failure.clone().unwrap_or_else(|| "every reflection defined".into()));
    r.outputs = json!({ "configuration": configuration_json(&cfg), "points": t.rows.len() });
    r.table = Some(t);
    Ok(r)
}

/// Single-seed check, or a search over `seeds` stopping at the first success.
pub fn billiard_check(seeds: std::ops::Range<u64>, horizon: usize, precision: u32) -> Result<RunReport> {
    let mut r = RunReport::new("billiard check")
        .input("seeds", [seeds.start, seeds.end])
        .input("horizon", horizon)
        .input("precision", precision);
    if seeds.is_empty() {
        return Err(Error::InvalidArgument("empty seed range".into()));
    }
    let search = billiards::search_seeds(seeds, horizon, precision);
    let found = search.first_success.as_ref();
    r.certify(
        "attractor",
        !search.distinct_seeds.is_empty(),
        format!("{} of {} examined seeds have eigenvalues of distinct absolute value", search.distinct_seeds.len(), search.examined),
    );
    r.certify(
        "genericity",
        found.is_some(),
        match found {
            Some(c) => format!("seed {} passes with k0 = {:?}", c.seed, c.k0s()),
            None => "no seed passed: budget exhausted".into(),
        },
    );
    if let Some(c) = found {
        r.certify("k0_mod_3", c.k0s().iter().all(|k| k.rem_euclid(3) == 0), format!("{:?}", c.k0s()));
        let cfg = billiards::build_configuration(c.seed)?;
        let rm = billiards::return_map(&cfg, &Word::default_return())?;
        let fixes = rm.map.fixes(&cfg.line_param(cfg.a())?) && rm.map.fixes(&cfg.line_param(cfg.b())?);
        r.certify("return_map", rm.certified && fixes, format!("word {} fixes a and b", rm.word));
        r.outputs = json!({
            "seed": c.seed,
            "configuration": configuration_json(&cfg),
            "return_map": rm,
            "check": c,
            "examined": search.examined,
        });
    } else {
        r.outputs = json!({ "examined": search.examined, "distinct_seeds": search.distinct_seeds });
    }
    Ok(r)
}

/// Valuations of a random transverse trait pushed through the triangle
/// reflections, compared with the valuation step at every step.
pub fn germ_evolve(steps: usize, seed: u64, truncation: usize) -> Result<RunReport> {
    use rand::SeedableRng;
    let mut r = RunReport::new("germ evolve").input("steps", steps).input("seed", seed).input("truncation", truncation);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let chart = crate::reflection_maps::TriangleChart::random(&mut rng);
    let start = germs::CurveTrait::transverse(&mut rng, truncation);
    let opts = germs::EvolveOptions { truncation, guard: 0, seed };
    let evolved = germs::series_evolve(&start, steps, &chart, &opts);
    let chain = germs::valuation_chain(&ValuationVector::transverse(), steps)?;
    let mut t = Table::new(&["step", "phase", "d0", "d1", "d2", "d3", "d4", "d5", "ratio"]);
    let mut prev: Option<i64> = None;
    for (k, s) in chain.iter().enumerate() {
        let v = &s.next;
        let ratio = match prev {
            Some(p) if k % 3 == 2 && p > 0 => decimal_enclosure(&Rational::new(v.d[0].into(), p.into()), 9).0,
            _ => String::new(),
        };
        if k % 3 == 2 {
            prev = Some(v.d[0]);
        }
        let mut row = vec![(k + 1).to_string(), (k % 3).to_string()];
        row.extend(v.d.iter().map(|x| x.to_string()));
        row.push(ratio);
        t.rows.push(row);
    }
    match &evolved {
        Ok(v) => {
            let agrees = v.iter().zip(&chain).all(|(a, b)| *a == b.next);
            r.certify("series_agree", agrees, format!("{steps} steps"));
        }
        Err(e) => r.certify("series_agree", false, e.to_string()),
    }
    r.certify("consistent_with_P", chain.iter().all(|s| s.matches_transition), "valuation step equals the P_i product");
    r.outputs = json!({ "final": chain.last().map(|s| s.next.d) });
    r.table = Some(t);
    Ok(r)
}

pub fn germ_pairs(steps: usize) -> Result<RunReport> {
    let mut r = RunReport::new("germ pairs").input("steps", steps);
    let rep = germs::verify_minimal_pairs(steps)?;
    r.certify("minimal_pairs", rep.all_match, format!("first mismatch: {:?}", rep.first_mismatch));
    r.outputs = serde_json::to_value(&rep).expect("serializable");
    Ok(r)
}

pub fn elliptic_check(n: usize, horizon: usize) -> Result<RunReport> {
    let mut r = RunReport::new("elliptic check").input("n", n).input("horizon", horizon);
    let rep = elliptic::avoidance_check(n, horizon)?;
    r.certify("avoidance", rep.hits.is_empty(), format!("{} hits", rep.hits.len()));
    if n % 2 == 0 {
        r.certify(
            "even_certificate",
            rep.certificates.iter().all(|c| c.conclusive && c.expected_sequence),
            "coefficient drops by one per period",
        );
    } else {
        let w = elliptic::first_return_word(n)?;
        let o = elliptic::orbit(&elliptic::FormalPoint::basis(n, 1)?, &w)?;
        let clean = o.last() == o.first() && o[1..o.len() - 1].iter().all(|x| x.basis_index().is_none());
        r.certify("first_return", clean, format!("word {:?}", w.indices()));
    }
    r.outputs = json!({
        "N": n,
        "horizon": horizon,
        "hits": rep.hits,
        "returns": rep.returns,
        "certificate": rep.coeffs_after_sigma1().map(|c| json!({ "coeffs_after_sigma1": c })),
    });
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SystemChoice {
    ConicLine,
    Triangle,
}

impl std::str::FromStr for SystemChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conic-line" => Ok(SystemChoice::ConicLine),
            "triangle" => Ok(SystemChoice::Triangle),
            _ => Err(Error::Parse(format!("unknown system {s:?}"))),
        }
    }
}

/// Iterates a transition system; `ratio` compares the tracked entry one period apart.
pub fn transition_growth(system: SystemChoice, steps: usize, digits: u32) -> Result<RunReport> {
    let (name, sys, v0, tracked) = match system {
        SystemChoice::ConicLine => ("conic-line", TransitionSystem::single(conic_line_matrix())?, conic_line_start(), 2),
        SystemChoice::Triangle => ("triangle", triangle_system(), StateVector::basis(6, 0), 0),
    };
    transition_growth_with(name, &sys, &v0, tracked, steps, digits)
}

pub fn transition_growth_with(
    name: &str,
    sys: &TransitionSystem,
    v0: &StateVector,
    tracked: usize,
    steps: usize,
    digits: u32,
) -> Result<RunReport> {
    let mut r = RunReport::new("transition growth").input("system", name).input("steps", steps).input("precision", digits);
    let orbit = iterate(sys, v0, steps)?;
    let period = sys.period();
    let mut header = vec!["step".to_string(), "phase".to_string()];
    header.extend((0..sys.dim()).map(|i| format!("v{i}")));
    header.push("ratio".into());
    let mut t = Table { header, rows: Vec::new() };
    for (k, s) in orbit.iter().enumerate() {
        let mut row = vec![k.to_string(), s.phase.to_string()];
        row.extend(s.v.iter().map(|x| x.to_string()));
        let ratio = if k >= period && k % period == 0 && orbit[k - period].v[tracked] != BigInt::from(0) {
            let q = from_bigint(&s.v[tracked]) / from_bigint(&orbit[k - period].v[tracked]);
            decimal_enclosure(&q, digits).0
        } else {
            String::new()
        };
        row.push(ratio);
        t.rows.push(row);
    }
    let product = sys.period_product();
    let sd = dominant_growth(&product, v0);
    match &sd {
        Ok(sd) => {
            spectral_certs(&mut r, sd);
            r.outputs = json!({ "spectral": sd.report(digits) });
        }
        Err(e) => r.certify("hypotheses", false, e.to_string()),
    }
    r.table = Some(t);
    Ok(r)
}

/// Reads a transition system from JSON `{"period": k, "matrices": [...]}`.
pub fn parse_system(json_text: &str) -> Result<TransitionSystem> {
    serde_json::from_str(json_text).map_err(|e| Error::Parse(e.to_string()))
}
