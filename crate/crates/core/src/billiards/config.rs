//! A cubic surface `K` whose plane section `x_3 = 0` splits as a line `L` and a
//! conic `C`, with reflection centres `p, q` on `L` and `r` on `C`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{small_nonzero, third_intersection, CubicHypersurface, RationalPoint};
use crate::algebra::linalg;
use crate::algebra::rational::int;
use crate::algebra::{MultiPoly, RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::transitions::Reflection;

/// Attempts per seed before giving up.
pub const BUILD_BUDGET: usize = 256;

const N: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub seed: u64,
    surface: CubicHypersurface,
    /// Linear form in `x_0, x_1, x_2` cutting out `L` in the plane `x_3 = 0`.
    line_form: MultiPoly,
    /// Quadratic form in `x_0, x_1, x_2` cutting out `C` in the plane.
    conic_form: MultiPoly,
    quadric: MultiPoly,
    a: RationalPoint,
    b: RationalPoint,
    p: RationalPoint,
    q: RationalPoint,
    r: RationalPoint,
}

fn plane_point<R: Rng + ?Sized>(rng: &mut R) -> Option<RationalPoint> {
    let v: Vec<Rational> = (0..3).map(|_| int(rng.gen_range(-5i64..=5))).chain([Rational::zero()]).collect();
    RationalPoint::new(v).ok()
}

fn det3(m: [[&Rational; 3]; 3]) -> Rational {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `det(a, b, x)` restricted to the first three coordinates.
fn line_through(a: &RationalPoint, b: &RationalPoint) -> MultiPoly {
    let (a, b) = (a.coords(), b.coords());
    MultiPoly::linear(&[
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
        Rational::zero(),
    ])
}

fn plane_quadratic_monomials() -> Vec<Vec<u32>> {
    crate::algebra::mpoly::monomials(3, 2).into_iter().map(|mut e| {
        e.push(0);
        e
    }).collect()
}

/// Conic through five plane points, if unique and nondegenerate.
fn conic_through(points: &[&RationalPoint]) -> Option<MultiPoly> {
    let monos = plane_quadratic_monomials();
    let rows: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| monos.iter().map(|e| MultiPoly::monomial(N, e.clone(), Rational::one()).eval(p.coords()).unwrap()).collect())
        .collect();
    let ker = linalg::kernel(&rows, monos.len(), &Rational::one());
    if ker.len() != 1 {
        return None;
    }
    let c = MultiPoly::from_terms(N, monos.into_iter().zip(ker[0].clone())).ok()?;
    // symmetric matrix of the conic
    let h = |i: usize, j: usize| c.partial(i).partial(j).eval(&vec![Rational::zero(); N]).unwrap();
    let m: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| h(i, j)).collect()).collect();
    let d = det3([[&m[0][0], &m[0][1], &m[0][2]], [&m[1][0], &m[1][1], &m[1][2]], [&m[2][0], &m[2][1], &m[2][2]]]);
    (!d.is_zero()).then_some(c)
}

fn random_quadric<R: Rng + ?Sized>(rng: &mut R) -> MultiPoly {
    let mut q = MultiPoly::zero(N);
    for e in crate::algebra::mpoly::monomials(N, 2) {
        q.add_term(e, int(rng.gen_range(-4i64..=4)));
    }
    q
}

/// Random configuration; the same seed always gives the same configuration.
pub fn build_configuration(seed: u64) -> Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..BUILD_BUDGET {
        if let Some(cfg) = try_build(&mut rng, seed) {
            return Ok(cfg);
        }
    }
    Err(Error::BudgetExhausted { seed })
}

fn try_build(rng: &mut ChaCha8Rng, seed: u64) -> Option<Configuration> {
    let a = plane_point(rng)?;
    let b = plane_point(rng)?;
    if a == b {
        return None;
    }
    let line_form = line_through(&a, &b);
    let (r, s1, s2) = (plane_point(rng)?, plane_point(rng)?, plane_point(rng)?);
    if [&r, &s1, &s2].iter().any(|x| line_form.eval(x.coords()).unwrap().is_zero()) {
        return None;
    }
    let conic_form = conic_through(&[&a, &b, &r, &s1, &s2])?;
    let lam = &small_nonzero(rng, 6) / &int(rng.gen_range(1i64..=4));
    let mu = &small_nonzero(rng, 6) / &int(rng.gen_range(1i64..=4));
    let p = a.combine(&Rational::one(), &b, &lam).ok()?;
    let q = a.combine(&Rational::one(), &b, &mu).ok()?;
    if p == q {
        return None;
    }
    let quadric = random_quadric(rng);
    let x3 = MultiPoly::var(N, 3);
    let surface = CubicHypersurface::new(&(&line_form * &conic_form) + &(&x3 * &quadric)).ok()?;
    let cfg = Configuration { seed, surface, line_form, conic_form, quadric, a, b, p, q, r };
    cfg.validate().ok()?;
    Some(cfg)
}

impl Configuration {
    pub fn surface(&self) -> &CubicHypersurface {
        &self.surface
    }

    pub fn line_form(&self) -> &MultiPoly {
        &self.line_form
    }

    pub fn conic_form(&self) -> &MultiPoly {
        &self.conic_form
    }

    pub fn quadric(&self) -> &MultiPoly {
        &self.quadric
    }

    pub fn a(&self) -> &RationalPoint {
        &self.a
    }

    pub fn b(&self) -> &RationalPoint {
        &self.b
    }

    pub fn center(&self, r: Reflection) -> &RationalPoint {
        match r {
            Reflection::P => &self.p,
            Reflection::Q => &self.q,
            Reflection::R => &self.r,
        }
    }

    /// Same surface with new reflection centres; `p = q` is allowed.
    pub fn with_centers(&self, p: RationalPoint, q: RationalPoint, r: RationalPoint) -> Result<Self> {
        let cfg = Configuration { p, q, r, ..self.clone() };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn on_line(&self, x: &RationalPoint) -> bool {
        x.coords()[3].is_zero() && self.line_form.eval(x.coords()).unwrap().is_zero()
    }

    pub fn on_conic(&self, x: &RationalPoint) -> bool {
        x.coords()[3].is_zero() && self.conic_form.eval(x.coords()).unwrap().is_zero()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfiguration(m.to_string()));
        let in_plane = self.surface.form().set_zero(3);
        if in_plane != &self.line_form * &self.conic_form {
            return bad("plane section is not the line times the conic");
        }
        for (name, x) in [("a", &self.a), ("b", &self.b), ("p", &self.p), ("q", &self.q), ("r", &self.r)] {
            if x.dim() != N {
                return bad(&format!("{name} has the wrong number of coordinates"));
            }
            if !self.surface.is_smooth_at(x)? {
                return bad(&format!("surface is singular at {name}"));
            }
        }
        if self.a == self.b {
            return bad("a and b coincide");
        }
        for (name, x) in [("a", &self.a), ("b", &self.b)] {
            if !self.on_line(x) || !self.on_conic(x) {
                return bad(&format!("{name} is not on both L and C"));
            }
        }
        if !self.on_line(&self.p) || !self.on_line(&self.q) {
            return bad("p and q must lie on L");
        }
        if !self.on_conic(&self.r) || self.on_line(&self.r) {
            return bad("r must lie on C off L");
        }
        for (name, x) in [("p", &self.p), ("q", &self.q)] {
            if *x == self.a || *x == self.b {
                return bad(&format!("{name} coincides with a point of L and C"));
            }
        }
        Ok(())
    }

    /// Coordinates `(s, t)` of `x = s a + t b` on `L`, scaled with first nonzero entry 1.
    pub fn line_param(&self, x: &RationalPoint) -> Result<[Rational; 2]> {
        if !self.on_line(x) {
            return Err(Error::NotOnLine);
        }
        let (a, b, v) = (self.a.coords(), self.b.coords(), x.coords());
        for i in 0..3 {
            for j in i + 1..3 {
                let d = &a[i] * &b[j] - &a[j] * &b[i];
                if d.is_zero() {
                    continue;
                }
                let s = (&v[i] * &b[j] - &v[j] * &b[i]) / &d;
                let t = (&a[i] * &v[j] - &a[j] * &v[i]) / &d;
                return Ok(normalize_pair(s, t));
            }
        }
        Err(Error::InconsistentState("a and b do not span a line".into()))
    }

    pub fn line_point(&self, st: &[Rational; 2]) -> Result<RationalPoint> {
        self.a.combine(&st[0], &self.b, &st[1])
    }
}

pub(crate) fn normalize_pair(s: Rational, t: Rational) -> [Rational; 2] {
    if !s.is_zero() {
        let t = &t / &s;
        [Rational::one(), t]
    } else {
        [Rational::zero(), Rational::one()]
    }
}

/// Image of a point of `L` under any reflection centred on `L`: with
/// `T_x K . K = L + C_x`, the second point of `C_x` on `L`.
pub fn reflect_on_line(cfg: &Configuration, x: &RationalPoint) -> Result<RationalPoint> {
    if !cfg.on_line(x) {
        return Err(Error::NotOnLine);
    }
    let g = cfg.surface.gradient_at(x)?;
    if g.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint);
    }
    let w = if *x == cfg.b { &cfg.a } else { &cfg.b };
    let u = linalg::kernel(&[g], N, &Rational::one())
        .into_iter()
        .find(|u| {
            let rows = vec![x.coords().to_vec(), w.coords().to_vec(), u.clone()];
            RatMatrix::from_rows(rows).map(|m| m.rank() == 3).unwrap_or(false)
        })
        .ok_or_else(|| Error::InconsistentState("tangent plane basis".into()))?;
    let subs: Vec<MultiPoly> = (0..N)
        .map(|i| MultiPoly::linear(&[x.coords()[i].clone(), w.coords()[i].clone(), u[i].clone()]))
        .collect();
    let restricted = cfg.surface.form().compose(&subs)?;
    let residual = restricted.div_monomial(&[0, 0, 1]).map_err(|_| Error::SingularPoint)?;
    let on_line = residual.set_zero(2);
    let coef = |e: [u32; 3]| on_line.coeff(&e);
    let (aa, bb, cc) = (coef([2, 0, 0]), coef([1, 1, 0]), coef([0, 2, 0]));
    if !aa.is_zero() {
        return Err(Error::InconsistentState("residual conic misses the point".into()));
    }
    if bb.is_zero() && cc.is_zero() {
        return Err(Error::DegenerateTangency);
    }
    x.combine(&-cc, w, &bb)
}

/// A word in the reflections, read as a composition: the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<Reflection>);

impl Word {
    pub fn new(letters: Vec<Reflection>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Reflection] {
        &self.0
    }

    /// `sigma_p sigma_q sigma_r sigma_p sigma_q sigma_r`.
    pub fn default_return() -> Self {
        "pqrpqr".parse().unwrap()
    }

    pub fn apply(&self, cfg: &Configuration, x: &RationalPoint) -> Result<RationalPoint> {
        self.0.iter().rev().try_fold(x.clone(), |y, &r| apply_reflection(cfg, r, &y))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s.chars().map(|c| c.to_string().parse()).collect::<Result<Vec<Reflection>>>()?;
        if letters.is_empty() {
            return Err(Error::Parse("empty word".into()));
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.0 {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

/// `sigma_c(x)` on the surface.
pub fn apply_reflection(cfg: &Configuration, c: Reflection, x: &RationalPoint) -> Result<RationalPoint> {
    let centre = cfg.center(c);
    if centre == x {
        return Err(Error::Indeterminate(format!("moving point equals the centre of sigma_{c}")));
    }
    if cfg.on_line(x) && cfg.on_line(centre) {
        reflect_on_line(cfg, x)
    } else {
        third_intersection(&cfg.surface, centre, x)
    }
}
