//! Explicit reflection formulas in adapted coordinates and exact checks of
//! their defining identities.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::mpoly::Exponent;
use crate::algebra::rational::{int, rat};
use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

pub const NVARS: usize = 6;

/// `X_1 X_0^2 + X_0 q + c = 0` with `q`, `c` forms in `X_1..X_5`:
/// the point `p = (1:0:...:0)` lies on the cubic with tangent hyperplane `X_1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedCubic {
    q: MultiPoly,
    c: MultiPoly,
}

fn check_form(p: &MultiPoly, degree: u32, name: &str) -> Result<()> {
    if p.nvars() != NVARS {
        return Err(Error::ArityMismatch { expected: NVARS, found: p.nvars() });
    }
    if !p.is_zero() && !p.is_homogeneous_of(degree) {
        return Err(Error::InvalidArgument(format!("{name} must be a form of degree {degree}")));
    }
    if p.support_vars().contains(&0) {
        return Err(Error::InvalidArgument(format!("{name} must not involve X0")));
    }
    Ok(())
}

/// Exponent vectors of all monomials of degree `d` in `X_1..X_5`.
fn monomials_without_x0(d: u32) -> Vec<Exponent> {
    fn rec(i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i == NVARS - 1 {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(1, d, &mut vec![0; NVARS], &mut out);
    out
}

/// Small nonzero rational `a/b` with `|a| <= 9`, `1 <= b <= 5`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut a = 0;
    while a == 0 {
        a = rng.gen_range(-9i64..=9);
    }
    rat(a, rng.gen_range(1i64..=5))
}

fn random_form<R: Rng + ?Sized>(rng: &mut R, d: u32) -> MultiPoly {
    let mut p = MultiPoly::zero(NVARS);
    for e in monomials_without_x0(d) {
        if rng.gen_bool(0.7) {
            p.add_term(e, small_rational(rng));
        }
    }
    p
}

impl AdaptedCubic {
    pub fn new(q: MultiPoly, c: MultiPoly) -> Result<Self> {
        check_form(&q, 2, "q")?;
        check_form(&c, 3, "c")?;
        Ok(AdaptedCubic { q, c })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        AdaptedCubic { q: random_form(rng, 2), c: random_form(rng, 3) }
    }

    pub fn q(&self) -> &MultiPoly {
        &self.q
    }

    pub fn c(&self) -> &MultiPoly {
        &self.c
    }

    /// `F = X_1 X_0^2 + X_0 q + c`.
    pub fn equation(&self) -> MultiPoly {
        let x0 = MultiPoly::var(NVARS, 0);
        let x1 = MultiPoly::var(NVARS, 1);
        &(&(&x1 * &x0.pow(2)) + &(&x0 * &self.q)) + &self.c
    }
}

/// A rational map given by homogeneous components of a common degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveMap {
    components: Vec<MultiPoly>,
}

impl ProjectiveMap {
    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::InvalidArgument("a map needs at least one component".into()));
        };
        let n = first.nvars();
        let mut degree = None;
        for p in &components {
            if p.nvars() != n {
                return Err(Error::ArityMismatch { expected: n, found: p.nvars() });
            }
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(Error::InvalidArgument("components must be homogeneous".into()));
            }
            match (degree, p.total_degree()) {
                (None, d) => degree = d,
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::InvalidArgument(format!("component degrees {a} and {b} differ")))
                }
                _ => {}
            }
        }
        if degree.is_none() {
            return Err(Error::InvalidArgument("all components vanish".into()));
        }
        Ok(ProjectiveMap { components })
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().find_map(|p| p.total_degree()).unwrap_or(0)
    }

    /// `self(other(X))`.
    pub fn compose(&self, other: &ProjectiveMap) -> Result<ProjectiveMap> {
        let comps = self.components.iter().map(|p| p.compose(&other.components)).collect::<Result<Vec<_>>>()?;
        ProjectiveMap::new(comps)
    }

    /// Divide out the largest common monomial factor.
    pub fn remove_content(&self) -> ProjectiveMap {
        let n = self.components[0].nvars();
        let content = self
            .components
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.monomial_content())
            .reduce(|a, b| a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect())
            .unwrap_or_else(|| vec![0; n]);
        ProjectiveMap {
            components: self.components.iter().map(|p| p.div_monomial(&content).expect("content divides")).collect(),
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|p| p.eval(x)).collect()
    }

    /// Each component equals `factor * X_i`.
    pub fn is_scalar_identity(&self, factor: &MultiPoly) -> bool {
        let n = self.components[0].nvars();
        self.components.len() == n
            && self.components.iter().enumerate().all(|(i, p)| *p == factor * &MultiPoly::var(n, i))
    }
}

/// Whether two vectors are proportional (equal as projective points).
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    use num_traits::Zero;
    if a.len() != b.len() || a.iter().all(Zero::is_zero) || b.iter().all(Zero::is_zero) {
        return false;
    }
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// `sigma_p = (X_0 X_1 + q, -X_1^2, -X_1 X_2, ..., -X_1 X_5)`.
pub fn single_reflection_formula(ac: &AdaptedCubic) -> ProjectiveMap {
    let x = |i| MultiPoly::var(NVARS, i);
    let mut comps = vec![&(&x(0) * &x(1)) + &ac.q];
    for i in 1..NVARS {
        comps.push(-(&x(1) * &x(i)));
    }
    ProjectiveMap::new(comps).expect("quadratic components")
}

fn minus_x1_cubed() -> MultiPoly {
    -MultiPoly::var(NVARS, 1).pow(3)
}

/// `F(sigma(X)) = -X_1^3 F(X)` for the given map.
pub fn verify_preserves_cubic_with(ac: &AdaptedCubic, sigma: &ProjectiveMap) -> Result<bool> {
    let f = ac.equation();
    Ok(f.compose(sigma.components())? == &minus_x1_cubed() * &f)
}

pub fn verify_preserves_cubic(ac: &AdaptedCubic) -> bool {
    verify_preserves_cubic_with(ac, &single_reflection_formula(ac)).expect("arity fixed")
}

/// `sigma(sigma(X)) = -X_1^3 X` componentwise.
pub fn verify_involution_with(sigma: &ProjectiveMap) -> Result<bool> {
    Ok(sigma.compose(sigma)?.is_scalar_identity(&minus_x1_cubed()))
}

pub fn verify_involution(ac: &AdaptedCubic) -> bool {
    verify_involution_with(&single_reflection_formula(ac)).expect("arity fixed")
}

/// Set of quadratic monomials in `x_0..x_5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialSupport {
    monomials: BTreeSet<Exponent>,
}

fn quad(i: usize, j: usize) -> Exponent {
    let mut e = vec![0; NVARS];
    e[i] += 1;
    e[j] += 1;
    e
}

impl MonomialSupport {
    /// `(x_0, x_1, x_2) . (x_a for a in row)` plus the listed cross terms.
    fn build(row: &[usize], extra: &[(usize, usize)]) -> Self {
        let mut monomials = BTreeSet::new();
        for i in 0..3 {
            for &j in row {
                monomials.insert(quad(i, j));
            }
        }
        for &(i, j) in extra {
            monomials.insert(quad(i, j));
        }
        MonomialSupport { monomials }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.monomials.contains(&quad(i, j))
    }

    pub fn contains_exponent(&self, e: &[u32]) -> bool {
        self.monomials.contains(e)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Exponent> {
        self.monomials.iter()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Whether every term of `p` is in the support.
    pub fn spans(&self, p: &MultiPoly) -> bool {
        p.terms().keys().all(|e| self.monomials.contains(e))
    }
}

/// Generators `M_0, M_1, M_2` of the ideals attached to the three tangent divisors.
pub fn monomial_supports() -> [MonomialSupport; 3] {
    [
        MonomialSupport::build(&[0, 1, 2, 3, 4], &[(3, 4), (0, 5)]),
        MonomialSupport::build(&[0, 1, 2, 3, 5], &[(3, 5), (1, 4)]),
        MonomialSupport::build(&[0, 1, 2, 4, 5], &[(4, 5), (2, 3)]),
    ]
}

/// Coordinates `x_0..x_5` with `p_0 = e_5`, `p_1 = e_4`, `p_2 = e_3` and
/// `T_{p_i} X = {x_i = 0}`; `Q_l` spans into `M_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleChart {
    q: [MultiPoly; 3],
}

impl TriangleChart {
    pub fn new(q: [MultiPoly; 3]) -> Result<Self> {
        let supports = monomial_supports();
        for (l, (p, m)) in q.iter().zip(&supports).enumerate() {
            if p.nvars() != NVARS {
                return Err(Error::ArityMismatch { expected: NVARS, found: p.nvars() });
            }
            if let Some(e) = p.terms().keys().find(|e| !m.contains_exponent(e)) {
                return Err(Error::OutsideSupport(format!("Q_{l} has monomial {e:?} outside M_{l}")));
            }
        }
        Ok(TriangleChart { q })
    }

    /// Every monomial of `M_l` with a random nonzero small coefficient.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let q = monomial_supports().map(|m| {
            let mut p = MultiPoly::zero(NVARS);
            for e in m.monomials() {
                p.add_term(e.clone(), small_rational(rng));
            }
            p
        });
        TriangleChart { q }
    }

    pub fn q(&self, l: usize) -> &MultiPoly {
        &self.q[l]
    }

    /// Index of the coordinate holding `Q_l` in `sigma_{p_l}`.
    pub fn marked_coordinate(l: usize) -> usize {
        5 - l
    }
}

/// `sigma_{p_l} = x_l * (x_0, ..., x_5)` with coordinate `5 - l` replaced by `Q_l`.
pub fn triangle_formulas(chart: &TriangleChart) -> Result<[ProjectiveMap; 3]> {
    let chart = TriangleChart::new(chart.q.clone())?;
    let build = |l: usize| {
        let xl = MultiPoly::var(NVARS, l);
        let comps = (0..NVARS)
            .map(|i| if i == TriangleChart::marked_coordinate(l) { chart.q[l].clone() } else { &xl * &MultiPoly::var(NVARS, i) })
            .collect();
        ProjectiveMap::new(comps)
    };
    Ok([build(0)?, build(1)?, build(2)?])
}

/// Coefficient-free form `sum x_i x_j` over a support, for tests and defaults.
pub fn support_sum(m: &MonomialSupport) -> MultiPoly {
    let mut p = MultiPoly::zero(NVARS);
    for e in m.monomials() {
        p.add_term(e.clone(), int(1));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(NVARS, i)
    }

    #[test]
    fn degenerate_q() {
        let ac = AdaptedCubic::new(MultiPoly::zero(NVARS), x(2).pow(3)).unwrap();
        let s = single_reflection_formula(&ac).remove_content();
        let expected: Vec<MultiPoly> = (0..NVARS).map(|i| if i == 0 { x(0) } else { -x(i) }).collect();
        assert_eq!(s.components(), expected.as_slice());
        assert!(verify_preserves_cubic(&ac));
        assert!(verify_involution(&ac));
    }

    #[test]
    fn random_cubics_satisfy_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ac = AdaptedCubic::random(&mut rng);
            assert!(verify_preserves_cubic(&ac));
            assert!(verify_involution(&ac));
        }
    }

    #[test]
    fn deliberate_breaks_detected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ac = AdaptedCubic::random(&mut rng);
        let s = single_reflection_formula(&ac);
        let mut comps = s.components().to_vec();
        comps[0] = &x(0) * &x(1);
        assert!(!verify_preserves_cubic_with(&ac, &ProjectiveMap::new(comps).unwrap()).unwrap());
        let mut comps = s.components().to_vec();
        comps[3] = -comps[3].clone();
        assert!(!verify_involution_with(&ProjectiveMap::new(comps).unwrap()).unwrap());
    }

    #[test]
    fn cubic_validation() {
        assert!(AdaptedCubic::new(&x(0) * &x(1), x(2).pow(3)).is_err());
        assert!(AdaptedCubic::new(x(1), x(2).pow(3)).is_err());
    }

    #[test]
    fn supports() {
        let [m0, m1, m2] = monomial_supports();
        assert!(m0.contains(3, 4) && m0.contains(0, 5));
        assert!(m2.contains(2, 3));
        assert!(!m0.contains(4, 5));
        assert!(!m1.contains(0, 4));
        assert_eq!(m0.len(), 15 - 3 + 2);
    }

    #[test]
    fn triangle_examples() {
        let [m0, m1, m2] = monomial_supports();
        let chart = TriangleChart::new([&x(3) * &x(4), support_sum(&m1), support_sum(&m2)]).unwrap();
        let [s0, _, _] = triangle_formulas(&chart).unwrap();
        let expected: Vec<MultiPoly> =
            vec![x(0).pow(2), &x(0) * &x(1), &x(0) * &x(2), &x(0) * &x(3), &x(0) * &x(4), &x(3) * &x(4)];
        assert_eq!(s0.components(), expected.as_slice());
        let bad = TriangleChart::new([support_sum(&m0), &x(0) * &x(4), support_sum(&m2)]);
        assert!(matches!(bad, Err(Error::OutsideSupport(_))));
    }

    #[test]
    fn triangle_maps_restrict_on_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let chart = TriangleChart::random(&mut rng);
        for (l, s) in triangle_formulas(&chart).unwrap().iter().enumerate() {
            for i in 0..3 {
                let r = s.components()[i].set_zero(3).set_zero(4).set_zero(5);
                assert_eq!(r, &x(l) * &x(i));
            }
        }
    }

    #[test]
    fn content_removal_preserves_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ac = AdaptedCubic::random(&mut rng);
        let s = single_reflection_formula(&ac);
        let padded = ProjectiveMap::new(s.components().iter().map(|p| &(&x(2) * &x(4)) * p).collect()).unwrap();
        let r = padded.remove_content();
        assert_eq!(r, s);
        assert_eq!(r.remove_content(), r);
        let mut hits = 0;
        while hits < 10 {
            let pt: Vec<Rational> = (0..NVARS).map(|_| small_rational(&mut rng)).collect();
            let (a, b) = (padded.eval(&pt).unwrap(), r.eval(&pt).unwrap());
            if b.iter().all(num_traits::Zero::is_zero) {
                continue;
            }
            assert!(proportional(&a, &b));
            hits += 1;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn involution_for_any_q(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ac = AdaptedCubic::new(random_form(&mut rng, 2), MultiPoly::zero(NVARS)).unwrap();
            prop_assert!(verify_involution(&ac));
        }
    }
}
