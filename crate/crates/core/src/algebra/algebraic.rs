//! Real algebraic numbers as isolating intervals of square-free polynomials.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::factor::factor_over_rationals;
use super::interval::Interval;
use super::rational::{ceil, decimal_enclosure, floor, fmt_rational, int, rat, ten_to_minus, to_f64, Rational};
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// Number of bisections attempted by comparisons before giving up.
pub const MAX_REFINEMENT_STEPS: usize = 4096;

/// A real root of `poly` (primitive, integer, square-free), located either in
/// the open interval `(lo, hi)` as its only root, or exactly at `lo == hi`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicReal {
    poly: UniPoly,
    lo: Rational,
    hi: Rational,
}

/// Sturm sequence of a square-free polynomial.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while !seq.last().unwrap().is_zero() {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        // Positive rescaling keeps the sign pattern while bounding coefficient growth.
        let r = -r;
        let scale = r.lead().abs();
        seq.push(r.scale(&(Rational::one() / scale)));
    }
    seq
}

fn sign_changes(seq: &[UniPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[UniPoly], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Bound `B` with every root of `p` in `(-B, B)`.
pub fn cauchy_bound(p: &UniPoly) -> Rational {
    let lead = p.lead().abs();
    let m = p.coeffs().iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
    m + int(1)
}

/// One `AlgebraicReal` per distinct real root, sorted ascending.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<AlgebraicReal>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let sf = p.square_free().primitive_rational();
    let seq = sturm_sequence(&sf);
    let b = cauchy_bound(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&seq, &lo, &hi) {
            0 => {}
            1 => {
                let (lo, hi) = if sf.sign_at(&hi) == 0 { (hi.clone(), hi) } else { (lo, hi) };
                out.push(AlgebraicReal { poly: sf.clone(), lo, hi });
            }
            _ => {
                let mid = (&lo + &hi) / int(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.compare(b));
    Ok(out)
}

impl AlgebraicReal {
    pub fn from_rational(r: &Rational) -> Self {
        AlgebraicReal { poly: UniPoly::linear_root(r).primitive_rational(), lo: r.clone(), hi: r.clone() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&int(n))
    }

    /// The largest real root of `p`, if any.
    pub fn largest_root(p: &UniPoly) -> Result<Option<Self>> {
        Ok(isolate_real_roots(p)?.pop())
    }

    pub fn poly(&self) -> &UniPoly {
        &self.poly
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn exact_value(&self) -> Option<&Rational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    /// Halve the interval once.
    pub fn bisect(&self) -> Self {
        if self.lo == self.hi {
            return self.clone();
        }
        let mid = (&self.lo + &self.hi) / int(2);
        let s_mid = self.poly.sign_at(&mid);
        let mut out = self.clone();
        if s_mid == 0 {
            out.lo = mid.clone();
            out.hi = mid;
        } else if s_mid == self.poly.sign_at(&self.hi) {
            out.hi = mid;
        } else {
            out.lo = mid;
        }
        out
    }

    /// Same root, interval width `< eps`.
    pub fn refine(&self, eps: &Rational) -> Self {
        assert!(eps.is_positive(), "refinement tolerance must be positive");
        let mut cur = self.clone();
        while cur.width() >= *eps {
            cur = cur.bisect();
        }
        cur
    }

    /// Replace the defining polynomial by the irreducible factor carrying this root.
    pub fn simplify(&self) -> Result<Self> {
        if let Some(r) = self.exact_value() {
            return Ok(Self::from_rational(r));
        }
        for (f, _) in factor_over_rationals(&self.poly)? {
            let seq = sturm_sequence(&f);
            if count_roots(&seq, &self.lo, &self.hi) == 1 && f.sign_at(&self.hi) != 0 {
                return Ok(AlgebraicReal { poly: f.primitive_rational(), lo: self.lo.clone(), hi: self.hi.clone() });
            }
        }
        Ok(self.clone())
    }

    /// Exact comparison. Equality is detected through a common root of the
    /// defining polynomials inside the open overlap of the isolating intervals.
    pub fn compare(&self, other: &Self) -> Ordering {
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            match (a.exact_value().cloned(), b.exact_value().cloned()) {
                (Some(x), Some(y)) => return x.cmp(&y),
                (Some(x), None) => {
                    if x <= b.lo {
                        return Ordering::Less;
                    }
                    if x >= b.hi {
                        return Ordering::Greater;
                    }
                    if b.poly.sign_at(&x) == 0 {
                        return Ordering::Equal;
                    }
                    b = b.bisect();
                }
                (None, Some(_)) => return b.compare(&a).reverse(),
                (None, None) => {
                    if a.hi <= b.lo {
                        return Ordering::Less;
                    }
                    if b.hi <= a.lo {
                        return Ordering::Greater;
                    }
                    let lo = a.lo.clone().max(b.lo.clone());
                    let hi = a.hi.clone().min(b.hi.clone());
                    let g = a.poly.gcd(&b.poly);
                    if g.degree().unwrap_or(0) > 0 {
                        let seq = sturm_sequence(&g);
                        let inside = count_roots(&seq, &lo, &hi) - usize::from(g.sign_at(&hi) == 0);
                        if inside > 0 {
                            return Ordering::Equal;
                        }
                    }
                    a = a.bisect();
                    b = b.bisect();
                }
            }
        }
    }

    /// Exact product. The defining polynomial is the resultant
    /// `Res_y(p(y), y^m q(x / y))`, recovered by interpolation in `x`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if let (Some(x), Some(y)) = (self.exact_value(), other.exact_value()) {
            return Ok(Self::from_rational(&(x * y)));
        }
        let p = self.poly.coeffs();
        let q = other.poly.coeffs();
        let m = q.len() - 1;
        let n = (p.len() - 1) * m;
        let xs: Vec<Rational> = (0..=n as i64).map(int).collect();
        let ys: Vec<Rational> = xs
            .iter()
            .map(|x| {
                // coefficient of y^(m-k) is q_k x^k
                let mut formal = vec![Rational::zero(); m + 1];
                let mut xp = Rational::one();
                for (k, c) in q.iter().enumerate() {
                    formal[m - k] = c * &xp;
                    xp *= x;
                }
                sylvester_resultant(p, &formal)
            })
            .collect();
        let r = newton_interpolate(&xs, &ys);
        if r.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut roots = isolate_real_roots(&r)?;
        let mut eps = rat(1, 256);
        loop {
            let enc = product_enclosure(self, other, &eps);
            roots.retain(|z| z.lo <= enc.hi && enc.lo <= z.hi);
            if roots.len() == 1 {
                return Ok(roots.pop().unwrap());
            }
            if roots.is_empty() {
                return Err(Error::InconsistentState("product not among resultant roots".into()));
            }
            eps = &eps / int(256);
            roots = roots.iter().map(|z| z.refine(&eps)).collect();
        }
    }

    pub fn compare_rational(&self, r: &Rational) -> Ordering {
        self.compare(&Self::from_rational(r))
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / int(2)))
    }

    /// Outward decimal enclosure `[lo, hi]` with `hi - lo <= 10^-digits`.
    pub fn enclosure(&self, digits: u32) -> (String, String) {
        if let Some(r) = self.exact_value() {
            return decimal_enclosure(r, digits);
        }
        let ulp = ten_to_minus(digits);
        let mut cur = self.refine(&(&ulp / int(10)));
        loop {
            let lo_r = floor(&(&cur.lo / &ulp));
            let hi_r = ceil(&(&cur.hi / &ulp));
            if &hi_r - &lo_r <= BigInt::one() {
                let (lo, _) = decimal_enclosure(&cur.lo, digits);
                let (_, hi) = decimal_enclosure(&cur.hi, digits);
                return (lo, hi);
            }
            cur = cur.bisect();
        }
    }

    pub fn to_report(&self, digits: u32) -> AlgebraicReport {
        let s = self.simplify().unwrap_or_else(|_| self.clone());
        let (lo, hi) = s.enclosure(digits);
        AlgebraicReport {
            defining_polynomial: s.poly.pretty(),
            coefficients: s.poly.coeffs().iter().map(fmt_rational).collect(),
            enclosure: [lo, hi],
            width: format!("1e-{digits}"),
        }
    }
}

/// Serializable view: defining polynomial plus a decimal enclosure.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AlgebraicReport {
    pub defining_polynomial: String,
    pub coefficients: Vec<String>,
    pub enclosure: [String; 2],
    pub width: String,
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.poly.pretty(), self.lo, self.hi)
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_value() {
            Some(r) => write!(f, "{r}"),
            None => {
                let (lo, hi) = self.enclosure(9);
                write!(f, "[{lo}, {hi}] root of {}", self.poly.pretty())
            }
        }
    }
}

/// `a * b` as an interval after refining both to width below `eps`.
pub fn product_enclosure(a: &AlgebraicReal, b: &AlgebraicReal, eps: &Rational) -> Interval {
    a.refine(eps).interval().mul(&b.refine(eps).interval())
}

/// Determinant of the Sylvester matrix of `p` and `q` (coefficients lowest
/// first, formal degrees taken from the slice lengths).
fn sylvester_resultant(p: &[Rational], q: &[Rational]) -> Rational {
    let (dp, dq) = (p.len() - 1, q.len() - 1);
    let size = dp + dq;
    if size == 0 {
        return Rational::one();
    }
    let mut a = vec![vec![Rational::zero(); size]; size];
    for i in 0..dq {
        for (j, c) in p.iter().rev().enumerate() {
            a[i][i + j] = c.clone();
        }
    }
    for i in 0..dp {
        for (j, c) in q.iter().rev().enumerate() {
            a[dq + i][i + j] = c.clone();
        }
    }
    let mut det = Rational::one();
    for col in 0..size {
        let Some(piv) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..size {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pv;
            for c in col..size {
                let d = &f * &a[col][c];
                a[r][c] -= d;
            }
        }
    }
    det
}

fn newton_interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    p
}

/// Half-open unit for tests and callers that need a small tolerance.
pub fn default_eps() -> Rational {
    rat(1, 1_000_000_000_000)
}
