//! Sparse multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{fmt_rational, parse_rational, Rational};
use super::series::TruncatedSeries;
use super::upoly::UniPoly;
use crate::error::{Error, Result};

pub type Exponent = Vec<u32>;

/// Exponent vectors of all monomials of degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Exponent> {
    fn rec(i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(0, d, &mut vec![0; n], &mut out);
    }
    out
}

/// No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must equal the variable count");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Nonzero and every term of total degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        !self.is_zero() && self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            Some(d) => self.is_homogeneous_of(d),
            None => false,
        }
    }

    /// Indices of variables that occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: x.len() });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute polynomials (all in the same ring) for the variables.
    pub fn compose(&self, args: &[MultiPoly]) -> Result<MultiPoly> {
        if args.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: args.len() });
        }
        let m = args.first().map_or(0, |a| a.nvars);
        if let Some(bad) = args.iter().find(|a| a.nvars != m) {
            return Err(Error::ArityMismatch { expected: m, found: bad.nvars });
        }
        // Cache powers of the arguments; compositions reuse them heavily.
        let maxdeg: Vec<u32> =
            (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<MultiPoly>> = args
            .iter()
            .zip(&maxdeg)
            .map(|(a, &d)| {
                let mut v = vec![MultiPoly::one(m)];
                for k in 1..=d as usize {
                    let next = &v[k - 1] * a;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &powers[i][k as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// Set `x_i = 0`.
    pub fn set_zero(&self, i: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| e[i] == 0).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Componentwise minimum of exponents (the largest monomial factor).
    pub fn monomial_content(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        it.fold(first.clone(), |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
    }

    /// Divide by the monomial `x^m`; errors if not exact.
    pub fn div_monomial(&self, m: &[u32]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(m).any(|(a, b)| a < b) {
                return Err(Error::InvalidArgument("monomial division is not exact".into()));
            }
            out.terms.insert(e.iter().zip(m).map(|(a, b)| a - b).collect(), c.clone());
        }
        Ok(out)
    }

    /// Restriction to the line `s*a + t*b`, as coefficients of `s^(d-k) t^k`, `k = 0..=d`.
    /// Requires a homogeneous form of degree `d`.
    pub fn binary_restriction(&self, a: &[Rational], b: &[Rational]) -> Result<Vec<Rational>> {
        let d = self.total_degree().ok_or(Error::ZeroPolynomial)? as usize;
        let args: Vec<MultiPoly> = a
            .iter()
            .zip(b)
            .map(|(ai, bi)| MultiPoly::linear(&[ai.clone(), bi.clone()]))
            .collect();
        let r = self.compose(&args)?;
        Ok((0..=d).map(|k| r.coeff(&[(d - k) as u32, k as u32])).collect())
    }

    /// View a polynomial in one variable as a `UniPoly`.
    pub fn to_univariate(&self) -> Result<UniPoly> {
        if self.nvars != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: self.nvars });
        }
        let d = self.total_degree().unwrap_or(0) as usize;
        Ok(UniPoly::new((0..=d).map(|k| self.coeff(&[k as u32])).collect()))
    }

    /// Substitute truncated series for the variables. Arguments must agree in
    /// arity and absolute truncation order.
    pub fn substitute_series(&self, args: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if args.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: args.len() });
        }
        if let Some(first) = args.first() {
            if args.iter().any(|a| a.truncation() != first.truncation()) {
                return Err(Error::TruncationMismatch);
            }
        }
        let order = args.first().map_or(0, |a| a.truncation());
        Ok(self.substitute_series_unchecked(args).truncate(order))
    }

    /// As `substitute_series`, allowing arguments with different truncations;
    /// the result carries the truncation implied by the arithmetic.
    pub fn substitute_series_unchecked(&self, args: &[TruncatedSeries]) -> TruncatedSeries {
        let trunc = args.iter().map(|a| a.truncation()).max().unwrap_or(0);
        // powers[i][k - 1] = args[i]^k
        let mut powers: Vec<Vec<TruncatedSeries>> = vec![Vec::new(); self.nvars];
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() < k as usize {
                    let next = match powers[i].last() {
                        None => args[i].clone(),
                        Some(p) => p.mul(&args[i]),
                    };
                    powers[i].push(next);
                }
            }
        }
        let mut acc: Option<TruncatedSeries> = None;
        for (e, c) in &self.terms {
            let mut prod: Option<TruncatedSeries> = None;
            for (i, &k) in e.iter().enumerate().filter(|(_, k)| **k > 0) {
                let f = &powers[i][k as usize - 1];
                prod = Some(match prod {
                    None => f.clone(),
                    Some(p) => p.mul(f),
                });
            }
            let t = match prod {
                None => TruncatedSeries::constant(c.clone(), trunc),
                Some(p) => p.scale(c),
            };
            acc = Some(match acc {
                None => t,
                Some(a) => a.add(&t),
            });
        }
        acc.unwrap_or_else(|| TruncatedSeries::zero(trunc))
    }

    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                .collect();
            if vars.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                out.push_str(&vars.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self.pretty())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self + &(-o.clone())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { nvars: self.nvars, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    vars: usize,
    terms: Vec<TermWire>,
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            vars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| TermWire { exp: e.clone(), coef: fmt_rational(c) }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        let terms: Result<Vec<(Exponent, Rational)>> =
            w.terms.into_iter().map(|t| parse_rational(&t.coef).map(|c| (t.exp, c))).collect();
        terms.and_then(|t| MultiPoly::from_terms(w.vars, t)).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn arithmetic_cancels() {
        let a = &x(2, 0) + &x(2, 1);
        let b = &x(2, 0) - &x(2, 1);
        let p = &a * &b;
        assert_eq!(p, &x(2, 0).pow(2) - &x(2, 1).pow(2));
        assert!((&p - &p).is_zero());
        assert!(p.is_homogeneous_of(2));
    }

    #[test]
    fn compose_and_eval_agree() {
        let f = &(&x(2, 0).pow(2) * &x(2, 1)) + &MultiPoly::constant(2, rat(1, 2));
        let g = [&x(2, 0) + &x(2, 1), x(2, 0).scale(&int(3))];
        let h = f.compose(&g).unwrap();
        let pt = [rat(2, 3), int(-1)];
        let inner: Vec<Rational> = g.iter().map(|q| q.eval(&pt).unwrap()).collect();
        assert_eq!(h.eval(&pt).unwrap(), f.eval(&inner).unwrap());
    }

    #[test]
    fn partials_and_content() {
        let f = &x(3, 0).pow(2) * &(&x(3, 1) + &x(3, 2));
        assert_eq!(f.partial(0), (&x(3, 0) * &(&x(3, 1) + &x(3, 2))).scale(&int(2)));
        assert_eq!(f.monomial_content(), vec![2, 0, 0]);
        assert_eq!(f.div_monomial(&[2, 0, 0]).unwrap(), &x(3, 1) + &x(3, 2));
        assert!(f.div_monomial(&[0, 1, 0]).is_err());
    }

    #[test]
    fn binary_restriction_of_cubic() {
        // (s a + t b) for a = (1,0), b = (0,1) on x0^2 x1 gives s^2 t.
        let f = &x(2, 0).pow(2) * &x(2, 1);
        let c = f.binary_restriction(&[int(1), int(0)], &[int(0), int(1)]).unwrap();
        assert_eq!(c, vec![int(0), int(1), int(0), int(0)]);
    }

    #[test]
    fn substitute_series_examples() {
        let t = TruncatedSeries::new(vec![int(0), int(1)], 4);
        let one_t = TruncatedSeries::new(vec![int(1), int(1)], 4);
        let f = &x(2, 0) * &x(2, 1);
        let r = f.substitute_series(&[t.clone(), one_t]).unwrap();
        assert_eq!(r, TruncatedSeries::new(vec![int(0), int(1), int(1)], 4));
        let sq = x(1, 0).pow(2).substitute_series(&[t.clone()]).unwrap();
        assert_eq!(sq, TruncatedSeries::new(vec![int(0), int(0), int(1)], 4));
        assert!(f.substitute_series(&[t.clone()]).is_err());
        let short = TruncatedSeries::new(vec![int(1)], 3);
        assert_eq!(f.substitute_series(&[t, short]), Err(Error::TruncationMismatch));
    }

    #[test]
    fn json_format() {
        let f = &x(2, 0).scale(&rat(-1, 2)) + &x(2, 1);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"vars":2,"terms":[{"exp":[0,1],"coef":"1/1"},{"exp":[1,0],"coef":"-1/2"}]}"#);
        assert_eq!(serde_json::from_str::<MultiPoly>(&s).unwrap(), f);
    }
}
