//! Dense rational matrices.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg;
use super::rational::{fmt_rational, is_integer, parse_rational, Rational};
use super::upoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if r == 0 || c == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be positive".into()));
        }
        if let Some(bad) = rows.iter().find(|x| x.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Panics on ragged or empty input; intended for literal tables.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
        .expect("well-formed literal matrix")
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().cloned().map(Rational::from_integer).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(is_integer)
    }

    pub fn to_int_rows(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_integer() {
            return Err(Error::NonInteger);
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_integer()).collect()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_checked(&self, o: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: o.rows });
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn add(&self, o: &RatMatrix) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (o.rows, o.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: o.rows * o.cols });
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn pow(&self, mut e: u32) -> Result<RatMatrix> {
        let n = self.require_square()?;
        let mut base = self.clone();
        let mut acc = Self::identity(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `p(m)` by Horner's rule.
    pub fn eval_poly(&self, p: &UniPoly) -> Result<RatMatrix> {
        let n = self.require_square()?;
        let mut acc = Self::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = (&acc * self).add(&Self::identity(n).scale(c))?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.to_rows())
    }

    /// Basis of `{v : m v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        linalg::kernel(&self.to_rows(), self.cols, &Rational::zero())
    }

    /// `det(xI - m)` by the division-free Berkowitz algorithm.
    pub fn char_poly(&self) -> Result<UniPoly> {
        let n = self.require_square()?;
        let a = |i: usize, j: usize| self.get(i, j).clone();
        // Coefficient vectors are highest degree first.
        let mut poly: Vec<Rational> = vec![Rational::one(), -a(0, 0)];
        for k in 1..n {
            // Leading principal (k+1)x(k+1) block: A_k = [[B, C], [R, a_kk]].
            let r: Vec<Rational> = (0..k).map(|j| -a(k, j)).collect();
            let mut c: Vec<Rational> = (0..k).map(|i| a(i, k)).collect();
            // items = [1, -a_kk, R C, R B C, ..., R B^{k-1} C]
            let mut items = vec![Rational::one(), -a(k, k)];
            for step in 0..k {
                items.push(r.iter().zip(&c).map(|(x, y)| x * y).sum());
                if step + 1 < k {
                    c = (0..k).map(|i| (0..k).map(|j| a(i, j) * &c[j]).sum()).collect();
                }
            }
            // Toeplitz lower-triangular (k+2)x(k+1) matrix times previous poly.
            let mut next = vec![Rational::zero(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in poly.iter().enumerate() {
                    if i >= j {
                        *slot += &items[i - j] * pj;
                    }
                }
            }
            poly = next;
        }
        poly.reverse();
        Ok(UniPoly::new(poly))
    }

    /// Monic polynomial of least degree annihilating the matrix, as the lcm of
    /// the Krylov minimal polynomials of the standard basis vectors.
    pub fn minimal_poly(&self) -> Result<UniPoly> {
        let n = self.require_square()?;
        let mut acc = UniPoly::one();
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            acc = acc.lcm(&self.vector_minimal_poly(&e)?);
        }
        Ok(acc)
    }

    /// Monic generator of `{p : p(m) v = 0}`.
    pub fn vector_minimal_poly(&self, v: &[Rational]) -> Result<UniPoly> {
        let n = self.require_square()?;
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let mut krylov: Vec<Vec<Rational>> = vec![v.to_vec()];
        loop {
            // Columns v, Mv, ..., M^k v; a one-dimensional kernel appears at the first dependency.
            let k = krylov.len();
            let rows: Vec<Vec<Rational>> = (0..n).map(|i| krylov.iter().map(|col| col[i].clone()).collect()).collect();
            let ker = linalg::kernel(&rows, k, &Rational::zero());
            if let Some(w) = ker.first() {
                return Ok(UniPoly::new(w.clone()).monic());
            }
            let next = self.mul_vec(krylov.last().unwrap())?;
            krylov.push(next);
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, o: &RatMatrix) -> RatMatrix {
        self.mul_checked(o).expect("compatible dimensions")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rows of `"a/b"` strings.
impl Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(fmt_rational).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed: Result<Vec<Vec<Rational>>> =
            rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect()).collect();
        parsed.and_then(RatMatrix::from_rows).map_err(serde::de::Error::custom)
    }
}
