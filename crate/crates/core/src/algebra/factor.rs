//! Factorization of univariate rational polynomials of small degree.
//!
//! Square-free decomposition (Yun), then rational roots, then Kronecker's
//! interpolation search for the remaining factors, pruned by Mignotte's bound.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{from_bigint, Rational};
use super::upoly::UniPoly;
use crate::error::{Error, Result};

/// Largest degree of a square-free part, after removal of rational roots,
/// that the exhaustive search accepts.
pub const MAX_SEARCH_DEGREE: usize = 8;

/// Integers up to this magnitude are split into divisors by trial division.
const MAX_DIVISOR_INPUT: u64 = 1 << 50;

/// Irreducible factors with multiplicities. Factors are primitive with integer
/// coefficients and positive leading coefficient, sorted by degree; their
/// product equals `p` up to a rational constant.
pub fn factor_over_rationals(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in square_free_decomposition(p) {
        for f in factor_square_free(&part)? {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| sort_key(&a.0).cmp(&sort_key(&b.0))));
    Ok(out)
}

/// Negated monic coefficients from the subleading one down; orders linear factors by root.
fn sort_key(p: &UniPoly) -> Vec<Rational> {
    let m = p.monic();
    m.coeffs().iter().rev().skip(1).map(|c| -c).collect()
}

/// Yun's algorithm: `p = c * prod a_i^i` with the `a_i` square-free and pairwise coprime.
pub fn square_free_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let mut c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.primitive_rational(), i));
        }
        i += 1;
    }
    out
}

fn factor_square_free(p: &UniPoly) -> Result<Vec<UniPoly>> {
    let mut out = Vec::new();
    let mut rest = p.primitive_rational();
    for r in rational_roots(&rest) {
        let lin = UniPoly::linear_root(&r).primitive_rational();
        rest = rest.div_exact(&lin)?.primitive_rational();
        out.push(lin);
    }
    let deg = rest.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(out);
    }
    if deg > MAX_SEARCH_DEGREE {
        return Err(Error::DegreeTooLarge { degree: deg, bound: MAX_SEARCH_DEGREE });
    }
    let mut stack = vec![rest];
    while let Some(f) = stack.pop() {
        match find_factor(&f)? {
            Some(g) => {
                let h = f.div_exact(&g)?.primitive_rational();
                stack.push(g);
                stack.push(h);
            }
            None => out.push(f),
        }
    }
    Ok(out)
}

/// Distinct rational roots of a polynomial.
pub fn rational_roots(p: &UniPoly) -> Vec<Rational> {
    let mut c = p.primitive_integer();
    let mut roots = Vec::new();
    if c.is_empty() {
        return roots;
    }
    if c[0].is_zero() {
        roots.push(Rational::zero());
        while c.first().is_some_and(|x| x.is_zero()) {
            c.remove(0);
        }
    }
    if c.len() <= 1 {
        return roots;
    }
    let q = UniPoly::from_bigints(&c);
    let (Some(nums), Some(dens)) = (divisors(&c[0]), divisors(c.last().unwrap())) else {
        return roots;
    };
    for n in &nums {
        for d in &dens {
            for s in [BigInt::one(), -BigInt::one()] {
                let r = Rational::new(n * &s, d.clone());
                if r.denom() == d && q.sign_at(&r) == 0 && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Positive divisors, or `None` when the input is too large for trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > MAX_DIVISOR_INPUT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d != n / d {
                large.push(BigInt::from(n / d));
            }
        }
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

/// A nontrivial factor of a primitive square-free `f` without rational roots.
fn find_factor(f: &UniPoly) -> Result<Option<UniPoly>> {
    let n = f.degree().unwrap_or(0);
    let fc = f.primitive_integer();
    let norm2: BigInt = fc.iter().map(|c| c * c).sum();
    for k in 2..=n / 2 {
        // Evaluation points with few divisors keep the search small.
        let mut pts: Vec<(usize, i64, BigInt, Vec<BigInt>)> = Vec::new();
        for x in -12i64..=12 {
            let v = f.eval(&Rational::from_integer(x.into())).to_integer();
            let Some(ds) = divisors(&v) else { continue };
            pts.push((ds.len(), x, v, ds));
        }
        if pts.len() < k + 1 {
            return Err(Error::InvalidArgument("polynomial values too large for factor search".into()));
        }
        pts.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.abs().cmp(&b.1.abs())));
        pts.truncate(k + 1);
        let xs: Vec<Rational> = pts.iter().map(|p| Rational::from_integer(p.1.into())).collect();
        let choices: Vec<Vec<BigInt>> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let mut c = p.3.clone();
                if i > 0 {
                    c.extend(p.3.iter().map(|d| -d));
                }
                c
            })
            .collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            let ys: Vec<Rational> = idx.iter().zip(&choices).map(|(&i, c)| from_bigint(&c[i])).collect();
            if let Some(g) = interpolate_integer(&xs, &ys, k) {
                let gc = g.primitive_integer();
                let within = gc.iter().enumerate().all(|(j, c)| {
                    let b = binomial(k, j);
                    c * c <= &b * &b * &norm2
                });
                if within && g.divides(f) {
                    return Ok(Some(g.primitive_rational()));
                }
            }
            // Odometer increment over divisor choices.
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Ok(None)
}

/// Newton interpolation; `Some` only for integer coefficients of exact degree `k`.
fn interpolate_integer(xs: &[Rational], ys: &[Rational], k: usize) -> Option<UniPoly> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    if dd[n - 1].is_zero() || !dd[n - 1].is_integer() {
        return None;
    }
    let mut p = UniPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &UniPoly::linear_root(&xs[i])) + &UniPoly::constant(dd[i].clone());
    }
    if p.degree() != Some(k) || !p.coeffs().iter().all(|c| c.is_integer()) {
        return None;
    }
    Some(p)
}

/// Product of factors raised to their multiplicities.
pub fn expand_factors(factors: &[(UniPoly, usize)]) -> UniPoly {
    factors.iter().fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
}

/// Both sides agree up to a nonzero rational constant.
pub fn equal_up_to_constant(a: &UniPoly, b: &UniPoly) -> bool {
    a.primitive_integer() == b.primitive_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn cubic_splits_off_linear_factor() {
        let f = factor_over_rationals(&p(&[2, 3, -6, 1])).unwrap();
        assert_eq!(f, vec![(p(&[-1, 1]), 1), (p(&[-2, -5, 1]), 1)]);
        // Oracle: multiplying back.
        assert!(equal_up_to_constant(&expand_factors(&f), &p(&[2, 3, -6, 1])));
    }

    #[test]
    fn triangle_minimal_polynomial() {
        let m = p(&[0, 1]).pow(2) * p(&[-1, 1]).pow(2) * p(&[-1, -4, 1]);
        let f = factor_over_rationals(&m).unwrap();
        assert_eq!(f, vec![(p(&[0, 1]), 2), (p(&[-1, 1]), 2), (p(&[-1, -4, 1]), 1)]);
    }

    #[test]
    fn irreducible_stays_whole() {
        assert_eq!(factor_over_rationals(&p(&[1, 0, 1])).unwrap(), vec![(p(&[1, 0, 1]), 1)]);
        let x4p1 = p(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_over_rationals(&x4p1).unwrap(), vec![(x4p1, 1)]);
    }

    #[test]
    fn quartic_product_of_quadratics() {
        let a = p(&[1, 0, 1]);
        let b = p(&[3, 1, 2]);
        let f = factor_over_rationals(&(&a * &b).scale(&Rational::new(3.into(), 7.into()))).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.contains(&(a, 1)) && f.contains(&(b, 1)));
    }

    #[test]
    fn sextic_with_cubic_factors() {
        let a = p(&[1, 1, 0, 1]);
        let b = p(&[2, 0, 1, 1]);
        let f = factor_over_rationals(&(&a * &b)).unwrap();
        assert_eq!(f.len(), 2);
        assert!(equal_up_to_constant(&expand_factors(&f), &(&a * &b)));
    }

    #[test]
    fn non_monic_rational_root() {
        let f = factor_over_rationals(&p(&[-1, 2])).unwrap();
        assert_eq!(f, vec![(p(&[-1, 2]), 1)]);
        assert!(factor_over_rationals(&UniPoly::zero()).is_err());
    }

    #[test]
    fn degree_bound_enforced() {
        // x^10 + x + 1 has no rational roots.
        let mut c = vec![0i64; 11];
        c[0] = 1;
        c[1] = 1;
        c[10] = 1;
        assert!(matches!(factor_over_rationals(&p(&c)), Err(Error::DegreeTooLarge { .. })));
    }
}
