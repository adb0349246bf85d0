//! Orbits of reflections on a plane section `E` with very general points `p_1..p_N`.
//!
//! On `E` the reflection in `x` is `y -> -x - y`. Very general points carry no
//! relations, so points of the orbit are integer combinations of the symbols `p_i`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FormalPoint {
    coeffs: Vec<i64>,
}

impl FormalPoint {
    pub fn new(coeffs: Vec<i64>) -> Self {
        FormalPoint { coeffs }
    }

    /// `p_i`, 1-based.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        check_index(n, i)?;
        let mut c = vec![0; n];
        c[i - 1] = 1;
        Ok(FormalPoint { coeffs: c })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `p_i`, 1-based.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i - 1]
    }

    /// The `i` with `self = p_i`, if any.
    pub fn basis_index(&self) -> Option<usize> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| **c != 0);
        match (nz.next(), nz.next()) {
            (Some((i, 1)), None) => Some(i + 1),
            _ => None,
        }
    }
}

impl std::fmt::Display for FormalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}p{}", i + 1)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn check_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("reflection index {i} outside 1..={n}")));
    }
    Ok(())
}

/// `sigma_i(x) = -p_i - x`.
pub fn reflect(i: usize, x: &FormalPoint) -> Result<FormalPoint> {
    check_index(x.n(), i)?;
    let mut c: Vec<i64> = x.coeffs.iter().map(|v| -v).collect();
    c[i - 1] -= 1;
    Ok(FormalPoint { coeffs: c })
}

/// Indices of reflections in the order they are applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ReflectionWord(Vec<usize>);

impl ReflectionWord {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self> {
        for &i in &indices {
            check_index(n, i)?;
        }
        Ok(ReflectionWord(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

/// `start` followed by its successive images.
pub fn orbit(start: &FormalPoint, word: &ReflectionWord) -> Result<Vec<FormalPoint>> {
    let mut out = vec![start.clone()];
    for &i in &word.0 {
        let next = reflect(i, out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `sigma_1 (sigma_N ... sigma_1) (sigma_N ... sigma_2)` for odd `N`, as the
/// application order `2..N, 1..N, 1`.
pub fn first_return_word(n: usize) -> Result<ReflectionWord> {
    if n < 3 {
        return Err(Error::InvalidArgument("N must be at least 3".into()));
    }
    if n % 2 == 0 {
        return Err(Error::InvalidArgument(format!("the orbit of p_1 never returns for even N = {n}")));
    }
    let w: Vec<usize> = (2..=n).chain(1..=n).chain([1]).collect();
    ReflectionWord::new(n, w)
}

/// The orbit is at `p_k` just before `sigma_k` is applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub start: usize,
    pub step: usize,
    pub index: usize,
}

/// The orbit lands on a basis point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Return {
    pub start: usize,
    pub step: usize,
    pub after_sigma: usize,
    pub point: usize,
}

/// Drift of the `p_i` coefficient for even `N`.
///
/// Over one period the reflections other than `sigma_i` flip its sign `N - 1`
/// times and `sigma_i` sends `c` to `-1 - c`, so the period acts as
/// `c -> period_map.0 * c + period_map.1`. Once `|c| >= 2` the orbit cannot
/// meet a basis point again.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenCertificate {
    pub start: usize,
    /// The `p_i` coefficient just after each application of `sigma_i`.
    pub coeffs_after_sigma: Vec<i64>,
    pub base: i64,
    pub period_map: (i64, i64),
    pub expected_sequence: bool,
    /// The horizon reached `|c| >= 2` and the period map is `c -> c - 1`.
    pub conclusive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AvoidanceReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub horizon: usize,
    pub hits: Vec<Hit>,
    pub returns: Vec<Return>,
    pub certificates: Vec<EvenCertificate>,
}

impl AvoidanceReport {
    pub fn passed(&self) -> bool {
        self.hits.is_empty() && self.certificates.iter().all(|c| c.conclusive && c.expected_sequence)
    }

    /// Certificate coefficients for the start `p_1`.
    pub fn coeffs_after_sigma1(&self) -> Option<&[i64]> {
        self.certificates.iter().find(|c| c.start == 1).map(|c| c.coeffs_after_sigma.as_slice())
    }
}

/// Affine action of the cyclic word `sigma_{i+1}, ..., sigma_i` on the `p_i` coefficient.
fn period_map(n: usize, i: usize) -> (i64, i64) {
    (1..=n).map(|s| (i + s - 1) % n + 1).fold((1, 0), |(a, b), k| if k == i { (-a, -1 - b) } else { (-a, -b) })
}

/// Runs the cyclic word from each `p_i` for `horizon` steps.
pub fn avoidance_check(n: usize, horizon: usize) -> Result<AvoidanceReport> {
    if n < 3 {
        return Err(Error::InvalidArgument("N must be at least 3".into()));
    }
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be positive".into()));
    }
    let mut report = AvoidanceReport { n, horizon, hits: vec![], returns: vec![], certificates: vec![] };
    for start in 1..=n {
        let mut x = FormalPoint::basis(n, start)?;
        let mut coeffs = Vec::new();
        for step in 0..horizon {
            let k = (start + step) % n + 1;
            if x.basis_index() == Some(k) {
                report.hits.push(Hit { start, step: step + 1, index: k });
            }
            x = reflect(k, &x)?;
            if let Some(j) = x.basis_index() {
                report.returns.push(Return { start, step: step + 1, after_sigma: k, point: j });
            }
            if k == start {
                coeffs.push(x.coeff(start));
            }
        }
        if n % 2 == 0 {
            let pm = period_map(n, start);
            let expected_sequence = coeffs.iter().enumerate().all(|(m, &c)| c == -(m as i64));
            let conclusive = pm == (1, -1) && coeffs.len() >= 3 && coeffs[0] == 0;
            report.certificates.push(EvenCertificate {
                start,
                base: coeffs.first().copied().unwrap_or(0),
                coeffs_after_sigma: coeffs,
                period_map: pm,
                expected_sequence,
                conclusive,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: usize, i: usize) -> FormalPoint {
        FormalPoint::basis(n, i).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let x = reflect(2, &p(3, 1)).unwrap();
        assert_eq!(x, FormalPoint::new(vec![-1, -1, 0]));
        assert_eq!(reflect(3, &x).unwrap(), FormalPoint::new(vec![1, 1, -1]));
        assert_eq!(x.to_string(), "-p1-p2");
        assert!(reflect(4, &x).is_err());
        assert!(reflect(0, &x).is_err());
    }

    #[test]
    fn three_point_return() {
        let w = first_return_word(3).unwrap();
        assert_eq!(w.indices(), &[2, 3, 1, 2, 3, 1]);
        let o = orbit(&p(3, 1), &w).unwrap();
        let expected = [vec![1, 0, 0], vec![-1, -1, 0], vec![1, 1, -1], vec![-2, -1, 1], vec![2, 0, -1], vec![-2, 0, 0], vec![1, 0, 0]];
        for (x, e) in o.iter().zip(expected) {
            assert_eq!(x.coeffs(), e.as_slice());
        }
    }

    #[test]
    fn odd_returns_only_at_the_end() {
        for n in [3, 5, 7, 9] {
            let o = orbit(&p(n, 1), &first_return_word(n).unwrap()).unwrap();
            assert_eq!(o.last().unwrap(), &p(n, 1));
            assert!(o[1..o.len() - 1].iter().all(|x| x.basis_index().is_none()), "N = {n}");
        }
        assert!(first_return_word(4).is_err());
    }

    #[test]
    fn empty_word() {
        let w = ReflectionWord::new(3, vec![]).unwrap();
        assert_eq!(orbit(&p(3, 2), &w).unwrap(), vec![p(3, 2)]);
        assert!(ReflectionWord::new(3, vec![4]).is_err());
    }

    #[test]
    fn four_points_two_periods() {
        let w = ReflectionWord::new(4, [2, 3, 4, 1, 2, 3, 4, 1].to_vec()).unwrap();
        let o = orbit(&p(4, 1), &w).unwrap();
        assert_eq!(o[4].coeff(1), 0);
        assert_eq!(o[8].coeff(1), -1);
    }

    #[test]
    fn even_certificates() {
        for n in [4, 6, 8, 10] {
            let r = avoidance_check(n, 500).unwrap();
            assert!(r.passed(), "N = {n}");
            assert!(r.returns.is_empty());
            assert_eq!(&r.coeffs_after_sigma1().unwrap()[..4], &[0, -1, -2, -3]);
        }
    }

    #[test]
    fn odd_checks() {
        let r = avoidance_check(3, 6).unwrap();
        assert!(r.hits.is_empty());
        assert_eq!(r.returns.iter().filter(|x| x.start == 1).map(|x| (x.step, x.after_sigma)).collect::<Vec<_>>(), vec![(6, 1)]);
        for n in [5, 7] {
            let r = avoidance_check(n, 200).unwrap();
            assert!(r.passed());
            assert!(r.returns.iter().all(|x| x.after_sigma == x.point));
        }
    }

    proptest! {
        #[test]
        fn involution_and_sign_flip(c in proptest::collection::vec(-50i64..50, 5), i in 1usize..=5, k in 1usize..=5) {
            let x = FormalPoint::new(c);
            prop_assert_eq!(reflect(i, &reflect(i, &x).unwrap()).unwrap(), x.clone());
            if k != i {
                prop_assert_eq!(reflect(k, &x).unwrap().coeff(i), -x.coeff(i));
            }
        }
    }
}
