//! Public-API checks against small independent oracles written here.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use refdyn_core::algebra::algebraic::isolate_real_roots;
use refdyn_core::algebra::rational::int;
use refdyn_core::algebra::{RatMatrix, Rational, UniPoly};
use refdyn_core::billiards::{random_cubic_through, third_intersection, RationalPoint};
use refdyn_core::transitions::{check_log_concavity, inverse_tuple, DegreeTuple};

/// Determinant by plain Gaussian elimination.
fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    d
}

fn square(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn char_poly_matches_determinant(rows in (1usize..=5).prop_flat_map(square), t in -6i64..=6) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = RatMatrix::from_ints(&refs);
        let cp = m.char_poly().unwrap();
        let n = rows.len();
        let shifted: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| int(if i == j { t } else { 0 }) - int(rows[i][j])).collect())
            .collect();
        prop_assert_eq!(cp.eval(&int(t)), det(shifted));
        prop_assert!(m.eval_poly(&cp).unwrap() == RatMatrix::zeros(n, n));
        let mp = m.minimal_poly().unwrap();
        prop_assert!(mp.divides(&cp));
        prop_assert!(m.eval_poly(&mp).unwrap() == RatMatrix::zeros(n, n));
    }

    #[test]
    fn isolated_roots_are_the_integer_roots(mut roots in prop::collection::btree_set(-20i64..=20, 1..6)) {
        let p = roots.iter().fold(UniPoly::one(), |acc, &k| &acc * &UniPoly::from_ints(&[-k, 1]));
        let p = &p * &UniPoly::from_ints(&[1, 0, 1]);
        let found = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(found.len(), roots.len());
        for (a, k) in found.iter().zip(std::mem::take(&mut roots)) {
            prop_assert_eq!(a.compare_rational(&int(k)), Ordering::Equal);
        }
    }

    #[test]
    fn log_concavity_on_integer_tuples(interior in prop::collection::vec(1i64..=40, 1..5)) {
        let mut v = vec![1];
        v.extend(&interior);
        v.push(1);
        let brute = (1..v.len() - 1).all(|j| v[j] * v[j] >= v[j - 1] * v[j + 1]);
        let t = DegreeTuple::from_ints(&v).unwrap();
        prop_assert_eq!(check_log_concavity(&t).unwrap().holds, brute);
        let palindrome = v.iter().eq(v.iter().rev());
        prop_assert_eq!(inverse_tuple(&t).equals(&t), palindrome);
    }

    #[test]
    fn third_intersection_stays_on_surface(seed in any::<u64>(), c in prop::collection::vec(-6i64..=6, 8)) {
        let p = RationalPoint::new(c[..4].iter().map(|&x| int(x)).collect());
        let y = RationalPoint::new(c[4..].iter().map(|&x| int(x)).collect());
        let (Ok(p), Ok(y)) = (p, y) else { return Ok(()) };
        prop_assume!(p != y);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_cubic_through(&mut rng, 4, &[p.clone(), y.clone()]).unwrap();
        if let Ok(z) = third_intersection(&x, &p, &y) {
            prop_assert!(x.contains(&z).unwrap());
            if let Ok(back) = third_intersection(&x, &p, &z) {
                prop_assert_eq!(back, y);
            }
        }
    }
}

#[test]
fn exact_root_sorts_before_interval_with_same_left_end() {
    let p = &UniPoly::from_ints(&[0, -1, 1]) * &UniPoly::from_ints(&[1, 0, 1]);
    let r = isolate_real_roots(&p).unwrap();
    assert_eq!(r[0].compare_rational(&int(0)), Ordering::Equal);
    assert_eq!(r[1].compare_rational(&int(1)), Ordering::Equal);
}
