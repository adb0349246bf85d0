//! Period-three valuation system for reflections in the vertices of a triangle of lines.

use super::TransitionSystem;
use crate::algebra::RatMatrix;

pub fn p0() -> RatMatrix {
    RatMatrix::from_ints(&[
        &[2, 0, 0, -1, -1, 0],
        &[1, 1, 0, -1, -1, 0],
        &[1, 0, 1, -1, -1, 0],
        &[1, 0, 0, 0, -1, 0],
        &[1, 0, 0, -1, 0, 0],
        &[0, 0, 0, 0, 0, 0],
    ])
}

pub fn p1() -> RatMatrix {
    RatMatrix::from_ints(&[
        &[1, 1, 0, -1, 0, -1],
        &[0, 2, 0, -1, 0, -1],
        &[0, 1, 1, -1, 0, -1],
        &[0, 1, 0, 0, 0, -1],
        &[0, 0, 0, 0, 0, 0],
        &[0, 1, 0, -1, 0, 0],
    ])
}

pub fn p2() -> RatMatrix {
    RatMatrix::from_ints(&[
        &[1, 0, 1, 0, -1, -1],
        &[0, 1, 1, 0, -1, -1],
        &[0, 0, 2, 0, -1, -1],
        &[0, 0, 0, 0, 0, 0],
        &[0, 0, 1, 0, 0, -1],
        &[0, 0, 1, 0, -1, 0],
    ])
}

/// `P_0, P_1, P_2` as a period-three system.
pub fn triangle_system() -> TransitionSystem {
    TransitionSystem::new(vec![p0(), p1(), p2()]).expect("literal matrices are valid")
}

/// `P = P_2 P_1 P_0`, the action of one full cycle.
pub fn triangle_product() -> RatMatrix {
    triangle_system().period_product()
}

/// The product as printed alongside its minimal polynomial.
pub fn displayed_product() -> RatMatrix {
    RatMatrix::from_ints(&[
        &[3, 1, 1, -3, -2, 0],
        &[2, 2, 1, -3, -2, 0],
        &[2, 1, 2, -3, -2, 0],
        &[0, 0, 0, 0, 0, 0],
        &[1, 0, 1, -1, -1, 0],
        &[1, 1, 1, -2, -1, 0],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, UniPoly};
    use crate::transitions::{iterate, StateVector};

    #[test]
    fn product_order() {
        assert_eq!(triangle_product(), displayed_product());
        assert_ne!(&(&p0() * &p1()) * &p2(), displayed_product());
    }

    #[test]
    fn first_columns() {
        let c: Vec<Rational> = p0().column(0);
        assert_eq!(c, [2, 1, 1, 1, 1, 0].map(|x| Rational::from_integer(x.into())).to_vec());
        let orbit = iterate(&triangle_system(), &StateVector::basis(6, 0), 3).unwrap();
        assert_eq!(orbit[3].v, StateVector::from_ints(0, &[3, 2, 2, 0, 1, 1]).v);
    }

    #[test]
    fn characteristic_and_minimal_polynomial() {
        let x = UniPoly::x();
        let lin = UniPoly::from_ints(&[-1, 1]);
        let quad = UniPoly::from_ints(&[-1, -4, 1]);
        let p = triangle_product();
        assert_eq!(p.char_poly().unwrap(), x.pow(2) * lin.pow(2) * quad.clone());
        // P is diagonalizable: x (x - 1) (x^2 - 4x - 1) already annihilates it.
        let squarefree = &(&x * &lin) * &quad;
        assert!(p.eval_poly(&squarefree).unwrap().is_zero());
        assert_eq!(p.minimal_poly().unwrap(), squarefree);
    }

    #[test]
    fn dominance_invariant_along_orbit() {
        let orbit = iterate(&triangle_system(), &StateVector::basis(6, 0), 60).unwrap();
        for s in &orbit[1..] {
            for hi in 0..3 {
                for lo in 3..6 {
                    assert!(s.v[hi] >= s.v[lo], "{:?}", s);
                }
            }
        }
    }
}
