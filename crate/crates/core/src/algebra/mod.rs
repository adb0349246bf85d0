//! Exact arithmetic: rationals, polynomials, series, matrices and real algebraic numbers.

pub mod algebraic;
pub mod factor;
pub mod interval;
pub mod linalg;
pub mod matrix;
pub mod mpoly;
pub mod numfield;
pub mod rational;
pub mod series;
pub mod upoly;

pub use algebraic::{isolate_real_roots, AlgebraicReal};
pub use factor::factor_over_rationals;
pub use matrix::RatMatrix;
pub use mpoly::MultiPoly;
pub use numfield::{NumberField, NumberFieldElement};
pub use rational::{int, rat, Rational};
pub use series::TruncatedSeries;
pub use upoly::UniPoly;

/// `det(xI - m)`.
pub fn char_poly(m: &RatMatrix) -> crate::Result<UniPoly> {
    m.char_poly()
}

/// Monic annihilating polynomial of least degree.
pub fn minimal_poly(m: &RatMatrix) -> crate::Result<UniPoly> {
    m.minimal_poly()
}

/// Same root, interval narrower than `eps`.
pub fn refine(a: &AlgebraicReal, eps: &Rational) -> AlgebraicReal {
    a.refine(eps)
}

/// Composition of `f` with series arguments.
pub fn substitute_series(f: &MultiPoly, args: &[TruncatedSeries]) -> crate::Result<TruncatedSeries> {
    f.substitute_series(args)
}

/// Order of vanishing at `t = 0`.
pub fn valuation(s: &TruncatedSeries) -> crate::Result<u64> {
    s.valuation()
}
