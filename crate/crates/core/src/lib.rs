//! Exact computation and certification of dynamical degrees of compositions
//! of point reflections on cubic hypersurfaces.

pub mod algebra;
pub mod billiards;
pub mod elliptic;
pub mod error;
pub mod germs;
pub mod picard;
pub mod reflection_maps;
pub mod report;
pub mod transitions;

pub use algebra::{AlgebraicReal, MultiPoly, RatMatrix, Rational, TruncatedSeries, UniPoly};
pub use error::{Error, Result};
pub use transitions::{DegreeTuple, SpectralData, StateVector, TransitionSystem};
