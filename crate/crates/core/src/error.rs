use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // algebra
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix has a non-integer entry")]
    NonInteger,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("valuation exceeds the truncation order")]
    TruncationExhausted,
    #[error("expected {expected} arguments, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("arguments carry different truncation orders")]
    TruncationMismatch,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("comparison undecidable at maximum refinement")]
    Undecidable,

    // picard / transitions
    #[error("actions live on different bases")]
    BasisMismatch,
    #[error("inconsistent state: {0}")]
    InconsistentState(String),
    #[error("no positive real root of maximal modulus")]
    NoDominantRoot,
    #[error("dominance could not be certified: {0}")]
    NotCertifiable(String),
    #[error("eigenvalue hypotheses failed: {}", .0.join(", "))]
    HypothesisFailed(Vec<String>),

    // reflection maps
    #[error("polynomial {0} lies outside its monomial support")]
    OutsideSupport(String),

    // germs
    #[error("dominance invariant violated at step {step}: {valuations:?}")]
    DominanceViolated { step: usize, valuations: Vec<i64> },
    #[error("cancellation at step {step}, component {component}: predicted valuation {predicted}, observed {observed}")]
    Cancellation { step: usize, component: usize, predicted: i64, observed: i64 },
    #[error("minimal pair at step {step} does not attain the minimum (predicted {predicted:?})")]
    PairMismatch { step: usize, predicted: (usize, usize) },

    // billiards
    #[error("point does not lie on the hypersurface")]
    OffSurface,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("line through the points lies in the hypersurface")]
    LineInSurface,
    #[error("point does not lie on the marked line")]
    NotOnLine,
    #[error("point is singular on the surface")]
    SingularPoint,
    #[error("residual conic contains the line (degenerate tangency)")]
    DegenerateTangency,
    #[error("indeterminacy: {0}")]
    Indeterminate(String),
    #[error("return map is not a Moebius transformation")]
    NotMobius,
    #[error("point is not fixed by the map")]
    NotFixed,
    #[error("map is not diagonalizable with the given fixed points")]
    NotDiagonalizable,
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("resampling budget exhausted for seed {seed}")]
    BudgetExhausted { seed: u64 },
}
