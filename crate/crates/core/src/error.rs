use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot reflect in the zero vector")]
    ZeroRoot,

    #[error("invalid root system ({family}, {rank}): {reason}")]
    InvalidFamily {
        family: String,
        rank: usize,
        reason: String,
    },

    #[error("subspace basis is linearly dependent")]
    DependentBasis,

    #[error("base point must be nonzero")]
    ZeroBasePoint,

    #[error("{0} is not in the subspace spanned by the roots")]
    NotInSubspace(String),

    #[error("sigma is reducible; decompose the triad into irreducible components first")]
    Reducible,

    #[error("no element of W+ makes the fundamental region a cell; input is not a symmetric triad")]
    NoAlphaTilde,

    #[error("st-point needs n > sum of m_i = {sum}, got n = {n}")]
    StPointOrder { n: u64, sum: u64 },

    #[error("triad fails the symmetric-triad axioms: {0}")]
    AxiomFailure(String),

    #[error("internal postcondition violated: {0}")]
    Postcondition(String),

    #[error("multiplicity data missing: {0}")]
    MissingMultiplicity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown catalogue pair {0:?}")]
    UnknownPair(String),

    #[error("invalid size for {pair}: {reason}")]
    InvalidSize { pair: String, reason: String },

    #[error("eigenvalue clustering is ambiguous (gap {gap:e}); choose a different generic H")]
    ClusterAmbiguity { gap: f64 },

    #[error("numerically marginal singular value {value:e}; retry with a perturbed exact H")]
    Marginal { value: f64 },

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error("point {index} is not on the orbit of x0 within tolerance: {reason}")]
    OrbitMembership { index: usize, reason: String },

    #[error("intertwiner is rank deficient for root {0}")]
    RankDeficient(String),

    #[error("singular H where a regular point is required: {0}")]
    SingularPoint(String),
}
