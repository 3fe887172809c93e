use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero scalar")]
    DivisionByZero,
    #[error("denominator vanishes at q = 1")]
    PoleAtOne,
    #[error("q-exponent {exponent} is not a multiple of 1/{denominator}")]
    ExponentNotIntegral { exponent: String, denominator: u64 },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("root ({0}, {1}) is simple, not composite")]
    NotComposite(usize, usize),

    #[error("simple root index {index} out of range 1..{rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("tau is not a bijection gamma1 -> gamma2: {0}")]
    NotBijective(String),
    #[error("tau is not an isometry: <a{i}, a{j}> differs from its image")]
    NotIsometry { i: usize, j: usize },
    #[error("tau has a cycle: tau^{k}(a{root}) = a{root}")]
    HasCycle { root: usize, k: usize },
    #[error("the exponent equations have no solution")]
    Inconsistent,
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("k = {k} is outside 1..={degree}")]
    OutOfRange { k: usize, degree: usize },

    #[error("root constants are not calibrated")]
    CalibrationMissing,
    #[error("no root constants make the R-matrix an intertwiner: {0}")]
    NoSolution(String),
    #[error("no Cartan factor fits: {0}")]
    NoFit(String),
    #[error("instance violates its prerequisite relations: {0}")]
    InstanceRelationFailed(String),
    #[error("zeroth order of the R-matrix is not the identity")]
    NotIdentityAtZero,

    #[error("malformed input: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Failures caused by the input data rather than by a bug.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Invariant(_) | Error::NoSolution(_) | Error::CalibrationMissing)
    }
}
