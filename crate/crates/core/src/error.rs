use thiserror::Error;

/// Every failure the engine can report.
///
/// Each variant has a stable [`Error::code`] used by the command-line front end
/// and in JSON reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCountMismatch { expected: usize, found: usize },

    #[error("image list has {found} entries but the ring has {expected} variables")]
    ImageCountMismatch { expected: usize, found: usize },

    #[error("exponent overflow: {0} exceeds 2^31")]
    ExponentOverflow(u64),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("too many variables: {found} (at most {max} supported)")]
    TooManyVariables { found: usize, max: usize },

    #[error("ideal generator `{0}` is not homogeneous")]
    NonHomogeneousIdeal(String),

    #[error("ideal contains a non-zero constant")]
    UnitIdeal,

    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("modules live over different rings")]
    RingMismatch,

    #[error("element `{0}` does not lie in the maximal ideal")]
    NotInMaximalIdeal(String),

    #[error("the images do not define an endomorphism: generator `{0}` is not mapped into the ideal")]
    NotEndomorphism(String),

    #[error("no contracting certificate phi^s(m) in m^2 found for s <= {0}")]
    NotCertifiedContracting(usize),

    #[error("size budget exceeded: {size} > {budget}")]
    SizeBudgetExceeded { size: usize, budget: usize },

    #[error("module is zero")]
    ZeroModule,

    #[error("R/phi(m)R is not artinian")]
    NotArtinianCondition,

    #[error("ring is not artinian")]
    NotArtinianRing,

    #[error("invalid generator set: {0}")]
    GeneratorSetInvalid(String),

    #[error("table too short: need at least {needed} entries, have {have}")]
    TableTooShort { needed: usize, have: usize },

    #[error("complex is not a complex: d_{degree} composed with d_{next} is non-zero", next = degree + 1)]
    NotAComplex { degree: i64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("homology in degree {degree} has infinite length")]
    InfiniteLength { degree: i64 },

    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VariableCountMismatch { .. } => "E_VARIABLE_COUNT",
            Error::ImageCountMismatch { .. } => "E_IMAGE_COUNT",
            Error::ExponentOverflow(_) => "E_EXPONENT_OVERFLOW",
            Error::NotPrime(_) => "E_NOT_PRIME",
            Error::TooManyVariables { .. } => "E_TOO_MANY_VARIABLES",
            Error::NonHomogeneousIdeal(_) => "E_NON_HOMOGENEOUS_IDEAL",
            Error::UnitIdeal => "E_UNIT_IDEAL",
            Error::ShapeMismatch(_) => "E_SHAPE_MISMATCH",
            Error::RingMismatch => "E_RING_MISMATCH",
            Error::NotInMaximalIdeal(_) => "E_NOT_IN_MAXIMAL_IDEAL",
            Error::NotEndomorphism(_) => "E_NOT_ENDOMORPHISM",
            Error::NotCertifiedContracting(_) => "E_NOT_CERTIFIED_CONTRACTING",
            Error::SizeBudgetExceeded { .. } => "E_SIZE_BUDGET_EXCEEDED",
            Error::ZeroModule => "E_ZERO_MODULE",
            Error::NotArtinianCondition => "E_NOT_ARTINIAN_CONDITION",
            Error::NotArtinianRing => "E_NOT_ARTINIAN_RING",
            Error::GeneratorSetInvalid(_) => "E_GENERATOR_SET_INVALID",
            Error::TableTooShort { .. } => "E_TABLE_TOO_SHORT",
            Error::NotAComplex { .. } => "E_NOT_A_COMPLEX",
            Error::Parse { .. } => "E_PARSE",
            Error::InfiniteLength { .. } => "E_INFINITE_LENGTH",
            Error::IterationLimit(_) => "E_ITERATION_LIMIT",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
