use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("unsupported field GF({p}^{h}): {reason}")]
    UnsupportedField { p: u32, h: u32, reason: String },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("incompatible family/field combination: {0}")]
    IncompatibleFamily(String),

    #[error("enumeration exceeds size budget: {what} would need {needed} (budget {budget})")]
    SizeBudget { what: &'static str, needed: u64, budget: u64 },

    #[error("illegal scheme parameters: {0}")]
    IllegalParameters(String),

    /// An invariant of the geometry or of exact arithmetic failed; this
    /// signals a bug, not bad input.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("inner distribution undefined for the empty set")]
    EmptySet,

    #[error("line set must be a nonempty proper subset (size {size}, n = {n})")]
    NotProperSubset { size: usize, n: usize },

    #[error("no divisibility condition known for orthogonality to {0}")]
    NoDivisorKnown(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("space fingerprint mismatch: file is for {found}, space is {expected}")]
    FingerprintMismatch { expected: String, found: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::UnsupportedField { .. } => "unsupported_field",
            Error::AmbientMismatch(..) => "ambient_mismatch",
            Error::IncompatibleFamily(_) => "incompatible_family",
            Error::SizeBudget { .. } => "size_budget",
            Error::IllegalParameters(_) => "illegal_parameters",
            Error::Consistency(_) => "consistency",
            Error::EmptySet => "empty_set",
            Error::NotProperSubset { .. } => "not_proper_subset",
            Error::NoDivisorKnown(_) => "no_divisor_known",
            Error::Construction(_) => "construction",
            Error::Precondition(_) => "precondition",
            Error::FingerprintMismatch { .. } => "fingerprint_mismatch",
            Error::InvalidInput(_) => "invalid_input",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
