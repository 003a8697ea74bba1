use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown variable {name:?} at line {line}, column {column}")]
    UnknownVariable { name: String, line: usize, column: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("frame matrix is singular")]
    SingularFrame,

    #[error("f does not vanish at the origin")]
    NotAtOrigin,

    #[error("f is the zero polynomial")]
    ZeroPolynomial,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("the origin is a smooth point of f")]
    Nonsingular,

    #[error("singularity is not isolated at the origin")]
    NonIsolated,

    #[error("slice singularity is not isolated: {0}")]
    NonIsolatedSlice(String),

    #[error("improper intersection: {0}")]
    ImproperIntersection(String),

    #[error("negative Lê number {0}: non-generic configuration")]
    NegativeLeNumber(i64),

    #[error("consistency check failed: {0}")]
    ConsistencyFailure(String),

    #[error("genericity failure: {0}")]
    GenericityFailure(String),

    #[error("modular verification mismatch: {0}")]
    VerificationMismatch(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE_ERROR",
            Error::UnknownVariable { .. } => "UNKNOWN_VARIABLE",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::SingularFrame => "SINGULAR_FRAME",
            Error::NotAtOrigin => "NOT_AT_ORIGIN",
            Error::ZeroPolynomial => "ZERO_POLYNOMIAL",
            Error::ResourceLimit(_) => "RESOURCE_LIMIT",
            Error::Nonsingular => "NONSINGULAR",
            Error::NonIsolated => "NON_ISOLATED",
            Error::NonIsolatedSlice(_) => "NON_ISOLATED_SLICE",
            Error::ImproperIntersection(_) => "IMPROPER_INTERSECTION",
            Error::NegativeLeNumber(_) => "NEGATIVE_LE_NUMBER",
            Error::ConsistencyFailure(_) => "CONSISTENCY_FAILURE",
            Error::GenericityFailure(_) => "GENERICITY_FAILURE",
            Error::VerificationMismatch(_) => "VERIFICATION_MISMATCH",
            Error::Io(_) => "IO_ERROR",
        }
    }

    /// Errors that say "this frame was a bad draw" rather than "the input is bad".
    pub fn is_frame_rejection(&self) -> bool {
        matches!(
            self,
            Error::NonIsolatedSlice(_)
                | Error::ImproperIntersection(_)
                | Error::NegativeLeNumber(_)
                | Error::ConsistencyFailure(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
