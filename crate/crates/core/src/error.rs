use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime below 65536")]
    InvalidField(u64),
    #[error("bad scalar: {0}")]
    Scalar(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("Jacobi identity fails on basis triple ({0},{1},{2})")]
    JacobiViolation(usize, usize, usize),
    #[error("bracket table is not antisymmetric at ({0},{1})")]
    AntisymmetryViolation(usize, usize),
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("not a representation: {0}")]
    InvalidRepresentation(String),
    #[error("[p]-map axiom {axiom} fails: {detail}")]
    PMapViolation { axiom: &'static str, detail: String },
    #[error("module is not restricted: {0}")]
    NotRestricted(String),
    #[error("scale guard: {what} has size {size}, limit is {limit}")]
    ScaleGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("operation requires {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("invalid algebra file at {path}: {source}")]
    Spec {
        path: String,
        #[source]
        source: Box<Error>,
    },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at(self, path: impl Into<String>) -> Error {
        Error::Spec {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
