use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension {dim}: every factor needs at least 2 basis vectors")]
    InvalidDimension { dim: usize },

    #[error("invalid entry at index {index}: {value} is not finite")]
    InvalidEntry { index: usize, value: String },

    #[error("capacity exceeded: total dimension {requested} is above the cap {cap}")]
    CapacityExceeded { requested: usize, cap: usize },

    #[error("operator is not normal: commutator norm {commutator_norm:e} exceeds {tol:e}")]
    NonNormalOperator { commutator_norm: f64, tol: f64 },

    #[error("margin {margin} leaves an empty interior")]
    EmptyInterior { margin: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid phase {re}+{im}i: modulus {modulus} is not 1")]
    InvalidPhase { re: f64, im: f64, modulus: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("incompatible representations: {0}")]
    IncompatibleRepresentations(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("generator index z[{i},{j}] out of range for rank {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },

    #[error("malformed representation: {0}")]
    MalformedRepresentation(String),

    #[error("input is not a representation: relation {relation} has residual {residual:e}")]
    NotARepresentation { relation: String, residual: f64 },

    #[error("indeterminate case split: norm of {operator} is {norm:e}, inside the ambiguity band around {tol:e}")]
    Indeterminate { operator: String, norm: f64, tol: f64 },

    #[error("degenerate anchor: projection {projection} has top eigenvalue {top:e}")]
    DegenerateAnchor { projection: String, top: f64 },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
