use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient mismatch: {left} vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("operation undefined on the unit monomial")]
    UnitMonomial,

    #[error("illegal Borel move {from}->{to} on {monomial}")]
    IllegalMove {
        monomial: String,
        from: usize,
        to: usize,
    },

    #[error("exponent overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("mixed degrees in {0}")]
    MixedDegrees(&'static str),

    #[error("not Borel fixed: {0}")]
    NotBorelFixed(String),

    #[error("malformed principal form: {0}")]
    MalformedPrincipalForm(String),

    #[error("duplicate vertex label {0}")]
    DuplicateLabel(String),

    #[error("product collision: vertex label {0} arises twice")]
    ProductCollision(String),

    #[error("inconsistent glue at cell {0}")]
    InconsistentGlue(String),

    #[error("not a regular complex: {0}")]
    NotRegular(String),

    #[error("incidence function missing on cell {0}")]
    IncidenceMissing(usize),

    #[error("incidence assignment failed on cell {cell}: {reason}")]
    IncidenceContradiction { cell: usize, reason: String },

    #[error("{0} is not a vertex label of the complex")]
    NotAVertex(String),

    #[error("vertex labels do not match G(I): {0}")]
    VertexMismatch(String),

    #[error("complex has not been certified as a minimal resolution: {0}")]
    NotVerified(String),

    #[error("{0} is not an element of the lattice")]
    NotInLattice(String),

    #[error("interval is empty: {lower} does not divide {upper}")]
    EmptyInterval { lower: String, upper: String },

    #[error("maximal chain budget of {0} exceeded")]
    ChainBudget(usize),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid complex file: {0}")]
    Schema(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
