use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("value {value} is not admissible in {semiring}")]
    Inadmissible { semiring: &'static str, value: String },

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("the empty set has no {0} in this semiring")]
    NoBound(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("axiom violation: {axiom} fails at {witness}")]
    AxiomViolation { axiom: String, witness: String },

    #[error("structure has {n} elements, limit is {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Iteration or closure does not settle; `cycle` lists the node indices
    /// of a witness cycle whose weight keeps improving.
    #[error("divergence: {message} (cycle {cycle:?})")]
    Divergence { message: String, cycle: Vec<usize> },

    #[error("graph contains a cycle, longest paths are unbounded")]
    Cyclic,

    #[error("regularity: {0}")]
    Regularity(String),

    #[error("inconsistent prescription: {0}")]
    Inconsistent(String),

    #[error("the zero functional has no generator")]
    ZeroFunctional,

    #[error("equal vectors cannot be separated")]
    NotSeparable,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Inadmissible { .. } => "inadmissible",
            Error::NotInvertible(_) => "not-invertible",
            Error::NoBound(_) => "no-bound",
            Error::Unsupported(_) => "unsupported",
            Error::AxiomViolation { .. } => "axiom-violation",
            Error::TooLarge { .. } => "too-large",
            Error::Shape(_) => "shape",
            Error::Divergence { .. } => "divergence",
            Error::Cyclic => "cyclic",
            Error::Regularity(_) => "regularity",
            Error::Inconsistent(_) => "inconsistent",
            Error::ZeroFunctional => "zero-functional",
            Error::NotSeparable => "not-separable",
            Error::Parse { .. } => "parse",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
