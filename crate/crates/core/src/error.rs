use thiserror::Error;

use crate::algebra::Defect;
use crate::term::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("capacity exceeded: {what} (limit {limit}, reached {reached})")]
    CapacityExceeded {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    #[error("invalid algebra: {}", format_defects(.0))]
    InvalidAlgebra(Vec<Defect>),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("variable x{0} is not bound by the assignment")]
    UnboundVariable(usize),

    #[error("element {element} is outside the carrier of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("partition is not compatible with operation `{0}`")]
    IncompatiblePartition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("generating class is empty")]
    EmptyClass,

    #[error("generating class has only trivial members")]
    TrivialClass,

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, limit: usize, reached: usize) -> Self {
        Error::CapacityExceeded {
            what,
            limit,
            reached,
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::CapacityExceeded { .. })
    }
}

fn format_defects(defects: &[Defect]) -> String {
    defects
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
