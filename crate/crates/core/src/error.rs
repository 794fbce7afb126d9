use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid chain: {0}")]
    Validation(String),

    #[error("chain is not ergodic: state {from} cannot reach state {to}")]
    NotErgodic { from: usize, to: usize },

    #[error("stationary solve failed (residual {residual:e})")]
    Stationary { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("subset enumeration over {n} states exceeds the cap of {cap}; sampling-based estimation is not supported")]
    EnumerationCap { n: usize, cap: usize },

    #[error("degenerate subset: A must be a nonempty proper subset")]
    DegenerateSubset,

    #[error("invalid path family: {0}")]
    PathFamily(String),

    #[error("no odd alternating P/P* path exists for pair ({x},{y}) ({count} pair(s) failed)")]
    AlternatingPaths {
        x: usize,
        y: usize,
        count: usize,
        failed: Vec<(usize, usize)>,
    },

    #[error("invalid group: {0}")]
    Group(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
