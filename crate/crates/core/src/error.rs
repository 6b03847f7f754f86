use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the supported bound {bound}")]
    Bound {
        what: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("invalid range [{lo}, {hi}]: {reason}")]
    Range { lo: u64, hi: u64, reason: String },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("unsupported arity {0}: only two-valued schedules can be realized")]
    UnsupportedArity(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    /// True for numeric and capacity failures, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Numeric(_) | Error::Capacity(_) | Error::DegenerateSample(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
