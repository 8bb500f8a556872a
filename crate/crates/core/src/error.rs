use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("allocation of {what} failed ({bytes} bytes)")]
    Allocation { what: &'static str, bytes: usize },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("division by {k} is not defined in {ring}")]
    Divisibility { k: u64, ring: &'static str },

    #[error("character of order {order} does not embed into F_{q}")]
    IncompatiblePrime { order: u64, q: u64 },

    #[error("local factor at p={p}: {source}")]
    Provider {
        p: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("missing local data at p={0}")]
    MissingFactor(u64),

    #[error("bad prime(s) {0:?} need explicit local factors")]
    BadPrimes(Vec<u64>),

    #[error("lift bound exceeds modulus at index {index}")]
    Lift { index: u64 },

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("inconsistent result: {0}")]
    Inconsistent(String),

    #[error("precision: {0}")]
    Precision(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short tag naming the area that raised the error.
    pub fn module(&self) -> &'static str {
        match self {
            Error::Allocation { .. } | Error::Capacity(_) => "capacity",
            Error::Divisibility { .. } => "ring",
            Error::IncompatiblePrime { .. } => "chars",
            Error::Provider { .. } | Error::MissingFactor(_) => "euler",
            Error::BadPrimes(_) => "lprod",
            Error::Lift { .. } | Error::Integrity(_) | Error::Precision(_) => "bgform",
            Error::Inconsistent(_) => "symfun",
            Error::Parse(_) | Error::Io(_) => "io",
            Error::InvalidArgument(_) => "args",
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Allocation { .. } | Error::Capacity(_))
    }
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

/// Vec with fallible allocation, so huge requests surface as errors.
pub(crate) fn try_vec<T: Clone>(len: usize, fill: T, what: &'static str) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(len).map_err(|_| Error::Allocation {
        what,
        bytes: len.saturating_mul(std::mem::size_of::<T>()),
    })?;
    v.resize(len, fill);
    Ok(v)
}
