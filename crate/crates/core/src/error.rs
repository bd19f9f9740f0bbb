use thiserror::Error;

/// Errors produced by the codecs, distributions and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncated stream: needed {needed} more bit(s) at bit offset {offset}")]
    Truncated { offset: u64, needed: u64 },

    #[error("bad magic bytes {0:02x?}, expected \"DSIM\"")]
    BadMagic([u8; 4]),

    #[error("unsupported container version {0:#04x}")]
    BadVersion(u8),

    #[error("unknown scheme byte {0:#04x}")]
    BadScheme(u8),

    #[error("container declares {declared} payload bits but only {available} are present")]
    PayloadOverflow { declared: u64, available: u64 },

    #[error("container expected scheme {expected}, found {found}")]
    SchemeMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("corrupt stream: {0}")]
    Corrupt(String),

    #[error("decoded counts overshoot: {got} values recovered, expected {expected}")]
    CountOverflow { got: u64, expected: u64 },

    #[error("point ({x}, {y}) not located within depth {k_max}")]
    DepthExceeded { x: f64, y: f64, k_max: u32 },

    #[error("unknown distribution '{0}'")]
    UnknownDistribution(String),

    #[error("sampler failure: {0}")]
    Sampler(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
