use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("effective hop needs a positive detuning, got {0}")]
    NonPositiveDelta(f64),

    #[error("state has {found} amplitudes, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite amplitude produced at t = {t}")]
    Numeric { t: f64 },

    #[error("initial excitation |b1(0)|^2 is zero")]
    ZeroInitialExcitation,

    #[error("norm decay law needs equal damping rates on every mode, got {0:?}")]
    UnequalRates(Vec<f64>),

    #[error("sweep point {param} = {value}: {source}")]
    Sweep {
        param: String,
        value: f64,
        source: Box<Error>,
    },

    #[error("malformed config: {0}")]
    Parse(String),

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl fmt::Display) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.to_string(),
        }
    }

    /// Name of the offending parameter for `InvalidParam` errors.
    pub fn param_name(&self) -> Option<&'static str> {
        match self {
            Error::InvalidParam { name, .. } => Some(name),
            _ => None,
        }
    }

    pub fn is_numeric(&self) -> bool {
        match self {
            Error::Numeric { .. } => true,
            Error::Sweep { source, .. } => source.is_numeric(),
            _ => false,
        }
    }

    /// Process exit code: 2 for numeric failures, 1 for everything else
    /// (config, usage, io).
    pub fn exit_code(&self) -> i32 {
        if self.is_numeric() {
            2
        } else {
            1
        }
    }
}
