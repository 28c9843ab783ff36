use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("integration failed at step {step}: non-finite propagator entry")]
    IntegrationFailure { step: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("Bose occupation is singular at zero frequency")]
    ZeroFrequency,

    #[error("no relaxation: both total transition rates vanish")]
    NoRelaxation,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("at {point}: {source}")]
    AtPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Short machine-readable tag used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "invalid_parameter",
            Error::IntegrationFailure { .. } => "integration_failure",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::Configuration(_) => "configuration",
            Error::ZeroFrequency => "zero_frequency",
            Error::NoRelaxation => "no_relaxation",
            Error::Domain(_) => "domain",
            Error::AtPoint { source, .. } => source.kind(),
        }
    }

    pub(crate) fn at(self, point: impl Into<String>) -> Error {
        Error::AtPoint {
            point: point.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
