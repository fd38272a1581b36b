//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("prototype unavailable: {0}")]
    PrototypeUnavailable(String),

    #[error("inconsistent design: {0}")]
    InconsistentDesign(String),

    #[error("invalid netlist: {0}")]
    InvalidNetlist(String),

    #[error("singular admittance matrix at {freq_hz} Hz")]
    SingularAtFrequency { freq_hz: f64 },

    #[error("no crossover found in sweep")]
    NoCrossover,

    #[error("Newton iteration failed at step {step}: residual {residual}")]
    NewtonDiverged { step: usize, residual: f64 },

    #[error("junction runaway at step {step}: |dphi/dt| = {rate:.3e} rad/s exceeds bound")]
    JunctionRunaway { step: usize, rate: f64 },

    #[error("tone at {freq_hz} Hz is not commensurate with the {window_s} s analysis window")]
    NonCommensurate { freq_hz: f64, window_s: f64 },

    #[error("unphysical gain: fitted slope {0} is not positive")]
    UnphysicalGain(f64),

    #[error("ill-conditioned fit: {0}")]
    IllConditionedFit(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("document error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("malformed table: {0}")]
    MalformedTable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
