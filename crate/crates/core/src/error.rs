use thiserror::Error;

/// Errors raised by parameter validation and the numerical routines.
///
/// Offending values are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("hopping rate gamma must be positive and finite, got {0}")]
    InvalidGamma(f64),
    #[error("phase alpha must be finite, got {0}")]
    InvalidAlpha(f64),
    #[error("delocalization D must lie in [0, 1], got {0}")]
    InvalidDelocalization(f64),
    #[error("lattice half-width must be at least 1")]
    EmptyWindow,
    #[error("lattice half-width {actual} is below the light-cone requirement {required} for time {time}")]
    WindowTooSmall {
        required: usize,
        actual: usize,
        time: f64,
    },
    #[error(
        "ring of {actual} sites is below the wrap-around requirement {required} for time {time}"
    )]
    RingTooSmall {
        required: usize,
        actual: usize,
        time: f64,
    },
    #[error("Bessel argument must be nonnegative, got {0}")]
    NegativeArgument(f64),
    #[error("invalid time {0}")]
    InvalidTime(f64),
    #[error("time step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("state norm {norm} deviates from 1 by more than {tolerance}")]
    NormViolation { norm: f64, tolerance: f64 },
    #[error("probability {probability} reached the lattice edge at time {time}")]
    EdgeLeak { probability: f64, time: f64 },
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("invalid delocalization list: {0}")]
    InvalidDValues(String),
    #[error("fit window [{lo}, {hi}] is invalid or not covered by the curve")]
    InvalidFitWindow { lo: f64, hi: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("nonpositive sample {value} at time {time} cannot enter a log-log fit")]
    NonPositiveSample { time: f64, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
