//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0} vs {1} points per axis")]
    GridMismatch(usize, usize),

    #[error("inverse Laplacian needs mean-zero input (relative mean {0:.3e})")]
    NonZeroMean(f64),

    #[error("field is not divergence-free: ‖div‖₂ = {div_norm:.3e} vs ‖u‖₂ = {field_norm:.3e}")]
    NotDivergenceFree { div_norm: f64, field_norm: f64 },

    #[error("flow map inversion did not converge after {iterations} iterations (max residual {residual:.3e})")]
    InversionDiverged { iterations: usize, residual: f64 },

    #[error("flow map is not volume preserving: max |det Dη − 1| = {0:.3e} exceeds 0.05")]
    VolumeDistortion(f64),

    #[error("non-finite value produced by {module} at step {step} (t = {time:.6})")]
    NumericalBlowup {
        module: &'static str,
        step: usize,
        time: f64,
    },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("malformed field file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
