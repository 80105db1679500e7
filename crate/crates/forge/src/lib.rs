//! Verification harness on top of `redei_core`: single checks, sweeps and
//! report rendering.

pub mod commands;
pub mod record;
pub mod render;
pub mod sweep;

pub use record::{Params, VerificationRecord};
pub use render::{render, Format};
pub use sweep::{run_sweep, SweepConfig, Theorem};

/// Environment override for the bivariate division guard.
pub const MAX_P_ENV: &str = "REDEI_FORGE_MAX_P";

#[derive(Debug, thiserror::Error)]
pub enum ForgeError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] redei_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl ForgeError {
    /// 1 for bad input, 3 for failed output.
    pub fn exit_code(&self) -> i32 {
        match self {
            ForgeError::Usage(_) | ForgeError::Core(_) => 1,
            ForgeError::Io(_) | ForgeError::Csv(_) | ForgeError::Json(_) => 3,
        }
    }
}

/// The bivariate guard, read from [`MAX_P_ENV`] when set.
pub fn max_bivariate_p() -> Result<u32, ForgeError> {
    match std::env::var(MAX_P_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| ForgeError::Usage(format!("{MAX_P_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(redei_core::poly::DEFAULT_MAX_BIVARIATE_P),
    }
}

/// Exit code for a finished run: 0 if everything passed, 2 otherwise.
pub fn verdict(records: &[VerificationRecord]) -> i32 {
    if records.iter().all(|r| r.passed) {
        0
    } else {
        2
    }
}
