use thiserror::Error;

use crate::regime::BoundaryDetail;

/// Failures of the closed-form and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KgError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("input sits on a regime boundary ({0}); the constant mode at kappa = 0 is not normalizable")]
    Boundary(BoundaryDetail),

    #[error("resonant pole: k = kappa = {k} in regime C, amplitudes diverge")]
    Pole { k: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("oracle integration diverged at x = {x}")]
    Divergence { x: f64 },

    #[error("no incident component at x = -L (|A+| = {magnitude:e})")]
    Decomposition { magnitude: f64 },
}

impl KgError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        KgError::InvalidInput(msg.into())
    }

    /// Stable process exit code: 2 input validation, 3 analytic singularity
    /// or boundary, 4 oracle failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            KgError::InvalidInput(_) => 2,
            KgError::Boundary(_) | KgError::Pole { .. } | KgError::Domain(_) => 3,
            KgError::Divergence { .. } | KgError::Decomposition { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, KgError>;
