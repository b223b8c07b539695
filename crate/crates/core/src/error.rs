//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point violated a geometric precondition (outside the domain, on the
    /// boundary when an interior point was required, and so on).
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// Structurally invalid input (bad parameters, malformed configuration).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An evaluation point sits inside the refinement patch of a different
    /// marked point; strict evaluation refuses to proceed.
    #[error("point {point:?} lies inside the patch of marked point {marked:?} (radius {radius}); rebuild the grid with this point marked, or use lenient evaluation")]
    InsideForeignPatch {
        point: Vec<f64>,
        marked: Vec<f64>,
        radius: f64,
    },

    /// A lookup asked a rho table for a subset it does not hold.
    #[error("rho table is missing subset mask {0:#b}")]
    MissingSubset(u32),

    /// Particle simulation exceeded its step budget.
    #[error("particle step budget exceeded: budget {budget} steps, used {used} before completing the replicate")]
    StepBudgetExceeded { budget: u64, used: u64 },

    /// Calibration could not bracket the target.
    #[error("non-bracketing search: target {target} not enclosed by [{lo_gamma}, {hi_gamma}] -> [{lo_value}, {hi_value}]")]
    NonBracketing {
        target: f64,
        lo_gamma: f64,
        hi_gamma: f64,
        lo_value: f64,
        hi_value: f64,
    },

    /// Compact nest construction could not satisfy its constraints.
    #[error("infeasible compact nest: {binding}")]
    InfeasibleNest { binding: String },

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::DomainViolation(msg.into())
    }
}
