//! Exact-rational toolkit for measuring how Minkowski sums of compact sets
//! approach convexity: the volume deficit, the Hausdorff distance from the
//! hull, the Schneider non-convexity index, and the inner radius / effective
//! standard deviation — plus verifiers for the inequalities, rates, and
//! counterexamples that relate them.

pub mod ball;
pub mod cli;
pub mod clip;
pub mod config;
pub mod convexification;
pub mod hull;
pub mod io;
pub mod lp;
pub mod measures;
pub mod point;
pub mod report;
pub mod scalar;
pub mod sets;
pub mod svg;
pub mod verify;

use thiserror::Error as ThisError;

/// CLI entry point; returns the process exit code.
pub fn run() -> i32 {
    cli::run(std::env::args())
}

#[derive(ThisError, Debug)]
pub enum Error {
    #[error("dimension mismatch: expected {0}, got {1}")]
    DimensionMismatch(usize, usize),
    #[error("set must be nonempty")]
    EmptySet,
    #[error("box has lo > hi on some axis")]
    InvalidBox,
    #[error("invalid gauge: {0}")]
    InvalidGauge(String),
    #[error("cardinality cap {cap} exceeded; estimated size {estimate}")]
    CapExceeded { cap: usize, estimate: String },
    #[error("enumeration budget {0} exceeded")]
    BudgetExceeded(usize),
    #[error("point is not in the sum of convex hulls")]
    NotInHull,
    #[error("input error: {0}")]
    Input(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
