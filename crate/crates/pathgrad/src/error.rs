//! Error types shared across the crate.

use crate::engine::RefineOutcome;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A point fell outside the field's domain box.
    #[error("coordinate {coord} = {value} outside domain [{lo}, {hi}]")]
    OutOfDomain {
        coord: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// Finite-difference step must be strictly positive.
    #[error("finite-difference step must be > 0, got {0}")]
    InvalidStep(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Path parameter outside [0, 1].
    #[error("path parameter t = {0} outside [0, 1]")]
    ParameterOutOfRange(f64),

    #[error("coordinate index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    /// The path left the field's domain box at the given parameter.
    #[error("path leaves the field domain at t = {t}")]
    PathLeavesDomain { t: f64 },

    /// Node-doubling refinement hit the node budget before reaching the
    /// target residual. Carries the final report so callers can inspect it.
    #[error(
        "refinement did not converge: residual {residual:.3e} after {nodes} nodes",
        residual = outcome.report.residual.abs(),
        nodes = outcome.report.total_nodes
    )]
    NotConverged { outcome: Box<RefineOutcome> },

    /// Path endpoints differ in the two designated coordinates, so the
    /// symmetry machinery does not apply.
    #[error("path endpoints differ in coordinates {i} and {j}")]
    EndpointMismatch { i: usize, j: usize },

    /// The two designated path coordinates coincide for all t; there is no
    /// violation interval to build a witness from.
    #[error("path coordinates coincide everywhere; nothing to witness")]
    NoViolation,

    #[error("path is not strictly monotonic in the designated coordinates")]
    NotMonotonic,

    #[error("witness breakpoints must satisfy alpha < beta, got alpha = {alpha}, beta = {beta}")]
    InvalidBreakpoints { alpha: f64, beta: f64 },

    /// One or more problems found while validating a field/path spec file.
    /// All problems are collected before reporting.
    #[error("invalid spec: {}", errors.join("; "))]
    InvalidSpec { errors: Vec<String> },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
