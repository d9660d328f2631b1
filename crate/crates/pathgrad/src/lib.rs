//! Path-based gradient attribution over arbitrary smooth paths.
//!
//! The crate computes per-coordinate attributions
//! `IG_i = integral over gamma of dF/dx_i dx_i` for a catalog of Lipschitz
//! scalar fields and paths, and turns the two structural guarantees of the
//! method into checkable numbers:
//!
//! * **completeness** — the attributions sum to `F(input) - F(baseline)`
//!   whenever the field is Lipschitz and differentiable along the path
//!   (the Cantor staircase field is included as the negative control that
//!   shows the Lipschitz hypothesis is not decorative);
//! * **symmetry preservation** — diagonal paths give symmetric coordinates
//!   equal attributions, and for any non-diagonal monotone path the
//!   [`witness`] module constructs the clamped-ramp product field that
//!   provably receives unequal ones.
//!
//! Modules:
//!
//! * [`field`] — scalar field catalog with analytic gradients, exact
//!   nondifferentiability queries, and a finite-difference oracle;
//! * [`path`] — straight lines, power arcs, the quadratic sign-corrected
//!   counterexample path, piecewise-linear paths; monotonicity and endpoint
//!   checks;
//! * [`quad`] — midpoint, trapezoid and Gauss-Legendre rules with panel
//!   splitting;
//! * [`engine`] — the attribution integrator, completeness residuals,
//!   symmetry gaps, node-doubling refinement;
//! * [`witness`] — violation-interval location and the asymmetry
//!   demonstration;
//! * [`config`] — JSON spec files for fields and paths;
//! * [`cli`] — the `pathgrad` command-line front end.
//!
//! See the `examples/` directory for one runnable program per capability:
//!
//! ```bash
//! cargo run --example figure_reproduction
//! cargo run --example straight_line_symmetry
//! cargo run --example relu_completeness
//! cargo run --example cantor_negative_control
//! cargo run --example witness_construction
//! cargo run --example counterexample_path
//! ```

pub mod cantor;
pub mod cli;
pub mod config;
pub mod engine;
pub mod error;
pub mod field;
pub mod path;
pub mod quad;
pub mod relu;
pub mod witness;

pub use engine::{
    completeness_residual, ig_straight, integrated_gradients, refine, symmetry_gap,
    AttributionReport, RefineOutcome,
};
pub use error::{Error, Result};
pub use field::{FieldKind, ScalarField};
pub use path::{
    check_endpoints, check_monotonic, make_counterexample, make_piecewise_linear, make_power_arc,
    make_straight, MonotonicityReport, PathSpec,
};
pub use quad::{QuadratureSpec, Rule};
pub use relu::{Activation, ReluNetSpec};
pub use witness::{demonstrate_asymmetry, make_witness_field, violation_interval, AsymmetryReport, ViolationInterval};
