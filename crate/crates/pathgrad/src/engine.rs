//! The attribution engine: per-coordinate line integrals of the gradient
//! field along a path, completeness residuals, symmetry gaps, and
//! node-doubling refinement.
//!
//! All accumulation uses compensated (Kahan) summation in a fixed sequential
//! order, so results are bit-reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::path::{self, PathSpec};
use crate::quad::{panel_boundaries, QuadratureSpec, Rule};

/// Kahan compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn add(&mut self, value: f64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Result of one attribution run. `residual` is stored signed,
/// sum - (f_input - f_base); use [`completeness_residual`] for the absolute
/// headline metric.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttributionReport {
    pub field: String,
    pub path: String,
    pub quadrature: QuadratureEcho,
    pub attributions: Vec<f64>,
    pub sum: f64,
    pub f_input: f64,
    pub f_base: f64,
    pub residual: f64,
    /// Quadrature nodes where the field was nondifferentiable; those nodes
    /// are still integrated with the tie-policy subgradient, never dropped.
    pub nondiff_nodes: usize,
    pub total_nodes: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureEcho {
    pub rule: String,
    pub nodes: usize,
}

impl AttributionReport {
    /// Every quadrature node hit the kink set. The run is still valid under
    /// the tie policy, but the gradient-theorem hypotheses failed everywhere
    /// on the path (e.g. max(x, y) along the diagonal).
    pub fn all_nodes_nondifferentiable(&self) -> bool {
        self.total_nodes > 0 && self.nondiff_nodes == self.total_nodes
    }

    /// One CSV row per coordinate: index, attribution.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("coordinate,attribution\n");
        for (i, a) in self.attributions.iter().enumerate() {
            out.push_str(&format!("{i},{a}\n"));
        }
        out
    }
}

/// Final state of a refinement run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefineOutcome {
    pub report: AttributionReport,
    pub converged: bool,
    /// Residuals of the last two node counts, for convergence-order
    /// inspection.
    pub last_residuals: Vec<f64>,
}

/// IG_i = integral over the path of dF/dx_i dx_i, by panel-wise quadrature.
///
/// Panels break at the quadrature spec's `split_at` values and at the path's
/// knots. Nondifferentiable nodes integrate the tie-policy subgradient and
/// are counted in the report.
pub fn integrated_gradients(
    field: &ScalarField,
    path: &PathSpec,
    quad: &QuadratureSpec,
) -> Result<AttributionReport> {
    if field.dim() != path.dim() {
        return Err(Error::DimensionMismatch {
            expected: field.dim(),
            got: path.dim(),
        });
    }
    let dim = field.dim();
    let bounds = panel_boundaries(quad, &path.knot_params());
    let mut acc: Vec<Kahan> = vec![Kahan::default(); dim];
    let mut nondiff = 0usize;
    let mut total = 0usize;
    for panel in bounds.windows(2) {
        for (t, w) in quad.panel_nodes(panel[0], panel[1]) {
            let x = path.eval(t)?;
            field.contains(&x).map_err(|_| Error::PathLeavesDomain { t })?;
            let g = field.gradient(&x)?;
            let d = path.derivative(t)?;
            if !field.is_differentiable_at(&x)? {
                nondiff += 1;
            }
            for i in 0..dim {
                acc[i].add(w * g[i] * d[i]);
            }
            total += 1;
        }
    }
    finish_report(field, path, quad, acc, nondiff, total)
}

/// Straight-line attribution in the factored form
/// (q_i - p_i) * integral of dF/dx_i along p + t(q - p).
pub fn ig_straight(
    field: &ScalarField,
    p: &[f64],
    q: &[f64],
    quad: &QuadratureSpec,
) -> Result<AttributionReport> {
    let path = path::make_straight(p, q)?;
    if field.dim() != path.dim() {
        return Err(Error::DimensionMismatch {
            expected: field.dim(),
            got: path.dim(),
        });
    }
    let dim = field.dim();
    let bounds = panel_boundaries(quad, &[]);
    let mut acc: Vec<Kahan> = vec![Kahan::default(); dim];
    let mut nondiff = 0usize;
    let mut total = 0usize;
    for panel in bounds.windows(2) {
        for (t, w) in quad.panel_nodes(panel[0], panel[1]) {
            let x = path.eval(t)?;
            field.contains(&x).map_err(|_| Error::PathLeavesDomain { t })?;
            let g = field.gradient(&x)?;
            if !field.is_differentiable_at(&x)? {
                nondiff += 1;
            }
            for i in 0..dim {
                acc[i].add(w * g[i]);
            }
            total += 1;
        }
    }
    // scale the averaged partials by the straight-line displacement
    let mut scaled: Vec<Kahan> = vec![Kahan::default(); dim];
    for i in 0..dim {
        scaled[i].add((q[i] - p[i]) * acc[i].value());
    }
    finish_report(field, &path, quad, scaled, nondiff, total)
}

fn finish_report(
    field: &ScalarField,
    path: &PathSpec,
    quad: &QuadratureSpec,
    acc: Vec<Kahan>,
    nondiff: usize,
    total: usize,
) -> Result<AttributionReport> {
    let attributions: Vec<f64> = acc.iter().map(Kahan::value).collect();
    let mut sum = Kahan::default();
    for a in &attributions {
        sum.add(*a);
    }
    let g0 = path.eval(0.0)?;
    let g1 = path.eval(1.0)?;
    let f_base = field.evaluate(&g0).map_err(|_| Error::PathLeavesDomain { t: 0.0 })?;
    let f_input = field.evaluate(&g1).map_err(|_| Error::PathLeavesDomain { t: 1.0 })?;
    let sum = sum.value();
    Ok(AttributionReport {
        field: field.id().to_string(),
        path: path.id().to_string(),
        quadrature: QuadratureEcho {
            rule: quad.rule.to_string(),
            nodes: quad.nodes,
        },
        attributions,
        sum,
        f_input,
        f_base,
        residual: sum - (f_input - f_base),
        nondiff_nodes: nondiff,
        total_nodes: total,
    })
}

/// |sum of attributions - (F(gamma(1)) - F(gamma(0)))|.
pub fn completeness_residual(report: &AttributionReport) -> f64 {
    report.residual.abs()
}

/// Signed gap IG_i - IG_j.
pub fn symmetry_gap(report: &AttributionReport, i: usize, j: usize) -> Result<f64> {
    let dim = report.attributions.len();
    for idx in [i, j] {
        if idx >= dim {
            return Err(Error::IndexOutOfRange { index: idx, dim });
        }
    }
    if i == j {
        return Err(Error::InvalidParameter("symmetry gap needs i != j".into()));
    }
    Ok(report.attributions[i] - report.attributions[j])
}

/// Double the midpoint node count from 16 until the absolute residual drops
/// to `tol` or the budget `max_nodes` is exceeded. `NotConverged` carries the
/// final outcome; that is the expected result for the Cantor control.
pub fn refine(
    field: &ScalarField,
    path: &PathSpec,
    tol: f64,
    max_nodes: usize,
) -> Result<RefineOutcome> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be > 0".into()));
    }
    if max_nodes < 2 {
        return Err(Error::InvalidParameter("max_nodes must be >= 2".into()));
    }
    let mut nodes = 16usize.min(max_nodes);
    let mut residuals: Vec<f64> = Vec::new();
    loop {
        let quad = QuadratureSpec::new(Rule::Midpoint, nodes)?;
        let report = integrated_gradients(field, path, &quad)?;
        let residual = completeness_residual(&report);
        residuals.push(residual);
        let last_residuals: Vec<f64> = residuals.iter().rev().take(2).rev().copied().collect();
        if residual <= tol {
            return Ok(RefineOutcome {
                report,
                converged: true,
                last_residuals,
            });
        }
        if nodes.saturating_mul(2) > max_nodes {
            return Err(Error::NotConverged {
                outcome: Box::new(RefineOutcome {
                    report,
                    converged: false,
                    last_residuals,
                }),
            });
        }
        nodes *= 2;
    }
}
