//! Quadrature rules for the line-integral engine.
//!
//! A rule is applied per panel; panels are delimited by 0, 1, the user's
//! `split_at` parameters, and any path knots merged in by the engine. The
//! midpoint rule is the default because its nodes avoid panel endpoints,
//! where straight paths most often cross kink sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Midpoint,
    Trapezoid,
    GaussLegendre,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Rule::Midpoint => "midpoint",
            Rule::Trapezoid => "trapezoid",
            Rule::GaussLegendre => "gauss_legendre",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: Rule,
    /// Node count per panel.
    pub nodes: usize,
    /// Extra panel breaks strictly inside (0, 1), sorted and distinct.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub split_at: Vec<f64>,
}

impl QuadratureSpec {
    pub fn new(rule: Rule, nodes: usize) -> Result<Self> {
        Self::with_splits(rule, nodes, Vec::new())
    }

    pub fn with_splits(rule: Rule, nodes: usize, split_at: Vec<f64>) -> Result<Self> {
        if nodes == 0 {
            return Err(Error::InvalidParameter("node count must be >= 1".into()));
        }
        if rule == Rule::Trapezoid && nodes < 2 {
            return Err(Error::InvalidParameter(
                "trapezoid rule needs at least 2 nodes".into(),
            ));
        }
        for w in split_at.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidParameter(
                    "split points must be sorted and distinct".into(),
                ));
            }
        }
        if split_at.iter().any(|&t| t <= 0.0 || t >= 1.0) {
            return Err(Error::InvalidParameter(
                "split points must lie strictly inside (0, 1)".into(),
            ));
        }
        Ok(Self {
            rule,
            nodes,
            split_at,
        })
    }

    pub fn midpoint(nodes: usize) -> Self {
        Self::new(Rule::Midpoint, nodes).expect("nodes checked by caller")
    }

    pub fn gauss(nodes: usize) -> Self {
        Self::new(Rule::GaussLegendre, nodes).expect("nodes checked by caller")
    }

    /// Nodes and weights of this rule on the panel [a, b].
    pub fn panel_nodes(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let h = b - a;
        match self.rule {
            Rule::Midpoint => {
                let w = h / self.nodes as f64;
                (0..self.nodes)
                    .map(|k| (a + (k as f64 + 0.5) * w, w))
                    .collect()
            }
            Rule::Trapezoid => {
                let n = self.nodes;
                let w = h / (n - 1) as f64;
                (0..n)
                    .map(|k| {
                        let weight = if k == 0 || k == n - 1 { 0.5 * w } else { w };
                        (a + k as f64 * w, weight)
                    })
                    .collect()
            }
            Rule::GaussLegendre => gauss_legendre(self.nodes)
                .into_iter()
                .map(|(x, w)| (0.5 * (a + b) + 0.5 * h * x, 0.5 * h * w))
                .collect(),
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1] via Newton iteration on the
/// Legendre polynomial, Chebyshev initial guesses. Exact for polynomials of
/// degree 2n - 1.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let half = n.div_ceil(2);
    let mut out = Vec::with_capacity(n);
    for i in 1..=half {
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
        let is_center = n % 2 == 1 && i == half;
        if !is_center {
            out.push((-x, w));
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Panel boundaries: {0, 1} plus the spec's splits plus extra breaks (path
/// knots), deduplicated and sorted.
pub fn panel_boundaries(spec: &QuadratureSpec, extra: &[f64]) -> Vec<f64> {
    let mut bounds = vec![0.0, 1.0];
    bounds.extend(spec.split_at.iter().copied());
    bounds.extend(extra.iter().copied().filter(|t| *t > 0.0 && *t < 1.0));
    bounds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    bounds.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    bounds
}
