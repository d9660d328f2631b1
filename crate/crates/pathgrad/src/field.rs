//! Catalog of Lipschitz-continuous scalar fields with exact analytic
//! gradients, exact nondifferentiability queries, and a finite-difference
//! gradient oracle.
//!
//! Every field lives on a closed box; `evaluate` and `gradient` reject
//! points outside it. At nondifferentiable points `gradient` applies the
//! deterministic tie policy (lowest-index attaining branch for max-type
//! fields, ReLU'(0) = 0, ramp breakpoints take the flat side) and
//! `is_differentiable_at` reports the tie.

use serde::{Deserialize, Serialize};

use crate::cantor;
use crate::error::{Error, Result};
use crate::relu::ReluNetSpec;

pub const DEFAULT_DOMAIN: (f64, f64) = (-10.0, 10.0);

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FieldKind {
    /// F(x) = c . x
    Linear { coeffs: Vec<f64> },
    /// F(x1, x2) = x1 * x2
    BilinearProduct,
    /// F(x) = max_i x_i
    MaxCoord,
    ReluNet { net: ReluNetSpec },
    /// F(x) = g(x_i) g(x_j) with g a clamped ramp on [alpha, beta]
    Witness {
        i: usize,
        j: usize,
        alpha: f64,
        beta: f64,
    },
    /// Depth-truncated Cantor staircase on [0, 1]; not Lipschitz
    Cantor1d { depth: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalarField {
    dim: usize,
    domain_lo: Vec<f64>,
    domain_hi: Vec<f64>,
    kind: FieldKind,
    lipschitz_bound: Option<f64>,
    id: String,
}

impl ScalarField {
    pub fn linear(coeffs: Vec<f64>) -> Self {
        let dim = coeffs.len();
        let k = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        Self::with_defaults(dim, FieldKind::Linear { coeffs }, Some(k), "linear")
    }

    pub fn bilinear_product() -> Self {
        // sup-norm of the gradient (x2, x1) over the default box
        let m = DEFAULT_DOMAIN.0.abs().max(DEFAULT_DOMAIN.1.abs());
        Self::with_defaults(
            2,
            FieldKind::BilinearProduct,
            Some(m * std::f64::consts::SQRT_2),
            "bilinear_product",
        )
    }

    pub fn max_coord(dim: usize) -> Self {
        Self::with_defaults(dim, FieldKind::MaxCoord, Some(1.0), "max_coord")
    }

    pub fn relu_net(net: ReluNetSpec) -> Self {
        let dim = net.input_dim();
        let k = net.lipschitz_bound();
        Self::with_defaults(dim, FieldKind::ReluNet { net }, Some(k), "relu_net")
    }

    pub fn witness(
        dim: usize,
        i: usize,
        j: usize,
        alpha: f64,
        beta: f64,
        lo: f64,
        hi: f64,
    ) -> Result<Self> {
        if alpha >= beta {
            return Err(Error::InvalidBreakpoints { alpha, beta });
        }
        for idx in [i, j] {
            if idx >= dim {
                return Err(Error::IndexOutOfRange { index: idx, dim });
            }
        }
        if i == j {
            return Err(Error::InvalidParameter("witness indices must differ".into()));
        }
        if lo > alpha || hi < beta {
            return Err(Error::InvalidParameter(format!(
                "domain [{lo}, {hi}] must contain the breakpoints [{alpha}, {beta}]"
            )));
        }
        let k = (beta - alpha) * std::f64::consts::SQRT_2;
        Ok(Self {
            dim,
            domain_lo: vec![lo; dim],
            domain_hi: vec![hi; dim],
            kind: FieldKind::Witness { i, j, alpha, beta },
            lipschitz_bound: Some(k),
            id: format!("witness(i={i},j={j},alpha={alpha},beta={beta})"),
        })
    }

    pub fn cantor(depth: u32) -> Self {
        Self {
            dim: 1,
            domain_lo: vec![0.0],
            domain_hi: vec![1.0],
            kind: FieldKind::Cantor1d { depth },
            lipschitz_bound: None,
            id: format!("cantor_1d(depth={depth})"),
        }
    }

    fn with_defaults(dim: usize, kind: FieldKind, lipschitz: Option<f64>, id: &str) -> Self {
        Self {
            dim,
            domain_lo: vec![DEFAULT_DOMAIN.0; dim],
            domain_hi: vec![DEFAULT_DOMAIN.1; dim],
            kind,
            lipschitz_bound: lipschitz,
            id: id.to_string(),
        }
    }

    /// Replace the domain box (same bounds in every coordinate).
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain_lo = vec![lo; self.dim];
        self.domain_hi = vec![hi; self.dim];
        if let FieldKind::BilinearProduct = self.kind {
            let m = lo.abs().max(hi.abs());
            self.lipschitz_bound = Some(m * std::f64::consts::SQRT_2);
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> (&[f64], &[f64]) {
        (&self.domain_lo, &self.domain_hi)
    }

    pub fn lipschitz_bound(&self) -> Option<f64> {
        self.lipschitz_bound
    }

    /// The coordinate pair in which the field is exactly symmetric, if any.
    pub fn symmetric_pair(&self) -> Option<(usize, usize)> {
        match &self.kind {
            FieldKind::BilinearProduct => Some((0, 1)),
            FieldKind::MaxCoord if self.dim >= 2 => Some((0, 1)),
            FieldKind::Witness { i, j, .. } => Some((*i, *j)),
            _ => None,
        }
    }

    pub fn contains(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        for (coord, &v) in x.iter().enumerate() {
            let (lo, hi) = (self.domain_lo[coord], self.domain_hi[coord]);
            if !(lo..=hi).contains(&v) {
                return Err(Error::OutOfDomain {
                    coord,
                    value: v,
                    lo,
                    hi,
                });
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.contains(x)?;
        Ok(match &self.kind {
            FieldKind::Linear { coeffs } => coeffs.iter().zip(x).map(|(c, v)| c * v).sum(),
            FieldKind::BilinearProduct => x[0] * x[1],
            FieldKind::MaxCoord => x.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v)),
            FieldKind::ReluNet { net } => net.evaluate(x),
            FieldKind::Witness { i, j, alpha, beta } => {
                ramp(x[*i], *alpha, *beta) * ramp(x[*j], *alpha, *beta)
            }
            FieldKind::Cantor1d { depth } => cantor::cantor_value(x[0], *depth)?,
        })
    }

    /// Analytic gradient, with the deterministic tie-policy selection on the
    /// kink set.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.contains(x)?;
        Ok(match &self.kind {
            FieldKind::Linear { coeffs } => coeffs.clone(),
            FieldKind::BilinearProduct => vec![x[1], x[0]],
            FieldKind::MaxCoord => {
                let argmax = lowest_argmax(x);
                let mut g = vec![0.0; self.dim];
                g[argmax] = 1.0;
                g
            }
            FieldKind::ReluNet { net } => net.gradient(x),
            FieldKind::Witness { i, j, alpha, beta } => {
                let mut g = vec![0.0; self.dim];
                g[*i] = ramp_slope(x[*i], *alpha, *beta) * ramp(x[*j], *alpha, *beta);
                g[*j] = ramp_slope(x[*j], *alpha, *beta) * ramp(x[*i], *alpha, *beta);
                g
            }
            FieldKind::Cantor1d { .. } => vec![0.0],
        })
    }

    /// Exact kink-set membership query: true iff the field is differentiable
    /// at `x`.
    pub fn is_differentiable_at(&self, x: &[f64]) -> Result<bool> {
        self.contains(x)?;
        Ok(match &self.kind {
            FieldKind::Linear { .. } | FieldKind::BilinearProduct => true,
            FieldKind::MaxCoord => {
                let max = x.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
                x.iter().filter(|&&v| v == max).count() == 1
            }
            FieldKind::ReluNet { net } => net.is_differentiable_at(x),
            FieldKind::Witness { i, j, alpha, beta } => {
                let kink_i =
                    (x[*i] == *alpha || x[*i] == *beta) && ramp(x[*j], *alpha, *beta) > 0.0;
                let kink_j =
                    (x[*j] == *alpha || x[*j] == *beta) && ramp(x[*i], *alpha, *beta) > 0.0;
                !(kink_i || kink_j)
            }
            FieldKind::Cantor1d { depth } => cantor::in_plateau(x[0], *depth),
        })
    }

    /// Central-difference gradient oracle, independent of the analytic path.
    pub fn finite_diff_gradient(&self, x: &[f64], h: f64) -> Result<Vec<f64>> {
        if h <= 0.0 {
            return Err(Error::InvalidStep(h));
        }
        self.contains(x)?;
        let mut g = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut plus = x.to_vec();
            let mut minus = x.to_vec();
            plus[i] += h;
            minus[i] -= h;
            let f_plus = self.evaluate(&plus)?;
            let f_minus = self.evaluate(&minus)?;
            g.push((f_plus - f_minus) / (2.0 * h));
        }
        Ok(g)
    }
}

fn lowest_argmax(x: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in x.iter().enumerate().skip(1) {
        if v > x[best] {
            best = i;
        }
    }
    best
}

/// Clamped ramp: 0 below alpha, identity-minus-alpha on [alpha, beta],
/// saturated above beta.
fn ramp(x: f64, alpha: f64, beta: f64) -> f64 {
    if x <= alpha {
        0.0
    } else if x >= beta {
        beta - alpha
    } else {
        x - alpha
    }
}

/// Tie policy at the breakpoints: both take the flat side (slope 0).
fn ramp_slope(x: f64, alpha: f64, beta: f64) -> f64 {
    if x > alpha && x < beta {
        1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn evaluate_catalog() {
        assert_eq!(ScalarField::bilinear_product().evaluate(&[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(ScalarField::max_coord(2).evaluate(&[0.0, 0.0]).unwrap(), 0.0);
        let net = ReluNetSpec::new(
            vec![2, 1, 1],
            vec![vec![1.0, -1.0], vec![1.0]],
            vec![vec![0.0], vec![0.0]],
            crate::relu::Activation::Relu,
        )
        .unwrap();
        assert_eq!(ScalarField::relu_net(net).evaluate(&[2.0, 3.0]).unwrap(), 0.0);
    }

    #[test]
    fn evaluate_rejects_out_of_domain() {
        let f = ScalarField::bilinear_product();
        assert!(matches!(
            f.evaluate(&[11.0, 0.0]),
            Err(Error::OutOfDomain { coord: 0, .. })
        ));
        assert!(f.evaluate(&[10.0, -10.0]).is_ok());
    }

    #[test]
    fn gradient_catalog() {
        let f = ScalarField::bilinear_product();
        assert_eq!(f.gradient(&[0.5, 0.25]).unwrap(), vec![0.25, 0.5]);
        let m = ScalarField::max_coord(2);
        assert_eq!(m.gradient(&[1.0, 2.0]).unwrap(), vec![0.0, 1.0]);
        // lowest-index argmax on the diagonal, with the tie reported
        assert_eq!(m.gradient(&[1.0, 1.0]).unwrap(), vec![1.0, 0.0]);
        assert!(!m.is_differentiable_at(&[1.0, 1.0]).unwrap());
    }

    #[test]
    fn max_tie_matches_one_sided_quotients() {
        // along the selected branch the one-sided quotient in x0 is 1
        let m = ScalarField::max_coord(2);
        let h = 1e-6;
        let fwd = (m.evaluate(&[1.0 + h, 1.0]).unwrap() - m.evaluate(&[1.0, 1.0]).unwrap()) / h;
        assert_abs_diff_eq!(fwd, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn differentiability_queries() {
        let m = ScalarField::max_coord(2);
        assert!(!m.is_differentiable_at(&[1.0, 1.0]).unwrap());
        assert!(m.is_differentiable_at(&[1.0, 2.0]).unwrap());
        let w = ScalarField::witness(2, 0, 1, 0.25, 0.75, -10.0, 10.0).unwrap();
        assert!(!w.is_differentiable_at(&[0.25, 0.5]).unwrap());
        assert!(w.is_differentiable_at(&[0.5, 0.5]).unwrap());
        // both factors at the lower breakpoint: gradient 0, differentiable
        assert!(w.is_differentiable_at(&[0.25, 0.25]).unwrap());
    }

    #[test]
    fn witness_field_values() {
        let w = ScalarField::witness(2, 0, 1, 0.25, 0.75, -10.0, 10.0).unwrap();
        assert_eq!(ramp(0.1, 0.25, 0.75), 0.0);
        assert_eq!(ramp(0.5, 0.25, 0.75), 0.25);
        assert_eq!(ramp(0.9, 0.25, 0.75), 0.5);
        assert_eq!(w.evaluate(&[0.75, 0.75]).unwrap(), 0.25);
        assert!(ScalarField::witness(2, 0, 1, 0.75, 0.25, -10.0, 10.0).is_err());
    }

    #[test]
    fn finite_diff_oracle() {
        let f = ScalarField::bilinear_product();
        let g = f.finite_diff_gradient(&[0.5, 0.25], 1e-5).unwrap();
        assert_abs_diff_eq!(g[0], 0.25, epsilon = 1e-12);
        assert_abs_diff_eq!(g[1], 0.5, epsilon = 1e-12);

        let lin = ScalarField::linear(vec![2.0, -3.0]);
        let g = lin.finite_diff_gradient(&[1.5, -0.5], 1e-3).unwrap();
        assert_abs_diff_eq!(g[0], 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(g[1], -3.0, epsilon = 1e-10);

        assert!(matches!(
            f.finite_diff_gradient(&[0.0, 0.0], 0.0),
            Err(Error::InvalidStep(_))
        ));
    }

    #[test]
    fn evaluate_is_deterministic() {
        let net = ReluNetSpec::random(&[4, 8, 8, 1], 42).unwrap();
        let f = ScalarField::relu_net(net);
        let x = [0.3, -1.2, 4.5, 0.0];
        let a = f.evaluate(&x).unwrap();
        let b = f.evaluate(&x).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }
}
