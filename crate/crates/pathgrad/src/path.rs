//! Smooth paths gamma : [0,1] -> R^n between a baseline and an input point,
//! with exact closed-form derivatives.
//!
//! The catalog covers the straight line, the quadratic sign-corrected
//! counterexample path, power arcs (t, t^k) on the unit square, and
//! piecewise-linear paths through interior knots (one-sided derivatives at
//! the knots; `knot_params` exposes them so the quadrature can split panels
//! there).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MONO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum PathKind {
    Straight,
    /// Quadratic perturbation of the straight line with coefficient
    /// C = (p1-p2)^2 + (q1-q2)^2 and a sgn factor per coordinate, sgn(0) = 0.
    CounterexampleQuadratic { c: f64 },
    /// gamma(t) = (t, t^k) from (0,0) to (1,1).
    PowerArc { k: f64 },
    /// Linear interpolation through interior knots (t_m, x_m).
    PiecewiseLinear { knots: Vec<(f64, Vec<f64>)> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathSpec {
    dim: usize,
    p: Vec<f64>,
    q: Vec<f64>,
    kind: PathKind,
    id: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
    Constant,
    NonMonotonic,
}

/// Per-coordinate monotonicity classification from derivative-sign sampling.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub directions: Vec<Direction>,
    pub strict: Vec<bool>,
    pub samples_used: usize,
}

impl MonotonicityReport {
    pub fn is_monotonic(&self) -> bool {
        self.directions.iter().all(|d| *d != Direction::NonMonotonic)
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn make_straight(p: &[f64], q: &[f64]) -> Result<PathSpec> {
    check_dims(p, q)?;
    Ok(PathSpec {
        dim: p.len(),
        p: p.to_vec(),
        q: q.to_vec(),
        kind: PathKind::Straight,
        id: "straight".into(),
    })
}

/// The quadratic sign-corrected counterexample path in R^2. When p1 = p2 and
/// q1 = q2 the coefficient C vanishes algebraically and the path reduces to
/// the straight line exactly.
pub fn make_counterexample(p: &[f64], q: &[f64]) -> Result<PathSpec> {
    check_dims(p, q)?;
    if p.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.len(),
        });
    }
    let c = (p[0] - p[1]).powi(2) + (q[0] - q[1]).powi(2);
    Ok(PathSpec {
        dim: 2,
        p: p.to_vec(),
        q: q.to_vec(),
        kind: PathKind::CounterexampleQuadratic { c },
        id: "counterexample_quadratic".into(),
    })
}

/// Power arc (t, t^k) joining (0,0) and (1,1); k = 1 is the straight line.
pub fn make_power_arc(k: f64) -> Result<PathSpec> {
    if k < 1.0 || k.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "power arc exponent must be >= 1, got {k}"
        )));
    }
    Ok(PathSpec {
        dim: 2,
        p: vec![0.0, 0.0],
        q: vec![1.0, 1.0],
        kind: PathKind::PowerArc { k },
        id: format!("power_arc(k={k})"),
    })
}

/// Piecewise-linear path through interior knots, each an explicit
/// (parameter, point) pair with 0 < t_1 < ... < t_m < 1.
pub fn make_piecewise_linear(p: &[f64], q: &[f64], knots: Vec<(f64, Vec<f64>)>) -> Result<PathSpec> {
    check_dims(p, q)?;
    let mut prev = 0.0;
    for (t, x) in &knots {
        if !(*t > prev && *t < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "knot parameters must be strictly increasing inside (0,1), got {t}"
            )));
        }
        if x.len() != p.len() {
            return Err(Error::DimensionMismatch {
                expected: p.len(),
                got: x.len(),
            });
        }
        prev = *t;
    }
    Ok(PathSpec {
        dim: p.len(),
        p: p.to_vec(),
        q: q.to_vec(),
        kind: PathKind::PiecewiseLinear { knots },
        id: "piecewise_linear".into(),
    })
}

fn check_dims(p: &[f64], q: &[f64]) -> Result<()> {
    if p.len() != q.len() || p.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    Ok(())
}

impl PathSpec {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &PathKind {
        &self.kind
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn baseline(&self) -> &[f64] {
        &self.p
    }

    pub fn input(&self) -> &[f64] {
        &self.q
    }

    /// gamma(t), exact closed form.
    pub fn eval(&self, t: f64) -> Result<Vec<f64>> {
        check_param(t)?;
        Ok(match &self.kind {
            PathKind::Straight => self
                .p
                .iter()
                .zip(&self.q)
                .map(|(&pi, &qi)| pi + t * (qi - pi))
                .collect(),
            PathKind::CounterexampleQuadratic { c } => {
                let quad = t * (t - 1.0) * c;
                self.p
                    .iter()
                    .zip(&self.q)
                    .map(|(&pi, &qi)| pi + t * (qi - pi) + quad * sgn(qi - pi))
                    .collect()
            }
            PathKind::PowerArc { k } => vec![t, t.powf(*k)],
            PathKind::PiecewiseLinear { .. } => {
                let (t0, x0, t1, x1) = self.segment_at(t);
                let s = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
                x0.iter().zip(&x1).map(|(&a, &b)| a + s * (b - a)).collect()
            }
        })
    }

    /// gamma'(t), exact closed form; one-sided (right, except at t = 1) for
    /// piecewise-linear paths.
    pub fn derivative(&self, t: f64) -> Result<Vec<f64>> {
        check_param(t)?;
        Ok(match &self.kind {
            PathKind::Straight => self.p.iter().zip(&self.q).map(|(&pi, &qi)| qi - pi).collect(),
            PathKind::CounterexampleQuadratic { c } => {
                let dquad = (2.0 * t - 1.0) * c;
                self.p
                    .iter()
                    .zip(&self.q)
                    .map(|(&pi, &qi)| (qi - pi) + dquad * sgn(qi - pi))
                    .collect()
            }
            PathKind::PowerArc { k } => {
                let d2 = if *k == 1.0 { 1.0 } else { k * t.powf(k - 1.0) };
                vec![1.0, d2]
            }
            PathKind::PiecewiseLinear { .. } => {
                let (t0, x0, t1, x1) = self.segment_at(t);
                let dt = t1 - t0;
                x0.iter().zip(&x1).map(|(&a, &b)| (b - a) / dt).collect()
            }
        })
    }

    /// Interior knot parameters (quadrature panels should break there).
    pub fn knot_params(&self) -> Vec<f64> {
        match &self.kind {
            PathKind::PiecewiseLinear { knots } => knots.iter().map(|(t, _)| *t).collect(),
            _ => Vec::new(),
        }
    }

    /// The segment [t0, t1] containing t, taking the right-hand segment at
    /// knots (left-hand at t = 1).
    fn segment_at(&self, t: f64) -> (f64, Vec<f64>, f64, Vec<f64>) {
        let knots = match &self.kind {
            PathKind::PiecewiseLinear { knots } => knots,
            _ => unreachable!(),
        };
        let mut t0 = 0.0;
        let mut x0 = self.p.clone();
        for (tk, xk) in knots {
            if t < *tk {
                return (t0, x0, *tk, xk.clone());
            }
            t0 = *tk;
            x0 = xk.clone();
        }
        (t0, x0, 1.0, self.q.clone())
    }
}

/// Classify each coordinate of the path by sampling gamma' on a uniform grid
/// of `grid_size` points (endpoints included).
pub fn check_monotonic(path: &PathSpec, grid_size: usize) -> MonotonicityReport {
    let grid_size = grid_size.max(2);
    let mut min_d = vec![f64::INFINITY; path.dim()];
    let mut max_d = vec![f64::NEG_INFINITY; path.dim()];
    let mut min_abs = vec![f64::INFINITY; path.dim()];
    for k in 0..grid_size {
        let t = k as f64 / (grid_size - 1) as f64;
        let d = path.derivative(t).expect("t within [0,1]");
        for i in 0..path.dim() {
            min_d[i] = min_d[i].min(d[i]);
            max_d[i] = max_d[i].max(d[i]);
            min_abs[i] = min_abs[i].min(d[i].abs());
        }
    }
    let mut directions = Vec::with_capacity(path.dim());
    let mut strict = Vec::with_capacity(path.dim());
    for i in 0..path.dim() {
        let dir = if max_d[i].abs() <= MONO_TOL && min_d[i].abs() <= MONO_TOL {
            Direction::Constant
        } else if min_d[i] >= -MONO_TOL {
            Direction::Increasing
        } else if max_d[i] <= MONO_TOL {
            Direction::Decreasing
        } else {
            Direction::NonMonotonic
        };
        directions.push(dir);
        strict.push(min_abs[i] > MONO_TOL && dir != Direction::NonMonotonic);
    }
    MonotonicityReport {
        directions,
        strict,
        samples_used: grid_size,
    }
}

/// True iff gamma(0) and gamma(1) match the given endpoints in sup-norm
/// within `tol`.
pub fn check_endpoints(path: &PathSpec, p: &[f64], q: &[f64], tol: f64) -> Result<bool> {
    if p.len() != path.dim() || q.len() != path.dim() {
        return Err(Error::DimensionMismatch {
            expected: path.dim(),
            got: if p.len() != path.dim() { p.len() } else { q.len() },
        });
    }
    let g0 = path.eval(0.0)?;
    let g1 = path.eval(1.0)?;
    let dev0 = g0.iter().zip(p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let dev1 = g1.iter().zip(q).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    Ok(dev0 <= tol && dev1 <= tol)
}

fn check_param(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParameterOutOfRange(t));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn straight_examples() {
        let s = make_straight(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(s.eval(0.5).unwrap(), vec![0.5, 0.5]);

        let degenerate = make_straight(&[2.0, 3.0], &[2.0, 3.0]).unwrap();
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(degenerate.eval(t).unwrap(), vec![2.0, 3.0]);
        }

        let s = make_straight(&[0.0, 1.0], &[2.0, 5.0]).unwrap();
        assert_eq!(s.eval(0.25).unwrap(), vec![0.5, 2.0]);
        assert_eq!(s.derivative(0.7).unwrap(), vec![2.0, 4.0]);

        assert!(make_straight(&[0.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn counterexample_reduces_to_straight_on_diagonal() {
        let path = make_counterexample(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert_eq!(path.eval(0.5).unwrap(), vec![0.5, 0.5]);
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let g = path.eval(t).unwrap();
            assert_eq!(g, vec![t, t]);
        }
    }

    #[test]
    fn counterexample_quadratic_values() {
        let path = make_counterexample(&[0.0, 0.5], &[1.0, 1.5]).unwrap();
        let g = path.eval(0.5).unwrap();
        assert_abs_diff_eq!(g[0], 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(g[1], 0.875, epsilon = 1e-15);
        let d = path.derivative(0.0).unwrap();
        assert_abs_diff_eq!(d[0], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn counterexample_sgn_zero_kills_quadratic_term() {
        let path = make_counterexample(&[0.0, 0.0], &[1.0, 0.0]).unwrap();
        for k in 0..=50 {
            let t = k as f64 / 50.0;
            assert_eq!(path.eval(t).unwrap()[1], 0.0);
        }
        assert!(make_counterexample(&[0.0, 0.0, 0.0], &[1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn power_arc_examples() {
        let arc = make_power_arc(1.0).unwrap();
        assert_eq!(arc.eval(0.3).unwrap(), vec![0.3, 0.3]);
        let arc = make_power_arc(2.0).unwrap();
        assert_eq!(arc.eval(0.5).unwrap(), vec![0.5, 0.25]);
        assert_eq!(arc.eval(0.0).unwrap(), vec![0.0, 0.0]);
        assert_eq!(arc.eval(1.0).unwrap(), vec![1.0, 1.0]);
        assert_eq!(arc.derivative(0.5).unwrap(), vec![1.0, 1.0]);
        assert!(make_power_arc(0.5).is_err());
        assert!(matches!(arc.eval(1.5), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn monotonicity_classification() {
        let s = make_straight(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let rep = check_monotonic(&s, 101);
        assert_eq!(rep.directions, vec![Direction::Increasing; 2]);
        assert!(rep.strict.iter().all(|&s| s));

        // C = 0.5 <= |q_i - p_i| = 1: monotone, derivative in [0.5, 1.5]
        let good = make_counterexample(&[0.0, 0.5], &[1.0, 1.5]).unwrap();
        let rep = check_monotonic(&good, 1001);
        assert_eq!(rep.directions, vec![Direction::Increasing; 2]);

        // C = 5 > 1: derivative changes sign in coordinate 0
        let bad = make_counterexample(&[0.0, 1.0], &[1.0, 3.0]).unwrap();
        let rep = check_monotonic(&bad, 1001);
        assert_eq!(rep.directions[0], Direction::NonMonotonic);
    }

    #[test]
    fn endpoint_checks() {
        let s = make_straight(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        assert!(check_endpoints(&s, &[0.0, 0.0], &[1.0, 1.0], 0.0).unwrap());
        assert!(!check_endpoints(&s, &[0.0, 0.0], &[1.0, 1.0 + 1e-6], 1e-9).unwrap());

        let ce = make_counterexample(&[0.0, 0.5], &[1.0, 1.5]).unwrap();
        assert!(check_endpoints(&ce, &[0.0, 0.5], &[1.0, 1.5], 1e-12).unwrap());
    }

    #[test]
    fn piecewise_linear_segments() {
        let path = make_piecewise_linear(
            &[0.0, 0.0],
            &[1.0, 1.0],
            vec![(0.5, vec![0.5, 0.2])],
        )
        .unwrap();
        assert_eq!(path.eval(0.25).unwrap(), vec![0.25, 0.1]);
        assert_eq!(path.eval(0.5).unwrap(), vec![0.5, 0.2]);
        assert_eq!(path.eval(1.0).unwrap(), vec![1.0, 1.0]);
        // one-sided derivative at the knot takes the right segment
        assert_eq!(path.derivative(0.5).unwrap(), vec![1.0, 1.6]);
        assert_eq!(path.knot_params(), vec![0.5]);
        assert!(make_piecewise_linear(
            &[0.0, 0.0],
            &[1.0, 1.0],
            vec![(0.5, vec![0.5, 0.2]), (0.4, vec![0.6, 0.3])]
        )
        .is_err());
    }
}
