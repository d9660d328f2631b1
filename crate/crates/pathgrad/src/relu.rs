//! Small feedforward ReLU networks with exact forward and backward passes.
//!
//! Networks are scalar-valued: hidden layers apply ReLU, and the output is
//! either the final affine unit (`Relu` activation mode) or the max over the
//! final layer's affine outputs (`MaxPoolFinal`). Both induce piecewise
//! linear, globally Lipschitz fields.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    /// ReLU on hidden layers; the last layer is a plain affine scalar.
    Relu,
    /// ReLU on hidden layers; the output is the max over the last layer's
    /// affine outputs.
    MaxPoolFinal,
}

/// Weights and biases of a small feedforward net.
///
/// `layer_widths` lists [input_dim, h1, ..., out]; `weights[l]` is the
/// row-major `widths[l+1] x widths[l]` matrix of layer `l`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReluNetSpec {
    pub layer_widths: Vec<usize>,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
    pub activation: Activation,
}

impl ReluNetSpec {
    pub fn new(
        layer_widths: Vec<usize>,
        weights: Vec<Vec<f64>>,
        biases: Vec<Vec<f64>>,
        activation: Activation,
    ) -> Result<Self> {
        let spec = Self {
            layer_widths,
            weights,
            biases,
            activation,
        };
        spec.validate().map_err(|errors| Error::InvalidSpec { errors })?;
        Ok(spec)
    }

    /// Shape-check the matrices against `layer_widths`, collecting every
    /// problem found.
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let mut errors = Vec::new();
        if self.layer_widths.len() < 2 {
            errors.push("relu_net needs at least an input and an output layer".into());
        }
        if self.layer_widths.contains(&0) {
            errors.push("layer widths must be positive".into());
        }
        let layers = self.layer_widths.len().saturating_sub(1);
        if self.weights.len() != layers {
            errors.push(format!(
                "expected {} weight matrices, got {}",
                layers,
                self.weights.len()
            ));
        }
        if self.biases.len() != layers {
            errors.push(format!(
                "expected {} bias vectors, got {}",
                layers,
                self.biases.len()
            ));
        }
        for l in 0..layers {
            let (rows, cols) = (self.layer_widths[l + 1], self.layer_widths[l]);
            if let Some(w) = self.weights.get(l) {
                if w.len() != rows * cols {
                    errors.push(format!(
                        "layer {l}: weight matrix has {} entries, expected {rows}x{cols} = {}",
                        w.len(),
                        rows * cols
                    ));
                }
            }
            if let Some(b) = self.biases.get(l) {
                if b.len() != rows {
                    errors.push(format!(
                        "layer {l}: bias vector has {} entries, expected {rows}",
                        b.len()
                    ));
                }
            }
        }
        if self.activation == Activation::Relu {
            if let Some(&out) = self.layer_widths.last() {
                if out != 1 && !self.layer_widths.is_empty() {
                    errors.push(format!("output layer must have width 1, got {out}"));
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// Deterministic random net. Weights are drawn layer by layer, row-major,
    /// uniform on [-1, 1] scaled by 1/sqrt(fan_in); biases follow, uniform on
    /// [-0.1, 0.1]. The generator is ChaCha8 seeded with `seed`, so the same
    /// (layers, seed) pair reproduces the same net everywhere.
    pub fn random(layer_widths: &[usize], seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weights = Vec::new();
        let mut biases = Vec::new();
        for l in 0..layer_widths.len().saturating_sub(1) {
            let (rows, cols) = (layer_widths[l + 1], layer_widths[l]);
            let scale = 1.0 / (cols as f64).sqrt();
            let w: Vec<f64> = (0..rows * cols)
                .map(|_| rng.random_range(-1.0..1.0) * scale)
                .collect();
            let b: Vec<f64> = (0..rows).map(|_| rng.random_range(-0.1..0.1)).collect();
            weights.push(w);
            biases.push(b);
        }
        Self::new(layer_widths.to_vec(), weights, biases, Activation::Relu)
    }

    pub fn input_dim(&self) -> usize {
        self.layer_widths[0]
    }

    fn num_layers(&self) -> usize {
        self.layer_widths.len() - 1
    }

    fn affine(&self, layer: usize, input: &[f64]) -> Vec<f64> {
        let (rows, cols) = (self.layer_widths[layer + 1], self.layer_widths[layer]);
        let w = &self.weights[layer];
        let b = &self.biases[layer];
        (0..rows)
            .map(|r| {
                let mut acc = b[r];
                for c in 0..cols {
                    acc += w[r * cols + c] * input[c];
                }
                acc
            })
            .collect()
    }

    /// Forward pass returning the preactivations of every layer.
    fn forward_trace(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut pre = Vec::with_capacity(self.num_layers());
        let mut act = x.to_vec();
        for l in 0..self.num_layers() {
            let z = self.affine(l, &act);
            act = if l + 1 < self.num_layers() || self.activation == Activation::MaxPoolFinal {
                z.iter().map(|&v| v.max(0.0)).collect()
            } else {
                z.clone()
            };
            pre.push(z);
        }
        pre
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        let pre = self.forward_trace(x);
        let last = pre.last().unwrap();
        match self.activation {
            Activation::Relu => last[0],
            Activation::MaxPoolFinal => {
                last.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v.max(0.0)))
            }
        }
    }

    /// Exact backward pass under the tie policy: ReLU'(0) = 0 and max ties
    /// resolve to the lowest-index attaining unit.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let pre = self.forward_trace(x);
        let layers = self.num_layers();
        // seed the adjoint at the output
        let mut adj: Vec<f64> = match self.activation {
            Activation::Relu => vec![1.0],
            Activation::MaxPoolFinal => {
                let last: Vec<f64> = pre[layers - 1].iter().map(|&v| v.max(0.0)).collect();
                let argmax = last
                    .iter()
                    .enumerate()
                    .fold((0usize, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
                        if v > bv {
                            (i, v)
                        } else {
                            (bi, bv)
                        }
                    })
                    .0;
                let mut seed = vec![0.0; last.len()];
                // subgradient 0 if the max unit sits at its ReLU kink
                if pre[layers - 1][argmax] > 0.0 {
                    seed[argmax] = 1.0;
                }
                seed
            }
        };
        for l in (0..layers).rev() {
            let (rows, cols) = (self.layer_widths[l + 1], self.layer_widths[l]);
            let w = &self.weights[l];
            let mut prev = vec![0.0; cols];
            for r in 0..rows {
                if adj[r] == 0.0 {
                    continue;
                }
                for c in 0..cols {
                    prev[c] += adj[r] * w[r * cols + c];
                }
            }
            if l > 0 {
                // gate the adjoint through the ReLU of layer l-1
                for (p, &z) in prev.iter_mut().zip(&pre[l - 1]) {
                    if z <= 0.0 {
                        *p = 0.0;
                    }
                }
            }
            adj = prev;
        }
        adj
    }

    /// True iff no hidden preactivation sits exactly at 0 and (for
    /// max-pool outputs) the max is attained by a single unit away from its
    /// own kink.
    pub fn is_differentiable_at(&self, x: &[f64]) -> bool {
        let pre = self.forward_trace(x);
        let layers = self.num_layers();
        let hidden_end = match self.activation {
            Activation::Relu => layers - 1,
            Activation::MaxPoolFinal => layers,
        };
        for z in pre.iter().take(hidden_end) {
            if z.contains(&0.0) {
                return false;
            }
        }
        if self.activation == Activation::MaxPoolFinal {
            let last: Vec<f64> = pre[layers - 1].iter().map(|&v| v.max(0.0)).collect();
            let max = last.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
            if last.iter().filter(|&&v| v == max).count() > 1 {
                return false;
            }
        }
        true
    }

    /// Upper bound on the Lipschitz constant: product of the layers'
    /// Frobenius norms (each bounds the operator norm; ReLU and max are
    /// 1-Lipschitz).
    pub fn lipschitz_bound(&self) -> f64 {
        self.weights
            .iter()
            .map(|w| w.iter().map(|v| v * v).sum::<f64>().sqrt())
            .product()
    }

    /// The exact activation pattern at `x`: sign of every gated
    /// preactivation. Two points with the same pattern lie on the same
    /// linear piece.
    pub fn activation_pattern(&self, x: &[f64]) -> Vec<bool> {
        let pre = self.forward_trace(x);
        let layers = self.num_layers();
        let hidden_end = match self.activation {
            Activation::Relu => layers - 1,
            Activation::MaxPoolFinal => layers,
        };
        let mut pattern: Vec<bool> = pre
            .iter()
            .take(hidden_end)
            .flat_map(|z| z.iter().map(|&v| v > 0.0))
            .collect();
        if self.activation == Activation::MaxPoolFinal {
            let last: Vec<f64> = pre[layers - 1].iter().map(|&v| v.max(0.0)).collect();
            let max = last.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v));
            pattern.extend(last.iter().map(|&v| v == max));
        }
        pattern
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_neuron() -> ReluNetSpec {
        // relu(x1 - x2) realized as one hidden unit feeding a unit output
        ReluNetSpec::new(
            vec![2, 1, 1],
            vec![vec![1.0, -1.0], vec![1.0]],
            vec![vec![0.0], vec![0.0]],
            Activation::Relu,
        )
        .unwrap()
    }

    #[test]
    fn single_neuron_forward() {
        let net = single_neuron();
        assert_eq!(net.evaluate(&[2.0, 3.0]), 0.0);
        assert_eq!(net.evaluate(&[3.0, 2.0]), 1.0);
    }

    #[test]
    fn single_neuron_gradient() {
        let net = single_neuron();
        assert_eq!(net.gradient(&[3.0, 2.0]), vec![1.0, -1.0]);
        assert_eq!(net.gradient(&[2.0, 3.0]), vec![0.0, 0.0]);
        // at the kink the tie policy gives ReLU'(0) = 0
        assert_eq!(net.gradient(&[2.0, 2.0]), vec![0.0, 0.0]);
        assert!(!net.is_differentiable_at(&[2.0, 2.0]));
        assert!(net.is_differentiable_at(&[3.0, 2.0]));
    }

    #[test]
    fn shape_validation_reports_layer() {
        let bad = ReluNetSpec::new(
            vec![2, 3, 1],
            vec![vec![1.0; 5], vec![1.0; 3]],
            vec![vec![0.0; 3], vec![0.0]],
            Activation::Relu,
        );
        match bad {
            Err(Error::InvalidSpec { errors }) => {
                assert!(errors.iter().any(|e| e.contains("layer 0")), "{errors:?}");
            }
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn random_net_is_reproducible() {
        let a = ReluNetSpec::random(&[4, 8, 1], 7).unwrap();
        let b = ReluNetSpec::random(&[4, 8, 1], 7).unwrap();
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.biases, b.biases);
        let c = ReluNetSpec::random(&[4, 8, 1], 8).unwrap();
        assert_ne!(a.weights, c.weights);
    }

    #[test]
    fn max_pool_final_takes_max() {
        let net = ReluNetSpec::new(
            vec![2, 2],
            vec![vec![1.0, 0.0, 0.0, 1.0]],
            vec![vec![0.0, 0.0]],
            Activation::MaxPoolFinal,
        )
        .unwrap();
        assert_eq!(net.evaluate(&[1.0, 2.0]), 2.0);
        assert_eq!(net.gradient(&[1.0, 2.0]), vec![0.0, 1.0]);
        // tie on the diagonal: lowest index wins
        assert_eq!(net.gradient(&[2.0, 2.0]), vec![1.0, 0.0]);
        assert!(!net.is_differentiable_at(&[2.0, 2.0]));
    }
}
