//! JSON spec files for fields and paths: parsing, validation with
//! all-errors-at-once reporting, and normalization (defaults filled in).
//!
//! Field spec: `{"kind": "...", "dim": n, "domain": [lo, hi], "params": {...}}`.
//! ReLU nets carry row-major weight matrices and bias vectors, or a
//! deterministic random net `{"random_relu": {"layers": [...], "seed": u64}}`
//! (ChaCha8 PRNG, see `ReluNetSpec::random` for the exact draw order).
//!
//! Path spec: `{"kind": "...", "p": [...], "q": [...], "params": {...}}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{ScalarField, DEFAULT_DOMAIN};
use crate::path::{self, PathSpec};
use crate::relu::{Activation, ReluNetSpec};

/// A field spec with defaults filled in; round-trips through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub kind: String,
    pub dim: usize,
    pub domain: [f64; 2],
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
}

/// A path spec with defaults filled in; round-trips through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathConfig {
    pub kind: String,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub params: Value,
}

fn get_u64(v: &Value, key: &str, errors: &mut Vec<String>) -> Option<u64> {
    match v.get(key) {
        Some(Value::Number(n)) => match n.as_u64() {
            Some(x) => Some(x),
            None => {
                errors.push(format!("field '{key}' must be a nonnegative integer"));
                None
            }
        },
        Some(_) => {
            errors.push(format!("field '{key}' must be a number"));
            None
        }
        None => None,
    }
}

fn get_f64_array(v: &Value, key: &str, errors: &mut Vec<String>) -> Option<Vec<f64>> {
    match v.get(key) {
        Some(Value::Array(items)) => {
            let mut out = Vec::with_capacity(items.len());
            for item in items {
                match item.as_f64() {
                    Some(x) => out.push(x),
                    None => {
                        errors.push(format!("field '{key}' must be an array of numbers"));
                        return None;
                    }
                }
            }
            Some(out)
        }
        Some(_) => {
            errors.push(format!("field '{key}' must be an array"));
            None
        }
        None => None,
    }
}

fn as_f64_vec(value: &Value) -> Option<Vec<f64>> {
    value
        .as_array()?
        .iter()
        .map(Value::as_f64)
        .collect::<Option<Vec<f64>>>()
}

fn get_nested_f64_arrays(v: &Value, key: &str, errors: &mut Vec<String>) -> Option<Vec<Vec<f64>>> {
    match v.get(key) {
        Some(Value::Array(items)) => {
            let parsed: Option<Vec<Vec<f64>>> = items.iter().map(as_f64_vec).collect();
            if parsed.is_none() {
                errors.push(format!("'{key}' must be an array of number arrays"));
            }
            parsed
        }
        _ => {
            errors.push(format!("relu_net needs params.{key}"));
            None
        }
    }
}

/// Parse and validate a field spec, filling in the default domain box.
/// Collects every problem before failing.
pub fn validate_field_spec(json: &Value) -> Result<FieldConfig> {
    let mut errors = Vec::new();
    let kind = match json.get("kind").and_then(Value::as_str) {
        Some(k) => k.to_string(),
        None => {
            errors.push("missing or non-string 'kind'".into());
            String::new()
        }
    };
    let dim = get_u64(json, "dim", &mut errors).unwrap_or(0) as usize;
    let domain = match get_f64_array(json, "domain", &mut errors) {
        Some(d) if d.len() == 2 => {
            if d[0] >= d[1] {
                errors.push(format!("domain lower bound {} must be below {}", d[0], d[1]));
            }
            [d[0], d[1]]
        }
        Some(_) => {
            errors.push("'domain' must be [lo, hi]".into());
            [DEFAULT_DOMAIN.0, DEFAULT_DOMAIN.1]
        }
        None => [DEFAULT_DOMAIN.0, DEFAULT_DOMAIN.1],
    };
    let params = json.get("params").cloned().unwrap_or(Value::Null);

    let config = FieldConfig {
        kind,
        dim,
        domain,
        params,
    };
    // building the field runs the kind-specific validation
    match build_field_checked(&config, &mut errors) {
        Some(_) if errors.is_empty() => Ok(config),
        _ => Err(Error::InvalidSpec { errors }),
    }
}

fn build_field_checked(config: &FieldConfig, errors: &mut Vec<String>) -> Option<ScalarField> {
    let [lo, hi] = config.domain;
    let field = match config.kind.as_str() {
        "linear" => {
            let coeffs = get_f64_array(&config.params, "coeffs", errors).unwrap_or_default();
            if coeffs.is_empty() {
                errors.push("linear field needs params.coeffs".into());
                return None;
            }
            if config.dim != 0 && config.dim != coeffs.len() {
                errors.push(format!(
                    "dim {} does not match {} coefficients",
                    config.dim,
                    coeffs.len()
                ));
            }
            ScalarField::linear(coeffs)
        }
        "bilinear_product" => {
            if config.dim != 0 && config.dim != 2 {
                errors.push(format!("bilinear_product is 2-dimensional, got dim {}", config.dim));
            }
            ScalarField::bilinear_product()
        }
        "max_coord" => {
            if config.dim < 1 {
                errors.push("max_coord needs a positive dim".into());
                return None;
            }
            ScalarField::max_coord(config.dim)
        }
        "relu_net" => {
            let net = build_relu_net(&config.params, errors)?;
            if config.dim != 0 && config.dim != net.input_dim() {
                errors.push(format!(
                    "dim {} does not match net input width {}",
                    config.dim,
                    net.input_dim()
                ));
            }
            ScalarField::relu_net(net)
        }
        "witness" => {
            let mut errs = Vec::new();
            let i = get_u64(&config.params, "i", &mut errs).unwrap_or(0) as usize;
            let j = get_u64(&config.params, "j", &mut errs).unwrap_or(1) as usize;
            let alpha = config.params.get("alpha").and_then(Value::as_f64).unwrap_or(0.0);
            let beta = config.params.get("beta").and_then(Value::as_f64).unwrap_or(1.0);
            errors.extend(errs);
            match ScalarField::witness(config.dim.max(2), i, j, alpha, beta, lo, hi) {
                Ok(f) => f,
                Err(e) => {
                    errors.push(e.to_string());
                    return None;
                }
            }
        }
        "cantor_1d" => {
            let depth = get_u64(&config.params, "depth", errors).unwrap_or(24) as u32;
            ScalarField::cantor(depth)
        }
        other => {
            errors.push(format!("unknown field kind '{other}'"));
            return None;
        }
    };
    Some(match config.kind.as_str() {
        // these carry their own fixed boxes
        "witness" | "cantor_1d" => field,
        _ => field.with_domain(lo, hi),
    })
}

fn build_relu_net(params: &Value, errors: &mut Vec<String>) -> Option<ReluNetSpec> {
    if let Some(random) = params.get("random_relu") {
        let layers = get_f64_array(random, "layers", errors)
            .map(|v| v.iter().map(|&x| x as usize).collect::<Vec<_>>());
        let seed = get_u64(random, "seed", errors);
        let (Some(layers), Some(seed)) = (layers, seed) else {
            errors.push("random_relu needs 'layers' and 'seed'".into());
            return None;
        };
        return match ReluNetSpec::random(&layers, seed) {
            Ok(net) => Some(net),
            Err(Error::InvalidSpec { errors: e }) => {
                errors.extend(e);
                None
            }
            Err(e) => {
                errors.push(e.to_string());
                None
            }
        };
    }
    let widths = get_f64_array(params, "layer_widths", errors)
        .map(|v| v.iter().map(|&x| x as usize).collect::<Vec<_>>());
    let weights = get_nested_f64_arrays(params, "weights", errors);
    let biases = get_nested_f64_arrays(params, "biases", errors);
    let activation = match params.get("activation").and_then(Value::as_str) {
        Some("max_pool_final") => Activation::MaxPoolFinal,
        Some("relu") | None => Activation::Relu,
        Some(other) => {
            errors.push(format!("unknown activation '{other}'"));
            Activation::Relu
        }
    };
    let (Some(widths), Some(weights), Some(biases)) = (widths, weights, biases) else {
        return None;
    };
    match ReluNetSpec::new(widths, weights, biases, activation) {
        Ok(net) => Some(net),
        Err(Error::InvalidSpec { errors: e }) => {
            errors.extend(e);
            None
        }
        Err(e) => {
            errors.push(e.to_string());
            None
        }
    }
}

/// Parse and validate a path spec.
pub fn validate_path_spec(json: &Value) -> Result<PathConfig> {
    let mut errors = Vec::new();
    let kind = match json.get("kind").and_then(Value::as_str) {
        Some(k) => k.to_string(),
        None => {
            errors.push("missing or non-string 'kind'".into());
            String::new()
        }
    };
    let p = get_f64_array(json, "p", &mut errors).unwrap_or_default();
    let q = get_f64_array(json, "q", &mut errors).unwrap_or_default();
    let params = json.get("params").cloned().unwrap_or(Value::Null);
    let config = PathConfig { kind, p, q, params };
    match build_path_checked(&config, &mut errors) {
        Some(_) if errors.is_empty() => Ok(config),
        _ => Err(Error::InvalidSpec { errors }),
    }
}

fn build_path_checked(config: &PathConfig, errors: &mut Vec<String>) -> Option<PathSpec> {
    let result = match config.kind.as_str() {
        "straight" => path::make_straight(&config.p, &config.q),
        "counterexample_quadratic" => path::make_counterexample(&config.p, &config.q),
        "power_arc" => {
            let k = config.params.get("k").and_then(Value::as_f64).unwrap_or(2.0);
            path::make_power_arc(k)
        }
        "piecewise_linear" => {
            let mut knots = Vec::new();
            if let Some(Value::Array(items)) = config.params.get("knots") {
                for item in items {
                    let t = item.get("t").and_then(Value::as_f64);
                    let x = get_f64_array(item, "x", errors);
                    match (t, x) {
                        (Some(t), Some(x)) => knots.push((t, x)),
                        _ => errors.push("knots need 't' and 'x'".into()),
                    }
                }
            }
            path::make_piecewise_linear(&config.p, &config.q, knots)
        }
        other => {
            errors.push(format!("unknown path kind '{other}'"));
            return None;
        }
    };
    match result {
        Ok(path) => Some(path),
        Err(e) => {
            errors.push(e.to_string());
            None
        }
    }
}

/// Instantiate a validated field config.
pub fn build_field(config: &FieldConfig) -> Result<ScalarField> {
    let mut errors = Vec::new();
    build_field_checked(config, &mut errors).ok_or(Error::InvalidSpec { errors })
}

/// Instantiate a validated path config.
pub fn build_path(config: &PathConfig) -> Result<PathSpec> {
    let mut errors = Vec::new();
    build_path_checked(config, &mut errors).ok_or(Error::InvalidSpec { errors })
}

/// Load and validate a field spec from a file.
pub fn load_field(path: &std::path::Path) -> Result<ScalarField> {
    let text = std::fs::read_to_string(path)?;
    let json: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidSpec {
        errors: vec![format!("{}: {e}", path.display())],
    })?;
    build_field(&validate_field_spec(&json)?)
}

/// Load and validate a path spec from a file.
pub fn load_path(path: &std::path::Path) -> Result<PathSpec> {
    let text = std::fs::read_to_string(path)?;
    let json: Value = serde_json::from_str(&text).map_err(|e| Error::InvalidSpec {
        errors: vec![format!("{}: {e}", path.display())],
    })?;
    build_path(&validate_path_spec(&json)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn minimal_product_spec_gets_default_box() {
        let config = validate_field_spec(&json!({"kind": "bilinear_product", "dim": 2})).unwrap();
        assert_eq!(config.domain, [-10.0, 10.0]);
        let field = build_field(&config).unwrap();
        assert_eq!(field.dim(), 2);
    }

    #[test]
    fn relu_shape_mismatch_names_the_layer() {
        let spec = json!({
            "kind": "relu_net",
            "dim": 2,
            "params": {
                "layer_widths": [2, 3, 1],
                "weights": [[1.0, 0.0, 0.0, 1.0, 1.0], [1.0, 1.0, 1.0]],
                "biases": [[0.0, 0.0, 0.0], [0.0]]
            }
        });
        match validate_field_spec(&spec) {
            Err(Error::InvalidSpec { errors }) => {
                assert!(errors.iter().any(|e| e.contains("layer 0")), "{errors:?}");
            }
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn counterexample_path_rejects_dim_3() {
        let spec = json!({
            "kind": "counterexample_quadratic",
            "p": [0.0, 0.0, 0.0],
            "q": [1.0, 1.0, 1.0]
        });
        match validate_path_spec(&spec) {
            Err(Error::InvalidSpec { errors }) => {
                assert!(errors.iter().any(|e| e.contains("dimension")), "{errors:?}");
            }
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn multiple_errors_are_collected() {
        let spec = json!({"dim": 2, "domain": [5.0, -5.0]});
        match validate_field_spec(&spec) {
            Err(Error::InvalidSpec { errors }) => assert!(errors.len() >= 2, "{errors:?}"),
            other => panic!("expected InvalidSpec, got {other:?}"),
        }
    }

    #[test]
    fn catalog_specs_round_trip() {
        let specs = [
            json!({"kind": "bilinear_product", "dim": 2}),
            json!({"kind": "linear", "dim": 2, "params": {"coeffs": [2.0, -3.0]}}),
            json!({"kind": "max_coord", "dim": 4}),
            json!({"kind": "cantor_1d", "dim": 1, "params": {"depth": 24}}),
            json!({"kind": "relu_net", "dim": 3,
                   "params": {"random_relu": {"layers": [3, 8, 1], "seed": 42}}}),
        ];
        for spec in specs {
            let normalized = validate_field_spec(&spec).unwrap();
            let emitted = serde_json::to_value(&normalized).unwrap();
            let reparsed: FieldConfig = serde_json::from_value(emitted).unwrap();
            assert_eq!(normalized, reparsed);
        }
    }

    #[test]
    fn random_net_spec_is_deterministic() {
        let spec = json!({"kind": "relu_net", "dim": 3,
                          "params": {"random_relu": {"layers": [3, 8, 1], "seed": 42}}});
        let a = build_field(&validate_field_spec(&spec).unwrap()).unwrap();
        let b = build_field(&validate_field_spec(&spec).unwrap()).unwrap();
        let x = [0.5, -0.25, 1.0];
        assert_eq!(
            a.evaluate(&x).unwrap().to_bits(),
            b.evaluate(&x).unwrap().to_bits()
        );
    }
}
