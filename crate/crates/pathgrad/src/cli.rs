//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when a checked invariant fails (residual or
//! gap above tolerance, refinement not converged, witness gap missing), 1 on
//! usage or spec errors. Reports are JSON (default) or CSV; identical inputs
//! produce byte-identical output.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::config;
use crate::engine;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::path::{self, PathSpec};
use crate::quad::{QuadratureSpec, Rule};
use crate::relu::ReluNetSpec;
use crate::witness;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pathgrad", version, about = "Path-based gradient attribution engine")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RuleArg {
    Midpoint,
    Trapezoid,
    Gauss,
}

impl From<RuleArg> for Rule {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Midpoint => Rule::Midpoint,
            RuleArg::Trapezoid => Rule::Trapezoid,
            RuleArg::Gauss => Rule::GaussLegendre,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Report file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct QuadArgs {
    #[arg(long, value_enum, default_value = "midpoint")]
    rule: RuleArg,
    #[arg(long, default_value_t = 256)]
    nodes: usize,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Field: product | max | cantor | linear | random-relu | path to a
    /// field spec JSON file
    #[arg(long)]
    field: String,
    /// Coefficients for --field linear, comma-separated
    #[arg(long)]
    coeffs: Option<String>,
    /// Truncation depth for --field cantor
    #[arg(long, default_value_t = 24)]
    depth: u32,
    /// Layer widths for --field random-relu, comma-separated
    #[arg(long)]
    layers: Option<String>,
    /// Seed for randomized fields
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct PathArgs {
    /// Path: straight | counterexample | arc | path to a path spec JSON file
    #[arg(long, default_value = "straight")]
    path: String,
    /// Baseline point, comma-separated
    #[arg(long)]
    p: Option<String>,
    /// Input point, comma-separated
    #[arg(long)]
    q: Option<String>,
    /// Exponent for --path arc
    #[arg(long, default_value_t = 2.0)]
    arc_exponent: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute path attributions for a field
    Attribute {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        path: PathArgs,
        #[command(flatten)]
        quad: QuadArgs,
        /// When set, exit 2 if the completeness residual exceeds it
        #[arg(long)]
        tolerance: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the gradient-theorem identity by node-doubling refinement
    CheckCompleteness {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        path: PathArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[arg(long, default_value_t = 65536)]
        max_nodes: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check that two coordinates receive equal attributions
    CheckSymmetry {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        path: PathArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        j: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the symmetric witness field for a non-diagonal path and show
    /// the attribution gap
    Witness {
        #[command(flatten)]
        path: PathArgs,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, default_value_t = 1)]
        j: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Inspect the quadratic sign-corrected path: monotonicity and deviation
    /// from the straight line
    Counterexample {
        /// Baseline point, comma-separated
        #[arg(long)]
        p: String,
        /// Input point, comma-separated
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1001)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduce the area-under-the-curve example: x1*x2 on a power arc
    Figure {
        #[arg(long, default_value_t = 2.0)]
        arc_exponent: f64,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        /// Number of (t, gamma) table rows
        #[arg(long, default_value_t = 65)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_point(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad coordinate '{v}'")))
        })
        .collect()
}

fn parse_usizes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad layer width '{v}'")))
        })
        .collect()
}

fn resolve_field(args: &FieldArgs, dim_hint: usize) -> Result<ScalarField> {
    match args.field.as_str() {
        "product" | "bilinear_product" => Ok(ScalarField::bilinear_product()),
        "max" | "max_coord" => Ok(ScalarField::max_coord(dim_hint.max(2))),
        "cantor" | "cantor_1d" => Ok(ScalarField::cantor(args.depth)),
        "linear" => {
            let coeffs = args
                .coeffs
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("--field linear needs --coeffs".into()))?;
            Ok(ScalarField::linear(parse_point(coeffs)?))
        }
        "random-relu" | "random_relu" => {
            let layers = args
                .layers
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("--field random-relu needs --layers".into()))?;
            let seed = args.seed.ok_or_else(|| {
                Error::InvalidParameter("--field random-relu needs --seed".into())
            })?;
            Ok(ScalarField::relu_net(ReluNetSpec::random(
                &parse_usizes(layers)?,
                seed,
            )?))
        }
        file => config::load_field(std::path::Path::new(file)),
    }
}

fn resolve_path(args: &PathArgs, dim_hint: usize) -> Result<PathSpec> {
    let p = args.p.as_deref().map(parse_point).transpose()?;
    let q = args.q.as_deref().map(parse_point).transpose()?;
    match args.path.as_str() {
        "straight" => {
            let p = p.unwrap_or_else(|| vec![0.0; dim_hint]);
            let q = q.unwrap_or_else(|| vec![1.0; dim_hint]);
            path::make_straight(&p, &q)
        }
        "counterexample" | "counterexample_quadratic" => {
            let p = p.ok_or_else(|| Error::InvalidParameter("counterexample path needs --p".into()))?;
            let q = q.ok_or_else(|| Error::InvalidParameter("counterexample path needs --q".into()))?;
            path::make_counterexample(&p, &q)
        }
        "arc" | "power_arc" => path::make_power_arc(args.arc_exponent),
        file => config::load_path(std::path::Path::new(file)),
    }
}

fn emit(output: &OutputArgs, json: &serde_json::Value, csv: Option<String>) -> Result<()> {
    let text = match output.format {
        Format::Json => serde_json::to_string_pretty(json)? + "\n",
        Format::Csv => csv.unwrap_or_else(|| {
            // fall back to a flat key,value dump
            let mut s = String::from("key,value\n");
            if let Some(map) = json.as_object() {
                for (k, v) in map {
                    s.push_str(&format!("{k},{v}\n"));
                }
            }
            s
        }),
    };
    match &output.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_command(command: &Command) -> Result<i32> {
    match command {
        Command::Attribute {
            field,
            path,
            quad,
            tolerance,
            output,
        } => {
            let path = resolve_path(path, 2)?;
            let field = resolve_field(field, path.dim())?;
            let spec = QuadratureSpec::new(quad.rule.into(), quad.nodes)?;
            let report = engine::integrated_gradients(&field, &path, &spec)?;
            let csv = report.to_csv();
            emit(output, &serde_json::to_value(&report)?, Some(csv))?;
            let residual = engine::completeness_residual(&report);
            match tolerance {
                Some(tol) if residual > *tol => Ok(EXIT_VIOLATION),
                _ => Ok(EXIT_OK),
            }
        }
        Command::CheckCompleteness {
            field,
            path,
            quad,
            tolerance,
            max_nodes,
            output,
        } => {
            check_tolerance(*tolerance)?;
            let path = resolve_path(path, 1)?;
            let field = resolve_field(field, path.dim())?;
            // report the fixed-node run alongside the refinement verdict
            let spec = QuadratureSpec::new(quad.rule.into(), quad.nodes)?;
            let fixed = engine::integrated_gradients(&field, &path, &spec)?;
            let (outcome, code) = match engine::refine(&field, &path, *tolerance, *max_nodes) {
                Ok(outcome) => (outcome, EXIT_OK),
                Err(Error::NotConverged { outcome }) => (*outcome, EXIT_VIOLATION),
                Err(e) => return Err(e),
            };
            let json = json!({
                "fixed": fixed,
                "refined": outcome,
                "tolerance": tolerance,
            });
            emit(output, &json, Some(outcome.report.to_csv()))?;
            Ok(code)
        }
        Command::CheckSymmetry {
            field,
            path,
            quad,
            i,
            j,
            tolerance,
            output,
        } => {
            check_tolerance(*tolerance)?;
            let path = resolve_path(path, 2)?;
            let field = resolve_field(field, path.dim())?;
            let spec = QuadratureSpec::new(quad.rule.into(), quad.nodes)?;
            let report = engine::integrated_gradients(&field, &path, &spec)?;
            let gap = engine::symmetry_gap(&report, *i, *j)?;
            let json = json!({
                "gap": gap,
                "tolerance": tolerance,
                "report": report,
            });
            emit(output, &json, Some(report.to_csv()))?;
            Ok(if gap.abs() <= *tolerance {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Witness {
            path,
            quad,
            i,
            j,
            tolerance,
            output,
        } => {
            check_tolerance(*tolerance)?;
            let path = resolve_path(path, 2)?;
            let spec = QuadratureSpec::new(quad.rule.into(), quad.nodes)?;
            match witness::demonstrate_asymmetry(&path, *i, *j, &spec) {
                Ok(report) => {
                    let code = if report.gap > *tolerance {
                        EXIT_OK
                    } else {
                        EXIT_VIOLATION
                    };
                    emit(output, &serde_json::to_value(&report)?, None)?;
                    Ok(code)
                }
                Err(Error::NoViolation) => {
                    let json = json!({"violation": false, "gap": 0.0});
                    emit(output, &json, None)?;
                    Ok(EXIT_VIOLATION)
                }
                Err(e) => Err(e),
            }
        }
        Command::Counterexample { p, q, grid, output } => {
            let p = parse_point(p)?;
            let q = parse_point(q)?;
            let ce = path::make_counterexample(&p, &q)?;
            let straight = path::make_straight(&p, &q)?;
            let grid = (*grid).max(2);
            let mut deviation = 0.0f64;
            for k in 0..grid {
                let t = k as f64 / (grid - 1) as f64;
                let a = ce.eval(t)?;
                let b = straight.eval(t)?;
                for (x, y) in a.iter().zip(&b) {
                    deviation = deviation.max((x - y).abs());
                }
            }
            let mono = path::check_monotonic(&ce, grid);
            let c = (p[0] - p[1]).powi(2) + (q[0] - q[1]).powi(2);
            let predicted_monotonic =
                (0..2).all(|i| c <= (q[i] - p[i]).abs() || (q[i] - p[i]) == 0.0);
            let json = json!({
                "p": p,
                "q": q,
                "coefficient": c,
                "deviation_from_straight": deviation,
                "monotonicity": mono,
                "predicted_monotonic": predicted_monotonic,
            });
            emit(output, &json, None)?;
            Ok(EXIT_OK)
        }
        Command::Figure {
            arc_exponent,
            nodes,
            samples,
            output,
        } => {
            let field = ScalarField::bilinear_product();
            let arc = path::make_power_arc(*arc_exponent)?;
            let spec = QuadratureSpec::gauss((*nodes).max(1));
            let report = engine::integrated_gradients(&field, &arc, &spec)?;
            let samples = (*samples).max(2);
            let table: Vec<Vec<f64>> = (0..samples)
                .map(|k| {
                    let t = k as f64 / (samples - 1) as f64;
                    let g = arc.eval(t).expect("t within [0,1]");
                    vec![t, g[0], g[1]]
                })
                .collect();
            let mut csv = String::from("t,gamma1,gamma2\n");
            for row in &table {
                csv.push_str(&format!("{},{},{}\n", row[0], row[1], row[2]));
            }
            csv.push_str(&format!(
                "# IG1 = {}, IG2 = {}, sum = {}\n",
                report.attributions[0], report.attributions[1], report.sum
            ));
            let json = json!({
                "arc_exponent": arc_exponent,
                "table": table,
                "report": report,
            });
            emit(output, &json, Some(csv))?;
            Ok(EXIT_OK)
        }
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be > 0".into()));
    }
    Ok(())
}

/// Entry point used by the thin binary. Maps errors to exit codes and
/// structured stderr messages.
pub fn run() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::new().filter("PATHGRAD_LOG")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version are not usage errors
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    log::debug!("command: {:?}", cli.command);
    match run_command(&cli.command) {
        Ok(code) => code,
        Err(e @ Error::NotConverged { .. }) => {
            eprintln!("error: {e}");
            EXIT_VIOLATION
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
