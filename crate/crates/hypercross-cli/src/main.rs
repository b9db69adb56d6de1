//! Command-line front end for the hypercross library: exact counts with all
//! analytic bounds, volumes, sandwich verdicts and threshold searches,
//! widths/eps-dimensions, tractability tables, spectral demos, and the
//! verification suite.
//!
//! Output is machine readable (JSON lines or long-form CSV); progress for
//! long sweeps goes to standard error only.

mod emit;
mod runners;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypercross::DEFAULT_CAP;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "hypercross",
    version,
    about = "Hyperbolic-cross counting, volumes, widths and tractability"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Lattice cap; falls back to HYPERCROSS_CAP, then 10^7.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON file of default flag values (keys mirror the long flag names).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact counts with the volume and every applicable bound per point.
    Count(CountArgs),
    /// Smooth-cross volumes with bounds and optional oracle cross-checks.
    Volume(VolumeArgs),
    /// Sandwich verdicts and the half-shift domination threshold search.
    Bounds(BoundsArgs),
    /// Exact widths / eps-dimensions with their analytic brackets.
    Widths(WidthsArgs),
    /// Tractability classification table over a shift grid.
    Tract(TractArgs),
    /// Jackson/Bernstein ratio reports and Jacobi quadrature demos.
    Approx(ApproxArgs),
    /// Run the verification suite; exits nonzero on any violation.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct CountArgs {
    /// Dimensions, comma separated.
    #[arg(long = "s")]
    s: Option<String>,
    /// Thresholds, comma separated.
    #[arg(long = "T")]
    threshold: Option<String>,
    /// Shifts, comma separated.
    #[arg(long = "a")]
    shift: Option<String>,
    /// corner or symmetric.
    #[arg(long)]
    kind: Option<String>,
    /// Delta values for the shifted upper bounds (default 0.5,1).
    #[arg(long)]
    delta: Option<String>,
}

#[derive(Args, Clone)]
struct VolumeArgs {
    #[arg(long = "s")]
    s: Option<String>,
    #[arg(long = "T")]
    threshold: Option<String>,
    #[arg(long = "a")]
    shift: Option<String>,
    /// Also run the quadrature oracle (s <= 5) at this tolerance.
    #[arg(long)]
    oracle_tol: Option<f64>,
}

#[derive(Args, Clone)]
struct BoundsArgs {
    #[arg(long = "s")]
    s: Option<String>,
    #[arg(long = "T")]
    threshold: Option<String>,
    #[arg(long = "a")]
    shift: Option<String>,
    /// Run the threshold witness search up to this horizon per (s,a).
    #[arg(long)]
    horizon: Option<f64>,
}

#[derive(Args, Clone)]
struct WidthsArgs {
    #[arg(long = "s")]
    s: Option<String>,
    #[arg(long = "a")]
    shift: Option<String>,
    #[arg(long = "r")]
    r: Option<String>,
    /// Subspace dimensions N for width queries.
    #[arg(long = "N")]
    n: Option<String>,
    /// Accuracies for eps-dimension queries.
    #[arg(long)]
    eps: Option<String>,
    /// q parameters for the q-form bounds.
    #[arg(long)]
    q: Option<String>,
    /// symmetric (periodic) or corner (non-periodic Jacobi).
    #[arg(long)]
    kind: Option<String>,
}

#[derive(Args, Clone)]
struct TractArgs {
    #[arg(long = "a")]
    shift: Option<String>,
    #[arg(long = "r")]
    r: Option<String>,
    /// Evidence rows run s = 1..=smax.
    #[arg(long, default_value_t = 8)]
    smax: u32,
    /// Accuracy at which the evidence counts are taken.
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long)]
    kind: Option<String>,
}

#[derive(Args, Clone)]
struct ApproxArgs {
    #[arg(long = "s")]
    s: Option<String>,
    #[arg(long = "r")]
    r: Option<String>,
    #[arg(long = "a")]
    shift: Option<String>,
    #[arg(long = "T")]
    threshold: Option<String>,
    /// Randomized coefficient sets per parameter point.
    #[arg(long, default_value_t = 100)]
    trials: u32,
    /// Jacobi weight exponents for the non-periodic demo.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// JSON coefficient file ([{"index":[..],"re":..,"im":..}, ...]) to
    /// analyze instead of randomized sets.
    #[arg(long)]
    coeffs: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    /// all, counting, remainder, volume, bounds, widths, tract, spectral.
    #[arg(long, default_value = "all")]
    suite: String,
}

fn load_config(path: &PathBuf) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("config {path:?}: {e}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("config {path:?}: {e}"))?;
    let obj = value
        .as_object()
        .ok_or_else(|| format!("config {path:?}: expected a JSON object"))?;
    let mut out = BTreeMap::new();
    for (k, v) in obj {
        let s = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Array(items) => items
                .iter()
                .map(|i| match i {
                    serde_json::Value::String(s) => Ok(s.clone()),
                    serde_json::Value::Number(n) => Ok(n.to_string()),
                    other => Err(format!("config key {k}: unsupported element {other}")),
                })
                .collect::<Result<Vec<_>, _>>()?
                .join(","),
            other => return Err(format!("config key {k}: unsupported value {other}")),
        };
        out.insert(k.clone(), s);
    }
    Ok(out)
}

pub struct Resolver {
    config: BTreeMap<String, String>,
}

impl Resolver {
    fn pick(&self, flag: Option<String>, key: &str) -> Option<String> {
        flag.or_else(|| self.config.get(key).cloned())
    }

    fn required(&self, flag: Option<String>, key: &str) -> Result<String, String> {
        self.pick(flag, key)
            .ok_or_else(|| format!("missing required value --{key} (flag or config)"))
    }
}

pub fn parse_f64_list(text: &str, key: &str) -> Result<Vec<f64>, String> {
    let vals: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse::<f64>()).collect();
    let vals = vals.map_err(|e| format!("--{key}: {e}"))?;
    if vals.is_empty() {
        return Err(format!("--{key}: empty list"));
    }
    Ok(vals)
}

pub fn parse_u32_list(text: &str, key: &str) -> Result<Vec<u32>, String> {
    let vals: Result<Vec<u32>, _> = text.split(',').map(|p| p.trim().parse::<u32>()).collect();
    let vals = vals.map_err(|e| format!("--{key}: {e}"))?;
    if vals.is_empty() {
        return Err(format!("--{key}: empty list"));
    }
    Ok(vals)
}

pub fn parse_u64_list(text: &str, key: &str) -> Result<Vec<u64>, String> {
    let vals: Result<Vec<u64>, _> = text.split(',').map(|p| p.trim().parse::<u64>()).collect();
    let vals = vals.map_err(|e| format!("--{key}: {e}"))?;
    if vals.is_empty() {
        return Err(format!("--{key}: empty list"));
    }
    Ok(vals)
}

fn effective_cap(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("HYPERCROSS_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_CAP)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.config.as_ref().map(load_config).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let resolver = Resolver { config };
    let cap = effective_cap(cli.cap);
    let seed = cli.seed.unwrap_or(17);
    let outcome = match cli.cmd {
        Cmd::Count(args) => runners::run_count(&resolver, args, cli.format, cap),
        Cmd::Volume(args) => runners::run_volume(&resolver, args, cli.format),
        Cmd::Bounds(args) => runners::run_bounds(&resolver, args, cli.format, cap),
        Cmd::Widths(args) => runners::run_widths(&resolver, args, cli.format, cap),
        Cmd::Tract(args) => runners::run_tract(&resolver, args, cli.format, cap),
        Cmd::Approx(args) => runners::run_approx(&resolver, args, cli.format, cap, seed),
        Cmd::Verify(args) => return runners::run_verify(args, cli.format, cap, seed),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(runners::CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(runners::CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
