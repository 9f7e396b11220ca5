//! `jlip` — hyperbolic-type metrics on canonical domains and certified
//! distortion-constant searches for the maps between them.
//!
//! Exit codes: 0 success, 2 usage or parameter errors, 3 domain violations
//! (a point outside its domain, an image escaping the target), 4 a failed
//! certificate or verification check.

mod output;
mod spec;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use jlip::distortion::sup_estimate;
use jlip::metrics::{j_metric, rho_for_domain};
use jlip::qh::quasihyperbolic_estimate;
use jlip::{DistortionReport, Error, Result, SearchBudget};
use output::{emit, float17, to_csv, to_json, unix_timestamp, Envelope};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "jlip",
    version,
    about = "Distance-ratio, hyperbolic, and quasihyperbolic metrics; Moebius and holomorphic maps; sharp distortion-constant searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed; overrides the JLIP_SEED environment variable (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Cap on worker threads; any value produces the same report.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Omit the timestamp so identical runs emit identical bytes.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Distances between two points of a domain.
    Metric {
        /// Domain spec, e.g. ball2, half3, sector:angle=0.8, ball2:puncture=0,0.
        #[arg(long)]
        domain: String,
        /// First point, comma-separated coordinates.
        #[arg(long)]
        x: String,
        /// Second point.
        #[arg(long)]
        y: String,
        /// Also report the hyperbolic distance (where defined) and the
        /// quasihyperbolic estimate with its tolerance.
        #[arg(long)]
        all: bool,
        /// Grid resolution for the quasihyperbolic estimate.
        #[arg(long, default_value_t = 64)]
        resolution: usize,
    },
    /// Supremum search for a map's distance-ratio distortion.
    Sup {
        /// Map spec, e.g. sigma:a=0.5,0, cayley:h2b, power:k=3, expexample.
        #[arg(long)]
        map: String,
        /// Random pairs to sample (at least 1000).
        #[arg(long, default_value_t = 4_000)]
        samples: u64,
        /// Local-refinement rounds per ascent start.
        #[arg(long, default_value_t = 40)]
        refine_steps: u32,
    },
    /// Run a check suite: lemmas, theorems, conjecture, sandwich, or all.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Sampling budget for the searches inside the suite.
        #[arg(long, default_value_t = 4_000)]
        samples: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let seed = match resolve_seed(cli.seed) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let timestamp = unix_timestamp(cli.no_timestamp);
    let outcome = match &cli.command {
        Command::Metric {
            domain,
            x,
            y,
            all,
            resolution,
        } => cmd_metric(domain, x, y, *all, *resolution, cli.format, timestamp),
        Command::Sup {
            map,
            samples,
            refine_steps,
        } => {
            let budget = SearchBudget {
                samples: *samples,
                refine_steps: *refine_steps,
            };
            cmd_sup(map, budget, seed, cli.threads, cli.format, timestamp)
        }
        Command::Verify { suite, samples } => {
            cmd_verify(suite, seed, *samples, cli.threads, cli.format, timestamp)
        }
    };
    match outcome {
        Ok((text, code)) => {
            if let Err(e) = emit(&text, &cli.out) {
                eprintln!("error: cannot write report: {e}");
                return 2;
            }
            code
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("JLIP_SEED") {
        Ok(text) => text.trim().parse().map_err(|e| {
            Error::InvalidParameter(format!("JLIP_SEED must be a 64-bit unsigned integer: {e}"))
        }),
        Err(_) => Ok(0),
    }
}

/// Runs `f` on a pool of `threads` workers when a cap was given; the
/// search's reduction is associative and indexed, so the report does not
/// depend on the pool size.
fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("cannot build a {n}-thread pool: {e}")))
            .map(|pool| pool.install(f)),
    }
}

#[derive(Serialize)]
struct MetricPayload {
    domain: String,
    x: Vec<f64>,
    y: Vec<f64>,
    j: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_resolution: Option<usize>,
}

fn cmd_metric(
    domain_spec: &str,
    x_spec: &str,
    y_spec: &str,
    all: bool,
    resolution: usize,
    format: Format,
    timestamp: Option<u64>,
) -> Result<(String, i32)> {
    let g = spec::parse_domain(domain_spec)?;
    let x = spec::parse_point(x_spec)?;
    let y = spec::parse_point(y_spec)?;
    let j = j_metric(&g, &x, &y)?;
    let mut payload = MetricPayload {
        domain: domain_spec.to_string(),
        x: x.coords().to_vec(),
        y: y.coords().to_vec(),
        j,
        rho: None,
        k_est: None,
        k_tol: None,
        k_resolution: None,
    };
    if all {
        payload.rho = rho_for_domain(&g, &x, &y).transpose()?;
        let k = quasihyperbolic_estimate(&g, &x, &y, resolution)?;
        payload.k_est = Some(k.value);
        payload.k_tol = Some(k.tol);
        payload.k_resolution = Some(resolution);
    }
    let text = match format {
        Format::Json => to_json(&Envelope {
            command: "metric",
            timestamp,
            payload,
        }),
        Format::Csv => {
            let mut rows = vec![format!("j,{}", float17(payload.j))];
            if let Some(rho) = payload.rho {
                rows.push(format!("rho,{}", float17(rho)));
            }
            if let Some(k) = payload.k_est {
                rows.push(format!("k_est,{}", float17(k)));
                rows.push(format!("k_tol,{}", float17(payload.k_tol.unwrap())));
            }
            to_csv("quantity,value", &rows)
        }
    };
    Ok((text, 0))
}

#[derive(Serialize)]
struct SupPayload {
    map: String,
    #[serde(flatten)]
    report: DistortionReport<f64>,
}

fn cmd_sup(
    map_spec: &str,
    budget: SearchBudget,
    seed: u64,
    threads: Option<usize>,
    format: Format,
    timestamp: Option<u64>,
) -> Result<(String, i32)> {
    let m = spec::parse_map(map_spec)?;
    let report = with_threads(threads, || sup_estimate(&m, budget, seed))??;
    let code = if report.certificate_violated() { 4 } else { 0 };
    let text = match format {
        Format::Json => to_json(&Envelope {
            command: "sup",
            timestamp,
            payload: SupPayload {
                map: map_spec.to_string(),
                report,
            },
        }),
        Format::Csv => {
            let rows: Vec<String> = report
                .family_traces
                .iter()
                .flat_map(|trace| {
                    trace.points.iter().map(|&(t, ratio)| {
                        format!("{},{},{}", trace.name, float17(t), float17(ratio))
                    })
                })
                .collect();
            to_csv("family,t,ratio", &rows)
        }
    };
    Ok((text, code))
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    samples: u64,
    threads: Option<usize>,
    format: Format,
    timestamp: Option<u64>,
) -> Result<(String, i32)> {
    let report = with_threads(threads, || verify::run_suite(suite, seed, samples))??;
    let code = if report.passed { 0 } else { 4 };
    let text = match format {
        Format::Json => to_json(&Envelope {
            command: "verify",
            timestamp,
            payload: report,
        }),
        Format::Csv => {
            let rows: Vec<String> = report
                .checks
                .iter()
                .map(|c| format!("{},{},{}", csv_field(&c.name), c.passed, float17(c.measured)))
                .collect();
            to_csv("check,passed,measured", &rows)
        }
    };
    Ok((text, code))
}

/// Quotes a CSV field when it contains a delimiter.
fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
