//! Command-line interface: expression normalization, verification suites,
//! projector and Chern-number computations, JSON reporting.
//!
//! Exit codes: 0 = all executed checks pass, 1 = some check failed,
//! 2 = usage, parse, or configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ncsphere::bundle::{self, Projector};
use ncsphere::expr::{parse_expr, print_expr};
use ncsphere::galois;
use ncsphere::heegaard;
use ncsphere::scalar::GaussRat;
use ncsphere::{connection, Report};

#[derive(Parser)]
#[command(
    name = "ncsphere",
    version,
    about = "Exact engine for a noncommutative 3-sphere"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Emit one JSON report per line instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Optional key=value configuration file (flags take precedence)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Bound for monomial lengths / circle degrees in the suites
    #[arg(long, global = true, value_name = "N")]
    max_degree: Option<u32>,

    /// Unimodular specialization point, e.g. "(3+4i)/5"
    #[arg(long, global = true, value_name = "P+Qi/R")]
    lambda: Option<String>,

    /// Extra truncation length for the kernel certificate's relation span
    #[arg(long, global = true, value_name = "N")]
    padding: Option<u32>,

    /// Quadrature grid (cells per axis) for Chern numbers
    #[arg(long, global = true, value_name = "G")]
    grid: Option<u32>,

    /// Random sample count for the connection suite
    #[arg(long, global = true, value_name = "K")]
    samples: Option<u32>,

    /// Seed for all randomized checks
    #[arg(long, global = true, value_name = "S")]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Normalize an expression and print its normal form
    Normalize {
        /// Expression in the a / a' / b / b' / q / q' grammar
        expr: String,
    },
    /// Verify the translation-map identities, the inverse roundtrip on the
    /// spanning family, and the kernel certificate
    VerifyGalois,
    /// Verify the strong connection's defining properties
    VerifyConnection,
    /// Build a charge-n projector and verify it exactly
    Projector {
        /// Winding charge (any integer)
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        charge: i64,
        /// Print the entries over the base alphabet z, x+, x-
        #[arg(long)]
        show: bool,
    },
    /// Compute the first Chern number of the charge-n projector
    Chern {
        /// Winding charge (any integer)
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        charge: i64,
    },
    /// Verify the solid-torus pair presentation of the sphere
    HeegaardCheck,
    /// Run every verification suite in a fixed order
    All,
}

#[derive(Clone)]
struct Config {
    max_degree: u32,
    lambda0: GaussRat,
    padding: u32,
    grid: u32,
    samples: u32,
    seed: u64,
    json: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_degree: 5,
            lambda0: GaussRat::complex_ratio(3, 4, 5),
            padding: 2,
            grid: 400,
            samples: 100,
            seed: 42,
            json: false,
        }
    }
}

fn parse_lambda(s: &str) -> Result<GaussRat, String> {
    // accepted forms: "P/R", "P+Qi/R", "P-Qi/R", with optional parentheses
    // around the complex numerator, e.g. "(3+4i)/5"
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (num, den) = match compact.rsplit_once('/') {
        Some((n, d)) => {
            let den: i64 = d
                .parse()
                .map_err(|_| format!("bad denominator in lambda value {s:?}"))?;
            (n.to_string(), den)
        }
        None => (compact.clone(), 1),
    };
    if den == 0 {
        return Err(format!("zero denominator in lambda value {s:?}"));
    }
    let num = num.trim_start_matches('(').trim_end_matches(')');
    if num.is_empty() {
        return Err(format!("empty numerator in lambda value {s:?}"));
    }
    let parse_re = |t: &str| -> Result<i64, String> {
        t.parse()
            .map_err(|_| format!("bad real part in lambda value {s:?}"))
    };
    let gauss = if let Some(body) = num.strip_suffix('i') {
        // find the sign that splits re from im (skip a leading sign)
        let split = if body.len() > 1 {
            body[1..].rfind(['+', '-']).map(|k| k + 1).unwrap_or(0)
        } else {
            0
        };
        let im_part = |t: &str| -> Result<i64, String> {
            match t {
                "" | "+" => Ok(1),
                "-" => Ok(-1),
                t => t
                    .parse()
                    .map_err(|_| format!("bad imaginary part in lambda value {s:?}")),
            }
        };
        if split == 0 {
            GaussRat::complex_ratio(0, im_part(body)?, den)
        } else {
            GaussRat::complex_ratio(parse_re(&body[..split])?, im_part(&body[split..])?, den)
        }
    } else {
        GaussRat::complex_ratio(parse_re(num)?, 0, den)
    };
    if !gauss.is_unimodular() {
        return Err(format!("lambda value {s:?} is not exactly unimodular"));
    }
    Ok(gauss)
}

fn load_config(opts: &GlobalOpts) -> Result<Config, String> {
    let mut cfg = Config::default();
    if let Some(path) = &opts.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {} is not key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| format!("config line {}: {e}", lineno + 1);
            match key {
                "max_degree" => cfg.max_degree = value.parse().map_err(|e| bad(format!("{e}")))?,
                "lambda" => cfg.lambda0 = parse_lambda(value).map_err(bad)?,
                "padding" => cfg.padding = value.parse().map_err(|e| bad(format!("{e}")))?,
                "grid" => cfg.grid = value.parse().map_err(|e| bad(format!("{e}")))?,
                "samples" => cfg.samples = value.parse().map_err(|e| bad(format!("{e}")))?,
                "seed" => cfg.seed = value.parse().map_err(|e| bad(format!("{e}")))?,
                "output" => match value {
                    "json" => cfg.json = true,
                    "text" => cfg.json = false,
                    other => return Err(bad(format!("unknown output mode {other:?}"))),
                },
                other => return Err(bad(format!("unknown config key {other:?}"))),
            }
        }
    }
    if let Some(v) = opts.max_degree {
        cfg.max_degree = v;
    }
    if let Some(v) = &opts.lambda {
        cfg.lambda0 = parse_lambda(v)?;
    }
    if let Some(v) = opts.padding {
        cfg.padding = v;
    }
    if let Some(v) = opts.grid {
        cfg.grid = v;
    }
    if let Some(v) = opts.samples {
        cfg.samples = v;
    }
    if let Some(v) = opts.seed {
        cfg.seed = v;
    }
    if opts.json {
        cfg.json = true;
    }
    if cfg.max_degree < 1 {
        return Err("max_degree must be at least 1".to_string());
    }
    if cfg.grid < 8 {
        return Err("grid must be at least 8".to_string());
    }
    if cfg.samples < 1 {
        return Err("samples must be at least 1".to_string());
    }
    Ok(cfg)
}

fn emit(cfg: &Config, report: &Report) {
    if cfg.json {
        println!("{}", report.to_json());
    } else {
        println!("{}", report.to_text());
    }
}

/// The kernel certificate runs one degree below the suite bound (its
/// truncation grows quadratically), floored at 2.
fn kernel_degree(cfg: &Config) -> u32 {
    cfg.max_degree
        .saturating_sub(1)
        .clamp(2, galois::MAX_TRUNCATION)
}

fn run_galois(cfg: &Config, reports: &mut Vec<Report>) -> Result<(), String> {
    reports.push(galois::verify_translation(cfg.max_degree));
    reports.push(galois::verify_chi_can(cfg.max_degree));
    let cert = galois::kernel_certificate(kernel_degree(cfg), &cfg.lambda0, cfg.padding)
        .map_err(|e| e.to_string())?;
    reports.push(cert);
    Ok(())
}

fn run(cli: Cli) -> Result<bool, String> {
    let cfg = load_config(&cli.opts)?;
    let mut reports = Vec::new();
    match cli.command {
        Command::Normalize { expr } => {
            let parsed = parse_expr(&expr).map_err(|e| e.to_string())?;
            let normal = print_expr(&parsed);
            if cfg.json {
                let report = Report::new("normalize")
                    .param("input", expr.as_str())
                    .extra("normal_form", normal.as_str());
                println!("{}", report.to_json());
            } else {
                println!("{normal}");
            }
            return Ok(true);
        }
        Command::VerifyGalois => run_galois(&cfg, &mut reports)?,
        Command::VerifyConnection => {
            reports.push(connection::verify_connection(
                cfg.max_degree,
                cfg.samples,
                cfg.seed,
            ));
        }
        Command::Projector { charge, show } => {
            let mut report = bundle::verify_projector(charge);
            if show {
                let entries = Projector::new(charge).entries_in_base_alphabet();
                if !cfg.json {
                    for row in &entries {
                        println!("[ {} ]", row.join(" | "));
                    }
                }
                report = report.extra(
                    "entries",
                    serde_json::Value::Array(
                        entries
                            .into_iter()
                            .map(|row| {
                                serde_json::Value::Array(
                                    row.into_iter().map(serde_json::Value::from).collect(),
                                )
                            })
                            .collect(),
                    ),
                );
            }
            reports.push(report);
        }
        Command::Chern { charge } => {
            let report = bundle::chern_report(charge, cfg.grid).map_err(|e| e.to_string())?;
            reports.push(report);
        }
        Command::HeegaardCheck => {
            reports.push(heegaard::verify_pair_presentation());
        }
        Command::All => {
            run_galois(&cfg, &mut reports)?;
            reports.push(connection::verify_connection(
                cfg.max_degree,
                cfg.samples,
                cfg.seed,
            ));
            for charge in 1..=3 {
                reports.push(bundle::verify_projector(charge));
            }
            reports.push(bundle::chern_report(1, cfg.grid).map_err(|e| e.to_string())?);
            reports.push(heegaard::verify_pair_presentation());
        }
    }
    let mut all_pass = true;
    for report in &reports {
        emit(&cfg, report);
        all_pass &= report.passed();
    }
    Ok(all_pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
