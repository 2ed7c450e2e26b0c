//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a suite reports a
//! violation, 2 for usage and domain errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::distortion_envelope as env;
use crate::error::{Error, Result};
use crate::inequality_lab::{run_suite, CheckReport, SamplingPlan, Tolerance};
use crate::metrics;
use crate::point::{ExtendedPoint, Point};
use crate::special_functions as sf;
use crate::verify;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Parsed invocation.
#[derive(Debug, Parser)]
#[command(name = "qcdl", version, about = "Distortion bounds for normalized quasiconformal maps")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Maximal dilatation K.
    #[arg(long = "K", global = true)]
    pub k: Option<f64>,
    /// Dimension.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: u32,
    /// 64-bit seed, decimal or 0x-prefixed hex.
    #[arg(long, global = true, env = "QCDL_SEED", default_value = "0x5EED", value_parser = parse_seed)]
    pub seed: u64,
    /// Samples per suite.
    #[arg(long, global = true, default_value = "100000", value_parser = parse_count)]
    pub samples: usize,
    /// Relative tolerance; the absolute floor is fixed at 1e-15.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function: K, mu, mu_inv, gamma2, phi_K2, eta_star_upper.
    Sf {
        name: String,
        #[arg(allow_negative_numbers = true, num_args = 1..)]
        args: Vec<f64>,
    },
    /// Evaluate a metric between two points: chordal, j, k, jk.
    Metric {
        kind: String,
        /// Comma-separated coordinates, or `inf` (chordal only).
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// λ for the `jk` sandwich.
        #[arg(long, default_value_t = 0.5)]
        lambda: f64,
    },
    /// Print the distortion constants for --K and --n.
    Bounds,
    /// Envelope cross-section of x at dilatation --K.
    Envelope {
        /// Comma-separated coordinates of x.
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Samples per boundary arc.
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
    },
    /// Run the radial-stretch containment suites (all of the grid, or --K with --n).
    Oracle,
    /// Run verification suites by name or dotted prefix; `all` by default.
    Verify {
        #[arg(default_value = "all")]
        suites: Vec<String>,
    },
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn parse_count(s: &str) -> std::result::Result<usize, String> {
    if let Ok(n) = s.parse::<usize>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= 1e15 => Ok(v as usize),
        _ => Err(format!("invalid count {s:?}")),
    }
}

fn parse_point(s: &str) -> Result<ExtendedPoint<f64>> {
    if s.trim().eq_ignore_ascii_case("inf") {
        return Ok(ExtendedPoint::Infinity);
    }
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Domain(format!("invalid coordinates {s:?}: {e}")))?;
    if coords.len() < 2 || coords.iter().any(|c| !c.is_finite()) {
        return Err(Error::Domain(format!("need at least two finite coordinates, got {s:?}")));
    }
    Ok(ExtendedPoint::finite(coords))
}

fn finite_point(s: &str) -> Result<Point<f64>> {
    match parse_point(s)? {
        ExtendedPoint::Finite(p) => Ok(p),
        ExtendedPoint::Infinity => Err(Error::Domain("point at infinity not allowed here".into())),
    }
}

impl RunConfig {
    fn plan(&self) -> SamplingPlan {
        SamplingPlan {
            tolerance: Tolerance {
                relative: self.tolerance,
                ..Tolerance::default()
            },
            ..SamplingPlan::default().with_seed(self.seed).with_samples(self.samples)
        }
    }

    fn k(&self) -> Result<f64> {
        self.k.ok_or_else(|| Error::Domain("this command needs --K".into()))
    }
}

/// Outcome of a command before it is written out.
enum Output {
    Lines(Vec<String>),
    Reports(Vec<CheckReport>),
}

fn arity(name: &str, args: &[f64], n: usize) -> Result<()> {
    if args.len() != n {
        return Err(Error::Domain(format!("sf {name} takes {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

fn cmd_sf(cfg: &RunConfig, name: &str, args: &[f64]) -> Result<f64> {
    match name {
        "K" => {
            arity(name, args, 1)?;
            sf::complete_elliptic_k(args[0])
        }
        "mu" => {
            arity(name, args, 1)?;
            sf::mu(args[0])
        }
        "mu_inv" => {
            arity(name, args, 1)?;
            sf::mu_inv(args[0])
        }
        "gamma2" => {
            arity(name, args, 1)?;
            sf::gamma2(args[0])
        }
        "phi_K2" => {
            arity(name, args, 2)?;
            sf::phi_k2(args[0], args[1])
        }
        "eta_star_upper" => {
            arity(name, args, 2)?;
            sf::eta_star_upper(&sf::make_params(args[0], cfg.n)?, args[1])
        }
        _ => Err(Error::Domain(format!(
            "unknown function {name:?}; expected K, mu, mu_inv, gamma2, phi_K2 or eta_star_upper"
        ))),
    }
}

fn cmd_metric(kind: &str, x: &str, y: &str, lambda: f64) -> Result<Value> {
    let value = match kind {
        "chordal" => json!(metrics::chordal(&parse_point(x)?, &parse_point(y)?)?),
        "j" => json!(metrics::j_punctured(&finite_point(x)?, &finite_point(y)?)?),
        "k" => json!(metrics::k_punctured(&finite_point(x)?, &finite_point(y)?)?),
        "jk" => {
            let o = metrics::jk_sandwich_check(&finite_point(x)?, &finite_point(y)?, lambda)?;
            json!({"j": o.j, "k": o.k, "c1": o.c1, "lower_margin": o.lower_margin, "upper_margin": o.upper_margin})
        }
        _ => return Err(Error::Domain(format!("unknown metric {kind:?}; expected chordal, j, k or jk"))),
    };
    Ok(json!({"metric": kind, "value": value}))
}

fn optional(v: Result<f64>) -> Value {
    v.map(|x| json!(x)).unwrap_or(Value::Null)
}

fn cmd_bounds(cfg: &RunConfig) -> Result<Value> {
    let k = cfg.k()?;
    let n = cfg.n;
    let p = sf::make_params(k, n)?;
    let eta = sf::EtaStarBound::new(&p).ok();
    Ok(json!({
        "K": k,
        "n": n,
        "alpha": p.alpha,
        "beta": p.beta,
        "c3": p.c3,
        "eta_star_at_one": eta.map(|e| e.at_one),
        "eta_star_low_coeff": eta.map(|e| e.low_coeff),
        "eta_star_high_coeff": eta.map(|e| e.high_coeff),
        "epsilon_from_K": optional(env::epsilon_from_k(k)),
        "chordal_A_bound": optional(env::chordal_a_bound(k)),
        "c_main2": optional(env::c_main2(k, n)),
        "omega_main3": optional(env::omega_main3(k, n, None)),
        "c_lower_bound": optional(env::c_lower_bound(k, n)),
    }))
}

fn cmd_envelope(cfg: &RunConfig, x: &str, resolution: usize) -> Result<(Value, Vec<String>)> {
    let k = cfg.k()?;
    let x = finite_point(x)?;
    let bound = env::envelope_bound(&x, k)?;
    let e = bound.epsilon;
    let summary = json!({
        "x": x,
        "K": k,
        "epsilon": e,
        "epsilon_sup": env::epsilon_sup(&x)?,
        "K_threshold": env::k_threshold(e)?,
        "diam_bound": bound.diam_bound,
        "diam_bruteforce": env::diam_a_bruteforce(&x, e, resolution.max(1))?,
        "chordal_bound": bound.chordal_bound,
        "chordal_A_bound": env::chordal_a_bound(k)?,
        "shells": bound.shells,
        "symmetry": "solid of revolution about the e1-axis; rows give the (x1, x2) meridian section",
    });
    let mut rows = vec!["x1,x2,arc_id".to_string()];
    rows.extend(
        env::cross_section_boundary(&x, e, resolution.max(1))?
            .into_iter()
            .map(|(a, b, id)| format!("{a},{b},{id}")),
    );
    Ok((summary, rows))
}

fn run_all(suites: Vec<crate::inequality_lab::Suite>, plan: &SamplingPlan) -> Vec<CheckReport> {
    suites.iter().map(|s| run_suite(s, plan)).collect()
}

fn cmd_oracle(cfg: &RunConfig) -> Result<Vec<CheckReport>> {
    let suites = match cfg.k {
        Some(k) => {
            if !(k > 1.0 && k <= 2.0) {
                return Err(Error::Domain(format!("oracle runs need K in (1, 2], got {k}")));
            }
            verify::oracle_suites(k, cfg.n)?
        }
        None => verify::select("oracle"),
    };
    Ok(run_all(suites, &cfg.plan()))
}

fn cmd_verify(cfg: &RunConfig, selectors: &[String]) -> Result<Vec<CheckReport>> {
    let mut suites = Vec::new();
    for sel in selectors {
        let found = verify::select(sel);
        if found.is_empty() {
            return Err(Error::Domain(format!("unknown suite {sel:?}")));
        }
        suites.extend(found);
    }
    suites.sort_by(|a, b| a.name().cmp(b.name()));
    suites.dedup_by(|a, b| a.name() == b.name());
    Ok(run_all(suites, &cfg.plan()))
}

fn report_lines(reports: &[CheckReport], format: Format) -> Vec<String> {
    match format {
        Format::Json => reports.iter().map(CheckReport::to_json).collect(),
        Format::Csv => std::iter::once("suite,seed,samples,violations,worst_margin,tolerance".to_string())
            .chain(reports.iter().map(|r| {
                format!(
                    "{},{},{},{},{},{}",
                    r.suite_name, r.seed, r.samples, r.violations, r.worst_margin, r.tolerance.relative
                )
            }))
            .collect(),
    }
}

fn execute(cfg: &RunConfig, diag: &mut dyn Write) -> Result<Output> {
    if !(cfg.tolerance > 0.0) || !cfg.tolerance.is_finite() {
        return Err(Error::Domain(format!("tolerance must be positive, got {}", cfg.tolerance)));
    }
    match &cfg.command {
        Command::Sf { name, args } => {
            let v = cmd_sf(cfg, name, args)?;
            Ok(Output::Lines(vec![format!("{v:.16e}")]))
        }
        Command::Metric { kind, x, y, lambda } => Ok(Output::Lines(vec![cmd_metric(kind, x, y, *lambda)?.to_string()])),
        Command::Bounds => Ok(Output::Lines(vec![cmd_bounds(cfg)?.to_string()])),
        Command::Envelope { x, resolution } => {
            let (summary, rows) = cmd_envelope(cfg, x, *resolution)?;
            match cfg.format {
                Format::Json => Ok(Output::Lines(vec![summary.to_string()])),
                Format::Csv => {
                    let _ = writeln!(diag, "{summary}");
                    Ok(Output::Lines(rows))
                }
            }
        }
        Command::Oracle => Ok(Output::Reports(cmd_oracle(cfg)?)),
        Command::Verify { suites } => Ok(Output::Reports(cmd_verify(cfg, suites)?)),
    }
}

fn write_lines(cfg: &RunConfig, lines: &[String], stdout: &mut dyn Write) -> io::Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            for l in lines {
                writeln!(f, "{l}")?;
            }
            f.flush()
        }
        None => {
            for l in lines {
                writeln!(stdout, "{l}")?;
            }
            Ok(())
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (lines, code) = match execute(&cfg, stderr) {
        Ok(Output::Lines(lines)) => (lines, EXIT_PASS),
        Ok(Output::Reports(reports)) => {
            let code = if reports.iter().all(CheckReport::passed) {
                EXIT_PASS
            } else {
                EXIT_VIOLATION
            };
            (report_lines(&reports, cfg.format), code)
        }
        Err(e) => {
            let _ = writeln!(stderr, "qcdl: {e}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = write_lines(&cfg, &lines, stdout) {
        let _ = writeln!(stderr, "qcdl: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}
