//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result, bail};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use hankel_core::bounds::bound_for;
use hankel_core::classes::{ClassSpec, hankel3_polynomial};
use hankel_core::search::{SearchConfig, gap_row, search};
use hankel_core::ClassId;

use crate::config::{Config, ConfigError};
use crate::format::sig17;
use crate::grid::write_grid;
use crate::manifest::RunManifest;
use crate::report::{BoundJson, DeriveReport, SearchJson, SearchReport};
use crate::verify::{VerifyConfig, run_all, total_violations};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Marks an error as caused by bad input rather than a failed computation.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Parser)]
#[command(name = "hankel", version, about = "Third Hankel determinant bounds for starlike-type classes")]
pub struct Cli {
    /// `key = value` preset file; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a2..a5 and H3(1) in terms of the Schwarz coefficients.
    Derive(DeriveArgs),
    /// Run the upper-bound pipeline for a class.
    Bound(BoundArgs),
    /// Monte-Carlo check of the lemmas and of every class bound.
    Verify(VerifyArgs),
    /// Stochastic lower bound for |H3(1)|.
    Search(SearchArgs),
    /// Write the pullback h(x, y) sampled on the domain as CSV.
    GridExport(GridArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[arg(long)]
    pub class: String,
    /// Render coefficients as LaTeX.
    #[arg(long)]
    pub latex: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long)]
    pub class: String,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Samples per suite.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: Option<u64>,
    #[arg(long, env = "HANKEL_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub lemma_tol: Option<f64>,
    #[arg(long)]
    pub carlson_tol: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// A class name or `all`.
    #[arg(long)]
    pub class: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[arg(long)]
    pub refine_iters: Option<u32>,
    #[arg(long)]
    pub step_scale: Option<f64>,
    #[arg(long, env = "HANKEL_SEED")]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Nodes per axis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    pub resolution: Option<u64>,
    #[arg(long, alias = "path")]
    pub out: Option<PathBuf>,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() { EXIT_USAGE } else { EXIT_FAILURE }
        }
    }
}

fn load_config(path: Option<&Path>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p).map_err(|e| usage(e.to_string())),
        None => Ok(Config::default()),
    }
}

fn parse_class(name: &str) -> Result<ClassId> {
    name.parse().map_err(|_| {
        usage(format!(
            "unknown class `{name}` (expected starlike, symmetric, exponential or lune)"
        ))
    })
}

fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn pick<T>(r: std::result::Result<T, ConfigError>) -> Result<T> {
    r.map_err(|e| usage(e.to_string()))
}

pub fn execute(cli: &Cli) -> Result<i32> {
    let config = load_config(cli.config.as_deref())?;
    match &cli.command {
        Command::Derive(a) => {
            let class = parse_class(&a.class)?;
            let expr = hankel3_polynomial(ClassSpec::new(class))?;
            let manifest = RunManifest::new("derive", None).param("class", class.name());
            let report = DeriveReport::new(manifest, &expr);
            let body = if a.output.json { to_json(&report)? } else { report.to_text(a.latex) };
            emit(a.output.out.as_deref(), &body)?;
            Ok(EXIT_OK)
        }
        Command::Bound(a) => {
            let class = parse_class(&a.class)?;
            let report = bound_for(class)?;
            let manifest = RunManifest::new("bound", None).param("class", class.name());
            let json = BoundJson::new(manifest, &report);
            let body = if a.output.json { to_json(&json)? } else { json.to_text() };
            emit(a.output.out.as_deref(), &body)?;
            Ok(if report.all_steps_pass() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Verify(a) => {
            let cfg = VerifyConfig {
                samples: pick(config.pick(a.samples, "samples", VerifyConfig::DEFAULT_SAMPLES))?,
                seed: pick(config.pick(a.seed, "seed", 0))?,
                lemma_tol: pick(config.pick(a.lemma_tol, "lemma_tol", VerifyConfig::DEFAULT_LEMMA_TOL))?,
                carlson_tol: pick(config.pick(
                    a.carlson_tol,
                    "carlson_tol",
                    VerifyConfig::DEFAULT_CARLSON_TOL,
                ))?,
            };
            if cfg.samples == 0 {
                bail!(usage("samples must be at least 1"));
            }
            if !(cfg.lemma_tol >= 0.0 && cfg.carlson_tol >= 0.0) {
                bail!(usage("tolerances must be nonnegative"));
            }
            let suites = run_all(&cfg)?;
            let violations = total_violations(&suites);
            let manifest = RunManifest::new("verify", Some(cfg.seed))
                .param("samples", cfg.samples)
                .param("lemma_tol", cfg.lemma_tol)
                .param("carlson_tol", cfg.carlson_tol);
            let body = if a.output.json {
                to_json(&serde_json::json!({
                    "manifest": manifest,
                    "suites": suites,
                    "violations": violations,
                }))?
            } else {
                let mut s = format!("{}\n", manifest.comment_line());
                for suite in &suites {
                    s.push_str(&format!(
                        "{:<18} {} samples, {} checks, {} violations, worst margin {}\n",
                        suite.name,
                        suite.samples,
                        suite.checks,
                        suite.violations,
                        sig17(suite.worst_margin)
                    ));
                    for o in &suite.offenders {
                        s.push_str(&format!(
                            "  sample {} {}: {} > {}\n",
                            o.sample,
                            o.check,
                            sig17(o.value),
                            sig17(o.limit)
                        ));
                    }
                }
                s.push_str(&format!("{violations} violations\n"));
                s
            };
            emit(a.output.out.as_deref(), &body)?;
            Ok(if violations == 0 { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Search(a) => {
            let classes: Vec<ClassId> = if a.class == "all" {
                ClassId::ALL.to_vec()
            } else {
                vec![parse_class(&a.class)?]
            };
            let seed = pick(config.pick(a.seed, "seed", 0))?;
            let budget = pick(config.pick(a.budget, "budget", SearchConfig::DEFAULT_BUDGET))?;
            let refine_iters =
                pick(config.pick(a.refine_iters, "refine_iters", SearchConfig::DEFAULT_REFINE_ITERS))?;
            let step_scale =
                pick(config.pick(a.step_scale, "step_scale", SearchConfig::DEFAULT_STEP_SCALE))?;
            let configs: Vec<SearchConfig> = classes
                .iter()
                .map(|&class| SearchConfig { class, budget, refine_iters, seed, step_scale })
                .collect();
            for c in &configs {
                c.validate().map_err(|e| usage(e.to_string()))?;
            }
            let results = configs
                .par_iter()
                .map(search)
                .collect::<hankel_core::Result<Vec<_>>>()?;
            let manifest = RunManifest::new("search", Some(seed))
                .param("class", &a.class)
                .param("budget", budget)
                .param("refine_iters", refine_iters)
                .param("step_scale", step_scale);
            let report = SearchReport {
                manifest,
                results: results.iter().map(|r| SearchJson::new(r, &gap_row(r))).collect(),
            };
            let body = if a.output.json { to_json(&report)? } else { report.to_text() };
            emit(a.output.out.as_deref(), &body)?;
            Ok(EXIT_OK)
        }
        Command::GridExport(a) => {
            let resolution = pick(config.pick(a.resolution, "resolution", 201))?;
            if resolution < 2 {
                bail!(usage("resolution must be at least 2"));
            }
            let manifest = RunManifest::new("grid-export", None).param("resolution", resolution);
            let resolution = usize::try_from(resolution).map_err(|_| usage("resolution too large"))?;
            let stats = match &a.out {
                Some(p) => {
                    let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
                    let mut w = BufWriter::new(file);
                    let stats = write_grid(&mut w, resolution, &manifest)?;
                    w.flush()?;
                    stats
                }
                None => {
                    let mut w = BufWriter::new(io::stdout().lock());
                    let stats = write_grid(&mut w, resolution, &manifest)?;
                    w.flush()?;
                    stats
                }
            };
            if a.out.is_some() {
                eprintln!("{} rows, max h = {}", stats.rows, sig17(stats.max));
            }
            Ok(EXIT_OK)
        }
    }
}
