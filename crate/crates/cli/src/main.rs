//! `hurwicz`: command-line front end.
//!
//! λ is the pessimism weight: λ = 1 ranks strategies by their worst outcome,
//! λ = 0 by their best. Ties go to the lowest strategy index.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use hurwicz_profile::io::{parse_log, parse_matrix, parse_tree, render_matrix, serialize_log};
use hurwicz_profile::render::{render_inference, render_profile, render_regions, render_sweep};
use hurwicz_profile::repro::reproduce;
use hurwicz_profile::{
    estimate_lambda, fixtures, normalize, simulate, strategy_regions, sweep, Behavior,
    EstimateMode, ExactMatrix, ExactTree, Identifiability, Rational, RiskParameter, RunConfig,
    Scalar, Strategy, TieBreak, DEFAULT_STRATEGY_CAP,
};

const EXIT_INPUT: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

fn rational(text: &str) -> Result<Rational, String> {
    Rational::parse_literal(text)
        .ok_or_else(|| format!("`{text}` is not a rational (use 3, 0.3 or 3/10)"))
}

#[derive(Parser)]
#[command(
    name = "hurwicz",
    version,
    about = "Hurwicz-criterion analysis of two-stage decision trees",
    long_about = "Normalizes two-stage decision trees, sweeps the Hurwicz criterion \
                  L = λ·min + (1 − λ)·max over λ ∈ [0, 1], simulates decision takers and \
                  estimates λ from observation logs.\n\n\
                  Convention: λ = 1 is extreme pessimism (maximin), λ = 0 extreme optimism \
                  (maximax). Ties are resolved to the lowest strategy index."
)]
struct Cli {
    /// Maximum number of pure strategies to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_STRATEGY_CAP)]
    cap: usize,

    /// Decimal places in display tables.
    #[arg(long, global = true, default_value_t = 1)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Decision tree document (JSON).
    #[arg(long)]
    tree: Option<PathBuf>,

    /// Payoff matrix file (CSV).
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the normalized payoff matrix of a tree.
    Normalize {
        /// Decision tree document (JSON).
        #[arg(long)]
        tree: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate criterion values over a λ grid.
    Sweep {
        #[command(flatten)]
        source: Source,
        /// λ grid step.
        #[arg(long, value_parser = rational, default_value = "1/10")]
        step: Rational,
    },
    /// Exact λ intervals on which each strategy is optimal.
    Regions {
        #[command(flatten)]
        source: Source,
    },
    /// Generate an observation log.
    Simulate {
        /// Decision tree document (JSON).
        #[arg(long)]
        tree: PathBuf,
        /// Pessimism weight of the simulated decision taker.
        #[arg(long, value_parser = rational, conflicts_with = "strategy", required_unless_present = "strategy")]
        lambda: Option<Rational>,
        /// Alternative labels per decision state, e.g. 010.
        #[arg(long)]
        strategy: Option<String>,
        /// Number of records.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate λ from an observation log.
    Estimate {
        /// Decision tree document (JSON).
        #[arg(long)]
        tree: PathBuf,
        /// Observation log (CSV).
        #[arg(long)]
        log: PathBuf,
        /// Exact intervals instead of grid points.
        #[arg(long, conflicts_with = "step")]
        exact: bool,
        /// λ grid step [default: 1/10].
        #[arg(long, value_parser = rational)]
        step: Option<Rational>,
        /// Exit with status 2 when no λ rationalizes the observed strategy.
        #[arg(long)]
        strict: bool,
    },
    /// Reproduce the embedded rescue-robot example and check it.
    ReproPaper {
        /// λ grid step.
        #[arg(long, value_parser = rational, default_value = "1/10")]
        step: Rational,
        /// Substitute tree (for checking the diff path).
        #[arg(long, hide = true)]
        tree: Option<PathBuf>,
        #[arg(long, hide = true)]
        log: Option<PathBuf>,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_tree(path: &Path) -> anyhow::Result<ExactTree> {
    parse_tree(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_matrix(source: &Source, cap: usize) -> anyhow::Result<ExactMatrix> {
    match (&source.tree, &source.matrix) {
        (Some(tree), _) => Ok(normalize(&load_tree(tree)?, cap)?),
        (None, Some(matrix)) => {
            parse_matrix(&read(matrix)?).with_context(|| format!("in {}", matrix.display()))
        }
        (None, None) => bail!("one of --tree or --matrix is required"),
    }
}

fn emit(text: &str, out: Option<&Path>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let config = RunConfig::<Rational> {
        strategy_cap: cli.cap,
        precision: cli.precision,
        tie_break: TieBreak::LowestIndex,
        ..RunConfig::default()
    };
    config.validate()?;
    let cap = config.strategy_cap;

    match cli.command {
        Command::Normalize { tree, out } => {
            let matrix = normalize(&load_tree(&tree)?, cap)?;
            emit(&render_matrix(&matrix, None), out.as_deref())?;
        }
        Command::Sweep { source, step } => {
            let table = sweep(&load_matrix(&source, cap)?, &step)?;
            print!("{}", render_sweep(&table, config.precision));
        }
        Command::Regions { source } => {
            let matrix = load_matrix(&source, cap)?;
            print!(
                "{}",
                render_regions(&strategy_regions(&matrix)?, &matrix.row_labels)
            );
        }
        Command::Simulate {
            tree,
            lambda,
            strategy,
            n,
            seed,
            out,
        } => {
            let tree = load_tree(&tree)?;
            let behavior = match (lambda, strategy) {
                (Some(l), _) => Behavior::Lambda(RiskParameter::new(l)?),
                (None, Some(s)) => Behavior::Strategy(Strategy::parse(&s, &tree)?),
                (None, None) => bail!("one of --lambda or --strategy is required"),
            };
            let log = simulate(&tree, &behavior, n, seed, cap)?;
            emit(&serialize_log(&log, Some(&tree)), out.as_deref())?;
        }
        Command::Estimate {
            tree,
            log,
            exact,
            step,
            strict,
        } => {
            let tree = load_tree(&tree)?;
            let log = parse_log(&read(&log)?, Some(&tree))
                .with_context(|| format!("in {}", log.display()))?;
            let mode = match (exact, step) {
                (true, _) => EstimateMode::Exact,
                (false, Some(step)) => EstimateMode::Grid(step),
                (false, None) => EstimateMode::Grid(config.step.clone()),
            };
            let (inference, profile) = estimate_lambda(&log, &tree, &mode, cap)?;
            let matrix = normalize(&tree, cap)?;
            let alternatives: Vec<Vec<String>> = tree
                .decision_states()
                .map(|s| s.alternatives.clone())
                .collect();
            print!("{}", render_inference(&inference, &alternatives));
            print!("{}", render_profile(&profile, &matrix.row_labels));
            if strict && profile.status == Identifiability::NonRationalizable {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::ReproPaper { step, tree, log } => {
            let tree = match tree {
                Some(path) => load_tree(&path)?,
                None => fixtures::rescue_fixture(),
            };
            let log = match log {
                Some(path) => parse_log(&read(&path)?, None)?,
                None => fixtures::sample_log_fixture(),
            };
            let outcome = reproduce(&tree, &log, &step)?;
            print!("{}", outcome.report);
            if !outcome.passed() {
                return Ok(EXIT_MISMATCH);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
