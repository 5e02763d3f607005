//! Argument parsing and dispatch.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::{run_suite, SuiteConfig, DEFAULT_TRIALS};
use crate::commands::{self, GenKind, Outcome};
use crate::formats::write_text;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "qframe", version, about = "Quaternionic frame toolkit")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance applied to every check of `check`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file for the frame, vector, operator or report a command produces.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Generic,
    Parseval,
    WithOperator,
}

impl From<Kind> for GenKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Generic => GenKind::Generic,
            Kind::Parseval => GenKind::Parseval,
            Kind::WithOperator => GenKind::WithOperator,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random frame of m vectors in H^n.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Kind::Generic)]
        kind: Kind,
        /// Operator file for `--kind with-operator`.
        #[arg(long)]
        operator: Option<PathBuf>,
    },
    /// Status, optimal bounds, spectrum and identity residuals of a frame.
    Info { frame: PathBuf },
    /// Canonical dual frame.
    Dual { frame: PathBuf },
    /// Parseval normalization of a frame.
    Parseval { frame: PathBuf },
    /// Frame coefficients of a vector.
    Coeffs { frame: PathBuf, vector: PathBuf },
    /// Synthesize a vector from coefficients.
    Reconstruct { frame: PathBuf, coeffs: PathBuf },
    /// Image of a frame under an operator.
    Map { operator: PathBuf, frame: PathBuf },
    /// Decide whether two frames are equivalent.
    Equiv { first: PathBuf, second: PathBuf },
    /// Run the numerical theorem-check suite.
    Check {
        /// Comma-separated sizes `NxM`.
        #[arg(long, value_delimiter = ',', value_parser = parse_size)]
        sizes: Option<Vec<(usize, usize)>>,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
    },
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (n, m) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got {s:?}"))?;
    let n: usize = n.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    let m: usize = m.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if n == 0 || m < n {
        return Err(format!("{s:?}: need 1 <= n <= m"));
    }
    Ok((n, m))
}

/// Runs one command and returns the process exit code. Input problems come
/// back as `Err`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<u8> {
    if let Some(t) = cli.tol {
        if t.is_nan() || t < 0.0 {
            bail!("--tol must be a non-negative number, got {t}");
        }
    }
    let outcome = match &cli.command {
        Command::Gen {
            n,
            m,
            kind,
            operator,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let outcome = commands::gen(&mut rng, *n, *m, (*kind).into(), operator.as_deref())?;
            return emit_artifact_only(cli, &outcome, stdout);
        }
        Command::Info { frame } => commands::info(frame)?,
        Command::Dual { frame } => commands::dual(frame)?,
        Command::Parseval { frame } => commands::parseval(frame)?,
        Command::Coeffs { frame, vector } => commands::coeffs(frame, vector)?,
        Command::Reconstruct { frame, coeffs } => commands::reconstruct(frame, coeffs)?,
        Command::Map { operator, frame } => commands::map(operator, frame)?,
        Command::Equiv { first, second } => commands::equiv(first, second)?,
        Command::Check { sizes, trials } => return run_check(cli, sizes.clone(), *trials, stdout),
    };
    if let (Some(path), Some(text)) = (&cli.out, &outcome.artifact) {
        write_text(path, text)?;
    }
    let text = if cli.json {
        &outcome.json
    } else {
        &outcome.table
    };
    stdout
        .write_all(text.as_bytes())
        .context("writing to stdout")?;
    Ok(EXIT_OK)
}

fn emit_artifact_only(cli: &Cli, outcome: &Outcome, stdout: &mut dyn Write) -> Result<u8> {
    let text = outcome.artifact.as_deref().unwrap_or_default();
    match &cli.out {
        Some(path) => write_text(path, text)?,
        None => stdout
            .write_all(text.as_bytes())
            .context("writing to stdout")?,
    }
    Ok(EXIT_OK)
}

fn run_check(
    cli: &Cli,
    sizes: Option<Vec<(usize, usize)>>,
    trials: usize,
    stdout: &mut dyn Write,
) -> Result<u8> {
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    let mut config = SuiteConfig::new(cli.seed);
    if let Some(sizes) = sizes {
        config.sizes = sizes;
    }
    config.trials = trials;
    config.tolerance = cli.tol;
    let report = run_suite(&config);
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    if let Some(path) = &cli.out {
        write_text(path, &json)?;
    }
    if cli.json {
        stdout.write_all(json.as_bytes())?;
    } else {
        let mut table = String::new();
        for c in &report.checks {
            table.push_str(&format!(
                "{} {:<42} {:>10.3e} <= {:.0e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tolerance
            ));
            if let Some(e) = &c.error {
                table.push_str(&format!("     {e}\n"));
            }
        }
        let failed = report.checks.iter().filter(|c| !c.passed).count();
        table.push_str(&format!(
            "{} of {} checks passed (seed {})\n",
            report.checks.len() - failed,
            report.checks.len(),
            report.seed
        ));
        stdout.write_all(table.as_bytes())?;
    }
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
