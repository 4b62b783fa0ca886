use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use super::files::{read_mechanism, read_prior, read_structure, write_mechanism, write_structure};
use super::format::to_json_string;
use super::sweep::{parse_grid, run_sweep, write_sweep_csv};
use crate::analysis::{check_ip_with_slack, check_regions_with_slack, expected_utility, utility_gain, UtilityFn};
use crate::binary::solve_binary;
use crate::error::{Error, Result};
use crate::general::{solve_general_with, GeneralOptions, DEFAULT_MAX_SECRETS};
use crate::model::{sample_signal, InfoStructure};
use crate::oracle::{binary_grid_oracle, random_structure_oracle};
use crate::CHECK_SLACK;

/// Environment variable overriding the verification slack.
pub const TOLERANCE_ENV: &str = "IPD_TOLERANCE";

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    VerificationFailed = 1,
    InputError = 2,
    SizeCap = 3,
}

#[derive(Debug, Parser)]
#[command(name = "ipd", version, about = "Optimal information disclosure under inferential privacy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    /// Lattice over the binary feasible region.
    Grid,
    /// Random private structures.
    Random,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form optimum for a binary secret.
    Solve {
        #[arg(long)]
        prior: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        out_structure: Option<PathBuf>,
        #[arg(long)]
        out_mechanism: Option<PathBuf>,
    },
    /// Utility-specific optimum for any number of secrets.
    SolveGeneral {
        #[arg(long)]
        prior: PathBuf,
        #[arg(long)]
        eps: f64,
        /// abs | quadratic | negentropy | rewards:<path>
        #[arg(long, default_value = "abs")]
        utility: String,
        #[arg(long)]
        out_structure: Option<PathBuf>,
        #[arg(long)]
        out_mechanism: Option<PathBuf>,
        /// Raise the refusal threshold on the number of secrets.
        #[arg(long)]
        max_secrets: Option<usize>,
        /// Write one JSON line per assignment to this file.
        #[arg(long)]
        diagnostics: Option<PathBuf>,
    },
    /// Check inferential privacy and the shape of a structure.
    Verify {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        eps: f64,
    },
    /// Expected utility of a structure, or the optimal gain for a prior.
    Utility {
        #[arg(long, default_value = "abs")]
        utility: String,
        #[arg(long, conflicts_with_all = ["prior", "eps"], required_unless_present = "prior")]
        structure: Option<PathBuf>,
        #[arg(long, requires = "eps")]
        prior: Option<PathBuf>,
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Privacy-utility trade-off over an ε grid, as CSV.
    Sweep {
        #[arg(long)]
        prior: PathBuf,
        /// start:stop:step, inclusive
        #[arg(long)]
        eps: String,
        /// Comma-separated utility specifications.
        #[arg(long, default_value = "abs,quadratic,negentropy")]
        utility: String,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw signals from a mechanism for a given secret and state.
    Sample {
        #[arg(long)]
        mechanism: PathBuf,
        #[arg(long)]
        secret: String,
        #[arg(long)]
        y: u8,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Challenge the solver with brute-force candidates.
    Oracle {
        #[arg(long)]
        prior: PathBuf,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value = "abs")]
        utility: String,
        #[arg(long, value_enum, default_value = "random")]
        kind: OracleKind,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Defaults to 3n + 1.
        #[arg(long)]
        max_signals: Option<usize>,
        /// Required for the random oracle.
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Parses arguments, runs the command and returns the exit code. Errors are
/// reported on standard error as `{"error": code, "message": text}`.
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
    match execute(&cli.command) {
        Ok(code) => code as i32,
        Err(err) => {
            let mut message = err.to_string();
            if matches!(err, Error::NotBinarySecret(_)) {
                message.push_str("; use solve-general");
            }
            let report = json!({ "error": err.code(), "message": message });
            eprintln!("{report}");
            match err {
                Error::TooManySecrets { .. } => Exit::SizeCap as i32,
                _ => Exit::InputError as i32,
            }
        }
    }
}

/// Verification slack, from the environment when set.
pub fn check_slack() -> Result<f64> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(x) if x.is_finite() && x >= 0.0 => Ok(x),
            _ => Err(Error::Parse(format!("{TOLERANCE_ENV}={v:?} is not a non-negative number"))),
        },
        Err(_) => Ok(CHECK_SLACK),
    }
}

pub fn execute(command: &Command) -> Result<Exit> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Solve { prior, eps, out_structure, out_mechanism } => {
            cmd_solve(prior, *eps, out_structure.as_deref(), out_mechanism.as_deref(), &mut out)
        }
        Command::SolveGeneral { prior, eps, utility, out_structure, out_mechanism, max_secrets, diagnostics } => {
            let opts = GeneralOptions {
                max_secrets: max_secrets.unwrap_or(DEFAULT_MAX_SECRETS),
                max_columns_per_i: None,
                diagnostics: diagnostics.is_some(),
            };
            cmd_solve_general(
                prior,
                *eps,
                utility,
                out_structure.as_deref(),
                out_mechanism.as_deref(),
                &opts,
                diagnostics.as_deref(),
                &mut out,
            )
        }
        Command::Verify { structure, eps } => cmd_verify(structure, *eps, &mut out),
        Command::Utility { utility, structure, prior, eps } => {
            cmd_utility(utility, structure.as_deref(), prior.as_deref(), *eps, &mut out)
        }
        Command::Sweep { prior, eps, utility, out: path } => cmd_sweep(prior, eps, utility, path.as_deref(), &mut out),
        Command::Sample { mechanism, secret, y, count, seed } => {
            cmd_sample(mechanism, secret, *y, *count, *seed, &mut out)
        }
        Command::Oracle { prior, eps, utility, kind, grid, trials, max_signals, seed } => {
            let prior = read_prior(prior)?;
            let u = UtilityFn::parse_spec(utility)?;
            let report = match kind {
                OracleKind::Grid => binary_grid_oracle(&prior, *eps, &u, *grid)?,
                OracleKind::Random => {
                    let seed = seed.ok_or_else(|| Error::Parse("--seed is required for the random oracle".into()))?;
                    let max_signals = max_signals.unwrap_or(3 * prior.len() + 1);
                    random_structure_oracle(&prior, *eps, &u, *trials, max_signals, seed)?
                }
            };
            out.write_all(to_json_string(&report)?.as_bytes())?;
            Ok(if report.solver_wins(CHECK_SLACK) { Exit::Ok } else { Exit::VerificationFailed })
        }
    }
}

fn signal_table(st: &InfoStructure) -> serde_json::Value {
    let rows: Vec<_> = (0..st.num_signals())
        .map(|t| json!({ "label": st.signals()[t], "mass": st.signal_mass(t), "posterior": st.signal_posterior(t) }))
        .collect();
    serde_json::Value::Array(rows)
}

pub fn cmd_solve(
    prior: &Path,
    eps: f64,
    out_structure: Option<&Path>,
    out_mechanism: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Exit> {
    let prior = read_prior(prior)?;
    let sol = solve_binary(&prior, eps)?;
    if let Some(path) = out_structure {
        write_structure(path, &sol.structure)?;
    }
    if let Some(path) = out_mechanism {
        write_mechanism(path, &sol.mechanism)?;
    }
    let summary = json!({
        "regime": sol.regime.tag.label(),
        "r1": sol.regime.r1,
        "r2": sol.regime.r2,
        "signals": signal_table(&sol.structure),
    });
    out.write_all(to_json_string(&summary)?.as_bytes())?;
    Ok(Exit::Ok)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_solve_general(
    prior: &Path,
    eps: f64,
    utility: &str,
    out_structure: Option<&Path>,
    out_mechanism: Option<&Path>,
    opts: &GeneralOptions,
    diagnostics: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Exit> {
    let prior = read_prior(prior)?;
    let u = UtilityFn::parse_spec(utility)?;
    let sol = solve_general_with(&prior, eps, &u, opts)?;
    if let Some(path) = out_structure {
        write_structure(path, &sol.structure)?;
    }
    if let Some(path) = out_mechanism {
        write_mechanism(path, &sol.mechanism)?;
    }
    if let Some(path) = diagnostics {
        let mut lines = String::new();
        for record in &sol.diagnostics {
            lines.push_str(&serde_json::to_string(record)?);
            lines.push('\n');
        }
        std::fs::write(path, lines)?;
    }
    let summary = json!({
        "utility": sol.utility,
        "assignment": sol.assignment.to_string(),
        "signals": signal_table(&sol.structure),
    });
    out.write_all(to_json_string(&summary)?.as_bytes())?;
    Ok(Exit::Ok)
}

pub fn cmd_verify(structure: &Path, eps: f64, out: &mut dyn Write) -> Result<Exit> {
    if !eps.is_finite() || eps < 0.0 {
        return Err(Error::InvalidEpsilon(eps));
    }
    let slack = check_slack()?;
    let st = read_structure(structure)?;
    let ip = check_ip_with_slack(&st, eps, slack);
    let regions = check_regions_with_slack(&st, eps, slack);
    let report = json!({ "ip": ip, "regions": regions });
    out.write_all(to_json_string(&report)?.as_bytes())?;
    Ok(if ip.satisfied { Exit::Ok } else { Exit::VerificationFailed })
}

pub fn cmd_utility(
    utility: &str,
    structure: Option<&Path>,
    prior: Option<&Path>,
    eps: Option<f64>,
    out: &mut dyn Write,
) -> Result<Exit> {
    let u = UtilityFn::parse_spec(utility)?;
    let value = match (structure, prior, eps) {
        (Some(path), _, _) => {
            let st = read_structure(path)?;
            json!({ "utility_family": u.label(), "utility": expected_utility(&st, &u) })
        }
        (None, Some(path), Some(eps)) => serde_json::to_value(utility_gain(&read_prior(path)?, eps, &u)?)?,
        _ => return Err(Error::Parse("give --structure, or --prior with --eps".into())),
    };
    out.write_all(to_json_string(&value)?.as_bytes())?;
    Ok(Exit::Ok)
}

pub fn cmd_sweep(prior: &Path, grid: &str, utilities: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<Exit> {
    let grid = parse_grid(grid)?;
    let prior = read_prior(prior)?;
    let families = utilities.split(',').map(UtilityFn::parse_spec).collect::<Result<Vec<_>>>()?;
    let rows = run_sweep(&prior, &grid, &families)?;
    match path {
        Some(path) => write_sweep_csv(std::fs::File::create(path)?, &rows)?,
        None => write_sweep_csv(out, &rows)?,
    }
    Ok(Exit::Ok)
}

pub fn cmd_sample(mechanism: &Path, secret: &str, y: u8, count: usize, seed: u64, out: &mut dyn Write) -> Result<Exit> {
    let mech = read_mechanism(mechanism)?;
    let s = mech.prior().secret_index(secret).ok_or_else(|| Error::UnknownSecret(secret.to_string()))?;
    let draws = sample_signal(&mech, s, y, seed, count)?;
    let mut text = String::with_capacity(draws.len() * 4);
    for t in draws {
        text.push_str(&mech.signals()[t]);
        text.push('\n');
    }
    out.write_all(text.as_bytes())?;
    Ok(Exit::Ok)
}
