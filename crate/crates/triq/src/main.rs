//! `triq` — three-qubit entanglement classification CLI.
//!
//! Exit codes: 0 success, 1 invalid input or usage, 2 numerical or
//! verification failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use triq::classify::{
    analyze, analyze_named, hamiltonian_report, table_expanded, table_one, StateReport,
    TsallisRow, DEFAULT_Q_GRID,
};
use triq::criteria::conditional_tsallis;
use triq::linalg::{partial_trace, QubitLabel};
use triq::report::{self, Format};
use triq::states::{CanonicalName, PureState3};
use triq::TriqError;

#[derive(Parser)]
#[command(
    name = "triq",
    about = "Classify three-qubit entangled states: criteria, robustness, and the canonical table",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct StateSelector {
    /// Canonical state name (GHZ+, GFR-, WRR+, WRr-, Q1+, D2-, ...).
    #[arg(long, group = "selector")]
    state: Option<String>,

    /// Eight re,im amplitude pairs in basis order |000> ... |111>.
    #[arg(long, num_args = 1.., group = "selector")]
    amplitudes: Option<Vec<String>>,

    /// File of eight re,im pairs (whitespace separated, # comments).
    #[arg(long, group = "selector")]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the four-row classification table.
    Table {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Print all eight states instead of one row per +/- class.
        #[arg(long)]
        expanded: bool,
    },
    /// Full entanglement report for one state.
    Analyze {
        #[command(flatten)]
        selector: StateSelector,
        /// Tsallis q values (repeatable); default 0.5 1 2 3.
        #[arg(long = "q")]
        q: Vec<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Conditional Tsallis entropies over a q range.
    #[command(name = "sweep-q")]
    SweepQ {
        /// Canonical state name.
        #[arg(long, group = "selector")]
        state: Option<String>,
        /// File of eight re,im pairs.
        #[arg(long, group = "selector")]
        file: Option<PathBuf>,
        #[arg(long)]
        q_min: f64,
        #[arg(long)]
        q_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Verify the Heisenberg-Hamiltonian eigenstate claim.
    Hamiltonian {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Randomized cross-criterion consistency checks.
    Fuzz {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<TriqError> for CliError {
    fn from(e: TriqError) -> CliError {
        match e {
            TriqError::InvalidInput(_) | TriqError::UnsupportedFamily(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Table { format, expanded } => {
            let reports = if expanded {
                table_expanded(&DEFAULT_Q_GRID)
            } else {
                table_one(&DEFAULT_Q_GRID)
            }?;
            print_reports(&reports, format.into());
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze {
            selector,
            q,
            format,
        } => {
            let q_grid = validate_q_grid(q)?;
            let report = match resolve_selector(&selector)? {
                Selected::Named(name) => analyze_named(name, &q_grid)?,
                Selected::State(state) => analyze(&state, &q_grid)?,
            };
            match Format::from(format) {
                Format::Text => print!("{}", report::analyze_text(&report)),
                Format::Json => println!("{}", report::report_json(&report)),
                Format::Csv => print!("{}", report::analyze_csv(&report)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SweepQ {
            state,
            file,
            q_min,
            q_max,
            steps,
            format,
        } => {
            if q_min.is_nan() || q_min <= 0.0 || q_min > q_max || steps < 1 {
                return Err(CliError::Usage(format!(
                    "need 0 < q-min <= q-max and steps >= 1 (got q-min {q_min}, q-max {q_max}, steps {steps})"
                )));
            }
            let selector = StateSelector {
                state,
                amplitudes: None,
                file,
            };
            let target = match resolve_selector(&selector)? {
                Selected::Named(name) => triq::states::canonical_state(name),
                Selected::State(state) => state,
            };
            let rows = sweep_rows(&target, q_min, q_max, steps)?;
            match Format::from(format) {
                Format::Text => print!("{}", report::sweep_text(&rows)),
                Format::Json => println!("{}", report::sweep_json(&rows)),
                Format::Csv => print!("{}", report::sweep_csv(&rows)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hamiltonian { format } => {
            let rep = hamiltonian_report()?;
            match Format::from(format) {
                Format::Text => print!("{}", report::hamiltonian_text(&rep)),
                Format::Json => println!("{}", report::hamiltonian_json(&rep)),
                Format::Csv => print!("{}", report::hamiltonian_csv(&rep)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuzz {
            count,
            seed,
            format,
        } => {
            if count == 0 {
                return Err(CliError::Usage("fuzz count must be at least 1".into()));
            }
            let summary = triq::batch::run_fuzz(count, seed)?;
            // The tau_paper/tau_ckw gap over random states is informational
            // only; report it without asserting.
            eprintln!(
                "note: max |tau_paper - tau_ckw| over {} states = {}",
                summary.count,
                report::fmt_g12(report::round_g12(summary.max_tau_gap))
            );
            match Format::from(format) {
                Format::Text => print!("{}", report::fuzz_text(&summary)),
                Format::Json => println!("{}", report::fuzz_json(&summary)),
                Format::Csv => print!("{}", report::fuzz_csv(&summary)),
            }
            if summary.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn print_reports(reports: &[StateReport], format: Format) {
    match format {
        Format::Text => print!("{}", report::table_text(reports)),
        Format::Json => println!("{}", report::reports_json(reports)),
        Format::Csv => print!("{}", report::table_csv(reports)),
    }
}

enum Selected {
    Named(CanonicalName),
    State(PureState3),
}

fn resolve_selector(selector: &StateSelector) -> Result<Selected, CliError> {
    match (&selector.state, &selector.amplitudes, &selector.file) {
        (Some(name), None, None) => {
            let name: CanonicalName = name.parse().map_err(|e: TriqError| CliError::from(e))?;
            Ok(Selected::Named(name))
        }
        (None, Some(tokens), None) => {
            let joined = tokens.join(" ");
            Ok(Selected::State(parse_amplitudes(&joined)?))
        }
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(Selected::State(parse_amplitudes(&text)?))
        }
        _ => Err(CliError::Usage(
            "select a state with exactly one of --state, --amplitudes, --file".into(),
        )),
    }
}

/// Parses eight whitespace-separated `re,im` pairs; `#` starts a comment.
/// The vector must be within 1e-6 of unit norm; it is renormalized
/// exactly, with a warning when the deviation exceeds 1e-9.
fn parse_amplitudes(text: &str) -> Result<PureState3, CliError> {
    let cleaned: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    let tokens: Vec<&str> = cleaned.split_whitespace().collect();
    if tokens.len() != 8 {
        return Err(CliError::Usage(format!(
            "expected 8 re,im amplitude pairs, got {}",
            tokens.len()
        )));
    }
    let mut amp = [Complex64::new(0.0, 0.0); 8];
    for (slot, token) in amp.iter_mut().zip(&tokens) {
        let (re, im) = token.split_once(',').ok_or_else(|| {
            CliError::Usage(format!("malformed amplitude \"{token}\" (expected re,im)"))
        })?;
        let re: f64 = re.trim().parse().map_err(|_| {
            CliError::Usage(format!("malformed real part in \"{token}\""))
        })?;
        let im: f64 = im.trim().parse().map_err(|_| {
            CliError::Usage(format!("malformed imaginary part in \"{token}\""))
        })?;
        *slot = Complex64::new(re, im);
    }
    let norm: f64 = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !norm.is_finite() || norm <= 1e-12 {
        return Err(CliError::Usage("amplitudes form the zero vector".into()));
    }
    let deviation = (norm - 1.0).abs();
    if deviation > 1e-6 {
        return Err(CliError::Usage(format!(
            "amplitudes are not normalized (|norm - 1| = {deviation:.3e} exceeds 1e-6)"
        )));
    }
    if deviation > 1e-9 {
        eprintln!("warning: renormalizing input amplitudes (|norm - 1| = {deviation:.3e})");
    }
    PureState3::normalized(amp).map_err(CliError::from)
}

fn validate_q_grid(q: Vec<f64>) -> Result<Vec<f64>, CliError> {
    if q.is_empty() {
        return Ok(DEFAULT_Q_GRID.to_vec());
    }
    if let Some(bad) = q.iter().find(|&&q| q.is_nan() || q <= 0.0) {
        return Err(CliError::Usage(format!(
            "Tsallis q must be positive, got {bad}"
        )));
    }
    Ok(q)
}

fn sweep_rows(
    state: &PureState3,
    q_min: f64,
    q_max: f64,
    steps: usize,
) -> Result<Vec<TsallisRow>, CliError> {
    let rho = state.density();
    let marginals = [
        partial_trace(&rho, QubitLabel::C).map_err(CliError::from)?,
        partial_trace(&rho, QubitLabel::B).map_err(CliError::from)?,
        partial_trace(&rho, QubitLabel::A).map_err(CliError::from)?,
    ];
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let q = if steps == 1 {
            q_min
        } else {
            q_min + (q_max - q_min) * (i as f64) / ((steps - 1) as f64)
        };
        let mut abc = [0.0; 3];
        let mut pairs = [(0.0, 0.0); 3];
        for (k, m) in marginals.iter().enumerate() {
            abc[k] = conditional_tsallis(&rho, m, q)
                .map_err(CliError::from)?
                .conditional;
            let (gx, gy) = triq::criteria::pair_conditionals(m, q).map_err(CliError::from)?;
            pairs[k] = (gx.conditional, gy.conditional);
        }
        rows.push(TsallisRow {
            q,
            conditional_abc: abc,
            conditional_pairs: pairs,
        });
    }
    Ok(rows)
}
