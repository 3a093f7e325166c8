//! Command-line front end for the `etasphere` calculators.

pub mod chart;
mod commands;
pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use thiserror::Error;

pub use chart::{emit_chart, Chartable};
pub use config::{load_config, Config, ConfigError, ConfigPaths};
pub use report::{Certificate, RunReport, Timing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CERTIFICATE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "etasphere", version, about = "Calculators for η-periodic motivic stable homotopy over fields")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Field name from the catalog
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Field catalog JSON file
    #[arg(long, global = true, value_name = "PATH")]
    pub catalog: Option<PathBuf>,
    /// Classical stable stems JSON file
    #[arg(long = "stems-data", global = true, value_name = "PATH")]
    pub stems_data: Option<PathBuf>,
    /// Upper degree bound
    #[arg(long, global = true, value_name = "N")]
    pub max: Option<u32>,
    /// Weight truncation for the Steenrod models
    #[arg(long, global = true, value_name = "D")]
    pub truncation: Option<u32>,
    /// Work modulo 2^K
    #[arg(long = "modulus-bits", global = true, value_name = "K")]
    pub modulus_bits: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    /// Run the invariant suite; failures set exit code 1
    #[arg(long, global = true)]
    pub verify: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Ascii,
    AsciiChart,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Stable stems of the η-inverted sphere
    Stems,
    /// Witt ring presentation and ideal filtration
    Witt,
    /// Motivic dual Steenrod algebra
    Steenrod(SteenrodArgs),
    /// η-Bockstein pages
    Pages(PagesArgs),
    /// Normal form in the β, φ operator ring
    Operator(OperatorArgs),
    /// Hopf-invariant constants mod 8
    Hopf,
    /// Divided powers in the completed model
    Divided(DividedArgs),
    /// Ranks of η-inverted symplectic or special linear cobordism
    Cobordism(CobordismArgs),
    /// Homotopy of HW ∧ HW
    Hwhw,
    /// Run every invariant suite
    Verify,
}

#[derive(Args, Debug, Clone)]
pub struct SteenrodArgs {
    /// Motivic base (real_closed, quadratically_closed, finite_field_3mod4, finite_field_1mod4)
    #[arg(long)]
    pub base: Option<String>,
    /// Element whose coproduct and conjugate to print
    #[arg(long)]
    pub element: Option<String>,
    /// Right factor multiplied onto --element
    #[arg(long, requires = "element")]
    pub times: Option<String>,
    #[command(subcommand)]
    pub sub: Option<SteenrodSub>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum SteenrodSub {
    /// Same as the top-level `pages`
    Pages(PagesArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PagesArgs {
    #[arg(long)]
    pub base: Option<String>,
    /// sphere, hz2, hz, kgl or ko
    #[arg(long, default_value = "ko")]
    pub model: String,
    #[arg(long, default_value_t = 16)]
    pub smax: i64,
    #[arg(long, default_value_t = 6)]
    pub fmax: i64,
}

#[derive(Args, Debug, Clone)]
pub struct OperatorArgs {
    /// Sum of words in phi and beta, e.g. "phi beta beta + 2 beta"
    #[arg(long)]
    pub word: Option<String>,
    /// Print φβⁿ for this n
    #[arg(long = "phi-beta", value_name = "N")]
    pub phi_beta: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct DividedArgs {
    /// `binomial`, `trivial`, or a comma-separated list of odd units
    #[arg(long, default_value = "binomial")]
    pub units: String,
}

#[derive(Args, Debug, Clone)]
pub struct CobordismArgs {
    /// msp or msl
    #[arg(long, default_value = "msp")]
    pub theory: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl From<etasphere::kwcalc::KwError> for CliError {
    fn from(e: etasphere::kwcalc::KwError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<etasphere::witt::WittError> for CliError {
    fn from(e: etasphere::witt::WittError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<etasphere::graded::GradedError> for CliError {
    fn from(e: etasphere::graded::GradedError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<etasphere::steenrod::SteenrodError> for CliError {
    fn from(e: etasphere::steenrod::SteenrodError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// What a subcommand hands back before formatting.
pub(crate) struct Outcome {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub certificates: Vec<Certificate>,
    pub text: String,
    pub chart: Option<String>,
}

/// Parses `args` (program name first) and runs the subcommand, reading
/// `ETASPHERE_DATA_DIR` from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let paths = ConfigPaths::from_env(cli.common.catalog.clone(), cli.common.stems_data.clone());
    run_cli(&cli, &paths, out, err)
}

/// Runs an already parsed command line against explicit data paths.
pub fn run_cli(cli: &Cli, paths: &ConfigPaths, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let outcome = load_config(paths).map_err(CliError::from).and_then(|cfg| commands::dispatch(cli, &cfg));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = RunReport {
        command: outcome.name,
        inputs: outcome.inputs,
        results: outcome.results,
        certificates: outcome.certificates,
        timing: Timing { elapsed_ms: start.elapsed().as_millis() as u64 },
    };
    let written = match cli.common.format {
        Format::Json => write!(out, "{}", report.to_json()),
        Format::Ascii => {
            let mut text = outcome.text;
            for c in &report.certificates {
                text.push_str(&c.line());
                text.push('\n');
            }
            write!(out, "{text}")
        }
        Format::AsciiChart => match outcome.chart {
            Some(c) => write!(out, "{c}"),
            None => {
                let _ = writeln!(err, "error: `{}` has no chart output", report.command);
                return EXIT_USAGE;
            }
        },
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    if report.passed() {
        EXIT_OK
    } else {
        for c in report.certificates.iter().filter(|c| !c.passed) {
            let _ = writeln!(err, "{}", c.line());
        }
        EXIT_CERTIFICATE
    }
}
