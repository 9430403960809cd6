//! Command-line front end: argument parsing, exit codes and report output.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use galmeasure_core::Limits;

pub mod commands;
pub mod file;
pub mod report;

pub use file::{InputFile, ScenarioFile, TowerFile};
pub use report::ReportDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{message}")]
    Invalid { kind: &'static str, message: String },
    #[error(transparent)]
    Core(#[from] galmeasure_core::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid { kind, .. } => kind,
            CliError::Core(e) => e.kind(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource_cap() => EXIT_RESOURCE,
            _ => EXIT_VALIDATION,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Regular,
    Split,
}

#[derive(Debug, Parser)]
#[command(name = "galmeasure", version, about = "Exact tuple measures for Galois covers with constant field extensions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub max_group_order: Option<usize>,
    #[arg(long, global = true)]
    pub max_enumeration: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a scenario or tower and summarize it
    Validate(InputArgs),
    /// Measure of every target at a fixed rank
    Measure(MeasureArgs),
    /// Closed form of a target's measure as a signed power sum
    ClosedForm(TargetArgs),
    /// Sum of a target's measure over all ranks from `--start`
    OmegaSum(OmegaArgs),
    /// Limit of a target's measure as the rank grows
    Ultralimit(OptTargetArgs),
    /// Number of e-tuples generating each subgroup class
    Spectrum(RankArgs),
    /// Generating lifts through `G -> G/G0`, or through a tower's restriction
    Gaschutz(RankArgs),
    /// Lift counts of regular tuples along a tower
    VerifyRefinement(RankArgs),
    /// Measures inside a Sylow subgroup
    PropMeasure(PropArgs),
    /// Normalizer scaling factor for one target
    BijectionFactor(TargetRankArgs),
    /// Sampled estimate of one target's measure
    Montecarlo(MonteCarloArgs),
    /// List catalog entries or print one as a file
    Catalog(CatalogArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Scenario file path or `catalog:<id>`
    pub input: String,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    pub input: String,
    #[arg(long = "e")]
    pub e: usize,
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, value_enum, default_value_t = Scheme::Regular)]
    pub scheme: Scheme,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    pub input: String,
    #[arg(long)]
    pub target: String,
}

#[derive(Debug, Args)]
pub struct OmegaArgs {
    pub input: String,
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 1)]
    pub start: usize,
}

#[derive(Debug, Args)]
pub struct OptTargetArgs {
    pub input: String,
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    pub input: String,
    #[arg(long = "e")]
    pub e: usize,
}

#[derive(Debug, Args)]
pub struct PropArgs {
    pub input: String,
    #[arg(long)]
    pub prime: u64,
    #[arg(long = "e")]
    pub e: usize,
    #[arg(long)]
    pub target: Option<String>,
}

#[derive(Debug, Args)]
pub struct TargetRankArgs {
    pub input: String,
    #[arg(long)]
    pub target: String,
    #[arg(long = "e")]
    pub e: usize,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    pub input: String,
    #[arg(long)]
    pub target: String,
    #[arg(long = "e")]
    pub e: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    /// Entry id, with or without the `catalog:` prefix
    pub id: Option<String>,
    /// Print the entry as a bare scenario or tower file
    #[arg(long, requires = "id")]
    pub export: bool,
}

impl Cli {
    pub fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_group_order: self.max_group_order.unwrap_or(d.max_group_order),
            max_enumeration: self.max_enumeration.unwrap_or(d.max_enumeration),
            ..d
        }
    }
}

/// Parses `args` (program name first), runs the command and writes the
/// report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::execute(&cli) {
        Ok(commands::Output::Report(doc)) => {
            let text = match cli.format {
                Format::Json => doc.to_json(),
                Format::Table => doc.to_table(),
            };
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Ok(commands::Output::Raw(text)) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.kind());
            e.exit_code()
        }
    }
}
