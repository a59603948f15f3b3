//! `skewgeo`: build the three constructions, certify them, and print the
//! branching summary of the exterior-cube representation.

mod summary;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use skewgeo_core::certify::{run_many, CertificationReport, CertifyConfig, ConstructionId, Perturbation, PerturbationKind, Tolerances};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "skewgeo", version, about = "Skew totally geodesic embeddings: constructions and certification reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

/// Options shared by every command. Each one can also be set through the
/// matching `SKEWGEO_*` environment variable; the flag wins.
#[derive(Debug, Args)]
struct Common {
    /// Override every residual tolerance with one value.
    #[arg(long, global = true, env = "SKEWGEO_TOL")]
    tol: Option<f64>,

    /// Angle census size and geodesic grid length.
    #[arg(long, global = true, env = "SKEWGEO_SAMPLES", default_value_t = 100)]
    samples: usize,

    /// Number of geodesic directions per construction.
    #[arg(long, global = true, env = "SKEWGEO_DIRECTIONS", default_value_t = 10)]
    directions: usize,

    #[arg(long, global = true, env = "SKEWGEO_SEED", default_value_t = 7)]
    seed: u64,

    #[arg(long, global = true, env = "SKEWGEO_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true, env = "SKEWGEO_OUT")]
    out: Option<PathBuf>,

    /// Inject a structured defect before certifying (negative control).
    #[arg(long, global = true, env = "SKEWGEO_PERTURB", value_parser = parse_perturbation)]
    perturb: Option<PerturbationKind>,

    /// Relative size of the injected defect.
    #[arg(long, global = true, env = "SKEWGEO_PERTURB_SIZE", default_value_t = 1e-3)]
    perturb_size: f64,

    #[arg(long, global = true, env = "SKEWGEO_PERTURB_SEED", default_value_t = 11)]
    perturb_seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the base point, tangent space and representation of a construction.
    Construct {
        #[arg(value_parser = parse_id)]
        id: ConstructionId,
    },
    /// Run the certification checks; exit 1 if any check fails.
    Certify {
        /// A construction id or `all`.
        #[arg(value_parser = parse_target)]
        target: Target,
    },
    /// Restrict the Sp(3) representation to SU(3) and SO(3) and compare with
    /// the Cartan representations.
    Branch,
}

#[derive(Clone, Debug)]
enum Target {
    One(ConstructionId),
    All,
}

impl Target {
    fn ids(&self) -> Vec<ConstructionId> {
        match self {
            Target::One(id) => vec![*id],
            Target::All => ConstructionId::ALL.to_vec(),
        }
    }
}

fn parse_id(s: &str) -> Result<ConstructionId, String> {
    s.parse().map_err(|e: skewgeo_core::Error| e.to_string())
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s == "all" {
        Ok(Target::All)
    } else {
        parse_id(s).map(Target::One)
    }
}

fn parse_perturbation(s: &str) -> Result<PerturbationKind, String> {
    s.parse().map_err(|e: skewgeo_core::Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] skewgeo_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Output { .. } => EXIT_USAGE,
            CliError::Core(skewgeo_core::Error::Usage(_)) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

impl Common {
    fn config(&self) -> Result<CertifyConfig, CliError> {
        let mut config = CertifyConfig { seed: self.seed, ..CertifyConfig::default() };
        if self.samples == 0 {
            return Err(CliError::Usage("--samples must be at least 1".into()));
        }
        config.samples = self.samples;
        config.directions = self.directions;
        if let Some(tol) = self.tol {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
            }
            config.tolerances = Tolerances::uniform(tol);
        }
        if let Some(kind) = self.perturb {
            if !(self.perturb_size > 0.0 && self.perturb_size.is_finite()) {
                return Err(CliError::Usage(format!("--perturb-size must be positive, got {}", self.perturb_size)));
            }
            config.perturbation = Some(Perturbation { kind, size: self.perturb_size, seed: self.perturb_seed });
        }
        Ok(config)
    }

    fn emit(&self, body: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => fs::write(path, body).map_err(|source| CliError::Output { path: path.clone(), source }),
            None => {
                let mut stdout = std::io::stdout().lock();
                // A closed pipe is not worth reporting.
                let _ = stdout.write_all(body.as_bytes());
                Ok(())
            }
        }
    }
}

fn certify(common: &Common, target: &Target) -> Result<u8, CliError> {
    let config = common.config()?;
    let reports = run_many(&target.ids(), &config);
    let body = match common.format {
        Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
        Format::Text => reports.iter().map(CertificationReport::to_text).collect::<Vec<_>>().join("\n"),
    };
    common.emit(&body)?;
    Ok(if reports.iter().all(|r| r.pass) { EXIT_PASS } else { EXIT_FAIL })
}

fn construct(common: &Common, id: ConstructionId) -> Result<u8, CliError> {
    let config = common.config()?;
    let s = summary::ConstructionSummary::build(id, config.perturbation)?;
    let body = match common.format {
        Format::Json => serde_json::to_string_pretty(&s).expect("summary serializes") + "\n",
        Format::Text => s.to_text(),
    };
    common.emit(&body)?;
    Ok(EXIT_PASS)
}

fn branch(common: &Common) -> Result<u8, CliError> {
    let config = common.config()?;
    let s = summary::BranchOutput::build(&config)?;
    let body = match common.format {
        Format::Json => serde_json::to_string_pretty(&s).expect("summary serializes") + "\n",
        Format::Text => s.to_text(),
    };
    common.emit(&body)?;
    Ok(if s.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Construct { id } => construct(&cli.common, *id),
        Command::Certify { target } => certify(&cli.common, target),
        Command::Branch => branch(&cli.common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("skewgeo: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
