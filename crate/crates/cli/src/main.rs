mod commands;
mod error;
mod problem;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use radx_core::radial::DeltaSign;
use serde_json::Value;

use commands::{Options, Outcome, Request};
use error::CliError;
use problem::ProblemFile;

/// Local indices of vector fields and radial indices of 1-forms at the origin.
#[derive(Parser, Debug)]
#[command(name = "radx", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poincare-Hopf index of a raw field, or of V(alpha) for a corner problem.
    PhIndex(Common),
    /// Radial index on a corner, hypersurface or curve.
    Radial(Common),
    /// Euler characteristics of Milnor fibres, half-spaces and level slices.
    Euler(Common),
    /// Independent numerical oracles.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Certified topological degree on a small sphere.
    Degree(Common),
    /// Half-branches of a curve on a small sphere.
    Branches(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file, or a JSON record written by --json (its request is replayed).
    file: PathBuf,
    /// ph-index: elk|numeric|both; radial, euler: auto|exact|numeric;
    /// oracle degree: auto|winding|kronecker-integral|preimage-count.
    #[arg(long)]
    method: Option<String>,
    /// Sphere radius for the numerical engines.
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Rounding tolerance for numerical degrees.
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Print the result record as JSON.
    #[arg(long)]
    json: bool,
    /// Every sign vector epsilon instead of those in the file.
    #[arg(long)]
    all_epsilon: bool,
    #[arg(long, allow_hyphen_values = true)]
    delta_sign: Option<DeltaSign>,
}

fn load(c: &Common) -> Result<Request, CliError> {
    let text = std::fs::read_to_string(&c.file).map_err(|e| CliError::Usage(format!("{}: {e}", c.file.display())))?;
    let json: Value = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", c.file.display())))?;
    let bad = |e: serde_json::Error| CliError::Usage(format!("{}: {e}", c.file.display()));
    let (problem, mut options) = match json.get("request") {
        Some(req) => {
            let r: Request = serde_json::from_value(req.clone()).map_err(bad)?;
            (r.problem, r.options)
        }
        None => (serde_json::from_value::<ProblemFile>(json).map_err(bad)?, Options::default()),
    };
    if c.method.is_some() {
        options.method = c.method.clone();
    }
    if let Some(r) = c.radius {
        options.radius = r;
    }
    if let Some(s) = c.seed {
        options.seed = s;
    }
    if let Some(t) = c.tol {
        options.tol = t;
    }
    options.all_epsilon |= c.all_epsilon;
    if c.delta_sign.is_some() {
        options.delta_sign = c.delta_sign;
    }
    Ok(Request { problem, options })
}

fn run(cli: Cli) -> Result<(Outcome, bool), CliError> {
    let (c, op): (&Common, fn(&Request, &problem::Problem) -> Result<Outcome, CliError>) = match &cli.command {
        Command::PhIndex(c) => (c, commands::ph_index),
        Command::Radial(c) => (c, commands::radial),
        Command::Euler(c) => (c, commands::euler),
        Command::Oracle { which: OracleCommand::Degree(c) } => (c, commands::oracle_degree),
        Command::Oracle { which: OracleCommand::Branches(c) } => (c, commands::oracle_branches),
    };
    if let Some(t) = c.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
    }
    let mut request = load(c)?;
    if matches!(cli.command, Command::Euler(_)) {
        request.options.delta_sign.get_or_insert(DeltaSign::Positive);
    } else if request.options.delta_sign.is_some() {
        return Err(CliError::Usage("--delta-sign applies to euler only".into()));
    }
    let problem = request.problem.validate()?;
    Ok((op(&request, &problem)?, c.json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, json)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&outcome.record).expect("records serialize"));
            } else {
                print!("{}", render::text(&outcome.record));
            }
            match outcome.failure {
                None => ExitCode::SUCCESS,
                Some(e) => {
                    eprintln!("radx: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
            }
        }
        Err(e) => {
            eprintln!("radx: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
