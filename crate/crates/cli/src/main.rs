mod params;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use sparseapprox::arith::parse_int_list;
use sparseapprox::instances::{Family, InstanceSpec};
use sparseapprox::lattice_approx::{approximate_lattice, SparseSolution};
use sparseapprox::semigroup_approx::{approximate_k2, approximate_semigroup, approximate_spanning};
use sparseapprox::{Budget, Error};

use params::{parse_family, SweepArgs};

pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INFEASIBLE: u8 = 4;

#[derive(Parser)]
#[command(name = "sparseapprox", version, about = "Sparse integer approximation of b = Ax")]
struct Cli {
    /// Enumeration limit applied to subsets, targets and search nodes.
    #[arg(long, global = true, env = "SPARSEAPPROX_BUDGET")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a sparse approximation for one target and print it as JSON.
    Approximate(ApproximateArgs),
    /// Run the oracles on a sweep of instances and report bound checks.
    Verify(VerifyArgs),
    /// Write an instance file for a named family.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Lattice,
    Semigroup,
    Spanning,
    K2,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ApproximateArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Target as comma-separated integers. Defaults to `A·witness`, then to
    /// the target stored in the instance.
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// Non-negative representation of the target, comma separated.
    #[arg(long)]
    witness: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance files to include in the sweep.
    #[arg(long)]
    instance: Vec<PathBuf>,
    /// Family to sweep over the parameter lists below.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_parser = parse_family)]
    family: Family,
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure carrying its process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NotInLattice | Error::NoWitness => EXIT_INFEASIBLE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn budget(limit: Option<u64>) -> Budget {
    limit.map_or_else(Budget::default, Budget::uniform)
}

pub fn read_instance(path: &PathBuf) -> Result<InstanceSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(InstanceSpec::from_json(&text)?)
}

pub fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn approximate(args: &ApproximateArgs, budget: &Budget) -> Result<(), Failure> {
    let spec = read_instance(&args.instance)?;
    let a = &spec.matrix;
    let witness = args.witness.as_deref().map(parse_int_list).transpose()?;
    let b: Vec<BigInt> = match (&args.b, &witness, &spec.target) {
        (Some(b), _, _) => parse_int_list(b)?,
        (None, Some(w), _) => a.mul_vec(w)?,
        (None, None, Some(t)) => t.clone(),
        (None, None, None) => return Err(Failure::usage("no target: pass --b or --witness")),
    };
    let witness = witness.or_else(|| if args.b.is_none() { spec.witness.clone() } else { None });
    let sol: SparseSolution = match args.mode {
        Mode::Lattice => approximate_lattice(a, &b, args.k, budget)?,
        Mode::Spanning => approximate_spanning(a, &b, args.k, budget)?,
        Mode::Semigroup => approximate_semigroup(&spec.semigroup()?, &b, witness.as_deref(), args.k, budget)?,
        Mode::K2 => {
            if args.k != 2 {
                return Err(Failure::usage("mode k2 requires --k 2"));
            }
            let gens = spec.generators()?;
            let b = b.first().filter(|_| b.len() == 1).ok_or_else(|| Failure::usage("k2 needs a scalar target"))?;
            approximate_k2(&gens, b, witness.as_deref(), budget)?
        }
    };
    if !sol.verify(a, &b)? {
        return Err(Failure {
            code: EXIT_VIOLATION,
            message: "self-check failed: recomputed error differs".into(),
        });
    }
    let mut text = serde_json::to_string_pretty(&sol).expect("solutions serialize");
    text.push('\n');
    emit(&args.out, &text)
}

fn generate(args: &GenerateArgs, budget: &Budget) -> Result<(), Failure> {
    let specs = args.sweep.instances(args.family, budget)?;
    let [(_, spec)] = specs.as_slice() else {
        return Err(Failure::usage(format!(
            "parameters describe {} instances; generate writes exactly one",
            specs.len()
        )));
    };
    let mut text = spec.to_json();
    text.push('\n');
    emit(&args.out, &text)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let budget = budget(cli.budget);
    match cli.command {
        Command::Approximate(args) => approximate(&args, &budget).map(|_| 0),
        Command::Verify(args) => {
            let mut instances = Vec::new();
            for path in &args.instance {
                let id = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into());
                instances.push((id, read_instance(path)?));
            }
            if let Some(family) = args.family {
                instances.extend(args.sweep.instances(family, &budget)?);
            }
            let report = verify::run(&instances, &args.sweep.k_filter()?, &budget)?;
            emit(&args.out, &report.render(args.format))?;
            Ok(if report.has_violation() { EXIT_VIOLATION } else { 0 })
        }
        Command::Generate(args) => generate(&args, &budget).map(|_| 0),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
