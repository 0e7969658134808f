use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use dighom::FieldSpec;

mod commands;
mod report;

/// Path homology and directed flag homology of digraphs and MLP graphs.
#[derive(Parser, Debug)]
#[command(name = "dighom", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// MLP graph utilities.
    Mlp {
        #[command(subcommand)]
        action: MlpAction,
    },
    /// Compute homology of an edge-list file with a named engine.
    Hom(HomArgs),
    /// Compare computed homology of an MLP against the closed-form predictions.
    Verify(VerifyArgs),
    /// Betti numbers across weight-magnitude thresholds, as CSV.
    Curve(CurveArgs),
    /// List the registered homology engines.
    Engines,
}

#[derive(Subcommand, Debug)]
enum MlpAction {
    /// Write the edge list of the fully connected feedforward graph.
    Gen {
        /// Layer widths, input layer first.
        #[arg(required = true, num_args = 1..)]
        widths: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Weights::None)]
        weights: Weights,
        /// Seed for `--weights random`; drawn and reported if omitted.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Weights {
    None,
    Unit,
    Random,
}

/// Options shared by `hom` and `curve`.
#[derive(Args, Debug)]
struct ComplexArgs {
    /// Field of coefficients: q, gf2, gf3, gf<p>.
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    /// Augmented complex (degree −1 term).
    #[arg(long, action = ArgAction::SetTrue, conflicts_with = "non_reduced")]
    reduced: bool,
    #[arg(long, action = ArgAction::SetTrue)]
    non_reduced: bool,
    /// Highest degree reported. Defaults to the longest path of an acyclic input.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Refuse inputs with more generators than this in any degree.
    #[arg(long, default_value_t = 2_000_000)]
    max_paths: u128,
}

impl ComplexArgs {
    fn reduced_flag(&self) -> Option<bool> {
        match (self.reduced, self.non_reduced) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }
}

#[derive(Args, Debug)]
struct HomArgs {
    /// Engine name, see `dighom engines`.
    engine: String,
    /// Edge-list file, `-` for stdin.
    input: PathBuf,
    #[command(flatten)]
    complex: ComplexArgs,
    /// Print the JSON report instead of the text table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(required = true, num_args = 1..)]
    widths: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "q")]
    fields: Vec<FieldSpec>,
    /// Also compare the engines with the brute-force oracles on this many random digraphs.
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Weighted edge-list file, `-` for stdin.
    input: PathBuf,
    #[arg(long, default_value = "path")]
    kind: String,
    #[command(flatten)]
    complex: ComplexArgs,
    /// Worker threads for the thresholds.
    #[arg(long, env = "HOMOLOGY_THREADS")]
    threads: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mlp { action: MlpAction::Gen { widths, weights, seed, output } } => {
            commands::mlp_gen(widths, weights, seed, output.as_deref())
        }
        Command::Hom(args) => commands::hom(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Curve(args) => commands::curve(&args),
        Command::Engines => commands::engines(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("dighom: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
