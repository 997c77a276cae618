//! `graphqss`: build graph secret-sharing schemes, list their access
//! structures, run the sharing circuits, and cross-check everything.
//!
//! Exit status: 0 on success, 1 when a check fails or a coalition is refused,
//! 2 on bad input.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_051_201;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "GRAPHQSS_THREADS";

#[derive(Parser, Debug)]
#[command(name = "graphqss", version, about = "Graph-state quantum secret sharing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert an [[n,1]] stabilizer code to a graph scheme, or back.
    Convert(ConvertArgs),
    /// Print the minimal access structure of a scheme.
    Access(AccessArgs),
    /// Run the sharing and recovery circuits for one coalition.
    Simulate(SimulateArgs),
    /// Cross-check every method and property on a scheme.
    Verify(VerifyArgs),
    /// Write a random bipartite graph with orthogonal biadjacency.
    Gen(GenArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    /// Edge-list file ("n N" header, one "u v" pair per line).
    #[arg(long)]
    graph: String,
    /// Encoding set A for a CC scheme, comma separated.
    #[arg(long = "a", value_name = "LIST", conflicts_with = "dealer")]
    a: Option<String>,
    /// Dealer vertex for a QQ scheme.
    #[arg(long)]
    dealer: Option<usize>,
    /// Delete this vertex before building a CC scheme; labels stay as in the file.
    #[arg(long, value_name = "V", conflicts_with = "dealer")]
    remove_vertex: Option<usize>,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// Stabilizer file to convert into a graph and A.
    #[arg(long, conflicts_with_all = ["graph", "a"])]
    code: Option<String>,
    /// Edge-list file to convert into a code (needs --a).
    #[arg(long, requires = "a")]
    graph: Option<String>,
    /// Encoding set A, comma separated.
    #[arg(long = "a", value_name = "LIST")]
    a: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Graphical,
    Generators,
    Oracle,
    All,
}

#[derive(Args, Debug)]
struct AccessArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    #[arg(long, value_enum, default_value = "graphical")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SchemeKind {
    Qq,
    Cc,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(value_enum)]
    kind: SchemeKind,
    #[command(flatten)]
    scheme: SchemeArgs,
    /// The coalition attempting recovery, comma separated.
    #[arg(long)]
    set: String,
    /// Secret: 0, 1, +, -, +i, -i for qq; 0 or 1 for cc.
    #[arg(long, allow_hyphen_values = true)]
    secret: String,
    /// Force the dealer's measurement outcome (qq only).
    #[arg(long)]
    outcome: Option<u8>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// Largest player count for the dense oracle.
    #[arg(long, default_value_t = 12)]
    max_oracle: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Size of each part.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<String>,
}

/// A failure attributable to the input rather than to a check.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = match cli.command {
        Command::Convert(args) => commands::convert(&args),
        Command::Access(args) => commands::access(&args),
        Command::Simulate(args) => commands::simulate(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Gen(args) => commands::gen(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
