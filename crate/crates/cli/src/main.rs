use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;

use braidforge_core::invariants::DEFAULT_STATE_SUM_CAP;
use braidforge_core::BracketMethod;

/// Grid diagrams, braid words, Markov moves and a Kauffman bracket oracle.
#[derive(Debug, Parser)]
#[command(name = "braidforge", version)]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    BruteForce,
    Contraction,
    Auto,
}

impl From<Method> for BracketMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::BruteForce => BracketMethod::BruteForce,
            Method::Contraction => BracketMethod::Contraction,
            Method::Auto => BracketMethod::Auto,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Largest crossing count for the brute-force state sum.
    #[arg(long, env = "BRAIDFORGE_STATE_SUM_CAP", default_value_t = DEFAULT_STATE_SUM_CAP)]
    pub cap: usize,

    /// Bracket evaluation strategy.
    #[arg(long, value_enum, default_value = "brute-force")]
    pub method: Method,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and check a grid, braid word or PD code.
    Validate {
        /// File, inline text, or `-` for stdin (the default).
        input: Option<String>,
    },
    /// Braid a grid diagram.
    Braid {
        input: Option<String>,
        /// Print the braiding trace.
        #[arg(long)]
        trace: bool,
        /// Compare invariants of the grid and of the braid closure.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Invariants of a grid, PD code, or braid closure.
    Invariants {
        input: Option<String>,
        /// Also print the Jones polynomial in t = A^-4.
        #[arg(long)]
        jones_t: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Markov and L-moves on braid words.
    Markov {
        #[command(subcommand)]
        action: MarkovAction,
    },
    /// Random move sequences checked against the oracle.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Moves per case.
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 6)]
        max_strands: usize,
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        /// JSON L-move sign table replacing the built-in one.
        #[arg(long)]
        sign_table: Option<String>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Bounded breadth-first search for a move path between two words.
    Search {
        from: String,
        to: String,
        /// Maximum number of moves.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Strand cap (default: 4, or the larger word's strand count).
        #[arg(long)]
        max_strands: Option<usize>,
        /// Length cap (default: 8, or the longer word's length).
        #[arg(long)]
        max_length: Option<usize>,
        /// Maximum number of visited words.
        #[arg(long, env = "BRAIDFORGE_SEARCH_CAP", default_value_t = 200_000)]
        max_states: usize,
    },
    /// Convert between representations.
    Convert {
        input: Option<String>,
        #[arg(long, value_enum)]
        to: Target,
    },
}

#[derive(Debug, Subcommand)]
pub enum MarkovAction {
    /// Apply moves from a file or a seeded random sequence.
    Apply {
        word: Option<String>,
        /// JSON list of moves.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        moves: Option<String>,
        /// Number of random moves.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_strands: usize,
        #[arg(long, default_value_t = 12)]
        max_length: usize,
        #[arg(long)]
        sign_table: Option<String>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Grid,
    Pd,
    BraidClosurePd,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::run(&cli);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    if !out.stderr.is_empty() {
        let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    }
    ExitCode::from(out.code)
}
