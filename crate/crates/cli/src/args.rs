use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "pdo-cocycles",
    version,
    about = "Exact Chern-Weil type cocycles on operators over the circle"
)]
pub struct Cli {
    /// Fiber dimension d.
    #[arg(long, global = true, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Bind NAME to the operator or symbol document in FILE.
    #[arg(long = "def", global = true, value_name = "NAME=FILE")]
    pub defs: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Table,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the finite-rank curvature Ω(a, b): support, rank and nonzero blocks.
    Omega {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Evaluate tr(Ωᵏ) on 2k operators.
    Cocycle {
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Also print the signed permutation table.
        #[arg(long)]
        verbose: bool,
        #[arg(allow_hyphen_values = true, required = true)]
        operands: Vec<String>,
    },
    /// Evaluate the Schwinger cocycle tr(a₊₋b₋₊ - b₊₋a₋₊).
    Schwinger {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Run a seeded verification sweep.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Regenerate the finite computations on shift operators.
    Repro {
        #[arg(value_enum)]
        target: ReproTarget,
    },
    /// Print the truncated symbol of an expression.
    Symbol {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Noncommutative residue of a symbol expression.
    Residue {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Residue cocycle κ·res(σ₊(X)[σ₊(Y), log Δ]).
    Radul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyKind {
    Closedness,
    Bianchi,
    ResidueTrace,
    CommutatorTrace,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReproTarget {
    FourCocycle,
    Schwinger,
    CaseTable,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SweepArgs {
    /// Cocycle degree for closedness (tr Ωᵏ).
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Bound on |m| for the zᵐ generators.
    #[arg(long, default_value_t = 3)]
    pub degree: i64,
    /// Symbol truncation depth for residue sweeps.
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    /// Include |D| among the closedness and Bianchi generators.
    #[arg(long)]
    pub abs_d: bool,
}
