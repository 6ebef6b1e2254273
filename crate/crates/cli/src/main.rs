//! `charp`: command line access to ideal computations in prime characteristic.

mod commands;
mod error;
mod report;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "charp", version, about = "Frobenius, F-closure and perfection computations over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of S-pairs per Gröbner computation.
    #[arg(long, global = true, value_name = "N")]
    pub budget_pairs: Option<u64>,
    /// Maximum number of terms of any intermediate polynomial.
    #[arg(long, global = true, value_name = "N")]
    pub budget_terms: Option<u64>,
    /// Maximum total degree of any intermediate polynomial.
    #[arg(long, global = true, value_name = "N")]
    pub budget_degree: Option<u64>,
    /// Leave wall-clock timing out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Args, Clone, Debug)]
pub struct SpecArgs {
    /// TOML spec file.
    pub spec: PathBuf,
    /// Ideal to use; may be omitted when the spec defines exactly one.
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis of an ideal.
    Gb {
        #[command(flatten)]
        spec: SpecArgs,
        /// Monomial order for the basis (grevlex, lex, elim(k)).
        #[arg(long)]
        order: Option<String>,
    },
    /// Frobenius powers, roots and closures.
    Frob {
        #[command(subcommand)]
        op: FrobCmd,
    },
    /// Primary decomposition of a monomial ideal, optionally in translated
    /// coordinates.
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        /// Translation such as `Y=2,X=1`; the ideal must be monomial in
        /// the shifted variables.
        #[arg(long)]
        shift: Option<String>,
    },
    /// f-sequence checks.
    Fseq {
        #[command(subcommand)]
        op: FseqCmd,
    },
    /// Ideals of the perfect closure.
    Perfection {
        #[command(subcommand)]
        op: PerfectionCmd,
    },
    /// Decomposition of `a^[p^n]` built from the primes of `a` and a growth
    /// exponent.
    #[command(name = "lg2")]
    GrowthDecompose {
        #[command(flatten)]
        spec: SpecArgs,
        /// Growth exponent; found from the decomposition of `a` if omitted.
        #[arg(long)]
        h: Option<u32>,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GrowthModeArg::Plain)]
        mode: GrowthModeArg,
        /// f-sequence for `--mode seqterm` (default: Frobenius powers of the ideal).
        #[arg(long)]
        fseq: Option<String>,
    },
    /// Builds the f-sequence whose associated primes grow without bound.
    #[command(name = "ex8")]
    UnboundedAss {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l: u64,
        /// Positive exponents `t_1,t_2,...`, at least `depth` of them.
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<u64>,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(Subcommand)]
pub enum FrobCmd {
    /// Bracket power `I^[p^e]`.
    Power {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Frobenius root `f^{-n}(I)`.
    Root {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// F-closure by the ascending chain `f^{-n}(I^[p^n])`.
    Closure {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = charp::frobenius::DEFAULT_MAX_E)]
        max_e: usize,
        #[arg(long, default_value_t = charp::frobenius::DEFAULT_CONFIRM)]
        confirm: usize,
    },
}

#[derive(Args, Clone, Debug)]
pub struct FseqArgs {
    /// TOML spec file.
    pub spec: PathBuf,
    /// f-sequence to use; may be omitted when the spec defines exactly one.
    #[arg(long)]
    pub fseq: Option<String>,
    #[arg(long)]
    pub depth: usize,
}

#[derive(Subcommand)]
pub enum FseqCmd {
    /// Checks the f-sequence law up to `depth`.
    Verify {
        #[command(flatten)]
        args: FseqArgs,
    },
    /// Certifies linear growth of the decompositions of the terms.
    Growth {
        #[command(flatten)]
        args: FseqArgs,
        #[arg(long, conflicts_with = "find_h", required_unless_present = "find_h")]
        h: Option<u32>,
        /// Take the smallest exponent that works for the term at n = 0.
        #[arg(long)]
        find_h: bool,
    },
}

#[derive(Subcommand)]
pub enum PerfectionCmd {
    /// Membership of `elem^(1/p^root)` in the ideal generated by
    /// `I^(1/p^k)`.
    Member {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        elem: String,
        #[arg(long, default_value_t = 0)]
        root: u32,
    },
    /// Primary f-sequences of the ideal generated by `I^(1/p^k)`.
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        depth: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthModeArg {
    Plain,
    Fclosure,
    Seqterm,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = commands::run(&cli);
    ExitCode::from(code)
}
