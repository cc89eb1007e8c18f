//! `bubble`: exact computations in multicoloured bubble algebras.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bubble", version, about = "Exact representation theory of bubble algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Number of nodes per row.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,

    /// Number of colours.
    #[arg(short = 'm', global = true, default_value_t = 2)]
    m: usize,

    /// Cell weight, e.g. `0,2`.
    #[arg(long, global = true)]
    lambda: Option<String>,

    /// Loop parameter for the next colour: `<int>`, `<p>/<q>`, `root:<l>` or
    /// `generic`. Repeat once per colour; omitted means all generic.
    #[arg(long = "delta", global = true)]
    delta: Vec<String>,

    /// Row and column order for `decomp` and `cartan`.
    #[arg(long, global = true, value_enum, default_value_t = Order::Default)]
    order: Order,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    /// Weight enumeration order.
    Default,
    /// Grouped by linkage class.
    Blocks,
    /// The block-grouped order of the 16 weights of T(6,2).
    #[value(name = "paper-6-2")]
    Paper62,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GramMethod {
    Direct,
    Factorized,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetMethod {
    /// Fraction-free elimination on the Gram matrix.
    Direct,
    /// Product over the tensor factors.
    Formula,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bubble diagrams of T(n,m), or the link-state basis of a cell module
    /// when `--lambda` is given.
    Basis,
    /// Product of two diagrams, read from files or from two lines of stdin.
    Multiply {
        /// Zero, one or two files; `-` is stdin.
        inputs: Vec<PathBuf>,
    },
    /// Gram matrix of a cell module.
    Gram {
        #[arg(long, value_enum, default_value_t = GramMethod::Direct)]
        method: GramMethod,
    },
    /// Gram determinant of a cell module.
    Det {
        #[arg(long, value_enum, default_value_t = DetMethod::Direct)]
        method: DetMethod,
    },
    /// Rank of the specialised Gram matrix next to the head dimension.
    Rank,
    /// Cell, head and radical dimensions over all weights.
    Dims,
    /// Loewy layers of one or all cell modules.
    RadicalSeries,
    /// Decomposition matrix with its linkage blocks.
    Decomp,
    /// Cartan matrix `D^T D` with its linkage blocks.
    Cartan,
    /// Linkage classes and the arrows between cell modules.
    Blocks {
        /// Same as `--format dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Run the invariant suite.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli.command, &cli.common) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let Some(out) = &e.stdout {
                print!("{out}");
            }
            if !e.message.is_empty() {
                eprintln!("bubble: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
