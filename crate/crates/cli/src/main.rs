mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "vcstream", version, about = "Streaming deletion problems parameterized by a vertex cover")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run a streaming kernel and write the kernel instance.
    Kernelize(KernelizeArgs),
    /// Run a streaming solver and print a report.
    Solve(SolveArgs),
    /// Run a solver and the brute-force oracle and compare.
    Verify(VerifyArgs),
    /// Run solvers over every instance in a directory.
    Bench(BenchArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Random graph whose first `k` vertices cover every edge.
    Planted {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Edge probability.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pattern with a degree-two vertex split into a fan of centers.
    Doublefan {
        /// Family file (first member is used) or a name like P4, C5, K3.
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        split: usize,
        #[arg(long)]
        x_bits: String,
        #[arg(long)]
        y_bits: String,
        /// Also join every center to the other neighbors of the split vertex.
        #[arg(long)]
        attach_all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct StreamArgs {
    /// Arrival model. Solvers and kernels need `al`.
    #[arg(long, default_value = "al")]
    pub model: String,
    /// Vertex order: `identity`, `reverse` or `seed:<n>`.
    #[arg(long, default_value = "identity")]
    pub order: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelAlg {
    Reduce,
    Lowrank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelWrap {
    Pifree,
    Largest,
    Partition,
    Rankc,
}

#[derive(Args, Debug)]
pub struct KernelizeArgs {
    pub instance: PathBuf,
    #[arg(long, conflicts_with = "wrap")]
    pub alg: Option<KernelAlg>,
    #[arg(long)]
    pub wrap: Option<KernelWrap>,
    /// Marks per entry.
    #[arg(long)]
    pub r: Option<usize>,
    /// Adjacency (or rank) constant.
    #[arg(long)]
    pub c: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Deletion budget; defaults to the instance value.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub cpi: Option<usize>,
    /// Marking function, `b`, `K`, `a*K` or `a*K+b`.
    #[arg(long)]
    pub pfun: Option<String>,
    /// Deletion budget for the rank wrapper.
    #[arg(long)]
    pub k: Option<usize>,
    /// Value of the marking function for the rank wrapper.
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub stream: StreamArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Cvd,
    Oct,
    Hfree,
    PifreeOracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    A1,
    A2,
    A1sub,
    Ecenum,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// Deletion budget; defaults to the instance value.
    #[arg(long)]
    pub ell: Option<usize>,
    /// Family file or a name like P3, C4, K3.
    #[arg(long)]
    pub pattern: Option<String>,
    #[arg(long)]
    pub cpi: Option<usize>,
    #[arg(long)]
    pub pfun: Option<String>,
    /// Skip the extra pass that re-checks each found copy.
    #[arg(long)]
    pub non_strict: bool,
    /// Odd cycle transversal by components of the cover.
    #[arg(long)]
    pub cc: bool,
    #[arg(long, requires = "cc")]
    pub low_mem: bool,
    #[arg(long)]
    pub cache_cover: bool,
    #[arg(long, value_enum)]
    pub oracle: Option<OracleKind>,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub nu: Option<usize>,
    #[command(flatten)]
    pub stream: StreamArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Against {
    Brute,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub solve: SolveArgs,
    #[arg(long, value_enum, default_value = "brute")]
    pub against: Against,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    pub dir: PathBuf,
    /// Comma separated: cvd, cvd-cache, oct, oct-cc, oct-cc-lowmem, hfree.
    #[arg(long, default_value = "cvd,cvd-cache,oct,oct-cc,oct-cc-lowmem")]
    pub algs: String,
    /// Pattern for the `hfree` column.
    #[arg(long)]
    pub pattern: Option<String>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[command(flatten)]
    pub stream: StreamArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            if !e.use_stderr() {
                return ExitCode::SUCCESS;
            }
            print_flags();
            return ExitCode::from(2);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            print_flags();
            ExitCode::from(2)
        }
        Err(commands::Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

/// Lists the flags of the subcommand named in argv, or the subcommands.
fn print_flags() {
    let mut target = Cli::command();
    for name in std::env::args().skip(1).filter(|a| !a.starts_with('-')) {
        match target.find_subcommand(&name).cloned() {
            Some(sub) => target = sub,
            None => break,
        }
    }
    eprintln!("\n{}", target.render_help());
}
