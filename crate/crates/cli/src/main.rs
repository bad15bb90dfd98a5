use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use idempotent::app::{execute, Command, ModeSel, RunConfig};
use idempotent::matrix::Backend;

/// Idempotent semiring toolkit: closures, Bellman equations, eigenvalues
/// and dequantization.
#[derive(Debug, Parser)]
#[command(name = "idem", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Semiring for graph and grid inputs and for check-axioms, e.g. `rmin`,
    /// `prod:rmax,maxmin`, `rmax@exact`.
    #[arg(long, global = true)]
    semiring: Option<String>,

    /// scalar, weak-interval or strong-interval.
    #[arg(long, global = true, value_parser = parse_mode)]
    mode: Option<ModeSel>,

    /// Iteration cap for solve (default 2n+1).
    #[arg(long, global = true)]
    max_iter: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Exact rational arithmetic.
    #[arg(long, global = true)]
    exact: bool,

    /// Compute closures without the semi-definiteness test.
    #[arg(long, global = true)]
    allow_unchecked: bool,

    /// Machine-readable result file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Squaring,
    Kleene,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Closure A* of a matrix or graph.
    Closure {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "squaring")]
        backend: BackendArg,
    },
    /// Least solution of X = AX + B.
    Solve { a: PathBuf, b: PathBuf },
    /// Eigenvalue and eigenvector of an irreducible matrix.
    Eig { input: PathBuf },
    /// Spectral radius; for interval matrices, that of the upper matrix.
    Rho { input: PathBuf },
    /// Strongly connected blocks and the block triangular form.
    Blocks { input: PathBuf },
    /// Legendre transform of a grid function, at the points of `xi` or its own.
    Legendre { grid: PathBuf, xi: Option<PathBuf> },
    /// Convergence of the deformed sum to max as h goes to 0.
    DequantDemo {
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        w1: f64,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        w2: f64,
        #[arg(long, value_delimiter = ',')]
        h: Vec<f64>,
    },
    /// Sample the semiring axioms.
    CheckAxioms {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn parse_mode(s: &str) -> Result<ModeSel, String> {
    s.parse().map_err(|e: idempotent::Error| e.to_string())
}

fn config(cli: Cli) -> RunConfig {
    let mut cfg = RunConfig::new(Command::Closure);
    match cli.command {
        Cmd::Closure { input, backend } => {
            cfg.inputs.push(input);
            cfg.backend = match backend {
                BackendArg::Squaring => Backend::Squaring,
                BackendArg::Kleene => Backend::Kleene,
            };
        }
        Cmd::Solve { a, b } => {
            cfg.command = Command::Solve;
            cfg.inputs = vec![a, b];
        }
        Cmd::Eig { input } => {
            cfg.command = Command::Eig;
            cfg.inputs.push(input);
        }
        Cmd::Rho { input } => {
            cfg.command = Command::Rho;
            cfg.inputs.push(input);
        }
        Cmd::Blocks { input } => {
            cfg.command = Command::Blocks;
            cfg.inputs.push(input);
        }
        Cmd::Legendre { grid, xi } => {
            cfg.command = Command::Legendre;
            cfg.inputs.push(grid);
            cfg.inputs.extend(xi);
        }
        Cmd::DequantDemo { w1, w2, h } => {
            cfg.command = Command::DequantDemo;
            cfg.w = (w1, w2);
            if !h.is_empty() {
                cfg.hs = h;
            }
        }
        Cmd::CheckAxioms { samples } => {
            cfg.command = Command::CheckAxioms;
            cfg.samples = samples;
        }
    }
    cfg.semiring = cli.semiring;
    cfg.mode = cli.mode;
    cfg.max_iter = cli.max_iter;
    cfg.seed = cli.seed;
    cfg.exact = cli.exact;
    cfg.allow_unchecked = cli.allow_unchecked;
    cfg.out = cli.out;
    cfg
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    ExitCode::from(execute(&config(cli)) as u8)
}
