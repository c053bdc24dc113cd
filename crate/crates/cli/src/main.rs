use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ferro_cli as cmd;
use ferro_core::convolution::Engine;
use ferro_core::exec::{init_thread_pool, Execution};

/// Fermionic convolution, non-Gaussianity sweeps and Gaussianity tests.
#[derive(Parser)]
#[command(name = "ferro", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// NG^(k) of psi_phi over the phi grid, plus the NG_R limit.
    Fig2 {
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        #[arg(long, default_value_t = 65)]
        grid: usize,
        #[arg(long, default_value = "cumulant")]
        engine: Engine,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cumulant weights K_G, K_M and K of psi_phi over the phi grid.
    Weights {
        #[arg(long, default_value_t = 65)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Renyi-alpha version of fig2.
    Renyi {
        #[arg(long, default_value_t = 2.0)]
        alpha: f64,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
        #[arg(long, default_value_t = 65)]
        grid: usize,
        #[arg(long, default_value = "cumulant")]
        engine: Engine,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Three-copy Gaussianity test of a pure state read from a file.
    TestState {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Choi-state Gaussianity test of a unitary read from a file.
    TestUnitary {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distance of the doubling iterates to the Gaussification, with the bound.
    Clt {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        kmax: u32,
        #[arg(long, default_value = "cumulant")]
        engine: Engine,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gate netlist for the convolution unitary.
    Decompose {
        #[arg(long, default_value_t = FRAC_PI_4)]
        theta: f64,
        #[arg(long, default_value_t = 1)]
        modes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> cmd::Result<()> {
    let exec = Execution::default();
    let (text, out) = match cli.command {
        Command::Fig2 {
            kmax,
            grid,
            engine,
            out,
        } => (cmd::cmd_fig2(kmax, grid, engine, exec)?, out),
        Command::Weights { grid, out } => (cmd::cmd_weights(grid, exec)?, out),
        Command::Renyi {
            alpha,
            kmax,
            grid,
            engine,
            out,
        } => (cmd::cmd_renyi(kmax, grid, alpha, engine, exec)?, out),
        Command::TestState { file, out } => (cmd::cmd_test_state(&cmd::load_state(&file)?)?, out),
        Command::TestUnitary { file, out } => {
            (cmd::cmd_test_unitary(&cmd::load_unitary(&file)?)?, out)
        }
        Command::Clt {
            file,
            kmax,
            engine,
            out,
        } => (cmd::cmd_clt(&cmd::load_state(&file)?, kmax, engine)?, out),
        Command::Decompose { theta, modes, out } => (cmd::cmd_decompose(theta, modes)?, out),
    };
    cmd::emit(&text, out.as_deref())
}

fn main() -> ExitCode {
    if let Some(threads) = std::env::var("FERRO_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        init_thread_pool(threads);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", e.code());
            ExitCode::FAILURE
        }
    }
}
