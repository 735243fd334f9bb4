//! `qscatter`: data for correlation maps of light scattered by a random
//! medium.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 numerical-domain
//! error (the error name is printed on stderr).

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Failure, Method, SimulateArgs, StateKind};
use output::{Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "qscatter",
    version,
    about = "Quantum correlations of light behind a random scattering medium"
)]
struct Cli {
    /// Output file (default: standard output).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Seed for the random scattering matrix or the Monte Carlo master seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw one Haar-random scattering matrix and report all correlation measures for an output pair.
    Simulate {
        #[arg(long, value_enum)]
        state: StateKind,
        /// Mean photon number of a thermal input.
        #[arg(long = "nbar")]
        n_bar: Option<f64>,
        /// Squeezing parameter.
        #[arg(long)]
        r: Option<f64>,
        /// Squeezing phase in radians.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        /// Real part of the coherent amplitude.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        amp_re: f64,
        /// Imaginary part of the coherent amplitude.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        amp_im: f64,
        /// Number of channels N.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Output modes l and m (0-based).
        #[arg(long, num_args = 2, value_names = ["L", "M"], default_values_t = [0, 1])]
        pair: Vec<usize>,
        /// Occupied input mode (0-based).
        #[arg(long, default_value_t = 0)]
        k_prime: usize,
    },
    /// Classification map of the (gamma_x, gamma_p) plane at fixed alpha, beta.
    Fig2 {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 201)]
        resolution: usize,
        /// Half-width of the gamma range (default 1.05*sqrt(alpha*beta)).
        #[arg(long)]
        extent: Option<f64>,
    },
    /// Discord of the thermal output over transmission moduli (t_l, t_m), measured on mode l.
    Fig3 {
        #[arg(long = "nbar")]
        n_bar: f64,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        /// Leave points with t_l^2 + t_m^2 > 1 empty.
        #[arg(long)]
        physical_only: bool,
    },
    /// Mean discord over the ensemble as a function of photon number and channel count.
    Fig4 {
        #[arg(long = "nbar-grid", value_delimiter = ',', default_value = "1,2,5,10,20,50,100,200,500,1000")]
        n_bar_grid: Vec<f64>,
        #[arg(long = "n-grid", value_delimiter = ',', default_value = "2,4,8,16,32,64")]
        n_grid: Vec<usize>,
        #[arg(long, value_enum, default_value = "analytic")]
        method: Method,
        /// Monte Carlo trials per grid point.
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
}

fn run(cli: &Cli) -> Result<Table, Failure> {
    match &cli.command {
        Command::Simulate { state, n_bar, r, theta, amp_re, amp_im, n, pair, k_prime } => {
            commands::simulate(&SimulateArgs {
                state: *state,
                n_bar: *n_bar,
                r: *r,
                theta: *theta,
                amplitude: (*amp_re, *amp_im),
                channels: *n,
                pair: (pair[0], pair[1]),
                k_prime: *k_prime,
                seed: cli.seed,
            })
        }
        Command::Fig2 { alpha, beta, resolution, extent } => {
            commands::fig2(*alpha, *beta, *resolution, *extent)
        }
        Command::Fig3 { n_bar, resolution, physical_only } => {
            commands::fig3(*n_bar, *resolution, *physical_only)
        }
        Command::Fig4 { n_bar_grid, n_grid, method, trials } => {
            commands::fig4(n_bar_grid, n_grid, *method, *trials, cli.seed)
        }
    }
}

fn emit(table: &Table, cli: &Cli) -> io::Result<()> {
    match &cli.out {
        Some(path) => table.write(cli.format, BufWriter::new(File::create(path)?)),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            table.write(cli.format, &mut lock)?;
            lock.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(table) => match emit(&table, &cli) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(3)
        }
    }
}
