//! Subcommand bodies. Each validates its flags, runs the computation and
//! returns a table ready for serialization.

use qscatter_core::{
    correlation_report, output_covariance, region_map, standard_form, sweep_fig4, thermal_discord_surface,
    CValue, Complex, Error as CoreError, GaussianInputF64, ModePair, RegionSpec, ScatteringMatrixF64,
    SweepMethod,
};

use crate::output::{Cell, Table};

/// Failure of a subcommand, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flag values; exit code 2.
    Usage(String),
    /// Numerical-domain error from the computation; exit code 3.
    Numerical(CoreError),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidConfig(_)
            | CoreError::InvalidDimension(_)
            | CoreError::IndexOutOfRange(_)
            | CoreError::OutOfRange(_) => Failure::Usage(format!("{}: {e}", e.name())),
            other => Failure::Numerical(other),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(usage(msg))
    }
}

fn finite_at_least(name: &str, v: f64, min: f64) -> Result<(), Failure> {
    require(v.is_finite() && v >= min, format!("--{name} must be finite and >= {min}, got {v}"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StateKind {
    Coherent,
    Thermal,
    Squeezed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulateArgs {
    pub state: StateKind,
    pub n_bar: Option<f64>,
    pub r: Option<f64>,
    pub theta: f64,
    pub amplitude: (f64, f64),
    pub channels: usize,
    pub pair: (usize, usize),
    pub k_prime: usize,
    pub seed: u64,
}

fn build_state(args: &SimulateArgs) -> Result<GaussianInputF64, Failure> {
    let state = match args.state {
        StateKind::Coherent => {
            let (re, im) = args.amplitude;
            require(re.is_finite() && im.is_finite(), "coherent amplitude must be finite")?;
            GaussianInputF64::coherent(Complex::new(re, im))
        }
        StateKind::Thermal => {
            let n_bar = args.n_bar.ok_or_else(|| usage("--state thermal needs --nbar"))?;
            finite_at_least("nbar", n_bar, 0.0)?;
            GaussianInputF64::thermal(n_bar)
        }
        StateKind::Squeezed => {
            let r = args.r.ok_or_else(|| usage("--state squeezed needs --r"))?;
            finite_at_least("r", r, 0.0)?;
            require(args.theta.is_finite(), "--theta must be finite")?;
            GaussianInputF64::squeezed(r, args.theta)
        }
    };
    state.map_err(|e| usage(format!("{}: {e}", e.name())))
}

pub fn simulate(args: &SimulateArgs) -> Result<Table, Failure> {
    let n = args.channels;
    require(n >= 2, format!("--n must be >= 2, got {n}"))?;
    let (l, m) = args.pair;
    require(l < n && m < n && args.k_prime < n, format!("--pair and --k-prime must be < N = {n}"))?;
    require(l != m, "--pair needs two distinct output modes")?;
    let state = build_state(args)?;

    let s = ScatteringMatrixF64::haar_random(n, args.seed)?;
    let pair = ModePair::new(args.k_prime, l, m)?;
    let sigma = output_covariance(&state, &s, &pair)?;
    let sf = standard_form(&sigma)?;
    let report = correlation_report(&sigma)?;

    let mut table = Table::new(vec![
        "state",
        "N",
        "seed",
        "k_prime",
        "l",
        "m",
        "t_l",
        "t_m",
        "alpha",
        "beta",
        "gamma_x",
        "gamma_p",
        "c_value",
        "physical",
        "separable",
        "eta_tilde_minus",
        "discord_measured_on_l",
        "discord_measured_on_m",
    ]);
    table.single = true;
    let state_name = match args.state {
        StateKind::Coherent => "coherent",
        StateKind::Thermal => "thermal",
        StateKind::Squeezed => "squeezed",
    };
    table.push(vec![
        Cell::Text(state_name.into()),
        Cell::Int(n as u64),
        Cell::Int(args.seed),
        Cell::Int(args.k_prime as u64),
        Cell::Int(l as u64),
        Cell::Int(m as u64),
        Cell::Num(s.get(l, args.k_prime).norm()),
        Cell::Num(s.get(m, args.k_prime).norm()),
        Cell::Num(sf.alpha),
        Cell::Num(sf.beta),
        Cell::Num(sf.gamma_x),
        Cell::Num(sf.gamma_p),
        Cell::Num(report.c_value),
        Cell::Bool(report.physical),
        Cell::Bool(report.separable),
        Cell::Num(report.eta_tilde_minus),
        Cell::Num(report.discord_measured_on_l),
        Cell::Num(report.discord_measured_on_m),
    ]);
    Ok(table)
}

pub fn fig2(alpha: f64, beta: f64, resolution: usize, extent: Option<f64>) -> Result<Table, Failure> {
    finite_at_least("alpha", alpha, 0.5)?;
    finite_at_least("beta", beta, 0.5)?;
    require(resolution >= 2, format!("--resolution must be >= 2, got {resolution}"))?;
    if let Some(e) = extent {
        require(e.is_finite() && e > 0.0, format!("--extent must be finite and > 0, got {e}"))?;
    }
    let grid = region_map(&RegionSpec { alpha, beta, extent, resolution })?;
    let mut table = Table::new(vec!["gamma_x", "gamma_p", "class", "c_value"]);
    for cell in &grid.cells {
        table.push(vec![
            Cell::Num(cell.gamma_x),
            Cell::Num(cell.gamma_p),
            Cell::Text(cell.class.as_str().into()),
            match cell.c_value {
                CValue::Finite(c) => Cell::Num(c),
                CValue::Divergent => Cell::Text("divergent".into()),
            },
        ]);
    }
    Ok(table)
}

/// Transmission grid for the discord surface: `resolution` evenly spaced
/// points from 0.01 to 1 inclusive.
pub fn fig3_grid(resolution: usize) -> Vec<f64> {
    let steps = (resolution - 1) as f64;
    (0..resolution).map(|i| 0.01 + 0.99 * i as f64 / steps).collect()
}

pub fn fig3(n_bar: f64, resolution: usize, physical_only: bool) -> Result<Table, Failure> {
    finite_at_least("nbar", n_bar, 0.0)?;
    require(resolution >= 2, format!("--resolution must be >= 2, got {resolution}"))?;
    let points = thermal_discord_surface(n_bar, &fig3_grid(resolution), physical_only)?;
    let mut table = Table::new(vec!["t_l", "t_m", "discord"]);
    for p in points {
        table.push(vec![Cell::Num(p.t_l), Cell::Num(p.t_m), p.discord.map_or(Cell::Empty, Cell::Num)]);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Analytic,
    Mc,
}

pub fn fig4(
    n_bars: &[f64],
    channels: &[usize],
    method: Method,
    trials: usize,
    seed: u64,
) -> Result<Table, Failure> {
    require(!n_bars.is_empty() && !channels.is_empty(), "--nbar-grid and --n-grid must be non-empty")?;
    for &n_bar in n_bars {
        finite_at_least("nbar-grid", n_bar, 0.0)?;
    }
    for &n in channels {
        require(n >= 2, format!("--n-grid entries must be >= 2, got {n}"))?;
    }
    let method = match method {
        Method::Analytic => SweepMethod::Analytic,
        Method::Mc => {
            require(trials >= 1, "--trials must be >= 1")?;
            SweepMethod::MonteCarlo { trials, master_seed: seed }
        }
    };
    let rows = sweep_fig4(n_bars, channels, method)?;
    let mut table = Table::new(vec!["n_bar", "N", "mean_discord", "std_error"]);
    for row in rows {
        table.push(vec![
            Cell::Num(row.n_bar),
            Cell::Int(row.channels as u64),
            Cell::Num(row.mean_discord),
            row.std_error.map_or(Cell::Empty, Cell::Num),
        ]);
    }
    Ok(table)
}
