//! Mean discord over the scattering ensemble, by typical-value substitution
//! and by Monte Carlo over Haar-random matrices.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{standard_form, validate_physical, GaussianInput, StandardForm};
use crate::measures::{gaussian_discord, MeasuredMode};
use crate::scalar::{half, lit, Scalar};
use crate::scatter::{derive_seed, haar_columns, pair_covariance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleConfig<T> {
    pub channels: usize,
    pub n_bar: T,
    pub trials: usize,
    pub master_seed: u64,
}

impl<T: Scalar> EnsembleConfig<T> {
    pub fn new(channels: usize, n_bar: T, trials: usize, master_seed: u64) -> Result<Self> {
        if channels < 2 {
            return Err(Error::InvalidConfig(format!("need N >= 2 channels, got {channels}")));
        }
        if trials == 0 {
            return Err(Error::InvalidConfig("need at least one trial".into()));
        }
        if !(n_bar >= T::zero() && n_bar.is_finite()) {
            return Err(Error::InvalidConfig(format!("n_bar = {n_bar} must be finite and >= 0")));
        }
        Ok(EnsembleConfig { channels, n_bar, trials, master_seed })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleStat<T> {
    pub mean: T,
    pub std_error: T,
    pub trials: usize,
}

impl<T: Scalar> EnsembleStat<T> {
    /// Sample mean and standard error, accumulated in slice order.
    pub fn from_samples(samples: &[T]) -> Self {
        let n = samples.len();
        let count = lit::<T>(n as f64);
        let mean = samples.iter().fold(T::zero(), |a, &b| a + b) / count;
        let std_error = if n > 1 {
            let ss = samples.iter().fold(T::zero(), |a, &b| a + (b - mean) * (b - mean));
            (ss / (count - T::one())).sqrt() / count.sqrt()
        } else {
            T::zero()
        };
        EnsembleStat { mean, std_error, trials: n }
    }
}

/// Discord at typical matrix elements: `|S_l|² = |S_m|² = 1/N`, and
/// `|S_l||S_m| = <|S|>²` with `<|S|> = <|S|²>/2 = 1/(2N)`.
pub fn mean_discord_analytic<T: Scalar>(n_bar: T, channels: usize) -> Result<T> {
    if channels < 2 {
        return Err(Error::InvalidConfig(format!("need N >= 2 channels, got {channels}")));
    }
    if !(n_bar >= T::zero() && n_bar.is_finite()) {
        return Err(Error::InvalidConfig(format!("n_bar = {n_bar} must be finite and >= 0")));
    }
    let n = lit::<T>(channels as f64);
    let intensity = T::one() / n;
    let amplitude = intensity * half::<T>();
    let diag = n_bar * intensity + half::<T>();
    let gamma = n_bar * amplitude * amplitude;
    let sf = StandardForm { alpha: diag, beta: diag, gamma_x: gamma, gamma_p: gamma };
    gaussian_discord(&sf, MeasuredMode::First)
}

/// Discord of one trial: thermal input on channel 0, outputs `(0, 1)`,
/// measurement on output 0.
fn trial_discord<T: Scalar>(cfg: &EnsembleConfig<T>, index: u64) -> Result<T> {
    let seed = derive_seed(cfg.master_seed, index);
    let column = haar_columns::<T>(cfg.channels, seed, 1)?.swap_remove(0);
    let state = GaussianInput::Thermal { n_bar: cfg.n_bar };
    let sigma = pair_covariance(&state, column[0], column[1])?;
    if !validate_physical(&sigma) {
        return Err(Error::NonPhysicalInput(format!("trial {index} produced an unphysical covariance")));
    }
    gaussian_discord(&standard_form(&sigma)?, MeasuredMode::First)
}

/// Monte Carlo mean of the discord over Haar-random matrices.
///
/// Trial `i` uses seed `derive_seed(master_seed, i)`; samples are reduced in
/// trial order, so the result does not depend on the thread schedule.
pub fn mean_discord_mc<T: Scalar>(cfg: &EnsembleConfig<T>) -> Result<EnsembleStat<T>> {
    let samples =
        (0..cfg.trials as u64).into_par_iter().map(|i| trial_discord(cfg, i)).collect::<Result<Vec<T>>>()?;
    Ok(EnsembleStat::from_samples(&samples))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMethod {
    Analytic,
    MonteCarlo { trials: usize, master_seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow<T> {
    pub n_bar: T,
    pub channels: usize,
    pub mean_discord: T,
    /// Present for Monte Carlo rows only.
    pub std_error: Option<T>,
}

/// Mean discord over the `n_bar × channels` grid, `n_bar` major.
pub fn sweep_fig4<T: Scalar>(
    n_bar_grid: &[T],
    channel_grid: &[usize],
    method: SweepMethod,
) -> Result<Vec<SweepRow<T>>> {
    if n_bar_grid.is_empty() || channel_grid.is_empty() {
        return Err(Error::InvalidConfig("sweep grids must be non-empty".into()));
    }
    let mut rows = Vec::with_capacity(n_bar_grid.len() * channel_grid.len());
    for &n_bar in n_bar_grid {
        for &channels in channel_grid {
            let row = match method {
                SweepMethod::Analytic => SweepRow {
                    n_bar,
                    channels,
                    mean_discord: mean_discord_analytic(n_bar, channels)?,
                    std_error: None,
                },
                SweepMethod::MonteCarlo { trials, master_seed } => {
                    let stat = mean_discord_mc(&EnsembleConfig::new(channels, n_bar, trials, master_seed)?)?;
                    SweepRow { n_bar, channels, mean_discord: stat.mean, std_error: Some(stat.std_error) }
                }
            };
            rows.push(row);
        }
    }
    Ok(rows)
}
