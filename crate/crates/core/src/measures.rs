//! Correlation measures between two output modes: intensity correlation,
//! separability and Gaussian discord, with the entropy machinery they share.

use crate::error::{Error, Result};
use crate::gaussian::{
    invariants, standard_form, validate_physical, Invariants, StandardForm, TwoModeCovariance,
};
use crate::scalar::{half, lit, two, Scalar};
use crate::scatter::thermal_covariance;

/// Symplectic eigenvalues of a two-mode covariance, ordered on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticPair<T> {
    eta_plus: T,
    eta_minus: T,
}

impl<T: Scalar> SymplecticPair<T> {
    pub fn new(a: T, b: T) -> Self {
        if a >= b {
            SymplecticPair { eta_plus: a, eta_minus: b }
        } else {
            SymplecticPair { eta_plus: b, eta_minus: a }
        }
    }

    pub fn eta_plus(&self) -> T {
        self.eta_plus
    }

    pub fn eta_minus(&self) -> T {
        self.eta_minus
    }
}

/// Symplectic eigenvalues from the four local invariants.
///
/// `η±² = (Δ ± sqrt(Δ² - 4 det σ)) / 2` with `Δ = det A + det B + 2 det Γ`.
/// The smaller one is evaluated as `det σ / η+²` to avoid cancellation.
/// A discriminant within rounding noise of zero is treated as zero.
pub fn symplectic_eigenvalues<T: Scalar>(inv: &Invariants<T>) -> Result<SymplecticPair<T>> {
    let delta = inv.det_a + inv.det_b + two::<T>() * inv.det_gamma;
    let disc = delta * delta - lit::<T>(4.0) * inv.det_sigma;
    if disc < -T::CLAMP_TOL * (delta * delta).max(T::one()) || disc.is_nan() {
        return Err(Error::NegativeDiscriminant(format!("Δ² - 4 det σ = {disc}")));
    }
    // Rounding noise in the discriminant scales with the magnitude of the
    // terms. Below that level the spectrum is degenerate (e.g. pure states)
    // and taking the square root would only amplify the noise.
    let scale = inv.det_a + inv.det_b + two::<T>() * inv.det_gamma.abs();
    let noise = lit::<T>(256.0) * T::epsilon() * scale * scale;
    let root = if disc.abs() <= noise { T::zero() } else { disc.max(T::zero()).sqrt() };
    let plus_sq = (delta + root) * half::<T>();
    let minus_sq = if plus_sq > T::zero() { inv.det_sigma / plus_sq } else { (delta - root) * half::<T>() };
    Ok(SymplecticPair::new(plus_sq.max(T::zero()).sqrt(), minus_sq.max(T::zero()).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Separability<T> {
    pub separable: bool,
    /// Smaller symplectic eigenvalue of the partially transposed state.
    pub eta_tilde_minus: T,
}

/// Separability test: the state is separable iff the covariance with one
/// momentum sign flipped (`gamma_p -> -gamma_p`) is still physical.
pub fn is_separable<T: Scalar>(sf: &StandardForm<T>) -> Result<Separability<T>> {
    let mut inv = sf.invariants();
    inv.det_gamma = -inv.det_gamma;
    let pair = symplectic_eigenvalues(&inv)?;
    Ok(Separability {
        separable: pair.eta_minus() >= half::<T>() - T::CLAMP_TOL,
        eta_tilde_minus: pair.eta_minus(),
    })
}

/// Normalized photon-number correlation `<n_l n_m> / (<n_l><n_m>)`:
/// `1 + (2γx² + 2γp²) / ((2α - 1)(2β - 1))`.
///
/// At the two-mode vacuum both parts vanish and the value is defined as 1.
pub fn intensity_correlation<T: Scalar>(sf: &StandardForm<T>) -> Result<T> {
    let t2 = two::<T>();
    let num = t2 * sf.gamma_x * sf.gamma_x + t2 * sf.gamma_p * sf.gamma_p;
    let den = (t2 * sf.alpha - T::one()) * (t2 * sf.beta - T::one());
    if den.abs() < T::DEGENERATE_TOL {
        if num.abs() < T::DEGENERATE_TOL {
            return Ok(T::one());
        }
        return Err(Error::DivergentCorrelation(format!("denominator {den} vanishes with numerator {num}")));
    }
    Ok(T::one() + num / den)
}

/// Bosonic entropy function `(z + 1/2) ln(z + 1/2) - (z - 1/2) ln(z - 1/2)`,
/// the von Neumann entropy of a thermal mode with symplectic eigenvalue `z`.
///
/// Note the minus sign between the two terms; with a plus sign thermal
/// entropies and mutual informations come out negative.
pub fn kappa<T: Scalar>(z: T) -> Result<T> {
    let h = half::<T>();
    if !(z >= h - T::CLAMP_TOL) || !z.is_finite() {
        return Err(Error::OutOfDomain(format!("kappa({z}) needs z >= 1/2")));
    }
    let z = z.max(h);
    let upper = (z + h) * (z + h).ln();
    let lower = z - h;
    let lower = if lower > T::zero() { lower * lower.ln() } else { T::zero() };
    Ok(upper - lower)
}

/// Von Neumann entropy of a two-mode Gaussian state.
pub fn entropy<T: Scalar>(sigma: &TwoModeCovariance<T>) -> Result<T> {
    let pair = symplectic_eigenvalues(&invariants(sigma))?;
    Ok(kappa(pair.eta_plus())? + kappa(pair.eta_minus())?)
}

/// Which mode of the pair the Gaussian measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasuredMode {
    First,
    Second,
}

/// Gaussian discord with the measurement on `measured`:
///
/// `D = κ(√det B) - κ(η-) - κ(η+) + κ((√det A + 2√(det A det B) + 2 det Γ) / (1 + 2√det B))`
///
/// where `B` is the measured mode's block and `η±` are the symplectic
/// eigenvalues of the state itself (not its partial transpose).
pub fn gaussian_discord<T: Scalar>(sf: &StandardForm<T>, measured: MeasuredMode) -> Result<T> {
    let sf = match measured {
        MeasuredMode::Second => *sf,
        MeasuredMode::First => sf.swap_modes(),
    };
    let inv = sf.invariants();
    let pair = symplectic_eigenvalues(&inv)?;
    let t2 = two::<T>();
    let sqrt_a = inv.det_a.sqrt();
    let sqrt_b = inv.det_b.sqrt();
    let conditional =
        (sqrt_a + t2 * (inv.det_a * inv.det_b).sqrt() + t2 * inv.det_gamma) / (T::one() + t2 * sqrt_b);
    let d = kappa(sqrt_b)? - kappa(pair.eta_minus())? - kappa(pair.eta_plus())? + kappa(conditional)?;
    if d < T::zero() && d >= -T::CLAMP_TOL {
        return Ok(T::zero());
    }
    Ok(d)
}

/// Largest intensity correlation reachable with an entangled squeezed input:
/// `2 + (t_l² + t_m²) / (2 n̄ t_l t_m)`.
pub fn max_squeezed_correlation<T: Scalar>(n_bar: T, t_l: T, t_m: T) -> Result<T> {
    if !(n_bar > T::zero() && t_l > T::zero() && t_m > T::zero()) {
        return Err(Error::OutOfDomain(format!("n_bar = {n_bar}, t_l = {t_l}, t_m = {t_m} must all be > 0")));
    }
    Ok(two::<T>() + (t_l / t_m + t_m / t_l) / (two::<T>() * n_bar))
}

/// All correlation measures for one output pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport<T> {
    pub c_value: T,
    pub physical: bool,
    pub separable: bool,
    pub eta_tilde_minus: T,
    pub discord_measured_on_l: T,
    pub discord_measured_on_m: T,
}

/// Evaluates every measure on `sigma`, whose first mode is `l` and second `m`.
pub fn correlation_report<T: Scalar>(sigma: &TwoModeCovariance<T>) -> Result<CorrelationReport<T>> {
    let physical = validate_physical(sigma);
    let sf = standard_form(sigma)?;
    let sep = is_separable(&sf)?;
    Ok(CorrelationReport {
        c_value: intensity_correlation(&sf)?,
        physical,
        separable: sep.separable,
        eta_tilde_minus: sep.eta_tilde_minus,
        discord_measured_on_l: gaussian_discord(&sf, MeasuredMode::First)?,
        discord_measured_on_m: gaussian_discord(&sf, MeasuredMode::Second)?,
    })
}

/// One sample of the thermal-input discord surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint<T> {
    pub t_l: T,
    pub t_m: T,
    /// `None` where the point is masked as infeasible (`t_l² + t_m² > 1`).
    pub discord: Option<T>,
}

/// Discord (measured on mode `l`) of the thermal output as a function of the
/// transmission moduli `t_l = |S_{l,k'}|`, `t_m = |S_{m,k'}|`, both taken
/// from `grid`. Rows are indexed by `t_l`, columns by `t_m`.
pub fn thermal_discord_surface<T: Scalar>(
    n_bar: T,
    grid: &[T],
    physical_only: bool,
) -> Result<Vec<SurfacePoint<T>>> {
    let mut out = Vec::with_capacity(grid.len() * grid.len());
    for &t_l in grid {
        for &t_m in grid {
            let discord = if physical_only && t_l * t_l + t_m * t_m > T::one() {
                None
            } else {
                let sf = thermal_covariance(n_bar, t_l, t_m)?;
                Some(gaussian_discord(&sf, MeasuredMode::First)?)
            };
            out.push(SurfacePoint { t_l, t_m, discord });
        }
    }
    Ok(out)
}
