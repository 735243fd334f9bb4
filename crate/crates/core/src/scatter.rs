//! Random scattering matrices and the covariance of two output modes.
//!
//! Output modes are `b_l = Σ_k S_{l,k} a_k`. Only input `k'` is occupied, so
//! only column `k'` of `S` enters the output covariance. Indices are 0-based.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gaussian::{input_moments, GaussianInput, StandardForm, TwoModeCovariance};
use crate::scalar::{half, lit, Scalar};

/// N×N unitary linking input to output mode operators, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringMatrix<T> {
    n: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ScatteringMatrix<T> {
    /// Builds a matrix from rows, checking squareness and unitarity.
    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidDimension("scattering matrix needs N >= 1".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDimension("scattering matrix must be square".into()));
        }
        let s = ScatteringMatrix { n, entries: rows.into_iter().flatten().collect() };
        let residual = s.unitarity_residual();
        if !(residual < T::UNITARY_TOL) {
            return Err(Error::InvalidConfig(format!("matrix is not unitary: residual {residual}")));
        }
        Ok(s)
    }

    /// Draws from the circular unitary (Haar) ensemble. Deterministic in `seed`.
    ///
    /// A matrix of independent standard complex normals is orthonormalized
    /// column by column (Gram-Schmidt with one re-orthogonalization pass).
    /// The implied triangular factor has a positive real diagonal, which is
    /// the phase normalization that makes the result exactly Haar.
    pub fn haar_random(n: usize, seed: u64) -> Result<Self> {
        let cols = haar_columns(n, seed, n)?;
        let mut entries = vec![Complex::new(T::zero(), T::zero()); n * n];
        for (k, col) in cols.iter().enumerate() {
            for (l, v) in col.iter().enumerate() {
                entries[l * n + k] = *v;
            }
        }
        Ok(ScatteringMatrix { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Transmission coefficient from input `k` to output `l`.
    pub fn get(&self, l: usize, k: usize) -> Complex<T> {
        self.entries[l * self.n + k]
    }

    pub fn column(&self, k: usize) -> Vec<Complex<T>> {
        (0..self.n).map(|l| self.get(l, k)).collect()
    }

    /// `max |(S† S - I)_{ij}|`.
    pub fn unitarity_residual(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Complex::new(T::zero(), T::zero());
                for l in 0..self.n {
                    acc = acc + self.get(l, i).conj() * self.get(l, j);
                }
                if i == j {
                    acc.re = acc.re - T::one();
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }
}

/// The first `count` columns of [`ScatteringMatrix::haar_random`]`(n, seed)`,
/// bit-for-bit, without generating the rest of the matrix.
pub fn haar_columns<T: Scalar>(n: usize, seed: u64, count: usize) -> Result<Vec<Vec<Complex<T>>>> {
    if n == 0 {
        return Err(Error::InvalidDimension("Haar unitary needs N >= 1".into()));
    }
    if count > n {
        return Err(Error::IndexOutOfRange(format!("{count} columns requested from N = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = half::<T>().sqrt();
    let mut q: Vec<Vec<Complex<T>>> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut v: Vec<Complex<T>> = (0..n)
            .map(|_| {
                let re = T::standard_normal(&mut rng) * scale;
                let im = T::standard_normal(&mut rng) * scale;
                Complex::new(re, im)
            })
            .collect();
        for _pass in 0..2 {
            for prev in &q {
                let mut proj = Complex::new(T::zero(), T::zero());
                for (p, x) in prev.iter().zip(&v) {
                    proj = proj + p.conj() * x;
                }
                for (x, p) in v.iter_mut().zip(prev) {
                    *x = *x - proj * p;
                }
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt();
        for x in &mut v {
            *x = *x / norm;
        }
        q.push(v);
    }
    Ok(q)
}

/// Occupied input channel `k_prime` and the two observed outputs `l != m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModePair {
    pub k_prime: usize,
    pub l: usize,
    pub m: usize,
}

impl ModePair {
    pub fn new(k_prime: usize, l: usize, m: usize) -> Result<Self> {
        if l == m {
            return Err(Error::OutOfRange(format!("output modes must differ (l = m = {l})")));
        }
        Ok(ModePair { k_prime, l, m })
    }

    pub fn swapped(&self) -> Self {
        ModePair { k_prime: self.k_prime, l: self.m, m: self.l }
    }
}

/// Covariance of outputs `(l, m)` for the given input state and matrix.
pub fn output_covariance<T: Scalar>(
    state: &GaussianInput<T>,
    s: &ScatteringMatrix<T>,
    pair: &ModePair,
) -> Result<TwoModeCovariance<T>> {
    let n = s.dim();
    for (name, idx) in [("k_prime", pair.k_prime), ("l", pair.l), ("m", pair.m)] {
        if idx >= n {
            return Err(Error::IndexOutOfRange(format!("{name} = {idx} with N = {n}")));
        }
    }
    if pair.l == pair.m {
        return Err(Error::OutOfRange("output modes must differ".into()));
    }
    pair_covariance(state, s.get(pair.l, pair.k_prime), s.get(pair.m, pair.k_prime))
}

/// Covariance of two outputs with transmission coefficients `s_l`, `s_m`
/// from the occupied input.
///
/// With `W = s_i* s_j + s_j* s_i`, `Z = s_i* s_j - s_j* s_i`, `Y = s_i s_j`:
///
/// ```text
/// cov(x_i, x_j) = δ_ij/2 + W Δn/2 + Re(Y Δaa)
/// cov(p_i, p_j) = δ_ij/2 + W Δn/2 - Re(Y Δaa)
/// cov(x_i, p_j) = [Z Δn + Y Δaa - (Y Δaa)*] / 2i
/// ```
///
/// The vacuum contributions of all other input channels sum to `δ_ij/2` by
/// unitarity.
pub fn pair_covariance<T: Scalar>(
    state: &GaussianInput<T>,
    s_l: Complex<T>,
    s_m: Complex<T>,
) -> Result<TwoModeCovariance<T>> {
    let mom = input_moments(state);
    let dn = Complex::new(mom.delta_n, T::zero());
    let h = half::<T>();
    let two_i = Complex::new(T::zero(), lit::<T>(2.0));
    let s = [s_l, s_m];
    let mut m = [[T::zero(); 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { h } else { T::zero() };
            let w = s[i].conj() * s[j] + s[j].conj() * s[i];
            let y = s[i] * s[j];
            let y_aa = y * mom.delta_aa;
            let z_ij = s[i].conj() * s[j] - s[j].conj() * s[i];
            let z_ji = -z_ij;
            m[2 * i][2 * j] = delta + (w * dn).re * h + y_aa.re;
            m[2 * i + 1][2 * j + 1] = delta + (w * dn).re * h - y_aa.re;
            // cov(x_i, p_j) and cov(p_i, x_j) = cov(x_j, p_i), each from its own expression.
            m[2 * i][2 * j + 1] = ((z_ij * dn + y_aa - y_aa.conj()) / two_i).re;
            m[2 * i + 1][2 * j] = ((z_ji * dn + y_aa - y_aa.conj()) / two_i).re;
        }
    }
    TwoModeCovariance::new(m)
}

/// Standard form of the output covariance for a thermal input, as a
/// function of the transmission moduli `t_l`, `t_m`:
/// `(n̄ t_l² + 1/2, n̄ t_m² + 1/2, n̄ t_l t_m, n̄ t_l t_m)`.
pub fn thermal_covariance<T: Scalar>(n_bar: T, t_l: T, t_m: T) -> Result<StandardForm<T>> {
    let unit = |t: T| t >= T::zero() && t <= T::one();
    if !(n_bar >= T::zero() && n_bar.is_finite()) || !unit(t_l) || !unit(t_m) {
        return Err(Error::OutOfRange(format!(
            "thermal covariance needs n_bar >= 0 and t in [0, 1] (n_bar = {n_bar}, t_l = {t_l}, t_m = {t_m})"
        )));
    }
    let h = half::<T>();
    let gamma = n_bar * t_l * t_m;
    Ok(StandardForm {
        alpha: n_bar * t_l * t_l + h,
        beta: n_bar * t_m * t_m + h,
        gamma_x: gamma,
        gamma_p: gamma,
    })
}

/// Per-task seed: SplitMix64 finalizer applied to
/// `master + (index + 1) · 0x9E3779B97F4A7C15`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
