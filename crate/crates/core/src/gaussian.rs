//! Gaussian input states and two-mode covariance matrices.
//!
//! Quadratures are ordered `(x_l, p_l, x_m, p_m)` and scaled so that the
//! vacuum variance is 1/2. This is the only scaling convention in the crate.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{
    block_normalizer, det2, det4, is_positive_definite, mul2, signed_singular_values, transpose2, Mat2, Mat4,
};
use crate::measures::symplectic_eigenvalues;
use crate::scalar::{half, Scalar};

/// State of the single occupied input mode. All other inputs are vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianInput<T> {
    /// Coherent state with complex mean amplitude.
    Coherent { amplitude: Complex<T> },
    /// Thermal state with mean photon number `n_bar`.
    Thermal { n_bar: T },
    /// Squeezed vacuum with squeezing parameter `r` and phase `theta` in `[0, 2π)`.
    Squeezed { r: T, theta: T },
}

impl<T: Scalar> GaussianInput<T> {
    pub fn coherent(amplitude: Complex<T>) -> Result<Self> {
        if !(amplitude.re.is_finite() && amplitude.im.is_finite()) {
            return Err(Error::OutOfRange("coherent amplitude must be finite".into()));
        }
        Ok(GaussianInput::Coherent { amplitude })
    }

    pub fn thermal(n_bar: T) -> Result<Self> {
        if !(n_bar >= T::zero() && n_bar.is_finite()) {
            return Err(Error::OutOfRange(format!("n_bar = {n_bar} must be finite and >= 0")));
        }
        Ok(GaussianInput::Thermal { n_bar })
    }

    /// Squeezed vacuum. `theta` is reduced into `[0, 2π)`.
    pub fn squeezed(r: T, theta: T) -> Result<Self> {
        if !(r >= T::zero() && r.is_finite()) {
            return Err(Error::OutOfRange(format!("r = {r} must be finite and >= 0")));
        }
        if !theta.is_finite() {
            return Err(Error::OutOfRange("theta must be finite".into()));
        }
        let tau = T::TAU();
        let mut theta = theta % tau;
        if theta < T::zero() {
            theta = theta + tau;
        }
        if theta >= tau {
            theta = T::zero();
        }
        Ok(GaussianInput::Squeezed { r, theta })
    }
}

/// Second moments of the occupied input mode that enter the output covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondMoments<T> {
    /// `<a† a> - <a†><a>`.
    pub delta_n: T,
    /// `<a a> - <a><a>`.
    pub delta_aa: Complex<T>,
}

/// Connected second moments of the input mode.
///
/// The displacement of a coherent state cancels in both moments, so the
/// amplitude never reaches the covariance.
pub fn input_moments<T: Scalar>(state: &GaussianInput<T>) -> SecondMoments<T> {
    match *state {
        GaussianInput::Coherent { .. } => {
            SecondMoments { delta_n: T::zero(), delta_aa: Complex::new(T::zero(), T::zero()) }
        }
        GaussianInput::Thermal { n_bar } => {
            SecondMoments { delta_n: n_bar, delta_aa: Complex::new(T::zero(), T::zero()) }
        }
        GaussianInput::Squeezed { r, theta } => {
            let (sh, ch) = (r.sinh(), r.cosh());
            SecondMoments { delta_n: sh * sh, delta_aa: -Complex::from_polar(sh * ch, theta) }
        }
    }
}

/// Symmetric 4×4 quadrature covariance of an output mode pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCovariance<T> {
    m: Mat4<T>,
}

impl<T: Scalar> TwoModeCovariance<T> {
    /// Checks symmetry (absolute `SYMMETRY_TOL`) and the vacuum noise floor
    /// `det A, det B >= 1/4 - CLAMP_TOL` on the local blocks. Single
    /// diagonal entries may sit below 1/2 (squeezed quadratures). The stored
    /// matrix is exactly symmetrized.
    pub fn new(m: [[T; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..=i {
                if !m[i][j].is_finite() || (m[i][j] - m[j][i]).abs() > T::SYMMETRY_TOL {
                    return Err(Error::InvalidCovariance(format!(
                        "entries ({i},{j}) = {} and ({j},{i}) = {} are not symmetric",
                        m[i][j], m[j][i]
                    )));
                }
            }
        }
        let floor = half::<T>() * half::<T>() - T::CLAMP_TOL;
        for k in [0, 2] {
            let det = m[k][k] * m[k + 1][k + 1] - m[k][k + 1] * m[k + 1][k];
            if !(m[k][k] > T::zero() && det >= floor) {
                return Err(Error::InvalidCovariance(format!(
                    "local block of mode {} has determinant {det} below the vacuum floor 1/4",
                    k / 2
                )));
            }
        }
        let mut sym = m;
        for i in 0..4 {
            for j in 0..i {
                let avg = (m[i][j] + m[j][i]) * half::<T>();
                sym[i][j] = avg;
                sym[j][i] = avg;
            }
        }
        Ok(TwoModeCovariance { m: sym })
    }

    /// Two-mode vacuum, `1/2 · I`.
    pub fn vacuum() -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = half();
        }
        TwoModeCovariance { m }
    }

    pub fn matrix(&self) -> &[[T; 4]; 4] {
        &self.m
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.m[row][col]
    }

    /// Block of the first mode.
    pub fn block_a(&self) -> [[T; 2]; 2] {
        self.block(0, 0)
    }

    /// Block of the second mode.
    pub fn block_b(&self) -> [[T; 2]; 2] {
        self.block(2, 2)
    }

    /// Correlation block between the two modes.
    pub fn block_gamma(&self) -> [[T; 2]; 2] {
        self.block(0, 2)
    }

    fn block(&self, r: usize, c: usize) -> Mat2<T> {
        [[self.m[r][c], self.m[r][c + 1]], [self.m[r + 1][c], self.m[r + 1][c + 1]]]
    }

    /// Same state with the two modes relabelled.
    pub fn swap_modes(&self) -> Self {
        let perm = [2, 3, 0, 1];
        let mut m = [[T::zero(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = self.m[perm[i]][perm[j]];
            }
        }
        TwoModeCovariance { m }
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut d = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        d
    }
}

/// Local symplectic invariants of a two-mode covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants<T> {
    pub det_a: T,
    pub det_b: T,
    pub det_gamma: T,
    pub det_sigma: T,
}

pub fn invariants<T: Scalar>(sigma: &TwoModeCovariance<T>) -> Invariants<T> {
    Invariants {
        det_a: det2(&sigma.block_a()),
        det_b: det2(&sigma.block_b()),
        det_gamma: det2(&sigma.block_gamma()),
        det_sigma: det4(sigma.matrix()),
    }
}

/// Canonical parameters `(alpha, beta, gamma_x, gamma_p)` of a two-mode
/// covariance under local symplectic operations.
///
/// Functions taking a `StandardForm` accept any sign pattern of the gammas;
/// [`standard_form`] always returns the canonical ordering
/// `gamma_x >= |gamma_p|` with the sign of `det Γ` on `gamma_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardForm<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma_x: T,
    pub gamma_p: T,
}

impl<T: Scalar> StandardForm<T> {
    /// Rejects `alpha` or `beta` below the vacuum value 1/2.
    pub fn new(alpha: T, beta: T, gamma_x: T, gamma_p: T) -> Result<Self> {
        let floor = half::<T>() - T::CLAMP_TOL;
        if !(alpha >= floor && beta >= floor) {
            return Err(Error::OutOfDomain(format!("alpha = {alpha}, beta = {beta} must both be >= 1/2")));
        }
        if !(gamma_x.is_finite() && gamma_p.is_finite() && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::OutOfDomain("standard-form parameters must be finite".into()));
        }
        Ok(StandardForm { alpha, beta, gamma_x, gamma_p })
    }

    pub fn is_canonical(&self) -> bool {
        self.gamma_x >= self.gamma_p.abs()
    }

    /// Equivalent parameters in canonical ordering.
    pub fn canonical(&self) -> Self {
        let (gx, gp) = (self.gamma_x.abs(), self.gamma_p.abs());
        let (hi, lo) = if gx >= gp { (gx, gp) } else { (gp, gx) };
        let negative = (self.gamma_x < T::zero()) != (self.gamma_p < T::zero())
            && self.gamma_x != T::zero()
            && self.gamma_p != T::zero();
        StandardForm { gamma_x: hi, gamma_p: if negative { -lo } else { lo }, ..*self }
    }

    /// Closed-form invariants of the standard-form matrix.
    pub fn invariants(&self) -> Invariants<T> {
        let ab = self.alpha * self.beta;
        Invariants {
            det_a: self.alpha * self.alpha,
            det_b: self.beta * self.beta,
            det_gamma: self.gamma_x * self.gamma_p,
            det_sigma: (ab - self.gamma_x * self.gamma_x) * (ab - self.gamma_p * self.gamma_p),
        }
    }

    /// Parameters with the two modes exchanged.
    pub fn swap_modes(&self) -> Self {
        StandardForm { alpha: self.beta, beta: self.alpha, ..*self }
    }

    /// Embeds the parameters as a 4×4 covariance.
    pub fn to_covariance(&self) -> TwoModeCovariance<T> {
        let z = T::zero();
        let (a, b, gx, gp) = (self.alpha, self.beta, self.gamma_x, self.gamma_p);
        TwoModeCovariance { m: [[a, z, gx, z], [z, a, z, gp], [gx, z, b, z], [z, gp, z, b]] }
    }
}

impl<T: Scalar> From<StandardForm<T>> for TwoModeCovariance<T> {
    fn from(sf: StandardForm<T>) -> Self {
        sf.to_covariance()
    }
}

/// Reduces a covariance to its canonical standard form.
///
/// Each local block is first normalized to a multiple of the identity by a
/// local symplectic map; the remaining local freedom is a pair of rotations,
/// which bring the normalized correlation block to its signed singular
/// values.
pub fn standard_form<T: Scalar>(sigma: &TwoModeCovariance<T>) -> Result<StandardForm<T>> {
    let a = sigma.block_a();
    let b = sigma.block_b();
    let na = block_normalizer(&a)
        .ok_or_else(|| Error::NonPhysicalInput("block A is not positive definite".into()))?;
    let nb = block_normalizer(&b)
        .ok_or_else(|| Error::NonPhysicalInput("block B is not positive definite".into()))?;
    let gamma = mul2(&mul2(&na, &sigma.block_gamma()), &transpose2(&nb));
    let (gamma_x, gamma_p) = signed_singular_values(&gamma);
    Ok(StandardForm { alpha: det2(&a).sqrt(), beta: det2(&b).sqrt(), gamma_x, gamma_p })
}

/// Uncertainty principle check: `sigma` positive definite and its smaller
/// symplectic eigenvalue at least `1/2 - CLAMP_TOL`.
pub fn validate_physical<T: Scalar>(sigma: &TwoModeCovariance<T>) -> bool {
    if !is_positive_definite(sigma.matrix()) {
        return false;
    }
    let inv = invariants(sigma);
    match symplectic_eigenvalues(&inv) {
        Ok(pair) => pair.eta_minus() >= half::<T>() - T::CLAMP_TOL,
        Err(_) => false,
    }
}

/// Standard-form parameters via the invariant quadratic
/// `t² - s·t + det(Γ)² = 0`. Kept crate-visible as a cross-check of
/// [`standard_form`] in tests.
#[cfg(test)]
pub(crate) fn standard_form_from_invariants<T: Scalar>(inv: &Invariants<T>) -> Result<StandardForm<T>> {
    let alpha = inv.det_a.sqrt();
    let beta = inv.det_b.sqrt();
    let ab = alpha * beta;
    let s = (ab * ab + inv.det_gamma * inv.det_gamma - inv.det_sigma) / ab;
    let disc = s * s - crate::scalar::lit::<T>(4.0) * inv.det_gamma * inv.det_gamma;
    if disc < -T::CLAMP_TOL {
        return Err(Error::NonPhysicalInput(format!("root discriminant {disc} < 0")));
    }
    let root = disc.max(T::zero()).sqrt();
    let hi = ((s + root) * half::<T>()).max(T::zero());
    let lo = ((s - root) * half::<T>()).max(T::zero());
    let sign = if inv.det_gamma < T::zero() { -T::one() } else { T::one() };
    Ok(StandardForm { alpha, beta, gamma_x: hi.sqrt(), gamma_p: sign * lo.sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sf(a: f64, b: f64, gx: f64, gp: f64) -> StandardForm<f64> {
        StandardForm::new(a, b, gx, gp).unwrap()
    }

    #[test]
    fn moments_of_each_input() {
        let coh = input_moments(&GaussianInput::coherent(Complex::new(3.0, -2.0)).unwrap());
        assert_eq!(coh.delta_n, 0.0);
        assert_eq!(coh.delta_aa, Complex::new(0.0, 0.0));

        let th = input_moments(&GaussianInput::thermal(1.0).unwrap());
        assert_eq!(th.delta_n, 1.0);
        assert_eq!(th.delta_aa, Complex::new(0.0, 0.0));

        let sq = input_moments(&GaussianInput::squeezed(1.0, 0.0).unwrap());
        assert_relative_eq!(sq.delta_n, 1.0f64.sinh().powi(2), max_relative = 1e-15);
        assert_relative_eq!(sq.delta_n, 1.381097845541816, max_relative = 1e-12);
        assert_relative_eq!(sq.delta_aa.re, -1.813430203923509, max_relative = 1e-12);
        assert!(sq.delta_aa.im.abs() < 1e-15);
    }

    #[test]
    fn input_validation() {
        assert!(GaussianInput::thermal(-0.1).is_err());
        assert!(GaussianInput::squeezed(-1.0, 0.0).is_err());
        assert!(GaussianInput::<f64>::squeezed(0.1, f64::NAN).is_err());
        match GaussianInput::squeezed(0.5, -std::f64::consts::FRAC_PI_2).unwrap() {
            GaussianInput::Squeezed { theta, .. } => {
                assert_relative_eq!(theta, 1.5 * std::f64::consts::PI, max_relative = 1e-15)
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn invariants_examples() {
        let inv = invariants(&TwoModeCovariance::<f64>::vacuum());
        assert_eq!((inv.det_a, inv.det_b, inv.det_gamma, inv.det_sigma), (0.25, 0.25, 0.0, 0.0625));

        let inv = invariants(&sf(1.0, 1.0, 0.5, 0.5).to_covariance());
        assert_relative_eq!(inv.det_a, 1.0);
        assert_relative_eq!(inv.det_b, 1.0);
        assert_relative_eq!(inv.det_gamma, 0.25);
        assert_relative_eq!(inv.det_sigma, 0.5625, max_relative = 1e-15);

        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let inv = invariants(&TwoModeCovariance::new(m).unwrap());
        assert_eq!((inv.det_a, inv.det_b, inv.det_gamma, inv.det_sigma), (1.0, 1.0, 0.0, 1.0));
    }

    #[test]
    fn covariance_constructor_rejects_bad_input() {
        let mut m = *TwoModeCovariance::<f64>::vacuum().matrix();
        m[0][1] = 0.1;
        assert!(matches!(TwoModeCovariance::new(m), Err(Error::InvalidCovariance(_))));
        let mut m = *TwoModeCovariance::<f64>::vacuum().matrix();
        m[3][3] = 0.4;
        assert!(matches!(TwoModeCovariance::new(m), Err(Error::InvalidCovariance(_))));
    }

    #[test]
    fn standard_form_is_a_fixed_point() {
        for s in [sf(1.0, 1.0, 0.5, 0.5), sf(0.75, 0.75, 0.3, -0.3), sf(2.0, 1.5, 1.1, 0.2)] {
            let out = standard_form(&s.to_covariance()).unwrap();
            assert_relative_eq!(out.alpha, s.alpha, max_relative = 1e-14);
            assert_relative_eq!(out.beta, s.beta, max_relative = 1e-14);
            assert_relative_eq!(out.gamma_x, s.gamma_x, max_relative = 1e-14);
            assert_relative_eq!(out.gamma_p, s.gamma_p, max_relative = 1e-14);
        }
    }

    #[test]
    fn standard_form_canonicalizes_sign_pattern() {
        let out = standard_form(&sf(1.0, 1.2, -0.2, 0.6).to_covariance()).unwrap();
        assert_relative_eq!(out.gamma_x, 0.6, max_relative = 1e-14);
        assert_relative_eq!(out.gamma_p, -0.2, max_relative = 1e-14);
        assert!(out.is_canonical());
        assert_eq!(sf(1.0, 1.2, -0.2, 0.6).canonical(), sf(1.0, 1.2, 0.6, -0.2));
        assert_eq!(sf(1.0, 1.2, -0.6, -0.2).canonical(), sf(1.0, 1.2, 0.6, 0.2));
    }

    #[test]
    fn standard_form_matches_invariant_roots() {
        // Locally rotated and squeezed version of a standard form.
        let base = sf(1.3, 2.1, 0.9, -0.4).to_covariance();
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let sq = 1.7;
        let local_a = [[c * sq, -s * sq], [s / sq, c / sq]];
        let local_b = [[0.8f64.cos(), 0.8f64.sin()], [-0.8f64.sin(), 0.8f64.cos()]];
        let mut t = [[0.0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                t[i][j] = local_a[i][j];
                t[i + 2][j + 2] = local_b[i][j];
            }
        }
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4)
                    .flat_map(|k| (0..4).map(move |l| (k, l)))
                    .map(|(k, l)| t[i][k] * base.get(k, l) * t[j][l])
                    .sum();
            }
        }
        let sigma = TwoModeCovariance::new(out).unwrap();
        let direct = standard_form(&sigma).unwrap();
        let oracle = standard_form_from_invariants(&invariants(&sigma)).unwrap();
        assert_relative_eq!(direct.alpha, 1.3, max_relative = 1e-12);
        assert_relative_eq!(direct.gamma_x, oracle.gamma_x, max_relative = 1e-9);
        assert_relative_eq!(direct.gamma_p, oracle.gamma_p, max_relative = 1e-9);
        assert_relative_eq!(direct.gamma_p, -0.4, max_relative = 1e-12);
    }

    #[test]
    fn constructor_rejects_blocks_below_the_vacuum_floor() {
        let mut m = *TwoModeCovariance::<f64>::vacuum().matrix();
        m[0][1] = 0.7;
        m[1][0] = 0.7;
        assert!(matches!(TwoModeCovariance::new(m), Err(Error::InvalidCovariance(_))));
        // A squeezed quadrature alone is fine.
        let mut m = *TwoModeCovariance::<f64>::vacuum().matrix();
        m[0][0] = 0.1;
        m[1][1] = 2.5;
        assert!(TwoModeCovariance::new(m).is_ok());
    }

    #[test]
    fn physicality_examples() {
        assert!(validate_physical(&TwoModeCovariance::<f64>::vacuum()));
        assert!(!validate_physical(&sf(0.75, 0.75, 0.8, 0.8).to_covariance()));
        assert!(validate_physical(&sf(1.0, 1.0, 0.5, 0.5).to_covariance()));
        assert!(!validate_physical(&sf(1.0, 1.0, 0.5000001, 0.5000001).to_covariance()));
    }

    #[test]
    fn swap_modes_exchanges_blocks() {
        let sigma = sf(1.3, 2.1, 0.9, -0.4).to_covariance();
        let swapped = sigma.swap_modes();
        assert_eq!(swapped.block_a(), sigma.block_b());
        assert_eq!(swapped.block_b(), sigma.block_a());
        assert_eq!(swapped.block_gamma(), transpose2(&sigma.block_gamma()));
        assert_eq!(swapped.swap_modes(), sigma);
    }

    #[test]
    fn works_in_single_precision() {
        let s = StandardForm::<f32>::new(1.0, 1.0, 0.5, 0.5).unwrap();
        assert!(validate_physical(&s.to_covariance()));
        let out = standard_form(&s.to_covariance()).unwrap();
        assert!((out.gamma_x - 0.5).abs() < 1e-6);
    }
}
