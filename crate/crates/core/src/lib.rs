//! Correlations between modes of light scattered by a disordered medium.
//!
//! A single input channel carries a Gaussian state (coherent, thermal or
//! squeezed); every other input is vacuum. The medium is a unitary
//! scattering matrix, typically drawn from the Haar ensemble. For any two
//! output modes the crate builds the 4×4 quadrature covariance and
//! evaluates three correlation measures on it:
//!
//! * the intensity correlation `C = <n_l n_m> / (<n_l><n_m>)`,
//! * separability via the partially transposed covariance,
//! * Gaussian quantum discord.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! aliases below are what the command-line tool uses. The vacuum variance is
//! 1/2 throughout.
//!
//! ```
//! use qscatter_core::{correlation_report, output_covariance, GaussianInput, ModePair, ScatteringMatrix};
//!
//! let s = ScatteringMatrix::<f64>::haar_random(8, 1).unwrap();
//! let state = GaussianInput::thermal(10.0).unwrap();
//! let sigma = output_covariance(&state, &s, &ModePair::new(0, 2, 5).unwrap()).unwrap();
//! let report = correlation_report(&sigma).unwrap();
//! assert!(report.separable);
//! assert!(report.discord_measured_on_l > 0.0);
//! ```

// Negated comparisons are deliberate: they reject NaN along with
// out-of-range values. Index loops mirror the matrix formulas.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod ensemble;
pub mod error;
pub mod gaussian;
mod linalg;
pub mod measures;
pub mod regions;
pub mod scalar;
pub mod scatter;

pub use ensemble::{
    mean_discord_analytic, mean_discord_mc, sweep_fig4, EnsembleConfig, EnsembleStat, SweepMethod, SweepRow,
};
pub use error::{Error, Result};
pub use gaussian::{
    input_moments, invariants, standard_form, validate_physical, GaussianInput, Invariants, SecondMoments,
    StandardForm, TwoModeCovariance,
};
pub use measures::{
    correlation_report, entropy, gaussian_discord, intensity_correlation, is_separable, kappa,
    max_squeezed_correlation, symplectic_eigenvalues, thermal_discord_surface, CorrelationReport,
    MeasuredMode, Separability, SurfacePoint, SymplecticPair,
};
pub use num_complex::Complex;
pub use regions::{
    c2_circle_radius, classify, region_map, CValue, RegionCell, RegionGrid, RegionSpec, StateClass,
};
pub use scalar::Scalar;
pub use scatter::{
    derive_seed, haar_columns, output_covariance, pair_covariance, thermal_covariance, ModePair,
    ScatteringMatrix,
};

pub type GaussianInputF64 = GaussianInput<f64>;
pub type TwoModeCovarianceF64 = TwoModeCovariance<f64>;
pub type StandardFormF64 = StandardForm<f64>;
pub type ScatteringMatrixF64 = ScatteringMatrix<f64>;
pub type CorrelationReportF64 = CorrelationReport<f64>;
pub type RegionGridF64 = RegionGrid<f64>;
pub type EnsembleConfigF64 = EnsembleConfig<f64>;
pub type EnsembleStatF64 = EnsembleStat<f64>;

pub type StandardFormF32 = StandardForm<f32>;
pub type TwoModeCovarianceF32 = TwoModeCovariance<f32>;
pub type ScatteringMatrixF32 = ScatteringMatrix<f32>;
