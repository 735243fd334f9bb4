//! Atlas of two-mode states in the `(gamma_x, gamma_p)` plane at fixed
//! `(alpha, beta)`: physical, separable and entangled regions, plus the
//! `C = 2` contour of the intensity correlation.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gaussian::{validate_physical, StandardForm};
use crate::measures::{intensity_correlation, is_separable};
use crate::scalar::{half, lit, two, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateClass {
    Unphysical,
    Separable,
    Entangled,
}

impl StateClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateClass::Unphysical => "Unphysical",
            StateClass::Separable => "Separable",
            StateClass::Entangled => "Entangled",
        }
    }
}

fn check_diagonal<T: Scalar>(alpha: T, beta: T) -> Result<()> {
    let floor = half::<T>() - T::CLAMP_TOL;
    if !(alpha >= floor && beta >= floor) {
        return Err(Error::OutOfDomain(format!("alpha = {alpha}, beta = {beta} must be >= 1/2")));
    }
    Ok(())
}

/// Class of the standard-form state `(alpha, beta, gamma_x, gamma_p)`.
/// States exactly on a boundary fall on the physical / separable side.
pub fn classify<T: Scalar>(alpha: T, beta: T, gamma_x: T, gamma_p: T) -> Result<StateClass> {
    check_diagonal(alpha, beta)?;
    let sf = StandardForm::new(alpha, beta, gamma_x, gamma_p)?;
    if !validate_physical(&sf.to_covariance()) {
        return Ok(StateClass::Unphysical);
    }
    Ok(if is_separable(&sf)?.separable { StateClass::Separable } else { StateClass::Entangled })
}

/// Radius of the `C = 2` circle, `sqrt((2α - 1)(2β - 1) / 2)`.
/// Degenerates to 0 when either diagonal value is exactly 1/2.
pub fn c2_circle_radius<T: Scalar>(alpha: T, beta: T) -> Result<T> {
    check_diagonal(alpha, beta)?;
    let t2 = two::<T>();
    let prod = (t2 * alpha - T::one()) * (t2 * beta - T::one());
    Ok((prod.max(T::zero()) / t2).sqrt())
}

/// Intensity correlation of a cell, or a marker where it diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CValue<T> {
    Finite(T),
    Divergent,
}

impl<T: Scalar> CValue<T> {
    pub fn finite(&self) -> Option<T> {
        match self {
            CValue::Finite(v) => Some(*v),
            CValue::Divergent => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCell<T> {
    pub gamma_x: T,
    pub gamma_p: T,
    pub class: StateClass,
    pub c_value: CValue<T>,
}

/// Grid request. `extent = None` selects `1.05·sqrt(alpha·beta)`, which
/// encloses the whole physical region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec<T> {
    pub alpha: T,
    pub beta: T,
    pub extent: Option<T>,
    pub resolution: usize,
}

impl<T: Scalar> RegionSpec<T> {
    pub fn new(alpha: T, beta: T) -> Self {
        RegionSpec { alpha, beta, extent: None, resolution: 201 }
    }
}

/// Filled map over `[-extent, extent]²`. Cells are row-major with rows
/// indexed by `gamma_x` and columns by `gamma_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionGrid<T> {
    pub alpha: T,
    pub beta: T,
    pub extent: T,
    pub resolution: usize,
    pub cells: Vec<RegionCell<T>>,
}

impl<T: Scalar> RegionGrid<T> {
    /// Coordinate of grid line `i`; exactly antisymmetric about the centre.
    pub fn coordinate(&self, i: usize) -> T {
        grid_coordinate(self.extent, self.resolution, i)
    }

    pub fn cell(&self, i: usize, j: usize) -> &RegionCell<T> {
        &self.cells[i * self.resolution + j]
    }

    pub fn spacing(&self) -> T {
        two::<T>() * self.extent / lit::<T>((self.resolution - 1) as f64)
    }
}

fn grid_coordinate<T: Scalar>(extent: T, resolution: usize, i: usize) -> T {
    let steps = (resolution - 1) as f64;
    extent * lit::<T>(2.0 * i as f64 - steps) / lit::<T>(steps)
}

pub fn region_map<T: Scalar>(spec: &RegionSpec<T>) -> Result<RegionGrid<T>> {
    check_diagonal(spec.alpha, spec.beta)?;
    if spec.resolution < 2 {
        return Err(Error::InvalidConfig(format!("resolution {} < 2", spec.resolution)));
    }
    let extent = spec.extent.unwrap_or_else(|| lit::<T>(1.05) * (spec.alpha * spec.beta).sqrt());
    if !(extent > T::zero() && extent.is_finite()) {
        return Err(Error::InvalidConfig(format!("extent {extent} must be > 0")));
    }
    let res = spec.resolution;
    let rows = (0..res)
        .into_par_iter()
        .map(|i| {
            let gx = grid_coordinate(extent, res, i);
            (0..res)
                .map(|j| {
                    let gp = grid_coordinate(extent, res, j);
                    let class = classify(spec.alpha, spec.beta, gx, gp)?;
                    let sf = StandardForm::new(spec.alpha, spec.beta, gx, gp)?;
                    let c_value = match intensity_correlation(&sf) {
                        Ok(c) => CValue::Finite(c),
                        Err(Error::DivergentCorrelation(_)) => CValue::Divergent,
                        Err(e) => return Err(e),
                    };
                    Ok(RegionCell { gamma_x: gx, gamma_p: gp, class, c_value })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        alpha: spec.alpha,
        beta: spec.beta,
        extent,
        resolution: res,
        cells: rows.into_iter().flatten().collect(),
    })
}
