//! Finite-dimensional numerical kernel: position grids, state vectors,
//! projectors, detector tensor products, free evolution, Born probabilities.
//!
//! Grid states carry the grid spacing as a quadrature weight so that inner
//! products approximate the corresponding integrals; abstract spaces use
//! weight 1.

mod composite;
mod evolve;
mod projector;

pub use composite::CompositeState;
pub use evolve::free_evolve;
pub use projector::{is_boolean_block, Projector};

use std::collections::BTreeSet;

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tol;

/// Uniform discretization of an interval of the position axis.
#[derive(Debug, Clone, PartialEq)]
pub struct PositionGrid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl PositionGrid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if x_min >= x_max {
            return Err(Error::InvalidGrid(format!(
                "x_min {x_min} must be below x_max {x_max}"
            )));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        Ok(PositionGrid {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points as f64 - 1.0)
    }

    pub fn point(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.point(i))
    }

    /// Indices of the grid points inside `[a, b]` (inclusive).
    pub fn indices_in(&self, a: f64, b: f64) -> BTreeSet<usize> {
        (0..self.n_points)
            .filter(|&i| {
                let x = self.point(i);
                a <= x && x <= b
            })
            .collect()
    }

    pub fn contains_interval(&self, a: f64, b: f64) -> bool {
        self.x_min <= a && b <= self.x_max
    }
}

/// The space a state vector lives in.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Grid(PositionGrid),
    Abstract(usize),
    /// Particle grid tensored with a finite detector basis; flattened index
    /// layout is `grid_index * detector_dim + detector_index`.
    Product {
        grid: PositionGrid,
        detector_dim: usize,
    },
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Grid(g) => g.n_points(),
            Space::Abstract(d) => *d,
            Space::Product { grid, detector_dim } => grid.n_points() * detector_dim,
        }
    }

    /// Quadrature weight of the inner product.
    pub fn weight(&self) -> f64 {
        match self {
            Space::Grid(g) => g.spacing(),
            Space::Abstract(_) => 1.0,
            Space::Product { grid, .. } => grid.spacing(),
        }
    }
}

/// Complex amplitudes over a grid or an abstract finite basis.
#[derive(Debug, Clone)]
pub struct StateVector {
    space: Space,
    amps: DVector<C64>,
}

impl StateVector {
    pub fn new(space: Space, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::DimensionMismatch(amps.len(), space.dim()));
        }
        Ok(StateVector {
            space,
            amps: DVector::from_vec(amps),
        })
    }

    pub(crate) fn from_dvector(space: Space, amps: DVector<C64>) -> Self {
        debug_assert_eq!(amps.len(), space.dim());
        StateVector { space, amps }
    }

    /// The `i`-th basis vector of an abstract space.
    pub fn basis_state(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::DimensionMismatch(i, dim));
        }
        let mut amps = DVector::zeros(dim);
        amps[i] = C64::ONE;
        Ok(StateVector {
            space: Space::Abstract(dim),
            amps,
        })
    }

    /// Normalized Gaussian profile `exp(−(x−center)²/(4σ²))` hard-windowed
    /// to `[center − half_width, center + half_width]`.
    ///
    /// The hard window gives slit states at different centers exactly
    /// disjoint support, which makes their orthogonality exact rather than
    /// approximate. The Gaussian shape itself is a modelling choice; any
    /// localized profile would do.
    pub fn gaussian_slit(
        grid: &PositionGrid,
        center: f64,
        half_width: f64,
        sigma: f64,
    ) -> Result<Self> {
        if sigma <= 0.0 || !sigma.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        let (a, b) = (center - half_width, center + half_width);
        if !grid.contains_interval(a, b) {
            return Err(Error::WindowOutsideGrid(a, b));
        }
        let window = grid.indices_in(a, b);
        if window.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let mut amps = DVector::zeros(grid.n_points());
        for &i in &window {
            let x = grid.point(i);
            amps[i] = C64::new((-(x - center).powi(2) / (4.0 * sigma * sigma)).exp(), 0.0);
        }
        let state = StateVector {
            space: Space::Grid(grid.clone()),
            amps,
        };
        state.normalized()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn weight(&self) -> f64 {
        self.space.weight()
    }

    pub fn amps(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> C64 {
        self.amps[i]
    }

    /// Weighted inner product `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        let dot: C64 = self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(dot * self.weight())
    }

    pub fn norm(&self) -> f64 {
        (self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.weight()).sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= tol::EPS_NORM
    }

    pub(crate) fn ensure_normalized(&self) -> Result<()> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        if (n - 1.0).abs() > tol::EPS_NORM {
            return Err(Error::NotNormalized((n - 1.0).abs()));
        }
        Ok(())
    }

    pub fn normalized(&self) -> Result<StateVector> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(StateVector {
            space: self.space.clone(),
            amps: self.amps.map(|a| a / n),
        })
    }

    pub fn scaled(&self, c: C64) -> StateVector {
        StateVector {
            space: self.space.clone(),
            amps: self.amps.map(|a| a * c),
        }
    }

    pub fn try_add(&self, other: &StateVector) -> Result<StateVector> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(StateVector {
            space: self.space.clone(),
            amps: &self.amps + &other.amps,
        })
    }

    /// Pointwise `|ψ_i|²`.
    pub fn intensity(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}
