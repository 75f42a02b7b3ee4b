//! Particle ⊗ detector states.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{free_evolve, PositionGrid, Space, StateVector};

/// A state over the product basis (grid index × detector index), flattened
/// as `grid_index * detector_dim + detector_index`. The detector basis
/// states are orthonormal by construction.
#[derive(Debug, Clone)]
pub struct CompositeState {
    state: StateVector,
    detector_dim: usize,
}

impl CompositeState {
    /// `Σ_n component_n ⊗ |d_n⟩`; normalized if the scaled components were.
    pub fn entangle(components: &[(StateVector, usize)], detector_dim: usize) -> Result<Self> {
        if detector_dim < 2 {
            return Err(Error::Config(format!(
                "detector dimension must be at least 2, got {detector_dim}"
            )));
        }
        let Some((first, _)) = components.first() else {
            return Err(Error::ZeroVector);
        };
        let Space::Grid(grid) = first.space() else {
            return Err(Error::InvariantViolation(
                "detector components must live on a position grid",
            ));
        };
        let grid = grid.clone();
        let n = grid.n_points();
        let mut amps = DVector::<C64>::zeros(n * detector_dim);
        for (comp, k) in components {
            if comp.space() != first.space() {
                return Err(Error::DimensionMismatch(comp.dim(), n));
            }
            if *k >= detector_dim {
                return Err(Error::DetectorIndexOutOfRange(*k, detector_dim));
            }
            for i in 0..n {
                amps[i * detector_dim + k] += comp.amp(i);
            }
        }
        let space = Space::Product { grid, detector_dim };
        Ok(CompositeState {
            state: StateVector::from_dvector(space, amps),
            detector_dim,
        })
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }

    pub fn detector_dim(&self) -> usize {
        self.detector_dim
    }

    pub fn grid(&self) -> &PositionGrid {
        match self.state.space() {
            Space::Product { grid, .. } => grid,
            _ => unreachable!("composite states always live on a product space"),
        }
    }

    /// The particle component entangled with detector state `k`.
    pub fn sector(&self, k: usize) -> Result<StateVector> {
        if k >= self.detector_dim {
            return Err(Error::DetectorIndexOutOfRange(k, self.detector_dim));
        }
        let grid = self.grid().clone();
        let n = grid.n_points();
        let amps = DVector::from_fn(n, |i, _| self.state.amp(i * self.detector_dim + k));
        Ok(StateVector::from_dvector(Space::Grid(grid), amps))
    }

    /// Particle intensity after tracing out the detector:
    /// `Σ_k |ψ(x, d_k)|²` pointwise, with no cross terms.
    pub fn marginal_intensity(&self) -> Vec<f64> {
        let n = self.grid().n_points();
        (0..n)
            .map(|i| {
                (0..self.detector_dim)
                    .map(|k| self.state.amp(i * self.detector_dim + k).norm_sqr())
                    .sum()
            })
            .collect()
    }

    /// Free evolution of the particle factor (detector untouched).
    pub fn evolve(&self, t: f64) -> Result<CompositeState> {
        let mut sectors = Vec::with_capacity(self.detector_dim);
        for k in 0..self.detector_dim {
            let s = self.sector(k)?;
            if s.norm() == 0.0 {
                sectors.push(s);
            } else {
                sectors.push(free_evolve(&s, t)?);
            }
        }
        let n = self.grid().n_points();
        let amps = DVector::from_fn(n * self.detector_dim, |idx, _| {
            sectors[idx % self.detector_dim].amp(idx / self.detector_dim)
        });
        Ok(CompositeState {
            state: StateVector::from_dvector(self.state.space().clone(), amps),
            detector_dim: self.detector_dim,
        })
    }

    pub fn norm(&self) -> f64 {
        self.state.norm()
    }
}
