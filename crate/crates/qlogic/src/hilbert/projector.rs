//! Hermitian idempotent operators, stored by the subspace they project onto.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{PositionGrid, StateVector};
use crate::span::Span;
use crate::tol;

/// A projection operator on a weighted `C^n`.
///
/// Internally the operator is kept in factored form (`P = B·B†·w` for a
/// weighted-orthonormal frame `B`, or an exact coordinate mask), so that
/// application and Born probabilities cost `O(n·rank)` and interval
/// projectors on large grids never form an `n × n` matrix. [`Self::matrix`]
/// materializes the dense operator on demand.
#[derive(Debug, Clone)]
pub struct Projector {
    pub(crate) span: Span,
}

impl Projector {
    pub(crate) fn from_span(span: Span) -> Self {
        Projector { span }
    }

    /// Projector onto the grid points of `[a, b]`: a diagonal 0/1 operator.
    ///
    /// An interval that misses every grid point yields the zero operator
    /// (detectable through [`Self::is_zero`]) rather than an error.
    pub fn interval(grid: &PositionGrid, a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || a >= b {
            return Err(Error::InvalidGrid(format!(
                "interval endpoints must satisfy a < b, got [{a}, {b}]"
            )));
        }
        let set = grid.indices_in(a, b);
        Ok(Projector {
            span: Span::axes(grid.n_points(), grid.spacing(), set),
        })
    }

    /// Rank-one projector `|v⟩⟨v|` (quadrature weight folded in, so that
    /// `P·v = v`).
    pub fn rank_one(v: &StateVector) -> Result<Self> {
        v.ensure_normalized()?;
        let basis = DMatrix::from_columns(&[v.amps().clone()]);
        Ok(Projector {
            span: Span::frame(v.dim(), v.weight(), basis),
        })
    }

    /// Projector onto a set of basis states of an abstract (weight-1)
    /// space: a diagonal 0/1 operator.
    pub fn onto_basis_states(dim: usize, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            if i >= dim {
                return Err(Error::DimensionMismatch(i, dim));
            }
        }
        Ok(Projector {
            span: Span::axes(dim, 1.0, indices.iter().cloned().collect()),
        })
    }

    pub fn identity(dim: usize, weight: f64) -> Self {
        Projector {
            span: Span::full(dim, weight),
        }
    }

    pub fn zero(dim: usize, weight: f64) -> Self {
        Projector {
            span: Span::zero(dim, weight),
        }
    }

    /// Validates and factors a dense matrix (weight-1 space).
    ///
    /// Intended for small dimensions; rejects matrices that are not
    /// Hermitian, not idempotent, or whose spectrum strays from `{0, 1}`.
    pub fn from_matrix(m: &DMatrix<C64>) -> Result<Self> {
        Self::from_matrix_weighted(m, 1.0)
    }

    pub fn from_matrix_weighted(m: &DMatrix<C64>, weight: f64) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotAProjector("matrix is not square".into()));
        }
        let n = m.nrows();
        let herm_defect = (m - m.adjoint())
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max);
        if herm_defect > tol::EPS_NUM {
            return Err(Error::NotAProjector(format!(
                "not Hermitian (defect {herm_defect:.3e})"
            )));
        }
        let idem_defect = (m * m - m).iter().map(|x| x.norm()).fold(0.0, f64::max);
        if idem_defect > tol::EPS_NUM {
            return Err(Error::NotAProjector(format!(
                "not idempotent (defect {idem_defect:.3e})"
            )));
        }
        let eig = SymmetricEigen::new(m.clone());
        let mut cols: Vec<DVector<C64>> = Vec::new();
        for k in 0..n {
            let lambda = eig.eigenvalues[k];
            if (lambda - 1.0).abs() <= tol::EPS_EIG {
                // Rescale to the weighted normalization.
                cols.push(eig.eigenvectors.column(k).map(|x| x / weight.sqrt()));
            } else if lambda.abs() > tol::EPS_EIG {
                return Err(Error::SpectrumNotBinary(lambda));
            }
        }
        let trace: f64 = m.diagonal().iter().map(|x| x.re).sum();
        if (trace - cols.len() as f64).abs() > 1e-6 {
            return Err(Error::NotAProjector(format!(
                "trace {trace} does not match rank {}",
                cols.len()
            )));
        }
        let span = Span::from_columns(n, weight, &cols)?;
        Ok(Projector { span })
    }

    /// `P ⊗ |k⟩⟨k|` on the flattened product space, with the detector
    /// pointer fixed to basis state `k`.
    pub fn tensor_detector(&self, detector_dim: usize, k: usize) -> Result<Self> {
        if k >= detector_dim {
            return Err(Error::DetectorIndexOutOfRange(k, detector_dim));
        }
        let n = self.dim();
        let span = match &self.span.kind {
            crate::span::SpanKind::Axes(set) => Span::axes(
                n * detector_dim,
                self.weight(),
                set.iter().map(|&i| i * detector_dim + k).collect(),
            ),
            crate::span::SpanKind::Frame {
                complemented: true, ..
            } => {
                // ¬(B ⊗ |k⟩⟨k|) is not (¬B) ⊗ |k⟩⟨k|; dress the explicit
                // complement basis instead.
                let expl = Span::frame(n, self.weight(), self.span.materialized_basis());
                return Projector::from_span(expl).tensor_detector(detector_dim, k);
            }
            crate::span::SpanKind::Frame { basis, .. } => {
                let mut lifted = DMatrix::zeros(n * detector_dim, basis.ncols());
                for j in 0..basis.ncols() {
                    for i in 0..n {
                        lifted[(i * detector_dim + k, j)] = basis[(i, j)];
                    }
                }
                Span::frame(n * detector_dim, self.weight(), lifted)
            }
        };
        Ok(Projector { span })
    }

    pub fn dim(&self) -> usize {
        self.span.dim
    }

    pub fn weight(&self) -> f64 {
        self.span.weight
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.span.is_full()
    }

    /// `P·v`, not renormalized.
    pub fn apply(&self, v: &StateVector) -> Result<StateVector> {
        self.check_space(v)?;
        let amps = self.span.project(v.amps());
        Ok(StateVector::from_dvector(v.space().clone(), amps))
    }

    /// `⟨v|P|v⟩`, clamped to `[0, 1]` against rounding.
    pub fn born_probability(&self, v: &StateVector) -> Result<f64> {
        v.ensure_normalized()?;
        self.check_space(v)?;
        let pv = self.span.project(v.amps());
        let p = pv.iter().map(|x| x.norm_sqr()).sum::<f64>() * self.weight();
        Ok(p.clamp(0.0, 1.0))
    }

    /// Whether `‖PQ − QP‖ ≤ ε` (checked in factored form).
    pub fn commutes_with(&self, other: &Projector) -> Result<bool> {
        self.span.commutes_with(&other.span)
    }

    /// Dense operator matrix; `O(n²·rank)`, intended for small dimensions.
    pub fn matrix(&self) -> DMatrix<C64> {
        self.span.projector_matrix()
    }

    pub fn approx_eq(&self, other: &Projector) -> Result<bool> {
        self.span.approx_eq(&other.span)
    }

    fn check_space(&self, v: &StateVector) -> Result<()> {
        if self.dim() != v.dim() {
            return Err(Error::DimensionMismatch(self.dim(), v.dim()));
        }
        if self.weight() != v.weight() {
            return Err(Error::InvariantViolation(
                "projector and state use different quadrature weights",
            ));
        }
        Ok(())
    }
}

/// 1 iff all pairs in the set commute; vacuously true for the empty set.
pub fn is_boolean_block(projectors: &[Projector]) -> Result<bool> {
    for (i, p) in projectors.iter().enumerate() {
        for q in &projectors[i + 1..] {
            if !p.commutes_with(q)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
