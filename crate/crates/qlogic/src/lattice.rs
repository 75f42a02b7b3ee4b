//! Closed-subspace algebra: complement, meet, join, comparability and
//! orthogonality relations, commutation, Boolean blocks, distributivity
//! auditing, and vector membership.
//!
//! Meets are derived from joins by De Morgan through the orthocomplement;
//! for closed subspaces of a finite-dimensional space this equals the set
//! intersection. Rank decisions use the singular-value threshold in
//! [`crate::tol`]; near-threshold cases fail with
//! [`Error::IllConditioned`](crate::Error) rather than
//! guessing.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hilbert::{Projector, StateVector};
use crate::span::Span;
use crate::tol;

/// A closed linear subspace of a weighted `C^n`, in one-to-one
/// correspondence with a [`Projector`].
#[derive(Debug, Clone)]
pub struct Subspace {
    span: Span,
}

/// Where a vector sits relative to a subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    InComplement,
    Neither,
}

/// The comparability (`z`) and orthogonality (`w`) statements for an
/// ordered pair of subspaces: `z1 = [q ⊆ p]`, `z2 = [p ⊆ q]`,
/// `w1 = [q ⊆ p⊥]`, `w2 = [p ⊆ q⊥]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub z1: bool,
    pub z2: bool,
    pub w1: bool,
    pub w2: bool,
}

impl Relation {
    /// The subspaces are comparable.
    pub fn z(&self) -> bool {
        self.z1 || self.z2
    }

    /// The subspaces are orthogonal.
    pub fn w(&self) -> bool {
        self.w1 || self.w2
    }
}

/// Outcome of a distributivity audit.
#[derive(Debug, Clone)]
pub struct DistributivityReport {
    /// `¬q ∨ (p1 ∧ p2)`
    pub lhs: Subspace,
    /// `(¬q ∨ p1) ∧ (¬q ∨ p2)`
    pub rhs: Subspace,
    pub equal: bool,
}

impl Subspace {
    /// The eigenvalue-1 eigenspace of a projector.
    pub fn from_projector(p: &Projector) -> Self {
        Subspace {
            span: p.span.clone(),
        }
    }

    /// Orthonormalizes arbitrary spanning state vectors (weight taken from
    /// the first vector's space).
    pub fn from_states(states: &[StateVector]) -> Result<Self> {
        let Some(first) = states.first() else {
            return Err(Error::ZeroVector);
        };
        let cols: Vec<_> = states.iter().map(|s| s.amps().clone()).collect();
        Ok(Subspace {
            span: Span::from_columns(first.dim(), first.weight(), &cols)?,
        })
    }

    pub fn zero(dim: usize, weight: f64) -> Self {
        Subspace {
            span: Span::zero(dim, weight),
        }
    }

    pub fn full(dim: usize, weight: f64) -> Self {
        Subspace {
            span: Span::full(dim, weight),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.span.dim
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    pub fn is_full(&self) -> bool {
        self.span.is_full()
    }

    /// Orthogonal complement; `rank(s) + rank(s⊥) = ambient_dim`.
    pub fn complement(&self) -> Subspace {
        Subspace {
            span: self.span.complement(),
        }
    }

    /// Closed span of the union.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace {
            span: self.span.join(&other.span)?,
        })
    }

    /// Set intersection, computed as `¬(¬self ∨ ¬other)`.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace {
            span: self.span.meet(&other.span)?,
        })
    }

    pub fn is_subset_of(&self, other: &Subspace) -> Result<bool> {
        self.span.is_subset_of(&other.span)
    }

    /// Projector equality within tolerance.
    pub fn approx_eq(&self, other: &Subspace) -> Result<bool> {
        self.span.approx_eq(&other.span)
    }

    /// The projector onto this subspace.
    pub fn projector(&self) -> Projector {
        Projector::from_span(self.span.clone())
    }

    /// Explicit orthonormal basis columns (materialized on demand).
    pub fn basis(&self) -> DMatrix<C64> {
        self.span.materialized_basis()
    }

    /// Dense projector matrix, for small dimensions and tests.
    pub fn projector_matrix(&self) -> DMatrix<C64> {
        self.span.projector_matrix()
    }

    /// Classifies a normalized vector: `In` iff `‖P·v − v‖ ≤ ε_mem`,
    /// `InComplement` iff `‖P·v‖ ≤ ε_mem`, otherwise `Neither`. Exactly one
    /// of the three holds for every normalized vector.
    pub fn membership(&self, v: &StateVector) -> Result<Membership> {
        v.ensure_normalized()?;
        if self.span.dim != v.dim() {
            return Err(Error::DimensionMismatch(self.span.dim, v.dim()));
        }
        let pv = self.span.project(v.amps());
        let w = v.weight();
        let pv_norm = (pv.iter().map(|x| x.norm_sqr()).sum::<f64>() * w).sqrt();
        let resid = v.amps() - &pv;
        let resid_norm = (resid.iter().map(|x| x.norm_sqr()).sum::<f64>() * w).sqrt();
        if resid_norm <= tol::EPS_MEM {
            Ok(Membership::In)
        } else if pv_norm <= tol::EPS_MEM {
            Ok(Membership::InComplement)
        } else {
            Ok(Membership::Neither)
        }
    }

    pub(crate) fn commutes_with(&self, other: &Subspace) -> Result<bool> {
        self.span.commutes_with(&other.span)
    }
}

/// Comparability and orthogonality statements for `(q, p)`.
///
/// `z` and `w` can only hold together when one argument is `{0}` or the
/// whole space; any other outcome is reported as a numerical invariant
/// violation.
pub fn relation(q: &Subspace, p: &Subspace) -> Result<Relation> {
    let rel = Relation {
        z1: q.is_subset_of(p)?,
        z2: p.is_subset_of(q)?,
        w1: q.is_subset_of(&p.complement())?,
        w2: p.is_subset_of(&q.complement())?,
    };
    if rel.z() && rel.w() {
        let trivial = |s: &Subspace| s.is_zero() || s.is_full();
        if !trivial(q) && !trivial(p) {
            return Err(Error::InvariantViolation(
                "comparability and orthogonality cannot hold together for proper subspaces",
            ));
        }
    }
    Ok(rel)
}

/// Audits `¬q ∨ (p1 ∧ p2) = (¬q ∨ p1) ∧ (¬q ∨ p2)`.
pub fn distributivity_report(
    q: &Subspace,
    p1: &Subspace,
    p2: &Subspace,
) -> Result<DistributivityReport> {
    let nq = q.complement();
    let lhs = nq.join(&p1.meet(p2)?)?;
    let rhs = nq.join(p1)?.meet(&nq.join(p2)?)?;
    let equal = lhs.approx_eq(&rhs)?;
    Ok(DistributivityReport { lhs, rhs, equal })
}
