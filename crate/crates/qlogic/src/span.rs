//! Internal representation of closed linear subspaces of a weighted `C^n`.
//!
//! The inner product carries a uniform quadrature weight `w` so that grid
//! states approximate wavefunction integrals: `⟨u|v⟩ = w Σ conj(u_i) v_i`.
//! A subspace is stored either as a set of coordinate axes (exact set
//! algebra, used for interval projectors and detector sectors) or as a
//! frame of weighted-orthonormal columns, optionally marked as standing for
//! the orthogonal complement of the stored frame. Complements therefore
//! never materialize `n × (n − r)` bases unless a caller asks for one.

use std::collections::BTreeSet;

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::tol;

#[derive(Debug, Clone)]
pub(crate) enum SpanKind {
    /// Span of the coordinate axes listed in the set.
    Axes(BTreeSet<usize>),
    /// Span of the columns (weighted-orthonormal); with `complemented` the
    /// value stands for the orthogonal complement of that span.
    Frame {
        basis: DMatrix<C64>,
        complemented: bool,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Span {
    pub dim: usize,
    pub weight: f64,
    pub kind: SpanKind,
}

fn cscale(m: &DMatrix<C64>, s: f64) -> DMatrix<C64> {
    m.map(|x| x * s)
}

impl Span {
    pub fn zero(dim: usize, weight: f64) -> Self {
        Span {
            dim,
            weight,
            kind: SpanKind::Axes(BTreeSet::new()),
        }
    }

    pub fn full(dim: usize, weight: f64) -> Self {
        Span {
            dim,
            weight,
            kind: SpanKind::Axes((0..dim).collect()),
        }
    }

    pub fn axes(dim: usize, weight: f64, set: BTreeSet<usize>) -> Self {
        debug_assert!(set.iter().all(|&i| i < dim));
        Span {
            dim,
            weight,
            kind: SpanKind::Axes(set),
        }
    }

    /// Wraps a frame that is already weighted-orthonormal.
    pub fn frame(dim: usize, weight: f64, basis: DMatrix<C64>) -> Self {
        Span {
            dim,
            weight,
            kind: SpanKind::Frame {
                basis,
                complemented: false,
            },
        }
        .normalized()
    }

    /// Orthonormalizes arbitrary spanning columns (rank-revealing).
    pub fn from_columns(dim: usize, weight: f64, cols: &[DVector<C64>]) -> Result<Self> {
        for c in cols {
            if c.len() != dim {
                return Err(Error::DimensionMismatch(c.len(), dim));
            }
        }
        let basis = orthonormalize(cols, weight, &[])?;
        Ok(Span::frame(dim, weight, basis))
    }

    /// Collapses degenerate frames to exact axis sets.
    fn normalized(self) -> Self {
        if let SpanKind::Frame {
            ref basis,
            complemented,
        } = self.kind
        {
            let r = basis.ncols();
            if r == 0 {
                return if complemented {
                    Span::full(self.dim, self.weight)
                } else {
                    Span::zero(self.dim, self.weight)
                };
            }
            if r == self.dim {
                return if complemented {
                    Span::zero(self.dim, self.weight)
                } else {
                    Span::full(self.dim, self.weight)
                };
            }
        }
        self
    }

    pub fn rank(&self) -> usize {
        match &self.kind {
            SpanKind::Axes(s) => s.len(),
            SpanKind::Frame {
                basis,
                complemented,
            } => {
                if *complemented {
                    self.dim - basis.ncols()
                } else {
                    basis.ncols()
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn complement(&self) -> Span {
        let kind = match &self.kind {
            SpanKind::Axes(s) => SpanKind::Axes((0..self.dim).filter(|i| !s.contains(i)).collect()),
            SpanKind::Frame {
                basis,
                complemented,
            } => SpanKind::Frame {
                basis: basis.clone(),
                complemented: !complemented,
            },
        };
        Span {
            dim: self.dim,
            weight: self.weight,
            kind,
        }
    }

    /// Action of the orthogonal projector onto this span.
    pub fn project(&self, v: &DVector<C64>) -> DVector<C64> {
        debug_assert_eq!(v.len(), self.dim);
        match &self.kind {
            SpanKind::Axes(s) => {
                DVector::from_fn(
                    self.dim,
                    |i, _| if s.contains(&i) { v[i] } else { C64::ZERO },
                )
            }
            SpanKind::Frame {
                basis,
                complemented,
            } => {
                let coeff = basis.adjoint() * v * C64::new(self.weight, 0.0);
                let p = basis * coeff;
                if *complemented {
                    v - p
                } else {
                    p
                }
            }
        }
    }

    fn check_dims(&self, other: &Span) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// Least upper bound (closed span of the union).
    pub fn join(&self, other: &Span) -> Result<Span> {
        self.check_dims(other)?;
        let (dim, w) = (self.dim, self.weight);
        match (&self.kind, &other.kind) {
            (SpanKind::Axes(s), SpanKind::Axes(t)) => {
                Ok(Span::axes(dim, w, s.union(t).cloned().collect()))
            }
            // x ∨ y = ¬(¬x ∧ y') routes through the meet primitives so that
            // complements stay lazy.
            (
                SpanKind::Frame {
                    basis,
                    complemented: true,
                },
                _,
            ) => {
                let m =
                    meet_explicit(&Span::frame_raw(dim, w, basis.clone()), &other.complement())?;
                Ok(m.complement())
            }
            (
                _,
                SpanKind::Frame {
                    basis,
                    complemented: true,
                },
            ) => {
                let m = meet_explicit(&Span::frame_raw(dim, w, basis.clone()), &self.complement())?;
                Ok(m.complement())
            }
            _ => join_explicit(self, other),
        }
    }

    /// Greatest lower bound, via De Morgan from the join.
    pub fn meet(&self, other: &Span) -> Result<Span> {
        Ok(self.complement().join(&other.complement())?.complement())
    }

    fn frame_raw(dim: usize, weight: f64, basis: DMatrix<C64>) -> Span {
        Span {
            dim,
            weight,
            kind: SpanKind::Frame {
                basis,
                complemented: false,
            },
        }
    }

    /// `self ⊆ other`, tested as `‖(I − P_other) b‖_∞ ≤ ε` per basis column.
    pub fn is_subset_of(&self, other: &Span) -> Result<bool> {
        self.check_dims(other)?;
        if self.rank() > other.rank() {
            return Ok(false);
        }
        match (&self.kind, &other.kind) {
            (SpanKind::Axes(s), SpanKind::Axes(t)) => Ok(s.is_subset(t)),
            (
                SpanKind::Frame {
                    complemented: true, ..
                },
                SpanKind::Frame {
                    complemented: true, ..
                },
            ) => other.complement().is_subset_of(&self.complement()),
            (
                SpanKind::Frame {
                    complemented: true, ..
                },
                _,
            ) => {
                // Rank filter already passed, so dim − r ≤ rank(other) and a
                // materialized complement basis stays small.
                let cols = self.materialized_basis();
                Ok(columns_inside(&cols, other))
            }
            _ => {
                let cols = self.materialized_basis();
                Ok(columns_inside(&cols, other))
            }
        }
    }

    /// Whether the orthogonal projectors onto the two spans commute.
    ///
    /// Uses `(I − P)QP = 0 ⇔ PQ = QP`, checked column-wise on the stored
    /// frame, which avoids forming either `n × n` operator.
    pub fn commutes_with(&self, other: &Span) -> Result<bool> {
        self.check_dims(other)?;
        let a = self.strip_complement();
        let b = other.strip_complement();
        match (&a.kind, &b.kind) {
            (SpanKind::Axes(_), SpanKind::Axes(_)) => Ok(true),
            (SpanKind::Frame { basis, .. }, _) => Ok(commutes_frame(basis, &a, &b)),
            (_, SpanKind::Frame { basis, .. }) => Ok(commutes_frame(basis, &b, &a)),
        }
    }

    fn strip_complement(&self) -> Span {
        match &self.kind {
            SpanKind::Frame {
                basis,
                complemented: true,
            } => Span::frame_raw(self.dim, self.weight, basis.clone()),
            _ => self.clone(),
        }
    }

    /// Projector equality within tolerance.
    pub fn approx_eq(&self, other: &Span) -> Result<bool> {
        self.check_dims(other)?;
        if self.rank() != other.rank() {
            return Ok(false);
        }
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Explicit weighted-orthonormal basis (materializes axis columns and
    /// complement frames; columns of the zero subspace form an `n × 0`
    /// matrix).
    pub fn materialized_basis(&self) -> DMatrix<C64> {
        let inv_sqrt_w = 1.0 / self.weight.sqrt();
        match &self.kind {
            SpanKind::Axes(s) => {
                let mut m = DMatrix::zeros(self.dim, s.len());
                for (c, &i) in s.iter().enumerate() {
                    m[(i, c)] = C64::new(inv_sqrt_w, 0.0);
                }
                m
            }
            SpanKind::Frame {
                basis,
                complemented,
            } => {
                if *complemented {
                    orthonormal_complement(basis, self.dim, self.weight)
                } else {
                    basis.clone()
                }
            }
        }
    }

    /// Dense projector matrix; intended for small dimensions and tests.
    pub fn projector_matrix(&self) -> DMatrix<C64> {
        match &self.kind {
            SpanKind::Axes(s) => DMatrix::from_fn(self.dim, self.dim, |i, j| {
                if i == j && s.contains(&i) {
                    C64::ONE
                } else {
                    C64::ZERO
                }
            }),
            SpanKind::Frame {
                basis,
                complemented,
            } => {
                let p = cscale(&(basis * basis.adjoint()), self.weight);
                if *complemented {
                    DMatrix::identity(self.dim, self.dim) - p
                } else {
                    p
                }
            }
        }
    }
}

fn columns_inside(cols: &DMatrix<C64>, target: &Span) -> bool {
    for j in 0..cols.ncols() {
        let v: DVector<C64> = cols.column(j).into_owned();
        let resid = &v - target.project(&v);
        if resid.iter().any(|x| x.norm() > tol::EPS_NUM) {
            return false;
        }
    }
    true
}

fn commutes_frame(basis: &DMatrix<C64>, a: &Span, b: &Span) -> bool {
    for j in 0..basis.ncols() {
        let col: DVector<C64> = basis.column(j).into_owned();
        let u = b.project(&col);
        let resid = &u - a.project(&u);
        if resid.iter().any(|x| x.norm() > tol::EPS_NUM) {
            return false;
        }
    }
    true
}

/// Join of two explicit spans (no complement flags on frames).
fn join_explicit(a: &Span, b: &Span) -> Result<Span> {
    let (dim, w) = (a.dim, a.weight);
    // Joining a large axis set with a small frame is cheaper through the
    // complement: Axes(T) ∨ F = ¬(Axes(T^c) ∧ F^⊥), and x ⊥ F inside
    // Axes(T^c) only sees the part of F supported there.
    if let (
        SpanKind::Axes(t),
        SpanKind::Frame {
            basis,
            complemented: false,
        },
    ) = (&a.kind, &b.kind)
    {
        if 2 * t.len() > dim {
            let outside: BTreeSet<usize> = (0..dim).filter(|i| !t.contains(i)).collect();
            let m = meet_axes_killed_by(&outside, basis, dim, w)?;
            return Ok(m.complement());
        }
    }
    if let (
        SpanKind::Frame {
            basis,
            complemented: false,
        },
        SpanKind::Axes(t),
    ) = (&a.kind, &b.kind)
    {
        if 2 * t.len() > dim {
            let outside: BTreeSet<usize> = (0..dim).filter(|i| !t.contains(i)).collect();
            let m = meet_axes_killed_by(&outside, basis, dim, w)?;
            return Ok(m.complement());
        }
    }
    let a_cols = a.materialized_basis();
    let mut cols: Vec<DVector<C64>> = Vec::with_capacity(a_cols.ncols() + b.rank());
    for j in 0..a_cols.ncols() {
        cols.push(a_cols.column(j).into_owned());
    }
    let accepted: Vec<DVector<C64>> = cols.clone();
    let b_cols = b.materialized_basis();
    let mut extra: Vec<DVector<C64>> = Vec::new();
    for j in 0..b_cols.ncols() {
        extra.push(b_cols.column(j).into_owned());
    }
    let grown = orthonormalize(&extra, w, &accepted)?;
    for j in 0..grown.ncols() {
        cols.push(grown.column(j).into_owned());
    }
    if cols.is_empty() {
        return Ok(Span::zero(dim, w));
    }
    Ok(Span::frame(dim, w, DMatrix::from_columns(&cols)))
}

/// Meet with an explicit first argument; the second may carry a complement.
fn meet_explicit(a: &Span, b: &Span) -> Result<Span> {
    let (dim, w) = (a.dim, a.weight);
    match (&a.kind, &b.kind) {
        (SpanKind::Axes(s), SpanKind::Axes(t)) => {
            Ok(Span::axes(dim, w, s.intersection(t).cloned().collect()))
        }
        (
            SpanKind::Axes(s),
            SpanKind::Frame {
                basis,
                complemented: false,
            },
        ) => meet_frame_axes(basis, s, dim, w),
        (
            SpanKind::Frame {
                basis,
                complemented: false,
            },
            SpanKind::Axes(t),
        ) => meet_frame_axes(basis, t, dim, w),
        (
            SpanKind::Frame {
                basis: fa,
                complemented: false,
            },
            SpanKind::Frame {
                basis: fb,
                complemented: false,
            },
        ) => meet_frame_frame(fa, fb, dim, w),
        (
            SpanKind::Frame {
                basis: fa,
                complemented: false,
            },
            SpanKind::Frame {
                basis: fb,
                complemented: true,
            },
        ) => meet_frame_killed_by(fa, fb, dim, w),
        (
            SpanKind::Frame {
                basis: fb,
                complemented: true,
            },
            SpanKind::Frame {
                basis: fa,
                complemented: false,
            },
        ) => meet_frame_killed_by(fa, fb, dim, w),
        (
            SpanKind::Axes(s),
            SpanKind::Frame {
                basis,
                complemented: true,
            },
        ) => meet_axes_killed_by(s, basis, dim, w),
        (
            SpanKind::Frame {
                basis,
                complemented: true,
            },
            SpanKind::Axes(s),
        ) => meet_axes_killed_by(s, basis, dim, w),
        (
            SpanKind::Frame {
                complemented: true, ..
            },
            SpanKind::Frame {
                complemented: true, ..
            },
        ) => {
            // ¬A ∧ ¬B = ¬(A ∨ B)
            Ok(a.complement().join(&b.complement())?.complement())
        }
    }
}

/// Vectors of `span(basis)` supported on the axis set.
fn meet_frame_axes(
    basis: &DMatrix<C64>,
    axes: &BTreeSet<usize>,
    dim: usize,
    w: f64,
) -> Result<Span> {
    let r = basis.ncols();
    if r == 0 || axes.is_empty() {
        return Ok(Span::zero(dim, w));
    }
    let outside: Vec<usize> = (0..dim).filter(|i| !axes.contains(i)).collect();
    // Gram of the rows outside the axis set: λ = ‖(I − P_axes)·(basis·c)‖²_w.
    let mut g = DMatrix::<C64>::zeros(r, r);
    for &i in &outside {
        for p in 0..r {
            for q in 0..r {
                g[(p, q)] += basis[(i, p)].conj() * basis[(i, q)] * w;
            }
        }
    }
    let coeffs = null_directions(&g)?;
    let mut cols = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let mut x = basis * c;
        // Hard-zero the residue outside the axis set so the result is an
        // exact member of the coordinate subspace.
        for &i in &outside {
            x[i] = C64::ZERO;
        }
        cols.push(x);
    }
    let ortho = orthonormalize(&cols, w, &[])?;
    Ok(Span::frame(dim, w, ortho))
}

/// Intersection of two frames via principal angles: eigenvalues of
/// `A† P_B A` equal `cos²θ`, and θ = 0 marks a common direction.
fn meet_frame_frame(fa: &DMatrix<C64>, fb: &DMatrix<C64>, dim: usize, w: f64) -> Result<Span> {
    let (ra, rb) = (fa.ncols(), fb.ncols());
    if ra == 0 || rb == 0 {
        return Ok(Span::zero(dim, w));
    }
    let m = cscale(&(fb.adjoint() * fa), w); // rb × ra
    let h = m.adjoint() * &m; // ra × ra, eigenvalues cos²θ
    let eig = SymmetricEigen::new(h);
    let mut coeffs = Vec::new();
    for k in 0..ra {
        let lambda = eig.eigenvalues[k].clamp(0.0, 1.0 + 1e-6);
        let sin2 = (1.0 - lambda).max(0.0);
        if sin2 <= tol::MEET_ACCEPT {
            coeffs.push(eig.eigenvectors.column(k).into_owned());
        } else if sin2 < tol::MEET_BAND {
            return Err(Error::IllConditioned(sin2.sqrt()));
        }
    }
    let cols: Vec<DVector<C64>> = coeffs.iter().map(|c| fa * c).collect();
    let ortho = orthonormalize(&cols, w, &[])?;
    Ok(Span::frame(dim, w, ortho))
}

/// Vectors of `span(fa)` annihilated by the projector onto `span(fb)`.
fn meet_frame_killed_by(fa: &DMatrix<C64>, fb: &DMatrix<C64>, dim: usize, w: f64) -> Result<Span> {
    let ra = fa.ncols();
    if ra == 0 {
        return Ok(Span::zero(dim, w));
    }
    if fb.ncols() == 0 {
        return Ok(Span::frame(dim, w, fa.clone()));
    }
    let m = cscale(&(fb.adjoint() * fa), w); // λ of m†m = ‖P_B x‖²_w = cos²θ
    let g = m.adjoint() * &m;
    let coeffs = null_directions(&g)?;
    let cols: Vec<DVector<C64>> = coeffs.iter().map(|c| fa * c).collect();
    let ortho = orthonormalize(&cols, w, &[])?;
    Ok(Span::frame(dim, w, ortho))
}

/// Vectors supported on the axis set and annihilated by `P_span(fb)`.
fn meet_axes_killed_by(
    axes: &BTreeSet<usize>,
    fb: &DMatrix<C64>,
    dim: usize,
    w: f64,
) -> Result<Span> {
    if axes.is_empty() {
        return Ok(Span::zero(dim, w));
    }
    if fb.ncols() == 0 {
        return Ok(Span::axes(dim, w, axes.clone()));
    }
    let idx: Vec<usize> = axes.iter().cloned().collect();
    let s = idx.len();
    // Rows of fb inside the axis set, as a frame over C^{|axes|}.
    let fb_rows = DMatrix::from_fn(s, fb.ncols(), |i, j| fb[(idx[i], j)]);
    // Kernel of fb_rowsᴴ within the axis coordinates = complement of the
    // row space of fb inside C^{|axes|}.
    let row_space: Vec<DVector<C64>> = (0..fb.ncols())
        .map(|j| fb_rows.column(j).into_owned())
        .collect();
    let row_basis = orthonormalize(&row_space, w, &[])?;
    let kernel = orthonormal_complement(&row_basis, s, w);
    let mut cols = Vec::with_capacity(kernel.ncols());
    for j in 0..kernel.ncols() {
        let mut x = DVector::zeros(dim);
        for i in 0..s {
            x[idx[i]] = kernel[(i, j)];
        }
        cols.push(x);
    }
    let ortho = orthonormalize(&cols, w, &[])?;
    Ok(Span::frame(dim, w, ortho))
}

/// Directions `c` with `c† G c ≈ 0` for a PSD Gram matrix `G`.
fn null_directions(g: &DMatrix<C64>) -> Result<Vec<DVector<C64>>> {
    let eig = SymmetricEigen::new(g.clone());
    let mut out = Vec::new();
    for k in 0..eig.eigenvalues.len() {
        let lambda = eig.eigenvalues[k].max(0.0);
        if lambda <= tol::MEET_ACCEPT {
            out.push(eig.eigenvectors.column(k).into_owned());
        } else if lambda < tol::MEET_BAND {
            return Err(Error::IllConditioned(lambda.sqrt()));
        }
    }
    Ok(out)
}

fn weighted_norm(v: &DVector<C64>, w: f64) -> f64 {
    (v.iter().map(|x| x.norm_sqr()).sum::<f64>() * w).sqrt()
}

/// Rank-revealing pivoted modified Gram–Schmidt.
///
/// Orthonormalizes `cols` against `against` and then against the already
/// accepted pivots, with one re-orthogonalization pass per accepted column.
/// Residual norms inside the band around [`tol::SIGMA_RANK`] raise
/// [`Error::IllConditioned`] rather than guessing the rank.
fn orthonormalize(cols: &[DVector<C64>], w: f64, against: &[DVector<C64>]) -> Result<DMatrix<C64>> {
    let dim = cols.first().map(|c| c.len()).unwrap_or(0);
    let mut work: Vec<DVector<C64>> = cols.to_vec();
    let mut accepted: Vec<DVector<C64>> = Vec::new();

    let project_out = |v: &mut DVector<C64>, basis: &[DVector<C64>]| {
        for q in basis {
            let coeff: C64 = q
                .iter()
                .zip(v.iter())
                .map(|(a, b)| a.conj() * b)
                .sum::<C64>()
                * C64::new(w, 0.0);
            for i in 0..v.len() {
                let d = q[i] * coeff;
                v[i] -= d;
            }
        }
    };

    for v in work.iter_mut() {
        project_out(v, against);
    }

    let lo = tol::SIGMA_RANK / tol::RANK_BAND;
    let hi = tol::SIGMA_RANK * tol::RANK_BAND;
    loop {
        let mut best = None;
        let mut best_norm = 0.0;
        for (i, v) in work.iter().enumerate() {
            let n = weighted_norm(v, w);
            if n > best_norm {
                best_norm = n;
                best = Some(i);
            }
        }
        let Some(i) = best else { break };
        if best_norm <= lo {
            break;
        }
        if best_norm < hi {
            return Err(Error::IllConditioned(best_norm));
        }
        let mut q = work.swap_remove(i);
        // Second pass against everything accepted so far keeps the frame
        // orthonormal to machine precision.
        project_out(&mut q, against);
        project_out(&mut q, &accepted);
        let n = weighted_norm(&q, w);
        if n <= lo {
            continue;
        }
        let q = q.map(|x| x / n);
        for v in work.iter_mut() {
            project_out(v, std::slice::from_ref(&q));
        }
        accepted.push(q);
    }

    if accepted.is_empty() {
        return Ok(DMatrix::zeros(dim, 0));
    }
    Ok(DMatrix::from_columns(&accepted))
}

/// Orthonormal basis of the orthogonal complement of a frame.
fn orthonormal_complement(basis: &DMatrix<C64>, dim: usize, w: f64) -> DMatrix<C64> {
    let want = dim - basis.ncols();
    if want == 0 {
        return DMatrix::zeros(dim, 0);
    }
    let inv_sqrt_w = 1.0 / w.sqrt();
    let frame: Vec<DVector<C64>> = (0..basis.ncols())
        .map(|j| basis.column(j).into_owned())
        .collect();
    let candidates: Vec<DVector<C64>> = (0..dim)
        .map(|i| {
            let mut e = DVector::zeros(dim);
            e[i] = C64::new(inv_sqrt_w, 0.0);
            e
        })
        .collect();
    let out = orthonormalize(&candidates, w, &frame)
        .expect("complement extension of an orthonormal frame cannot be ill-conditioned");
    debug_assert_eq!(out.ncols(), want);
    out
}
