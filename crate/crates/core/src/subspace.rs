//! Subspaces of the coordinate space, stored by an orthogonal basis.
//!
//! Float subspaces carry an orthonormal basis. Exact subspaces carry an
//! orthogonal basis of primitive integer vectors, since unit normalization
//! needs square roots.

use crate::error::{Error, Result};
use crate::matrix::{axpy, dot, norm_sq, unit_vector, DenseMatrix};
use crate::scalar::{Backend, Scalar};

/// Default relative rank threshold for Gram-Schmidt.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Per-entry tolerance on `BᵀB = I` for float bases.
pub const ORTHONORMALITY_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
    /// `⟨b, b⟩` for each basis column.
    gram: Vec<T>,
}

impl<T: Scalar> Subspace<T> {
    /// Wraps an existing basis after checking it is orthonormal (float) or
    /// orthogonal with nonzero columns (exact).
    pub fn from_basis(ambient_dim: usize, basis: Vec<Vec<T>>) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::usage("ambient dimension must be at least 1"));
        }
        if basis.len() > ambient_dim {
            return Err(Error::usage(format!(
                "{} basis vectors cannot be independent in dimension {ambient_dim}",
                basis.len()
            )));
        }
        if let Some(bad) = basis.iter().position(|b| b.len() != ambient_dim) {
            return Err(Error::usage(format!(
                "basis vector {bad} has length {}, expected {ambient_dim}",
                basis[bad].len()
            )));
        }
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate().skip(i) {
                let g = dot(bi, bj);
                let ok = match (T::BACKEND, i == j) {
                    (Backend::Float, true) => (g - T::one()).is_zero_within(ORTHONORMALITY_TOL),
                    (Backend::Float, false) => g.is_zero_within(ORTHONORMALITY_TOL),
                    (Backend::Exact, true) => g.is_positive(),
                    (Backend::Exact, false) => g.is_zero(),
                };
                if !ok {
                    return Err(Error::usage(format!(
                        "basis columns {i} and {j} violate the orthogonality contract"
                    )));
                }
            }
        }
        let gram = basis.iter().map(|b| norm_sq(b)).collect();
        Ok(Self {
            ambient_dim,
            basis,
            gram,
        })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
            gram: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect(),
            gram: vec![T::one(); ambient_dim],
        }
    }

    /// Orthonormalizes the columns of an `n x m` matrix. See [`Subspace::span`].
    pub fn orthonormalize(vectors: &DenseMatrix<T>, rank_tol: f64) -> Result<Self> {
        Self::span(vectors.rows(), &vectors.columns(), rank_tol)
    }

    /// Gram-Schmidt over `vectors` in the given order. A vector is dropped when
    /// its residual norm is at most `rank_tol` times the largest input norm
    /// (float), or exactly zero (exact; `rank_tol` is ignored).
    pub fn span(ambient_dim: usize, vectors: &[Vec<T>], rank_tol: f64) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::usage("ambient dimension must be at least 1"));
        }
        if let Some(bad) = vectors.iter().position(|v| v.len() != ambient_dim) {
            return Err(Error::usage(format!(
                "vector {bad} has length {}, expected {ambient_dim}",
                vectors[bad].len()
            )));
        }
        let mut out = Self::zero(ambient_dim);
        let reference = vectors
            .iter()
            .map(|v| norm_sq(v))
            .fold(T::zero(), |m, x| if x > m { x } else { m });
        if reference.is_zero() {
            return Ok(out);
        }
        for v in vectors {
            if out.dim() == ambient_dim {
                break;
            }
            let residual = out.residual(v);
            if T::residual_is_negligible(&norm_sq(&residual), &reference, rank_tol) {
                continue;
            }
            out.push_direction(residual);
        }
        Ok(out)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn backend(&self) -> Backend {
        T::BACKEND
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> DenseMatrix<T> {
        DenseMatrix::from_columns(self.ambient_dim, &self.basis)
            .expect("basis columns have ambient length")
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.ambient_dim, "project: length mismatch");
        let mut out = vec![T::zero(); self.ambient_dim];
        for (b, g) in self.basis.iter().zip(&self.gram) {
            let coef = dot(x, b) / g.clone();
            axpy(&coef, b, &mut out);
        }
        out
    }

    /// The matrix of [`Subspace::project`].
    pub fn projector(&self) -> DenseMatrix<T> {
        let n = self.ambient_dim;
        let mut p = DenseMatrix::<T>::zeros(n, n);
        for (b, g) in self.basis.iter().zip(&self.gram) {
            for i in 0..n {
                if b[i].is_zero() {
                    continue;
                }
                let bi = b[i].clone() / g.clone();
                for j in 0..n {
                    p[(i, j)] = p[(i, j)].clone() + bi.clone() * b[j].clone();
                }
            }
        }
        p
    }

    /// `max |x - project(x)|`, i.e. how far `x` is from lying in the subspace.
    pub fn membership_residual(&self, x: &[T]) -> T {
        let p = self.project(x);
        crate::matrix::max_abs(&crate::matrix::sub(x, &p))
    }

    /// The orthogonal complement, of dimension `n - k`.
    pub fn orthogonal_complement(&self) -> Self {
        let n = self.ambient_dim;
        let candidates: Vec<Vec<T>> = (0..n).map(|i| unit_vector(n, i)).collect();
        let mut work = self.clone();
        let (_, directions) = work.extend_pivoted(candidates, n - self.dim(), DEFAULT_RANK_TOL);
        let gram = directions.iter().map(|d| norm_sq(d)).collect();
        Self {
            ambient_dim: n,
            basis: directions,
            gram,
        }
    }

    /// Subtracts the components along the current basis. Floats get a second
    /// pass to restore orthogonality lost to cancellation.
    fn residual(&self, v: &[T]) -> Vec<T> {
        let passes = match T::BACKEND {
            Backend::Float => 2,
            Backend::Exact => 1,
        };
        let mut r = v.to_vec();
        for _ in 0..passes {
            for (b, g) in self.basis.iter().zip(&self.gram) {
                let coef = dot(&r, b) / g.clone();
                axpy(&-coef, b, &mut r);
            }
        }
        r
    }

    fn push_direction(&mut self, residual: Vec<T>) -> Vec<T> {
        let d = T::finish_direction(residual);
        self.gram.push(norm_sq(&d));
        self.basis.push(d.clone());
        d
    }

    /// Greedily extends the basis from `candidates`, always taking the one with
    /// the largest residual (lowest index on ties), until `max_new` directions
    /// were added or every remaining residual is negligible. Returns the chosen
    /// candidate indices and the new directions.
    fn extend_pivoted(
        &mut self,
        candidates: Vec<Vec<T>>,
        max_new: usize,
        rank_tol: f64,
    ) -> (Vec<usize>, Vec<Vec<T>>) {
        let reference = candidates
            .iter()
            .map(|v| norm_sq(v))
            .fold(T::zero(), |m, x| if x > m { x } else { m });
        let mut chosen = Vec::new();
        let mut directions = Vec::new();
        if reference.is_zero() {
            return (chosen, directions);
        }
        let mut residuals: Vec<Option<Vec<T>>> =
            candidates.iter().map(|c| Some(self.residual(c))).collect();
        while directions.len() < max_new {
            let mut best: Option<(usize, T)> = None;
            for (i, r) in residuals.iter().enumerate() {
                if let Some(r) = r {
                    let size = norm_sq(r);
                    if best.as_ref().is_none_or(|(_, b)| size > *b) {
                        best = Some((i, size));
                    }
                }
            }
            let Some((idx, size)) = best else { break };
            if T::residual_is_negligible(&size, &reference, rank_tol) {
                break;
            }
            residuals[idx] = None;
            // re-reduce the winner against the full basis before accepting it
            let r = self.residual(&candidates[idx]);
            let d = self.push_direction(r);
            let g = norm_sq(&d);
            for r in residuals.iter_mut().flatten() {
                let coef = dot(r, &d) / g.clone();
                axpy(&-coef, &d, r);
            }
            chosen.push(idx);
            directions.push(d);
        }
        (chosen, directions)
    }
}

/// Indices of up to `count` linearly independent rows, chosen by largest
/// residual first. Rows that are combinations of already chosen ones are
/// skipped.
pub fn select_independent_rows<T: Scalar>(
    rows: &[Vec<T>],
    count: usize,
    rank_tol: f64,
) -> Vec<usize> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let mut scratch = Subspace::<T>::zero(first.len());
    let (mut chosen, _) = scratch.extend_pivoted(rows.to_vec(), count, rank_tol);
    chosen.sort_unstable();
    chosen
}
