//! Symmetric eigendecomposition by cyclic Jacobi rotations, and grouping of
//! the computed spectrum into distinct eigenvalues with their eigenspaces.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::subspace::{Subspace, DEFAULT_RANK_TOL};

pub const DEFAULT_SWEEP_TOL: f64 = 1e-14;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;
pub const MAX_SWEEPS: usize = 100;

/// Relative asymmetry admitted at construction.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Dense real symmetric matrix, stored symmetrized as `(M + Mᵀ)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    entries: DenseMatrix<f64>,
}

impl SymmetricMatrix {
    pub fn new(m: DenseMatrix<f64>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::usage(format!(
                "matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        if n == 0 {
            return Err(Error::usage("matrix dimension must be at least 1"));
        }
        let scale = m.max_abs();
        let mut worst = (0.0, 0, 0);
        for i in 0..n {
            for j in i + 1..n {
                let gap = (m[(i, j)] - m[(j, i)]).abs();
                if gap > worst.0 {
                    worst = (gap, i, j);
                }
            }
        }
        if worst.0 > SYMMETRY_TOL * scale {
            return Err(Error::usage(format!(
                "matrix is not symmetric: |M[{i}][{j}] - M[{j}][{i}]| = {gap:e} exceeds {tol:e}",
                i = worst.1,
                j = worst.2,
                gap = worst.0,
                tol = SYMMETRY_TOL * scale
            )));
        }
        let mut s = m.clone();
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
                s[(i, j)] = avg;
                s[(j, i)] = avg;
            }
        }
        Ok(Self { entries: s })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(DenseMatrix::from_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &DenseMatrix<f64> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        self.entries.matvec(x)
    }

    fn frobenius(&self) -> f64 {
        self.entries.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// `M = Q diag(eigenvalues) Qᵀ` with ascending eigenvalues.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Columns are eigenvectors, in the order of `eigenvalues`.
    pub rotation: DenseMatrix<f64>,
    pub sweeps: usize,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        self.rotation.column(j)
    }

    /// `max |QᵀQ - I|`
    pub fn orthogonality_error(&self) -> f64 {
        let n = self.eigenvalues.len();
        self.rotation
            .transpose()
            .matmul(&self.rotation)
            .max_abs_diff(&DenseMatrix::identity(n))
    }

    pub fn reconstruct(&self) -> DenseMatrix<f64> {
        let n = self.eigenvalues.len();
        let mut scaled = self.rotation.clone();
        for i in 0..n {
            for j in 0..n {
                scaled[(i, j)] *= self.eigenvalues[j];
            }
        }
        scaled.matmul(&self.rotation.transpose())
    }
}

/// Cyclic-by-row Jacobi. Sweeps until the off-diagonal Frobenius mass is at
/// most `sweep_tol * ‖M‖_F`.
pub fn jacobi_eigendecomposition(m: &SymmetricMatrix, sweep_tol: f64) -> Result<EigenDecomposition> {
    let n = m.dim();
    let mut a = m.matrix().clone();
    let mut q = DenseMatrix::<f64>::identity(n);
    let target = sweep_tol * m.frobenius();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::numerical(format!(
                "Jacobi did not converge after {MAX_SWEEPS} sweeps (off-diagonal mass {off:e}, target {target:e})"
            )));
        }
        for p in 0..n {
            for r in p + 1..n {
                if a[(p, r)] != 0.0 {
                    rotate(&mut a, &mut q, p, r);
                }
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let mut rotation = DenseMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            rotation[(i, dst)] = q[(i, src)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        rotation,
        sweeps,
    })
}

fn off_diagonal_norm(a: &DenseMatrix<f64>) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][r]` with `A <- JᵀAJ` and accumulates `Q <- QJ`.
fn rotate(a: &mut DenseMatrix<f64>, q: &mut DenseMatrix<f64>, p: usize, r: usize) {
    let n = a.rows();
    let apr = a[(p, r)];
    let tau = (a[(r, r)] - a[(p, p)]) / (2.0 * apr);
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akr = a[(k, r)];
        a[(k, p)] = c * akp - s * akr;
        a[(k, r)] = s * akp + c * akr;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let ark = a[(r, k)];
        a[(p, k)] = c * apk - s * ark;
        a[(r, k)] = s * apk + c * ark;
    }
    a[(p, r)] = 0.0;
    a[(r, p)] = 0.0;

    for k in 0..n {
        let qkp = q[(k, p)];
        let qkr = q[(k, r)];
        q[(k, p)] = c * qkp - s * qkr;
        q[(k, r)] = s * qkp + c * qkr;
    }
}

/// Greedy gap clustering of an ascending list: a new cluster starts when the
/// gap to the previous value exceeds `cluster_tol * max(1, max |value|)`.
pub fn cluster_eigenvalues(values: &[f64], cluster_tol: f64) -> Vec<Range<usize>> {
    if values.is_empty() {
        return Vec::new();
    }
    let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let threshold = cluster_tol * scale;
    let mut clusters = Vec::new();
    let mut start = 0;
    for i in 1..values.len() {
        if values[i] - values[i - 1] > threshold {
            clusters.push(start..i);
            start = i;
        }
    }
    clusters.push(start..values.len());
    clusters
}

/// One distinct eigenvalue and its eigenspace.
#[derive(Clone, Debug)]
pub struct EigenspaceCluster {
    /// Mean of the clustered eigenvalues.
    pub representative_value: f64,
    pub multiplicity: usize,
    pub space: Subspace<f64>,
    /// Positions of the clustered eigenvalues in the ascending spectrum.
    pub indices: Range<usize>,
}

pub fn eigenspaces(m: &SymmetricMatrix, cluster_tol: f64) -> Result<Vec<EigenspaceCluster>> {
    let decomposition = jacobi_eigendecomposition(m, DEFAULT_SWEEP_TOL)?;
    eigenspaces_of(&decomposition, cluster_tol)
}

pub fn eigenspaces_of(
    decomposition: &EigenDecomposition,
    cluster_tol: f64,
) -> Result<Vec<EigenspaceCluster>> {
    let n = decomposition.eigenvalues.len();
    cluster_eigenvalues(&decomposition.eigenvalues, cluster_tol)
        .into_iter()
        .map(|range| {
            let values = &decomposition.eigenvalues[range.clone()];
            let representative_value = values.iter().sum::<f64>() / values.len() as f64;
            let columns: Vec<Vec<f64>> =
                range.clone().map(|j| decomposition.eigenvector(j)).collect();
            let space = Subspace::span(n, &columns, DEFAULT_RANK_TOL)?;
            if space.dim() != range.len() {
                return Err(Error::numerical(format!(
                    "eigenvectors for eigenvalue {representative_value:e} lost rank ({} of {})",
                    space.dim(),
                    range.len()
                )));
            }
            Ok(EigenspaceCluster {
                representative_value,
                multiplicity: range.len(),
                space,
                indices: range,
            })
        })
        .collect()
}
