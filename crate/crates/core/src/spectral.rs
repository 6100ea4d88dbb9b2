//! Nonnegative eigenvectors of symmetric matrices.
//!
//! [`analyze`] runs the subspace alternative on every eigenspace. With at most
//! two distinct eigenvalues one of the eigenspaces must contain a nonnegative
//! vector, and a miss is treated as a numerical failure. [`build_counterexample`]
//! produces matrices with three or more eigenvalues and no nonnegative
//! eigenvector at all.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::alternative::{decide_alternative, AlternativeOptions, AlternativeVerdict};
use crate::eigen::{eigenspaces, EigenspaceCluster, SymmetricMatrix, DEFAULT_CLUSTER_TOL};
use crate::error::{Error, Result};
use crate::matrix::{max_abs, unit_vector, DenseMatrix};
use crate::scalar::Scalar;
use crate::subspace::{Subspace, DEFAULT_RANK_TOL};

/// Relative bound on `‖Mx - λx‖_max` for a reported nonnegative eigenvector.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-6;
/// Smallest separation accepted between planted eigenvalues.
pub const MIN_EIGENVALUE_GAP: f64 = 1e-6;
/// Slack for the componentwise sign scan of one-dimensional eigenspaces.
pub const SIGN_SCAN_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub cluster_tol: f64,
    pub alternative: AlternativeOptions,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            cluster_tol: DEFAULT_CLUSTER_TOL,
            alternative: AlternativeOptions::default(),
        }
    }
}

impl AnalysisOptions {
    pub fn with_tolerances(cluster_tol: f64, feas_tol: f64) -> Self {
        let mut alternative = AlternativeOptions::default();
        alternative.lp.feas_tol = feas_tol;
        Self {
            cluster_tol,
            alternative,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EigenspaceVerdict {
    pub cluster: EigenspaceCluster,
    /// A witness here is a nonnegative eigenvector; a certificate is a positive
    /// vector orthogonal to the eigenspace.
    pub verdict: AlternativeVerdict<f64>,
    /// `‖Mx - λx‖_max` of the witness, when there is one.
    pub eigen_residual: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub matrix_dim: usize,
    pub distinct_eigenvalue_count: usize,
    pub per_eigenspace: Vec<EigenspaceVerdict>,
    pub has_nonneg_eigenvector: bool,
    /// At most two distinct eigenvalues.
    pub theorem_applicable: bool,
    /// `theorem_applicable` implies `has_nonneg_eigenvector`. Always true in a
    /// returned report; a violation is raised as an error instead.
    pub theorem_satisfied: bool,
}

pub fn analyze(m: &SymmetricMatrix, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let clusters = eigenspaces(m, options.cluster_tol)?;
    let mut per_eigenspace = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let verdict = decide_alternative(&cluster.space, &options.alternative)?;
        let eigen_residual = match &verdict {
            AlternativeVerdict::HasNonneg(w) => {
                let lambda = cluster.representative_value;
                let mx = m.matvec(&w.x);
                let r = mx
                    .iter()
                    .zip(&w.x)
                    .map(|(a, x)| (a - lambda * x).abs())
                    .fold(0.0, f64::max);
                if r > EIGEN_RESIDUAL_TOL * lambda.abs().max(1.0) {
                    return Err(Error::numerical(format!(
                        "witness for eigenvalue {lambda:e} has eigen-residual {r:e}, above {EIGEN_RESIDUAL_TOL:e} x max(1, |λ|)"
                    )));
                }
                Some(r)
            }
            AlternativeVerdict::NoNonneg(_) => None,
        };
        per_eigenspace.push(EigenspaceVerdict {
            cluster,
            verdict,
            eigen_residual,
        });
    }

    let distinct_eigenvalue_count = per_eigenspace.len();
    let has_nonneg_eigenvector = per_eigenspace.iter().any(|e| e.verdict.has_nonneg());
    let theorem_applicable = distinct_eigenvalue_count <= 2;
    if theorem_applicable && !has_nonneg_eigenvector {
        return Err(Error::numerical(format!(
            "matrix with {distinct_eigenvalue_count} distinct eigenvalue(s) yielded no nonnegative eigenvector; eigenspaces: {:#?}",
            per_eigenspace
        )));
    }
    Ok(AnalysisReport {
        matrix_dim: m.dim(),
        distinct_eigenvalue_count,
        per_eigenspace,
        has_nonneg_eigenvector,
        theorem_applicable,
        theorem_satisfied: !theorem_applicable || has_nonneg_eigenvector,
    })
}

/// `v = (-1/2, 1, 1, ..., 1)` and `w = (1, -1/2, 1, 0, ..., 0)`: orthogonal,
/// neither nonnegative, with `v + w` strictly positive. Needs `n >= 3`.
pub fn counterexample_vectors<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 3, "counterexample vectors need n >= 3");
    let half = T::from_ratio(-1, 2);
    let mut v = vec![T::one(); n];
    v[0] = half.clone();
    let mut w = vec![T::zero(); n];
    w[0] = T::one();
    w[1] = half;
    w[2] = T::one();
    (v, w)
}

/// Symmetric matrix with `v` and `w` from [`counterexample_vectors`] as simple
/// eigenvectors (eigenvalues `eigenvalues[0]` and `eigenvalues[1]`) and the
/// remaining eigenvalues on the completion of `{v, w}` to an orthonormal
/// basis. When fewer than `n - 2` remaining values are given the last one is
/// repeated. No eigenvector of the result is nonnegative.
pub fn build_counterexample(n: usize, eigenvalues: &[f64]) -> Result<SymmetricMatrix> {
    if n < 3 {
        return Err(Error::usage(format!(
            "the counterexample construction needs dimension n >= 3, got n = {n}"
        )));
    }
    if eigenvalues.len() < 3 {
        return Err(Error::usage(format!(
            "need at least three eigenvalues (λ_v, λ_w, λ_rest...), got {}",
            eigenvalues.len()
        )));
    }
    if eigenvalues.len() > n {
        return Err(Error::usage(format!(
            "{} eigenvalues given for dimension {n}",
            eigenvalues.len()
        )));
    }
    if let Some(bad) = eigenvalues.iter().find(|x| !x.is_finite()) {
        return Err(Error::usage(format!("eigenvalue {bad} is not finite")));
    }
    let (lv, lw) = (eigenvalues[0], eigenvalues[1]);
    let mut rest = eigenvalues[2..].to_vec();
    let last = *rest.last().expect("at least one remaining eigenvalue");
    rest.resize(n - 2, last);

    check_gap(lv, lw, "λ_v", "λ_w")?;
    for &r in &rest {
        check_gap(lv, r, "λ_v", "a remaining eigenvalue")?;
        check_gap(lw, r, "λ_w", "a remaining eigenvalue")?;
    }
    for (i, &a) in rest.iter().enumerate() {
        for &b in &rest[i + 1..] {
            if a != b {
                check_gap(a, b, "remaining eigenvalue", "remaining eigenvalue")?;
            }
        }
    }

    let (v, w) = counterexample_vectors::<f64>(n);
    let vw: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
    if vw != 0.0 || v.iter().zip(&w).any(|(a, b)| a + b <= 0.0) {
        return Err(Error::numerical("counterexample vectors lost their defining properties"));
    }
    let mut candidates = vec![v, w];
    candidates.extend((0..n).map(|i| unit_vector(n, i)));
    let basis = Subspace::span(n, &candidates, DEFAULT_RANK_TOL)?;
    if basis.dim() != n {
        return Err(Error::numerical(format!(
            "basis completion produced {} of {n} directions",
            basis.dim()
        )));
    }
    let mut values = vec![lv, lw];
    values.extend(rest);
    from_spectrum(basis.basis(), &values)
}

fn check_gap(a: f64, b: f64, what_a: &str, what_b: &str) -> Result<()> {
    if (a - b).abs() < MIN_EIGENVALUE_GAP {
        return Err(Error::usage(format!(
            "{what_a} = {a} and {what_b} = {b} must differ by at least {MIN_EIGENVALUE_GAP:e}"
        )));
    }
    Ok(())
}

/// `Σ λᵢ uᵢuᵢᵀ` for orthonormal `uᵢ`.
pub fn from_spectrum(vectors: &[Vec<f64>], values: &[f64]) -> Result<SymmetricMatrix> {
    let n = vectors.first().map_or(0, Vec::len);
    if vectors.len() != values.len() {
        return Err(Error::usage("one eigenvalue per eigenvector required"));
    }
    let mut m = DenseMatrix::<f64>::zeros(n, n);
    for (u, &lambda) in vectors.iter().zip(values) {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += lambda * u[i] * u[j];
            }
        }
    }
    SymmetricMatrix::new(m)
}

/// Orthonormalized columns of a seeded standard Gaussian matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| StandardNormal.sample(&mut rng)).collect())
        .collect();
    let q = Subspace::span(n, &columns, DEFAULT_RANK_TOL)?;
    if q.dim() != n {
        return Err(Error::numerical(format!(
            "random Gaussian matrix for seed {seed} was rank deficient"
        )));
    }
    Ok(q.basis().to_vec())
}

/// `Q diag(λ₁ (k times), λ₂ (n-k times)) Qᵀ` for a random orthogonal `Q`
/// determined by `seed`.
pub fn random_two_eigenvalue_matrix(
    n: usize,
    lambda1: f64,
    lambda2: f64,
    multiplicity: usize,
    seed: u64,
) -> Result<SymmetricMatrix> {
    if n < 2 || multiplicity == 0 || multiplicity >= n {
        return Err(Error::usage(format!(
            "multiplicity of the first eigenvalue must be in 1..={} for n = {n}, got {multiplicity}",
            n.saturating_sub(1)
        )));
    }
    if !lambda1.is_finite() || !lambda2.is_finite() {
        return Err(Error::usage("eigenvalues must be finite"));
    }
    check_gap(lambda1, lambda2, "λ₁", "λ₂")?;
    let q = random_orthogonal(n, seed)?;
    let values: Vec<f64> = (0..n)
        .map(|i| if i < multiplicity { lambda1 } else { lambda2 })
        .collect();
    from_spectrum(&q, &values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    /// One-dimensional eigenspace `span{u}`: nonnegative iff `u` or `-u` is.
    SignScan,
    /// Higher dimension: full witness/certificate search.
    Alternative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenspaceCheck {
    pub value: f64,
    pub multiplicity: usize,
    pub method: CheckMethod,
    pub contains_nonneg: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NoNonnegCheck {
    /// True iff no eigenspace contains a nonzero nonnegative vector.
    pub holds: bool,
    pub eigenspaces: Vec<EigenspaceCheck>,
}

/// Decides the absence of nonnegative eigenvectors without the LP for simple
/// eigenvalues.
pub fn verify_no_nonneg_eigenvector(
    m: &SymmetricMatrix,
    options: &AnalysisOptions,
) -> Result<NoNonnegCheck> {
    let clusters = eigenspaces(m, options.cluster_tol)?;
    let mut checks = Vec::with_capacity(clusters.len());
    for c in clusters {
        let (method, contains_nonneg) = if c.space.dim() == 1 {
            (CheckMethod::SignScan, line_is_nonneg(&c.space.basis()[0], SIGN_SCAN_TOL))
        } else {
            let verdict = decide_alternative(&c.space, &options.alternative)?;
            (CheckMethod::Alternative, verdict.has_nonneg())
        };
        checks.push(EigenspaceCheck {
            value: c.representative_value,
            multiplicity: c.multiplicity,
            method,
            contains_nonneg,
        });
    }
    Ok(NoNonnegCheck {
        holds: checks.iter().all(|c| !c.contains_nonneg),
        eigenspaces: checks,
    })
}

/// Whether `span{u}` holds a nonzero nonnegative vector, i.e. `u >= 0` or
/// `u <= 0` componentwise, up to `tol` relative to `max |u|`.
pub fn line_is_nonneg(u: &[f64], tol: f64) -> bool {
    let slack = tol * max_abs(u).max(f64::MIN_POSITIVE);
    u.iter().all(|&x| x >= -slack) || u.iter().all(|&x| x <= slack)
}
