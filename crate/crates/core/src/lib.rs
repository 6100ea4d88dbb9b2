//! Nonnegative vectors in subspaces and in eigenspaces of real symmetric
//! matrices.
//!
//! For any subspace `V ⊆ ℝⁿ`, either `V` contains a nonzero vector with no
//! negative entries, or `V⊥` contains a vector with all entries positive.
//! [`alternative`] decides which, returning a checkable witness or
//! certificate in either case. [`spectral`] applies this to eigenspaces: a
//! symmetric matrix with at most two distinct eigenvalues always has a
//! nonnegative eigenvector, and with three or more it need not.
//!
//! Subspace and LP code is generic over [`Scalar`], with `f64` and exact
//! [`Rational`] backends. Eigendecomposition is float only.

pub mod alternative;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod subspace;

pub use alternative::{
    classify_pair, decide_alternative, find_nonneg_witness, find_positive_certificate,
    verify_certificate, verify_witness, AlternativeOptions, AlternativeVerdict, CertificateVector,
    PairClassification, WitnessVector,
};
pub use eigen::{
    cluster_eigenvalues, eigenspaces, jacobi_eigendecomposition, EigenDecomposition,
    EigenspaceCluster, SymmetricMatrix,
};
pub use error::{Error, Result};
pub use lp::{
    brute_force_feasibility, solve_feasibility, FeasibilityOutcome, FeasibilityProblem, LpOptions,
};
pub use matrix::DenseMatrix;
pub use scalar::{Backend, Rational, Scalar};
pub use spectral::{
    analyze, build_counterexample, random_two_eigenvalue_matrix, verify_no_nonneg_eigenvector,
    AnalysisOptions, AnalysisReport, EigenspaceVerdict,
};
pub use subspace::Subspace;
