// A symmetric matrix with exactly two eigenvalues always has a nonnegative
// eigenvector: its eigenspaces are V and V_perp, and one of them meets the
// nonnegative orthant. This example samples such matrices and finds one.

use nonneg::{analyze, random_two_eigenvalue_matrix, AnalysisOptions};

pub fn run_example() -> nonneg::Result<()> {
    let options = AnalysisOptions::default();
    for (n, k, seed) in [(2, 1, 0), (4, 2, 1), (6, 1, 2), (8, 5, 3)] {
        let m = random_two_eigenvalue_matrix(n, 1.0, -3.0, k, seed)?;
        let report = analyze(&m, &options)?;
        assert!(report.theorem_applicable && report.has_nonneg_eigenvector);

        let found = report
            .per_eigenspace
            .iter()
            .find(|e| e.verdict.has_nonneg())
            .expect("one eigenspace has a witness");
        let witness = &found.verdict.witness().unwrap().x;
        println!(
            "n = {n}, mult(1) = {k}: eigenvalue {:.3} has nonnegative eigenvector {:.4?} (residual {:.1e})",
            found.cluster.representative_value,
            witness,
            found.eigen_residual.unwrap()
        );
    }
    Ok(())
}

fn main() -> nonneg::Result<()> {
    run_example()
}
