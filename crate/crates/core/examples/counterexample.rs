// With three or more eigenvalues the conclusion can fail. The matrix built
// here has v = (-1/2, 1, ..., 1) and w = (1, -1/2, 1, 0, ..., 0) as
// eigenvectors for simple eigenvalues. Every other eigenvector is
// orthogonal to the positive vector v + w, so none is nonnegative.

use nonneg::spectral::{counterexample_vectors, CheckMethod};
use nonneg::{analyze, build_counterexample, verify_no_nonneg_eigenvector, AnalysisOptions, Rational, Scalar};

pub fn run_example() -> nonneg::Result<()> {
    let (v, w) = counterexample_vectors::<Rational>(3);
    let sum: Vec<String> = v.iter().zip(&w).map(|(a, b)| (a + b).render()).collect();
    let inner: Rational = v.iter().zip(&w).map(|(a, b)| a * b).sum();
    println!("n = 3: <v, w> = {}, v + w = {sum:?}", inner.render());

    let options = AnalysisOptions::default();
    for (n, values) in [(3, vec![1.0, 2.0, 3.0]), (5, vec![1.0, 2.0, 3.0]), (6, vec![-1.0, 4.0, 0.5, 2.0])] {
        let m = build_counterexample(n, &values)?;
        let check = verify_no_nonneg_eigenvector(&m, &options)?;
        assert!(check.holds);
        assert!(!analyze(&m, &options)?.has_nonneg_eigenvector);
        let methods: Vec<&str> = check
            .eigenspaces
            .iter()
            .map(|e| match e.method {
                CheckMethod::SignScan => "sign scan",
                CheckMethod::Alternative => "certificate",
            })
            .collect();
        println!("n = {n}, eigenvalues {values:?}: no nonnegative eigenvector ({methods:?})");
    }

    // two dimensions leave no room for the construction
    assert!(build_counterexample(2, &[1.0, 2.0, 3.0]).is_err());
    Ok(())
}

fn main() -> nonneg::Result<()> {
    run_example()
}
