mod common;

use nonneg::spectral::{line_is_nonneg, CheckMethod, SIGN_SCAN_TOL};
use nonneg::{
    analyze, build_counterexample, decide_alternative, eigenspaces, random_two_eigenvalue_matrix,
    verify_no_nonneg_eigenvector, AnalysisOptions,
};
use rand::Rng;

fn random_tuple(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    loop {
        let values: Vec<f64> = (0..n).map(|_| (rng.random_range(-10.0f64..10.0) * 1e3).round() / 1e3).collect();
        let ok = values
            .iter()
            .enumerate()
            .all(|(i, a)| values[i + 1..].iter().all(|b| (a - b).abs() >= 1e-3));
        if ok {
            return values;
        }
    }
}

#[test]
fn counterexample_family_has_no_nonneg_eigenvector() {
    let mut rng = common::rng(51);
    let options = AnalysisOptions::default();
    for n in 3..=8 {
        for _ in 0..10 {
            let count = rng.random_range(3..=n);
            let values = random_tuple(&mut rng, count);
            let m = build_counterexample(n, &values).unwrap();
            let check = verify_no_nonneg_eigenvector(&m, &options).unwrap();
            assert!(check.holds, "n = {n}, values {values:?}: {check:?}");
            let report = analyze(&m, &options).unwrap();
            assert!(!report.has_nonneg_eigenvector);
        }
    }
}

#[test]
fn sign_scan_and_lp_agree_on_lines() {
    let mut rng = common::rng(52);
    let options = AnalysisOptions::default();
    for trial in 0..300 {
        let n = rng.random_range(2..=7);
        let m = if trial % 3 == 0 {
            build_counterexample(n.max(3), &random_tuple(&mut rng, 3)).unwrap()
        } else {
            common::random_symmetric(&mut rng, n)
        };
        for cluster in eigenspaces(&m, options.cluster_tol).unwrap() {
            if cluster.space.dim() != 1 {
                continue;
            }
            let scan = line_is_nonneg(&cluster.space.basis()[0], SIGN_SCAN_TOL);
            let lp = decide_alternative(&cluster.space, &options.alternative).unwrap().has_nonneg();
            assert_eq!(scan, lp, "trial {trial}");
        }
        let check = verify_no_nonneg_eigenvector(&m, &options).unwrap();
        let report = analyze(&m, &options).unwrap();
        assert_eq!(check.holds, !report.has_nonneg_eigenvector);
        assert!(check
            .eigenspaces
            .iter()
            .all(|c| (c.multiplicity == 1) == (c.method == CheckMethod::SignScan)));
    }
}

#[test]
fn report_flags_are_consistent() {
    let mut rng = common::rng(53);
    let options = AnalysisOptions::default();
    for trial in 0..300u64 {
        let n = rng.random_range(2..=6);
        let m = if trial % 2 == 0 {
            common::random_symmetric(&mut rng, n)
        } else {
            random_two_eigenvalue_matrix(n, -1.0, 2.0, rng.random_range(1..n), trial).unwrap()
        };
        let r = analyze(&m, &options).unwrap();
        assert_eq!(r.distinct_eigenvalue_count, r.per_eigenspace.len());
        assert_eq!(
            r.has_nonneg_eigenvector,
            r.per_eigenspace.iter().any(|e| e.verdict.has_nonneg())
        );
        assert_eq!(r.theorem_applicable, r.distinct_eigenvalue_count <= 2);
        assert!(r.theorem_satisfied);
        assert_eq!(
            r.per_eigenspace.iter().map(|e| e.cluster.multiplicity).sum::<usize>(),
            n
        );
    }
}
