mod common;

use nonneg::alternative::witness_certificate_pairing;
use nonneg::subspace::DEFAULT_RANK_TOL;
use nonneg::{
    classify_pair, decide_alternative, find_nonneg_witness, find_positive_certificate,
    verify_certificate, verify_witness, AlternativeOptions, AlternativeVerdict, Rational, Subspace,
};
use num_traits::{One, Zero};
use rand::Rng;

#[test]
fn exactly_one_side_of_the_alternative_holds() {
    let mut rng = common::rng(41);
    let options = AlternativeOptions::default();
    for trial in 0..1000 {
        let (n, vectors) = common::random_rational_vectors(&mut rng, 8);
        let v = Subspace::<Rational>::span(n, &vectors, 0.0).unwrap();
        let w = find_nonneg_witness(&v, &options).unwrap();
        let c = find_positive_certificate(&v, &options).unwrap();
        assert!(w.is_some() != c.is_some(), "trial {trial}: witness {w:?} certificate {c:?}");
        if let Some(w) = &w {
            assert!(verify_witness(&v, &w.x, 0.0));
            assert!(w.subspace_residual.is_zero());
        }
        if let Some(c) = &c {
            assert!(verify_certificate(&v, &c.v, 0.0));
            assert!(c.v.iter().min().unwrap().is_one());
        }
        classify_pair(&v, &options).unwrap();
    }
}

#[test]
fn float_outputs_pass_their_verifiers() {
    let mut rng = common::rng(42);
    let options = AlternativeOptions::default();
    for _ in 0..500 {
        let n = rng.random_range(1..=8);
        let k = rng.random_range(0..=n);
        let vectors: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let v = Subspace::span(n, &vectors, DEFAULT_RANK_TOL).unwrap();
        match decide_alternative(&v, &options).unwrap() {
            AlternativeVerdict::HasNonneg(w) => assert!(verify_witness(&v, &w.x, 1e-9)),
            AlternativeVerdict::NoNonneg(c) => assert!(verify_certificate(&v, &c.v, 1e-9)),
        }
    }
}

#[test]
fn a_witness_and_a_certificate_cannot_both_verify() {
    let mut rng = common::rng(43);
    let options = AlternativeOptions::default();
    for _ in 0..300 {
        let (n, vectors) = common::random_rational_vectors(&mut rng, 6);
        let v = Subspace::<Rational>::span(n, &vectors, 0.0).unwrap();
        let complement = v.orthogonal_complement();
        // a witness for V and a certificate for V⊥ both live in V
        let (Some(w), Some(c)) = (
            find_nonneg_witness(&v, &options).unwrap(),
            find_positive_certificate(&complement, &options).unwrap(),
        ) else {
            continue;
        };
        // forging: treat the witness as a certificate against V and vice versa
        let pairing = witness_certificate_pairing(&w.x, &c.v);
        assert!(pairing >= Rational::one() * w.x.iter().cloned().sum::<Rational>());
        assert!(!verify_certificate(&v, &c.v, 0.0) || v.dim() == 0);
    }
}

#[test]
fn verdict_is_invariant_under_rescaling_the_spanning_vectors() {
    let mut rng = common::rng(44);
    let options = AlternativeOptions::default();
    for _ in 0..300 {
        let (n, vectors) = common::random_rational_vectors(&mut rng, 7);
        let scaled: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| {
                let mut s = common::small_rational(&mut rng);
                while s.is_zero() {
                    s = common::small_rational(&mut rng);
                }
                v.iter().map(|x| x * &s).collect()
            })
            .collect();
        let a = Subspace::<Rational>::span(n, &vectors, 0.0).unwrap();
        let b = Subspace::<Rational>::span(n, &scaled, 0.0).unwrap();
        let va = decide_alternative(&a, &options).unwrap();
        let vb = decide_alternative(&b, &options).unwrap();
        assert_eq!(va.has_nonneg(), vb.has_nonneg());

        let fa = Subspace::span(n, &common::to_f64(&vectors), DEFAULT_RANK_TOL).unwrap();
        let fb = Subspace::span(n, &common::to_f64(&scaled), DEFAULT_RANK_TOL).unwrap();
        assert_eq!(
            decide_alternative(&fa, &options).unwrap().has_nonneg(),
            decide_alternative(&fb, &options).unwrap().has_nonneg()
        );
    }
}
