#![allow(dead_code)]

use nonneg::{DenseMatrix, FeasibilityProblem, Rational, Scalar, SymmetricMatrix};
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p|, |q| <= 9`, `q != 0`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let p = rng.random_range(-9i64..=9);
    let mut q = 0;
    while q == 0 {
        q = rng.random_range(-9i64..=9);
    }
    Rational::from_ratio(p, q)
}

/// Random spanning set in `R^n`, `1 <= n <= max_n`, with `0..=n` vectors.
/// Entries are sometimes zeroed to produce sparse, degenerate cases.
pub fn random_rational_vectors(rng: &mut ChaCha8Rng, max_n: usize) -> (usize, Vec<Vec<Rational>>) {
    let n = rng.random_range(1..=max_n);
    let k = rng.random_range(0..=n);
    let sparse = rng.random_bool(0.3);
    let vectors = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| {
                    if sparse && rng.random_bool(0.5) {
                        Rational::from_ratio(0, 1)
                    } else {
                        small_rational(rng)
                    }
                })
                .collect()
        })
        .collect();
    (n, vectors)
}

pub fn to_f64(v: &[Vec<Rational>]) -> Vec<Vec<f64>> {
    v.iter().map(|r| r.iter().map(|x| x.to_f64()).collect()).collect()
}

/// Half of the instances are feasible by construction (`b = A x0`, `x0 >= 0`).
pub fn random_feasibility_problem(rng: &mut ChaCha8Rng) -> FeasibilityProblem<Rational> {
    let m = rng.random_range(1..=4);
    let d = rng.random_range(1..=8);
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|_| (0..d).map(|_| small_rational(rng)).collect())
        .collect();
    let a = DenseMatrix::from_rows(&rows).unwrap();
    let b = if rng.random_bool(0.5) {
        let x0: Vec<Rational> = (0..d)
            .map(|_| {
                if rng.random_bool(0.5) {
                    Rational::from_ratio(0, 1)
                } else {
                    small_rational(rng).abs()
                }
            })
            .collect();
        a.matvec(&x0)
    } else {
        (0..m).map(|_| small_rational(rng)).collect()
    };
    FeasibilityProblem::new(a, b).unwrap()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> SymmetricMatrix {
    let mut m = DenseMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let v = rng.random_range(-1.0..=1.0);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
    SymmetricMatrix::new(m).unwrap()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}
