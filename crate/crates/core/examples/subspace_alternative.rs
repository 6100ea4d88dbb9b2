// For any subspace V of R^n, either V or its orthogonal complement contains
// a nonzero nonnegative vector. This example classifies a few planes and
// lines and checks every witness and certificate it gets back.

use nonneg::{classify_pair, verify_certificate, verify_witness, AlternativeOptions, PairClassification, Subspace};

pub fn run_example() -> nonneg::Result<()> {
    let options = AlternativeOptions::default();
    let cases: [(&str, usize, Vec<Vec<f64>>); 4] = [
        ("x-axis in R^2", 2, vec![vec![1.0, 0.0]]),
        ("antidiagonal in R^2", 2, vec![vec![1.0, -1.0]]),
        ("sum-zero plane in R^3", 3, vec![vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]]),
        ("{0} in R^3", 3, vec![]),
    ];

    for (name, n, vectors) in cases {
        let v = Subspace::<f64>::span(n, &vectors, options.rank_tol)?;
        let complement = v.orthogonal_complement();
        let pair = classify_pair(&v, &options)?;
        println!("{name}: {}", pair.label());

        let ok = match &pair {
            PairClassification::BothSides { witness_v, witness_complement } => {
                verify_witness(&v, &witness_v.x, 1e-9) && verify_witness(&complement, &witness_complement.x, 1e-9)
            }
            PairClassification::OnlyV { witness_v, certificate_in_v } => {
                println!("  positive vector in V: {:?}", certificate_in_v.v);
                verify_witness(&v, &witness_v.x, 1e-9) && verify_certificate(&complement, &certificate_in_v.v, 1e-9)
            }
            PairClassification::OnlyComplement { certificate_in_complement, witness_complement } => {
                println!("  positive vector in V_perp: {:?}", certificate_in_complement.v);
                verify_certificate(&v, &certificate_in_complement.v, 1e-9)
                    && verify_witness(&complement, &witness_complement.x, 1e-9)
            }
        };
        assert!(ok, "{name}: a returned vector failed its check");
    }
    Ok(())
}

fn main() -> nonneg::Result<()> {
    run_example()
}
