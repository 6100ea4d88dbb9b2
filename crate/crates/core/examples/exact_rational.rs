// Rational inputs are decided without rounding. Here V is spanned by
// v = (-1/2, 1, 1) and w = (1, -1/2, 1). Neither vector is nonnegative, but
// v + w = (1/2, 1/2, 2) is positive, so V has a witness and V_perp
// has none.

use nonneg::{
    classify_pair, find_nonneg_witness, verify_certificate, verify_witness, AlternativeOptions,
    PairClassification, Rational, Scalar, Subspace,
};

fn q(p: i64, d: i64) -> Rational {
    Rational::from_ratio(p, d)
}

pub fn run_example() -> nonneg::Result<()> {
    let options = AlternativeOptions::default();
    let v = vec![q(-1, 2), q(1, 1), q(1, 1)];
    let w = vec![q(1, 1), q(-1, 2), q(1, 1)];
    let space = Subspace::<Rational>::span(3, &[v, w], options.rank_tol)?;
    let complement = space.orthogonal_complement();
    println!("orthogonal basis of V: {:?}", render(space.basis()));
    println!("basis of V_perp: {:?}", render(complement.basis()));

    let witness = find_nonneg_witness(&space, &options)?.expect("V meets the simplex");
    println!("witness on the simplex: {:?}", render(std::slice::from_ref(&witness.x)));
    // every point of the segment x2 = 2/3, x0 + x1 = 1/3 is a witness
    assert!(verify_witness(&space, &witness.x, 0.0));
    assert!(verify_witness(&space, &[q(1, 6), q(1, 6), q(2, 3)], 0.0));

    match classify_pair(&space, &options)? {
        PairClassification::OnlyV { certificate_in_v, .. } => {
            println!("positive vector in V: {:?}", render(std::slice::from_ref(&certificate_in_v.v)));
            assert!(verify_certificate(&complement, &certificate_in_v.v, 0.0));
        }
        other => panic!("expected ONLY_V, got {}", other.label()),
    }
    Ok(())
}

fn render(vectors: &[Vec<Rational>]) -> Vec<Vec<String>> {
    vectors.iter().map(|v| v.iter().map(|x| x.render()).collect()).collect()
}

fn main() -> nonneg::Result<()> {
    run_example()
}
