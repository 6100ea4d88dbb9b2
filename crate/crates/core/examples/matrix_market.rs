// Matrices travel as Matrix Market arrays (lower triangle, column-major) or
// JSON. An analysis becomes a structured report tied to its input by a
// SHA-256 digest, and the report can be re-verified later.

use nonneg::io::{parse_matrix, write_matrix_market};
use nonneg::report::{analyze_report, verify_report, StructuredReport, Tolerances};
use nonneg::{analyze, build_counterexample, AnalysisOptions};

pub fn run_example() -> nonneg::Result<()> {
    let m = build_counterexample(3, &[1.0, 2.0, 3.0])?;
    let text = write_matrix_market(&m);
    print!("{text}");

    let parsed = parse_matrix(text.as_bytes())?;
    assert_eq!(parsed.matrix().max_abs_diff(m.matrix()), 0.0);

    let json = r#"{"dim": 2, "rows": [[2, 1], [1, 2]]}"#;
    let small = parse_matrix(json.as_bytes())?;
    println!("JSON input parsed as a {}x{} matrix", small.dim(), small.dim());

    let analysis = analyze(&parsed, &AnalysisOptions::default())?;
    let report = analyze_report(&analysis, text.as_bytes(), Tolerances::default());
    let serialized = report.to_json();
    println!("report digest {}", report.input_digest());

    let reread = StructuredReport::from_json(&serialized)?;
    let summary = verify_report(&reread, text.as_bytes(), None)?;
    println!(
        "verified {} witnesses and {} certificates",
        summary.witnesses, summary.certificates
    );

    // the same report does not vouch for different input
    assert!(verify_report(&reread, json.as_bytes(), None).is_err());
    Ok(())
}

fn main() -> nonneg::Result<()> {
    run_example()
}
