// The phase-1 simplex solver decides `A x = b, x >= 0`. On small problems it
// can be checked against plain enumeration of basic solutions.

use nonneg::{
    brute_force_feasibility, solve_feasibility, DenseMatrix, FeasibilityProblem, LpOptions, Rational,
    Scalar,
};

fn q(p: i64) -> Rational {
    Rational::from_ratio(p, 1)
}

pub fn run_example() -> nonneg::Result<()> {
    let a = DenseMatrix::from_rows(&[vec![q(1), q(1), q(1), q(0)], vec![q(1), q(-1), q(0), q(1)]])?;

    // x0 + x1 + x2 = 4 and x0 - x1 + x3 = -2 has nonnegative solutions
    let feasible = FeasibilityProblem::new(a.clone(), vec![q(4), q(-2)])?;
    // x0 + x1 + x2 = -1 cannot hold with x >= 0
    let infeasible = FeasibilityProblem::new(a, vec![q(-1), q(0)])?;

    for (name, p) in [("feasible", &feasible), ("infeasible", &infeasible)] {
        let simplex = solve_feasibility(p, &LpOptions::default())?;
        let oracle = brute_force_feasibility(p, 0.0)?;
        assert_eq!(simplex.is_feasible(), oracle.is_feasible());
        match simplex.point() {
            Some(x) => {
                assert!(p.accepts(x));
                let shown: Vec<String> = x.iter().map(|v| v.render()).collect();
                println!("{name}: x = {shown:?}");
            }
            None => println!("{name}: no nonnegative solution"),
        }
    }

    let float = FeasibilityProblem::new(
        DenseMatrix::from_rows(&[vec![0.5, 0.25, 1.0]])?,
        vec![1.0],
    )?;
    let x = solve_feasibility(&float, &LpOptions::default())?;
    println!("float backend: {:?}", x.point());
    Ok(())
}

fn main() -> nonneg::Result<()> {
    run_example()
}
