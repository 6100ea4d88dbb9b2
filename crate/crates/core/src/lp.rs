//! Feasibility of standard-form systems `A x = b, x >= 0`.
//!
//! [`solve_feasibility`] is a dense phase-1 simplex with Bland's rule.
//! [`brute_force_feasibility`] enumerates basic solutions and serves as an
//! independent oracle for small problems.

use crate::error::{Error, Result};
use crate::matrix::{max_abs, DenseMatrix};
use crate::scalar::Scalar;

pub const DEFAULT_FEAS_TOL: f64 = 1e-9;
pub const DEFAULT_PIVOT_TOL: f64 = 1e-11;
/// Largest column count [`brute_force_feasibility`] accepts.
pub const BRUTE_FORCE_MAX_COLUMNS: usize = 12;

/// Find `x` with `A x = b` and `x >= 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityProblem<T> {
    a: DenseMatrix<T>,
    b: Vec<T>,
}

impl<T: Scalar> FeasibilityProblem<T> {
    pub fn new(a: DenseMatrix<T>, b: Vec<T>) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::usage(format!(
                "feasibility problem needs at least one row and column, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        if b.len() != a.rows() {
            return Err(Error::usage(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                a.rows()
            )));
        }
        if b.iter().any(|x| !x.is_finite_value()) {
            return Err(Error::usage("non-finite right-hand side"));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &DenseMatrix<T> {
        &self.a
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    pub fn rows(&self) -> usize {
        self.a.rows()
    }

    pub fn cols(&self) -> usize {
        self.a.cols()
    }

    /// `max |A x - b|`
    pub fn residual(&self, x: &[T]) -> T {
        let ax = self.a.matvec(x);
        max_abs(&crate::matrix::sub(&ax, &self.b))
    }

    /// Checks a claimed solution without looking at how it was produced:
    /// float, `‖Ax - b‖_max <= 1e-9 max(1, ‖b‖_max)` and `min x >= -1e-12`;
    /// exact, `Ax = b` and `x >= 0`.
    pub fn accepts(&self, x: &[T]) -> bool {
        if x.len() != self.cols() {
            return false;
        }
        let scale = 1.0_f64.max(max_abs(&self.b).to_f64());
        self.residual(x).is_zero_within(1e-9 * scale) && !x.iter().any(|v| v.below_neg(1e-12))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeasibilityOutcome<T> {
    Feasible(Vec<T>),
    Infeasible,
}

impl<T> FeasibilityOutcome<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Feasible(_))
    }

    pub fn point(&self) -> Option<&[T]> {
        match self {
            FeasibilityOutcome::Feasible(x) => Some(x),
            FeasibilityOutcome::Infeasible => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpOptions {
    /// Relative bound on the final artificial mass (float backend only).
    pub feas_tol: f64,
    /// Magnitude below which reduced costs and pivot candidates count as zero
    /// (float backend only).
    pub pivot_tol: f64,
}

impl Default for LpOptions {
    fn default() -> Self {
        Self {
            feas_tol: DEFAULT_FEAS_TOL,
            pivot_tol: DEFAULT_PIVOT_TOL,
        }
    }
}

/// Pivot history of one phase-1 run.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveTrace<T> {
    /// `(leaving row, entering column)` for every pivot, in order.
    pub pivots: Vec<(usize, usize)>,
    pub artificial_objective: T,
}

pub fn solve_feasibility<T: Scalar>(
    problem: &FeasibilityProblem<T>,
    options: &LpOptions,
) -> Result<FeasibilityOutcome<T>> {
    solve_feasibility_traced(problem, options).map(|(outcome, _)| outcome)
}

/// Phase-1 simplex: one artificial per row, minimize their sum, Bland's
/// lowest-index rule for both the entering and the leaving variable.
pub fn solve_feasibility_traced<T: Scalar>(
    problem: &FeasibilityProblem<T>,
    options: &LpOptions,
) -> Result<(FeasibilityOutcome<T>, SolveTrace<T>)> {
    let m = problem.rows();
    let d = problem.cols();
    let width = d + m;
    let piv = options.pivot_tol;

    let mut tableau: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut rhs: Vec<T> = Vec::with_capacity(m);
    for i in 0..m {
        let negate = problem.b[i].is_negative();
        let mut row = vec![T::zero(); width];
        for (j, slot) in row.iter_mut().take(d).enumerate() {
            let v = problem.a[(i, j)].clone();
            *slot = if negate { -v } else { v };
        }
        row[d + i] = T::one();
        tableau.push(row);
        let bi = problem.b[i].clone();
        rhs.push(if negate { -bi } else { bi });
    }
    let mut basis: Vec<usize> = (d..width).collect();

    // reduced costs of the phase-1 objective (sum of artificials)
    let mut reduced = vec![T::zero(); width];
    for (j, r) in reduced.iter_mut().take(d).enumerate() {
        *r = -tableau
            .iter()
            .fold(T::zero(), |acc, row| acc + row[j].clone());
    }

    let cap = 50 * (d + m);
    let mut pivots = Vec::new();
    while let Some(enter) = (0..d).find(|&j| reduced[j].below_neg(piv)) {
        if pivots.len() == cap {
            return Err(Error::numerical(format!(
                "phase-1 simplex exceeded {cap} pivots on a {m}x{d} problem"
            )));
        }

        let mut leave: Option<(usize, T)> = None;
        for i in 0..m {
            let coef = &tableau[i][enter];
            if !coef.exceeds(piv) {
                continue;
            }
            let ratio = rhs[i].clone() / coef.clone();
            let better = match &leave {
                None => true,
                Some((best, best_ratio)) => {
                    ratio < *best_ratio || (ratio == *best_ratio && basis[i] < basis[*best])
                }
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Err(Error::numerical(format!(
                "phase-1 objective unbounded along column {enter}; the tableau has lost accuracy"
            )));
        };

        pivot(&mut tableau, &mut rhs, &mut reduced, row, enter, piv);
        basis[row] = enter;
        pivots.push((row, enter));
    }

    let artificial_objective = basis
        .iter()
        .zip(&rhs)
        .filter(|(&var, _)| var >= d)
        .fold(T::zero(), |acc, (_, v)| acc + v.clone());
    let scale = 1.0_f64.max(max_abs(&problem.b).to_f64());
    let outcome = if artificial_objective.exceeds(options.feas_tol * scale) {
        FeasibilityOutcome::Infeasible
    } else {
        let mut x = vec![T::zero(); d];
        for (&var, v) in basis.iter().zip(&rhs) {
            if var < d && v.is_positive() {
                x[var] = v.clone();
            }
        }
        FeasibilityOutcome::Feasible(x)
    };
    Ok((
        outcome,
        SolveTrace {
            pivots,
            artificial_objective,
        },
    ))
}

fn pivot<T: Scalar>(
    tableau: &mut [Vec<T>],
    rhs: &mut [T],
    reduced: &mut [T],
    row: usize,
    col: usize,
    piv: f64,
) {
    let p = tableau[row][col].clone();
    for v in tableau[row].iter_mut() {
        *v = v.clone() / p.clone();
    }
    rhs[row] = rhs[row].clone() / p;
    tableau[row][col] = T::one();

    let pivot_row = tableau[row].clone();
    let pivot_rhs = rhs[row].clone();
    for (i, r) in tableau.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v = v.clone() - factor.clone() * pv.clone();
            }
        }
        r[col] = T::zero();
        rhs[i] = rhs[i].clone() - factor * pivot_rhs.clone();
        // rounding can push a basic value just below zero
        if rhs[i].is_negative() && rhs[i].is_zero_within(piv) {
            rhs[i] = T::zero();
        }
    }
    let factor = reduced[col].clone();
    for (v, pv) in reduced.iter_mut().zip(&pivot_row) {
        if !pv.is_zero() {
            *v = v.clone() - factor.clone() * pv.clone();
        }
    }
    reduced[col] = T::zero();
}

/// Enumerates every column subset of size at most `m`, solves the restricted
/// system by elimination and accepts the first nonnegative unique solution.
/// A feasible standard-form system always has such a basic solution. `tol`
/// only matters for floats.
pub fn brute_force_feasibility<T: Scalar>(
    problem: &FeasibilityProblem<T>,
    tol: f64,
) -> Result<FeasibilityOutcome<T>> {
    let m = problem.rows();
    let d = problem.cols();
    if d > BRUTE_FORCE_MAX_COLUMNS {
        return Err(Error::usage(format!(
            "brute-force oracle supports at most {BRUTE_FORCE_MAX_COLUMNS} columns, got {d}"
        )));
    }
    let scale = 1.0_f64.max(max_abs(&problem.b).to_f64());
    for mask in 0u32..(1u32 << d) {
        if mask.count_ones() as usize > m {
            continue;
        }
        let support: Vec<usize> = (0..d).filter(|j| mask & (1 << j) != 0).collect();
        if let Some(y) = solve_restricted(problem, &support, tol, scale) {
            if y.iter().all(|v| !v.below_neg(tol)) {
                let mut x = vec![T::zero(); d];
                for (&j, v) in support.iter().zip(y) {
                    x[j] = if v.is_negative() { T::zero() } else { v };
                }
                return Ok(FeasibilityOutcome::Feasible(x));
            }
        }
    }
    Ok(FeasibilityOutcome::Infeasible)
}

/// Unique solution of `A[:, support] y = b`, or `None` when the columns are
/// dependent or the system is inconsistent.
fn solve_restricted<T: Scalar>(
    problem: &FeasibilityProblem<T>,
    support: &[usize],
    tol: f64,
    scale: f64,
) -> Option<Vec<T>> {
    let m = problem.rows();
    let s = support.len();
    let mut aug: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let mut row: Vec<T> = support.iter().map(|&j| problem.a[(i, j)].clone()).collect();
            row.push(problem.b[i].clone());
            row
        })
        .collect();
    let col_scale = max_abs(problem.a.as_slice()).to_f64().max(1.0);

    for c in 0..s {
        // partial pivoting: largest magnitude in column c at or below row c
        let mut best = c;
        for r in c..m {
            if aug[r][c].abs() > aug[best][c].abs() {
                best = r;
            }
        }
        if best >= m || aug[best][c].is_zero_within(1e-12 * col_scale) {
            return None;
        }
        aug.swap(c, best);
        let p = aug[c][c].clone();
        for r in 0..m {
            if r == c || aug[r][c].is_zero() {
                continue;
            }
            let f = aug[r][c].clone() / p.clone();
            let pivot_row = aug[c].clone();
            for (target, source) in aug[r].iter_mut().zip(&pivot_row).skip(c).take(s + 1 - c) {
                *target = target.clone() - f.clone() * source.clone();
            }
        }
    }
    if aug.iter().skip(s).any(|row| !row[s].is_zero_within(tol * scale)) {
        return None;
    }
    Some((0..s).map(|c| aug[c][s].clone() / aug[c][c].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn problem(rows: &[Vec<f64>], b: &[f64]) -> FeasibilityProblem<f64> {
        FeasibilityProblem::new(DenseMatrix::from_rows(rows).unwrap(), b.to_vec()).unwrap()
    }

    fn exact(rows: &[Vec<i64>], b: &[i64]) -> FeasibilityProblem<Rational> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_ratio(v, 1)).collect())
            .collect();
        let b = b.iter().map(|&v| Rational::from_ratio(v, 1)).collect();
        FeasibilityProblem::new(DenseMatrix::from_rows(&rows).unwrap(), b).unwrap()
    }

    #[test]
    fn simplex_row_is_feasible() {
        let p = problem(&[vec![1.0, 1.0]], &[1.0]);
        for outcome in [
            solve_feasibility(&p, &LpOptions::default()).unwrap(),
            brute_force_feasibility(&p, 1e-9).unwrap(),
        ] {
            let x = outcome.point().expect("feasible");
            assert!(p.accepts(x));
            assert!((x[0] + x[1] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn negative_rhs_with_positive_row_is_infeasible() {
        let p = problem(&[vec![1.0]], &[-1.0]);
        assert_eq!(solve_feasibility(&p, &LpOptions::default()).unwrap(), FeasibilityOutcome::Infeasible);
        assert_eq!(brute_force_feasibility(&p, 1e-9).unwrap(), FeasibilityOutcome::Infeasible);
    }

    #[test]
    fn homogeneous_row_admits_zero() {
        let p = exact(&[vec![1, -1]], &[0]);
        let oracle = brute_force_feasibility(&p, 0.0).unwrap();
        assert_eq!(oracle.point().unwrap(), &[Rational::from_ratio(0, 1), Rational::from_ratio(0, 1)]);
        assert!(solve_feasibility(&p, &LpOptions::default()).unwrap().is_feasible());
    }

    #[test]
    fn negated_rows_still_solve() {
        // -x0 - x1 = -2, x0 - x1 = 0 -> (1, 1)
        let p = exact(&[vec![-1, -1], vec![1, -1]], &[-2, 0]);
        let outcome = solve_feasibility(&p, &LpOptions::default()).unwrap();
        let one = Rational::from_ratio(1, 1);
        assert_eq!(outcome.point().unwrap(), &[one.clone(), one]);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = exact(&[vec![1, 1, 0], vec![2, 2, 0], vec![0, 0, 1]], &[1, 2, 3]);
        let outcome = solve_feasibility(&p, &LpOptions::default()).unwrap();
        assert!(p.accepts(outcome.point().unwrap()));
        assert!(brute_force_feasibility(&p, 0.0).unwrap().is_feasible());
        let q = exact(&[vec![1, 1], vec![2, 2]], &[1, 3]);
        assert!(!solve_feasibility(&q, &LpOptions::default()).unwrap().is_feasible());
        assert!(!brute_force_feasibility(&q, 0.0).unwrap().is_feasible());
    }

    #[test]
    fn oracle_guards_column_count() {
        let p = problem(&[vec![1.0; 13]], &[1.0]);
        assert!(matches!(brute_force_feasibility(&p, 1e-9), Err(Error::Usage(_))));
    }

    #[test]
    fn malformed_problems_are_rejected() {
        assert!(FeasibilityProblem::new(DenseMatrix::<f64>::zeros(0, 2), vec![]).is_err());
        assert!(FeasibilityProblem::new(DenseMatrix::<f64>::zeros(1, 2), vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn pivots_are_deterministic() {
        let p = exact(&[vec![1, 2, -1, 0], vec![0, 1, 1, 1]], &[3, 2]);
        let (a, ta) = solve_feasibility_traced(&p, &LpOptions::default()).unwrap();
        let (b, tb) = solve_feasibility_traced(&p, &LpOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(ta, tb);
        assert!(!ta.pivots.is_empty());
    }

    #[test]
    fn accepts_rejects_bad_points() {
        let p = problem(&[vec![1.0, 1.0]], &[1.0]);
        assert!(p.accepts(&[0.25, 0.75]));
        assert!(!p.accepts(&[1.5, -0.5]));
        assert!(!p.accepts(&[0.5, 0.6]));
        assert!(!p.accepts(&[1.0]));
    }
}
