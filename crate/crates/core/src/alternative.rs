//! For a subspace V: either V holds a nonzero nonnegative vector, or V⊥ holds
//! a strictly positive one, never both.
//!
//! Both sides are searched as LP feasibility problems in ambient coordinates,
//! and each returned vector can be re-checked on its own with
//! [`verify_witness`] or [`verify_certificate`].

use crate::error::{Error, Result};
use crate::lp::{solve_feasibility, FeasibilityOutcome, FeasibilityProblem, LpOptions};
use crate::matrix::{dot, min_entry, sub, sum, DenseMatrix};
use crate::scalar::Scalar;
use crate::subspace::{select_independent_rows, Subspace, DEFAULT_RANK_TOL};

/// Default tolerance of the standalone verifiers.
pub const DEFAULT_VERIFY_TOL: f64 = 1e-9;

/// Nonzero nonnegative element of V, scaled onto the standard simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessVector<T> {
    pub x: Vec<T>,
    /// `max |x - project(V, x)|`
    pub subspace_residual: T,
    pub min_component: T,
}

/// Strictly positive element of V⊥, scaled so its smallest entry is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateVector<T> {
    pub v: Vec<T>,
    /// `max |⟨v, b⟩|` over the basis columns `b` of V.
    pub orthogonality_residual: T,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AlternativeVerdict<T> {
    HasNonneg(WitnessVector<T>),
    NoNonneg(CertificateVector<T>),
}

impl<T> AlternativeVerdict<T> {
    pub fn has_nonneg(&self) -> bool {
        matches!(self, AlternativeVerdict::HasNonneg(_))
    }

    pub fn witness(&self) -> Option<&WitnessVector<T>> {
        match self {
            AlternativeVerdict::HasNonneg(w) => Some(w),
            AlternativeVerdict::NoNonneg(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&CertificateVector<T>> {
        match self {
            AlternativeVerdict::HasNonneg(_) => None,
            AlternativeVerdict::NoNonneg(c) => Some(c),
        }
    }
}

/// Joint verdict on V and V⊥. A positive certificate against one side is a
/// nonnegative witness for the other, so "neither side" has no variant.
#[derive(Clone, Debug, PartialEq)]
pub enum PairClassification<T> {
    BothSides {
        witness_v: WitnessVector<T>,
        witness_complement: WitnessVector<T>,
    },
    OnlyV {
        witness_v: WitnessVector<T>,
        /// Positive vector in V proving V⊥ has no nonzero nonnegative vector.
        certificate_in_v: CertificateVector<T>,
    },
    OnlyComplement {
        /// Positive vector in V⊥ proving V has no nonzero nonnegative vector.
        certificate_in_complement: CertificateVector<T>,
        witness_complement: WitnessVector<T>,
    },
}

impl<T> PairClassification<T> {
    pub fn label(&self) -> &'static str {
        match self {
            PairClassification::BothSides { .. } => "BOTH_SIDES",
            PairClassification::OnlyV { .. } => "ONLY_V",
            PairClassification::OnlyComplement { .. } => "ONLY_COMPLEMENT",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlternativeOptions {
    pub lp: LpOptions,
    pub rank_tol: f64,
}

impl Default for AlternativeOptions {
    fn default() -> Self {
        Self {
            lp: LpOptions::default(),
            rank_tol: DEFAULT_RANK_TOL,
        }
    }
}

/// Searches `V ∩ S` where `S` is the standard simplex, via the system
/// `(I - P_V) x = 0, 1ᵀx = 1, x >= 0` with dependent projector rows removed.
pub fn find_nonneg_witness<T: Scalar>(
    space: &Subspace<T>,
    options: &AlternativeOptions,
) -> Result<Option<WitnessVector<T>>> {
    let n = space.ambient_dim();
    let k = space.dim();
    if k == 0 {
        return Ok(None);
    }
    if k == n {
        let share = T::one() / T::from_ratio(n as i64, 1);
        return Ok(Some(package_witness(space, vec![share; n])));
    }

    let residual_map = DenseMatrix::<T>::identity(n);
    let projector = space.projector();
    let rows: Vec<Vec<T>> = (0..n)
        .map(|i| sub(residual_map.row(i), projector.row(i)))
        .collect();
    let keep = select_independent_rows(&rows, n - k, options.rank_tol);

    // positive row scaling leaves the constraint unchanged and keeps exact
    // entries small
    let mut constraint_rows: Vec<Vec<T>> = keep
        .iter()
        .map(|&i| T::finish_direction(rows[i].clone()))
        .collect();
    constraint_rows.push(vec![T::one(); n]);
    let mut rhs = vec![T::zero(); keep.len()];
    rhs.push(T::one());

    let problem = FeasibilityProblem::new(DenseMatrix::from_rows(&constraint_rows)?, rhs)?;
    match solve_feasibility(&problem, &options.lp)? {
        FeasibilityOutcome::Infeasible => Ok(None),
        FeasibilityOutcome::Feasible(x) => {
            let total = sum(&x);
            if !total.is_positive() {
                return Err(Error::numerical("witness search returned the zero vector"));
            }
            let x = x.into_iter().map(|v| v / total.clone()).collect();
            Ok(Some(package_witness(space, x)))
        }
    }
}

fn package_witness<T: Scalar>(space: &Subspace<T>, x: Vec<T>) -> WitnessVector<T> {
    WitnessVector {
        subspace_residual: space.membership_residual(&x),
        min_component: min_entry(&x).unwrap_or_else(T::zero),
        x,
    }
}

/// Searches V⊥ for a strictly positive vector. Writing `v = y + 1` with
/// `y >= 0` turns the open condition into the closed system `Bᵀy = -Bᵀ1`.
pub fn find_positive_certificate<T: Scalar>(
    space: &Subspace<T>,
    options: &AlternativeOptions,
) -> Result<Option<CertificateVector<T>>> {
    let n = space.ambient_dim();
    let k = space.dim();
    if k == 0 {
        return Ok(Some(package_certificate(space, vec![T::one(); n])));
    }
    if k == n {
        return Ok(None);
    }

    let rows: Vec<Vec<T>> = space.basis().to_vec();
    let ones = vec![T::one(); n];
    let rhs: Vec<T> = rows.iter().map(|b| -dot(b, &ones)).collect();
    let problem = FeasibilityProblem::new(DenseMatrix::from_rows(&rows)?, rhs)?;
    match solve_feasibility(&problem, &options.lp)? {
        FeasibilityOutcome::Infeasible => Ok(None),
        FeasibilityOutcome::Feasible(y) => {
            let v: Vec<T> = y.into_iter().map(|yi| yi + T::one()).collect();
            let smallest = min_entry(&v).expect("n >= 1");
            let v = v.into_iter().map(|vi| vi / smallest.clone()).collect();
            Ok(Some(package_certificate(space, v)))
        }
    }
}

fn package_certificate<T: Scalar>(space: &Subspace<T>, v: Vec<T>) -> CertificateVector<T> {
    let orthogonality_residual = space
        .basis()
        .iter()
        .map(|b| dot(&v, b).abs())
        .fold(T::zero(), |m, x| if x > m { x } else { m });
    CertificateVector {
        v,
        orthogonality_residual,
    }
}

/// Witness if one exists, otherwise a positive certificate. Failing both is
/// reported as [`Error::PropositionViolation`], which only a numerical
/// breakdown can cause.
pub fn decide_alternative<T: Scalar>(
    space: &Subspace<T>,
    options: &AlternativeOptions,
) -> Result<AlternativeVerdict<T>> {
    if let Some(w) = find_nonneg_witness(space, options)? {
        return Ok(AlternativeVerdict::HasNonneg(w));
    }
    match find_positive_certificate(space, options)? {
        Some(c) => Ok(AlternativeVerdict::NoNonneg(c)),
        None => Err(Error::PropositionViolation(format!(
            "subspace of dimension {} in R^{} produced neither a nonnegative witness nor a positive complement certificate ({} backend)",
            space.dim(),
            space.ambient_dim(),
            T::BACKEND
        ))),
    }
}

pub fn classify_pair<T: Scalar>(
    space: &Subspace<T>,
    options: &AlternativeOptions,
) -> Result<PairClassification<T>> {
    let complement = space.orthogonal_complement();
    let on_v = decide_alternative(space, options)?;
    let on_complement = decide_alternative(&complement, options)?;
    match (on_v, on_complement) {
        (AlternativeVerdict::HasNonneg(witness_v), AlternativeVerdict::HasNonneg(witness_complement)) => {
            Ok(PairClassification::BothSides {
                witness_v,
                witness_complement,
            })
        }
        (AlternativeVerdict::HasNonneg(witness_v), AlternativeVerdict::NoNonneg(certificate_in_v)) => {
            Ok(PairClassification::OnlyV {
                witness_v,
                certificate_in_v,
            })
        }
        (
            AlternativeVerdict::NoNonneg(certificate_in_complement),
            AlternativeVerdict::HasNonneg(witness_complement),
        ) => Ok(PairClassification::OnlyComplement {
            certificate_in_complement,
            witness_complement,
        }),
        (AlternativeVerdict::NoNonneg(_), AlternativeVerdict::NoNonneg(_)) => {
            Err(Error::PropositionViolation(
                "both V and its complement were certified free of nonnegative vectors".into(),
            ))
        }
    }
}

/// Checks `Σx = 1 ± tol`, `min x >= -tol` and `‖x - project(V, x)‖_max <= tol`.
/// Exact backend ignores `tol`.
pub fn verify_witness<T: Scalar>(space: &Subspace<T>, x: &[T], tol: f64) -> bool {
    if x.len() != space.ambient_dim() {
        return false;
    }
    (sum(x) - T::one()).is_zero_within(tol)
        && !x.iter().any(|v| v.below_neg(tol))
        && space.membership_residual(x).is_zero_within(tol)
}

/// Checks `min v >= 1 - tol` and `|⟨v, b⟩| <= tol` for every basis column `b`.
/// A nonzero nonnegative `x ∈ V` would give `⟨x, v⟩ > 0`, so a passing
/// certificate rules such `x` out. Exact backend ignores `tol`.
pub fn verify_certificate<T: Scalar>(space: &Subspace<T>, v: &[T], tol: f64) -> bool {
    if v.len() != space.ambient_dim() {
        return false;
    }
    let positive = v.iter().all(|vi| !(T::one() - vi.clone()).exceeds(tol));
    positive
        && space
            .basis()
            .iter()
            .all(|b| dot(v, b).is_zero_within(tol))
}

/// `⟨x, v⟩`. For a valid witness/certificate pair this is at least
/// `min(v) · Σx > 0` while orthogonality forces it to zero, so at most one
/// of the two can verify.
pub fn witness_certificate_pairing<T: Scalar>(x: &[T], v: &[T]) -> T {
    dot(x, v)
}
