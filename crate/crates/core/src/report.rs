//! Structured (JSON) reports and their independent re-verification.

use serde::{Deserialize, Serialize};

use crate::alternative::{
    verify_certificate, verify_witness, AlternativeVerdict, PairClassification,
};
use crate::eigen::{eigenspaces, SymmetricMatrix};
use crate::error::{Error, Result};
use crate::io::{digest, parse_matrix, parse_subspace};
use crate::scalar::{parse_literal, rational_from_f64, Backend, Rational, Scalar};
use crate::spectral::{AnalysisReport, EIGEN_RESIDUAL_TOL};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank_tol: f64,
    pub cluster_tol: f64,
    pub feas_tol: f64,
    pub verify_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank_tol: crate::subspace::DEFAULT_RANK_TOL,
            cluster_tol: crate::eigen::DEFAULT_CLUSTER_TOL,
            feas_tol: crate::lp::DEFAULT_FEAS_TOL,
            verify_tol: crate::alternative::DEFAULT_VERIFY_TOL,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank-tol", self.rank_tol),
            ("cluster-tol", self.cluster_tol),
            ("feas-tol", self.feas_tol),
            ("verify-tol", self.verify_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::usage(format!("--{name} must be a positive number, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    /// `vector` is a witness on the simplex.
    HasNonneg,
    /// `vector` is a positive certificate orthogonal to the space.
    NoNonneg,
}

/// Float entries are JSON numbers; exact entries are `p/q` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Number(f64),
    Literal(String),
}

impl Entry {
    fn from_scalar<T: Scalar>(x: &T) -> Self {
        match T::BACKEND {
            Backend::Float => Entry::Number(x.to_f64()),
            Backend::Exact => Entry::Literal(x.render()),
        }
    }

    fn to_scalar<T: Scalar>(&self) -> Result<T> {
        let q: Rational = match self {
            Entry::Number(f) => rational_from_f64(*f)
                .ok_or_else(|| Error::parse(format!("non-finite report entry {f}")))?,
            Entry::Literal(s) => parse_literal(s)?,
        };
        Ok(T::from_rational(&q))
    }
}

fn to_entries<T: Scalar>(v: &[T]) -> Vec<Entry> {
    v.iter().map(Entry::from_scalar).collect()
}

fn from_entries<T: Scalar>(v: &[Entry]) -> Result<Vec<T>> {
    v.iter().map(Entry::to_scalar).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenspaceEntry {
    pub value: f64,
    pub multiplicity: usize,
    pub verdict: VerdictKind,
    pub vector: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub input_digest: String,
    pub backend: Backend,
    pub tolerances: Tolerances,
    pub distinct_eigenvalues: usize,
    pub eigenspaces: Vec<EigenspaceEntry>,
    pub has_nonneg_eigenvector: bool,
    pub theorem_applicable: bool,
    pub theorem_satisfied: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Side {
    V,
    VPerp,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideEntry {
    pub side: Side,
    pub dim: usize,
    pub verdict: VerdictKind,
    pub vector: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceReport {
    pub input_digest: String,
    pub backend: Backend,
    pub tolerances: Tolerances,
    pub ambient_dim: usize,
    pub classification: String,
    pub sides: Vec<SideEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "snake_case")]
pub enum StructuredReport {
    Analyze(AnalyzeReport),
    Subspace(SubspaceReport),
}

impl StructuredReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid report: {e}")))
    }

    pub fn input_digest(&self) -> &str {
        match self {
            StructuredReport::Analyze(r) => &r.input_digest,
            StructuredReport::Subspace(r) => &r.input_digest,
        }
    }
}

pub fn analyze_report(
    analysis: &AnalysisReport,
    input: &[u8],
    tolerances: Tolerances,
) -> StructuredReport {
    let eigenspaces = analysis
        .per_eigenspace
        .iter()
        .map(|e| {
            let (verdict, vector) = verdict_parts(&e.verdict);
            EigenspaceEntry {
                value: e.cluster.representative_value,
                multiplicity: e.cluster.multiplicity,
                verdict,
                vector,
            }
        })
        .collect();
    StructuredReport::Analyze(AnalyzeReport {
        input_digest: digest(input),
        backend: Backend::Float,
        tolerances,
        distinct_eigenvalues: analysis.distinct_eigenvalue_count,
        eigenspaces,
        has_nonneg_eigenvector: analysis.has_nonneg_eigenvector,
        theorem_applicable: analysis.theorem_applicable,
        theorem_satisfied: analysis.theorem_satisfied,
    })
}

fn verdict_parts<T: Scalar>(verdict: &AlternativeVerdict<T>) -> (VerdictKind, Vec<Entry>) {
    match verdict {
        AlternativeVerdict::HasNonneg(w) => (VerdictKind::HasNonneg, to_entries(&w.x)),
        AlternativeVerdict::NoNonneg(c) => (VerdictKind::NoNonneg, to_entries(&c.v)),
    }
}

pub fn subspace_report<T: Scalar>(
    space: &Subspace<T>,
    complement: &Subspace<T>,
    classification: &PairClassification<T>,
    input: &[u8],
    tolerances: Tolerances,
) -> StructuredReport {
    let side = |side, dim, verdict, v: &[T]| SideEntry {
        side,
        dim,
        verdict,
        vector: to_entries(v),
    };
    let (k, c) = (space.dim(), complement.dim());
    let sides = match classification {
        PairClassification::BothSides {
            witness_v,
            witness_complement,
        } => vec![
            side(Side::V, k, VerdictKind::HasNonneg, &witness_v.x),
            side(Side::VPerp, c, VerdictKind::HasNonneg, &witness_complement.x),
        ],
        PairClassification::OnlyV {
            witness_v,
            certificate_in_v,
        } => vec![
            side(Side::V, k, VerdictKind::HasNonneg, &witness_v.x),
            side(Side::VPerp, c, VerdictKind::NoNonneg, &certificate_in_v.v),
        ],
        PairClassification::OnlyComplement {
            certificate_in_complement,
            witness_complement,
        } => vec![
            side(Side::V, k, VerdictKind::NoNonneg, &certificate_in_complement.v),
            side(Side::VPerp, c, VerdictKind::HasNonneg, &witness_complement.x),
        ],
    };
    StructuredReport::Subspace(SubspaceReport {
        input_digest: digest(input),
        backend: T::BACKEND,
        tolerances,
        ambient_dim: space.ambient_dim(),
        classification: classification.label().to_string(),
        sides,
    })
}

/// What [`verify_report`] checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifySummary {
    pub witnesses: usize,
    pub certificates: usize,
}

/// Re-checks every vector claimed in `report` against `input`, recomputing
/// only the spaces (never the LP). `verify_tol` overrides the report's own
/// verification tolerance. Any failed claim is [`Error::Verification`].
pub fn verify_report(
    report: &StructuredReport,
    input: &[u8],
    verify_tol: Option<f64>,
) -> Result<VerifySummary> {
    if report.input_digest() != digest(input) {
        return Err(Error::usage(format!(
            "report was produced for input {} but the given input has digest {}",
            report.input_digest(),
            digest(input)
        )));
    }
    match report {
        StructuredReport::Analyze(r) => verify_analyze(r, input, verify_tol),
        StructuredReport::Subspace(r) => match r.backend {
            Backend::Float => verify_subspace::<f64>(r, input, verify_tol),
            Backend::Exact => verify_subspace::<Rational>(r, input, verify_tol),
        },
    }
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

fn verify_analyze(
    r: &AnalyzeReport,
    input: &[u8],
    verify_tol: Option<f64>,
) -> Result<VerifySummary> {
    let tol = verify_tol.unwrap_or(r.tolerances.verify_tol);
    if r.backend != Backend::Float {
        return Err(fail("analyze reports are float-only".into()));
    }
    let m: SymmetricMatrix = parse_matrix(input)?;
    let spaces = eigenspaces(&m, r.tolerances.cluster_tol)?;
    if spaces.len() != r.distinct_eigenvalues || r.eigenspaces.len() != spaces.len() {
        return Err(fail(format!(
            "report claims {} distinct eigenvalues ({} listed), recomputation finds {}",
            r.distinct_eigenvalues,
            r.eigenspaces.len(),
            spaces.len()
        )));
    }
    let mut summary = VerifySummary {
        witnesses: 0,
        certificates: 0,
    };
    for (i, (claim, cluster)) in r.eigenspaces.iter().zip(&spaces).enumerate() {
        let lambda = cluster.representative_value;
        if claim.multiplicity != cluster.multiplicity
            || (claim.value - lambda).abs() > 1e-9 * lambda.abs().max(1.0)
        {
            return Err(fail(format!(
                "eigenspace {i}: report says λ = {} (multiplicity {}), recomputed λ = {lambda} (multiplicity {})",
                claim.value, claim.multiplicity, cluster.multiplicity
            )));
        }
        let v: Vec<f64> = from_entries(&claim.vector)?;
        match claim.verdict {
            VerdictKind::HasNonneg => {
                if !verify_witness(&cluster.space, &v, tol) {
                    return Err(fail(format!(
                        "eigenspace {i} (λ = {lambda}): witness is not a nonnegative simplex point of the eigenspace"
                    )));
                }
                let residual = m
                    .matvec(&v)
                    .iter()
                    .zip(&v)
                    .map(|(a, x)| (a - lambda * x).abs())
                    .fold(0.0, f64::max);
                if residual > EIGEN_RESIDUAL_TOL * lambda.abs().max(1.0) {
                    return Err(fail(format!(
                        "eigenspace {i}: witness eigen-residual {residual:e} too large"
                    )));
                }
                summary.witnesses += 1;
            }
            VerdictKind::NoNonneg => {
                if !verify_certificate(&cluster.space, &v, tol) {
                    return Err(fail(format!(
                        "eigenspace {i} (λ = {lambda}): certificate is not a positive vector orthogonal to the eigenspace"
                    )));
                }
                summary.certificates += 1;
            }
        }
    }
    let any = r.eigenspaces.iter().any(|e| e.verdict == VerdictKind::HasNonneg);
    let applicable = r.distinct_eigenvalues <= 2;
    if r.has_nonneg_eigenvector != any
        || r.theorem_applicable != applicable
        || r.theorem_satisfied != (!applicable || any)
    {
        return Err(fail("summary flags disagree with the per-eigenspace verdicts".into()));
    }
    Ok(summary)
}

fn verify_subspace<T: Scalar>(
    r: &SubspaceReport,
    input: &[u8],
    verify_tol: Option<f64>,
) -> Result<VerifySummary> {
    let tol = verify_tol.unwrap_or(r.tolerances.verify_tol);
    let parsed = parse_subspace(input)?;
    let space: Subspace<T> = parsed.subspace(r.tolerances.rank_tol)?;
    let complement = space.orthogonal_complement();
    if r.sides.len() != 2 || r.sides[0].side != Side::V || r.sides[1].side != Side::VPerp {
        return Err(fail("subspace report must list sides V then V_PERP".into()));
    }
    let mut summary = VerifySummary {
        witnesses: 0,
        certificates: 0,
    };
    for (entry, target) in r.sides.iter().zip([&space, &complement]) {
        if entry.dim != target.dim() {
            return Err(fail(format!(
                "side {:?}: report says dimension {}, recomputed {}",
                entry.side,
                entry.dim,
                target.dim()
            )));
        }
        let v: Vec<T> = from_entries(&entry.vector)?;
        let ok = match entry.verdict {
            VerdictKind::HasNonneg => {
                summary.witnesses += 1;
                verify_witness(target, &v, tol)
            }
            VerdictKind::NoNonneg => {
                summary.certificates += 1;
                verify_certificate(target, &v, tol)
            }
        };
        if !ok {
            return Err(fail(format!(
                "side {:?}: claimed {} does not verify",
                entry.side,
                match entry.verdict {
                    VerdictKind::HasNonneg => "witness",
                    VerdictKind::NoNonneg => "certificate",
                }
            )));
        }
    }
    let expected = match (r.sides[0].verdict, r.sides[1].verdict) {
        (VerdictKind::HasNonneg, VerdictKind::HasNonneg) => "BOTH_SIDES",
        (VerdictKind::HasNonneg, VerdictKind::NoNonneg) => "ONLY_V",
        (VerdictKind::NoNonneg, VerdictKind::HasNonneg) => "ONLY_COMPLEMENT",
        (VerdictKind::NoNonneg, VerdictKind::NoNonneg) => {
            return Err(fail("report claims neither side has a nonnegative vector".into()))
        }
    };
    if r.classification != expected {
        return Err(fail(format!(
            "classification {} does not match the side verdicts ({expected})",
            r.classification
        )));
    }
    Ok(summary)
}
