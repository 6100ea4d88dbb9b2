//! Command-line front end. The binary only forwards `std::env::args` to
//! [`run`]; everything else lives here so it can be driven from tests.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 numerical failure, 3 failed
//! verification.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::alternative::{classify_pair, AlternativeOptions, PairClassification};
use crate::error::{Error, Result};
use crate::io::{parse_matrix, parse_subspace, read_bytes, write_matrix_market, write_text};
use crate::lp::{LpOptions, DEFAULT_PIVOT_TOL};
use crate::report::{analyze_report, subspace_report, verify_report, StructuredReport, Tolerances};
use crate::scalar::{Backend, Rational, Scalar};
use crate::spectral::{
    analyze, build_counterexample, random_two_eigenvalue_matrix, AnalysisOptions, AnalysisReport,
};
use crate::subspace::Subspace;

/// Environment variable holding the seed of generator commands.
pub const SEED_ENV: &str = "NONNEG_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "nonneg",
    version,
    about = "Nonnegative vectors in subspaces and eigenspaces of symmetric matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a nonnegative eigenvector of a symmetric matrix, or certify that none exists
    Analyze {
        /// Matrix Market or JSON matrix file
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BackendArg::Float)]
        backend: BackendArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide whether V or its orthogonal complement holds a nonnegative vector
    Subspace {
        /// JSON file with "ambient_dim" and "vectors"
        file: PathBuf,
        /// Defaults to exact when the file contains p/q literals
        #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
        backend: BackendArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a symmetric matrix with no nonnegative eigenvector
    Counterexample {
        #[arg(long = "dim")]
        dim: usize,
        /// λ_v,λ_w,λ_rest... (the last value is repeated to fill the dimension)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        eigenvalues: Vec<f64>,
        /// Matrix Market output; the report goes to <out>.report.json
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Write a random symmetric matrix with exactly two eigenvalues
    TwoEigenvalue {
        #[arg(long = "dim")]
        dim: usize,
        /// λ₁,λ₂
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        eigenvalues: Vec<f64>,
        /// Multiplicity of λ₁
        #[arg(long)]
        multiplicity: usize,
        /// Overrides NONNEG_SEED (default 0)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-check every witness and certificate in a structured report
    Verify {
        report: PathBuf,
        /// The matrix or subspace file the report was produced from
        input: PathBuf,
        /// Overrides the tolerance recorded in the report
        #[arg(long)]
        verify_tol: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Auto,
    Float,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, clap::Args)]
pub struct TolArgs {
    #[arg(long, default_value_t = crate::subspace::DEFAULT_RANK_TOL)]
    pub rank_tol: f64,
    #[arg(long, default_value_t = crate::eigen::DEFAULT_CLUSTER_TOL)]
    pub cluster_tol: f64,
    #[arg(long, default_value_t = crate::lp::DEFAULT_FEAS_TOL)]
    pub feas_tol: f64,
    #[arg(long, default_value_t = crate::alternative::DEFAULT_VERIFY_TOL)]
    pub verify_tol: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Result<Tolerances> {
        let t = Tolerances {
            rank_tol: self.rank_tol,
            cluster_tol: self.cluster_tol,
            feas_tol: self.feas_tol,
            verify_tol: self.verify_tol,
        };
        t.validate()?;
        Ok(t)
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the structured report to this path
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn alternative_options(t: &Tolerances) -> AlternativeOptions {
    AlternativeOptions {
        lp: LpOptions {
            feas_tol: t.feas_tol,
            pivot_tol: DEFAULT_PIVOT_TOL,
        },
        rank_tol: t.rank_tol,
    }
}

fn analysis_options(t: &Tolerances) -> AnalysisOptions {
    AnalysisOptions {
        cluster_tol: t.cluster_tol,
        alternative: alternative_options(t),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    0
                }
                _ => {
                    let _ = writeln!(err, "error[E_USAGE]: invalid command line");
                    let _ = write!(err, "{shown}");
                    1
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.code());
            let _ = writeln!(err, "{}", explain(&e));
            e.exit_code()
        }
    }
}

fn explain(e: &Error) -> &'static str {
    match e {
        Error::Usage(_) | Error::Io { .. } => "The command or its inputs are invalid; nothing was computed.",
        Error::Parse(_) => "The input file could not be read in any supported format.",
        Error::NumericalFailure(_) => {
            "A numerical routine broke down; tightening or loosening tolerances may help."
        }
        Error::PropositionViolation(_) => {
            "One of V and its complement always holds a nonnegative vector, so this is a numerical breakdown, not a finding."
        }
        Error::Verification(_) => "At least one claimed witness or certificate failed re-verification.",
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Analyze {
            file,
            backend,
            tol,
            output,
        } => {
            if backend == BackendArg::Exact {
                return Err(Error::usage(
                    "the exact backend is not available for analyze: eigenvalues of rational matrices are generally irrational; use --backend float",
                ));
            }
            let tolerances = tol.tolerances()?;
            let bytes = read_bytes(&file)?;
            let m = parse_matrix(&bytes)?;
            let analysis = analyze(&m, &analysis_options(&tolerances))?;
            let report = analyze_report(&analysis, &bytes, tolerances);
            emit(out, &output, &report, || render_analysis(&analysis))?;
            Ok(0)
        }
        Command::Subspace {
            file,
            backend,
            tol,
            output,
        } => {
            let tolerances = tol.tolerances()?;
            let bytes = read_bytes(&file)?;
            let parsed = parse_subspace(&bytes)?;
            let backend = match backend {
                BackendArg::Auto => parsed.preferred_backend(),
                BackendArg::Float => Backend::Float,
                BackendArg::Exact => Backend::Exact,
            };
            match backend {
                Backend::Float => {
                    run_subspace::<f64>(&parsed.subspace(tolerances.rank_tol)?, &bytes, tolerances, &output, out)?
                }
                Backend::Exact => run_subspace::<Rational>(
                    &parsed.subspace(tolerances.rank_tol)?,
                    &bytes,
                    tolerances,
                    &output,
                    out,
                )?,
            }
            Ok(0)
        }
        Command::Counterexample {
            dim,
            eigenvalues,
            out: path,
            tol,
        } => {
            let tolerances = tol.tolerances()?;
            let m = build_counterexample(dim, &eigenvalues)?;
            let text = write_matrix_market(&m);
            write_text(&path, &text)?;
            let analysis = analyze(&m, &analysis_options(&tolerances))?;
            let report = analyze_report(&analysis, text.as_bytes(), tolerances);
            let sidecar = sidecar_path(&path);
            write_text(&sidecar, &report.to_json())?;
            writeln!(out, "wrote {} ({dim}x{dim})", path.display()).ok();
            writeln!(out, "wrote {}", sidecar.display()).ok();
            writeln!(
                out,
                "{}",
                if analysis.has_nonneg_eigenvector {
                    "result: nonnegative eigenvector found (construction failed)"
                } else {
                    "result: no nonnegative eigenvector"
                }
            )
            .ok();
            Ok(0)
        }
        Command::TwoEigenvalue {
            dim,
            eigenvalues,
            multiplicity,
            seed,
            out: path,
        } => {
            let [l1, l2] = eigenvalues[..] else {
                return Err(Error::usage(format!(
                    "--eigenvalues takes exactly two values, got {}",
                    eigenvalues.len()
                )));
            };
            let seed = match seed {
                Some(s) => s,
                None => seed_from_env()?,
            };
            let m = random_two_eigenvalue_matrix(dim, l1, l2, multiplicity, seed)?;
            write_text(&path, &write_matrix_market(&m))?;
            writeln!(out, "wrote {} (seed {seed})", path.display()).ok();
            Ok(0)
        }
        Command::Verify {
            report,
            input,
            verify_tol,
        } => {
            if let Some(t) = verify_tol {
                if !(t.is_finite() && t > 0.0) {
                    return Err(Error::usage(format!("--verify-tol must be a positive number, got {t}")));
                }
            }
            let text = String::from_utf8(read_bytes(&report)?)
                .map_err(|_| Error::parse("report is not valid UTF-8"))?;
            let parsed = StructuredReport::from_json(&text)?;
            let bytes = read_bytes(&input)?;
            let summary = verify_report(&parsed, &bytes, verify_tol)?;
            writeln!(
                out,
                "verified: {} witness(es), {} certificate(s)",
                summary.witnesses, summary.certificates
            )
            .ok();
            Ok(0)
        }
    }
}

/// `<out>.report.json`
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".report.json");
    PathBuf::from(s)
}

fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::usage(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(0),
    }
}

fn run_subspace<T: Scalar>(
    space: &Subspace<T>,
    bytes: &[u8],
    tolerances: Tolerances,
    output: &OutputArgs,
    out: &mut dyn Write,
) -> Result<()> {
    let classification = classify_pair(space, &alternative_options(&tolerances))?;
    let complement = space.orthogonal_complement();
    let report = subspace_report(space, &complement, &classification, bytes, tolerances);
    emit(out, output, &report, || {
        render_classification(space, &complement, &classification)
    })
}

fn emit(
    out: &mut dyn Write,
    output: &OutputArgs,
    report: &StructuredReport,
    text: impl FnOnce() -> String,
) -> Result<()> {
    let json = report.to_json();
    if let Some(path) = &output.report {
        write_text(path, &json)?;
    }
    let body = match output.format {
        Format::Json => json,
        Format::Text => text(),
    };
    out.write_all(body.as_bytes()).map_err(|source| Error::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn fmt_vector<T: Scalar>(v: &[T]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| match T::BACKEND {
            Backend::Exact => x.render(),
            Backend::Float => format!("{:.6}", x.to_f64()),
        })
        .collect();
    format!("({})", parts.join(", "))
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    s += &format!("matrix dimension: {}\n", r.matrix_dim);
    s += &format!("distinct eigenvalues: {}\n", r.distinct_eigenvalue_count);
    for e in &r.per_eigenspace {
        let lambda = e.cluster.representative_value;
        s += &format!(
            "eigenvalue {lambda:.9} (multiplicity {}): ",
            e.cluster.multiplicity
        );
        match (e.verdict.witness(), e.verdict.certificate()) {
            (Some(w), _) => {
                s += &format!(
                    "nonnegative eigenvector {} (eigen-residual {:.1e})\n",
                    fmt_vector(&w.x),
                    e.eigen_residual.unwrap_or(0.0)
                )
            }
            (None, Some(c)) => {
                s += &format!(
                    "no nonnegative eigenvector; positive vector orthogonal to the eigenspace {}\n",
                    fmt_vector(&c.v)
                )
            }
            (None, None) => unreachable!("verdict has exactly one branch"),
        }
    }
    s += if r.has_nonneg_eigenvector {
        "result: nonnegative eigenvector found\n"
    } else {
        "result: no nonnegative eigenvector\n"
    };
    if r.theorem_applicable {
        s += &format!(
            "two-eigenvalue guarantee: applies ({} distinct), satisfied\n",
            r.distinct_eigenvalue_count
        );
    } else {
        s += &format!(
            "two-eigenvalue guarantee: not applicable ({} distinct eigenvalues)\n",
            r.distinct_eigenvalue_count
        );
    }
    s
}

pub fn render_classification<T: Scalar>(
    space: &Subspace<T>,
    complement: &Subspace<T>,
    c: &PairClassification<T>,
) -> String {
    let mut s = format!(
        "ambient dimension: {}, dim V = {}, dim V_perp = {} ({} backend)\n",
        space.ambient_dim(),
        space.dim(),
        complement.dim(),
        T::BACKEND
    );
    s += &format!("classification: {}\n", c.label());
    match c {
        PairClassification::BothSides {
            witness_v,
            witness_complement,
        } => {
            s += &format!("V: nonnegative witness {}\n", fmt_vector(&witness_v.x));
            s += &format!("V_perp: nonnegative witness {}\n", fmt_vector(&witness_complement.x));
        }
        PairClassification::OnlyV {
            witness_v,
            certificate_in_v,
        } => {
            s += &format!("V: nonnegative witness {}\n", fmt_vector(&witness_v.x));
            s += &format!(
                "V_perp: no nonnegative vector; positive certificate in V {}\n",
                fmt_vector(&certificate_in_v.v)
            );
        }
        PairClassification::OnlyComplement {
            certificate_in_complement,
            witness_complement,
        } => {
            s += &format!(
                "V: no nonnegative vector; positive certificate in V_perp {}\n",
                fmt_vector(&certificate_in_complement.v)
            );
            s += &format!("V_perp: nonnegative witness {}\n", fmt_vector(&witness_complement.x));
        }
    }
    s
}
