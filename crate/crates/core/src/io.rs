//! Input and output formats.
//!
//! Matrices: Matrix Market `array` (and `coordinate`) files, or JSON of the
//! form `{"dim": n, "rows": [[...], ...]}`. Subspaces: JSON of the form
//! `{"ambient_dim": n, "vectors": [[...], ...]}` whose entries are numbers or
//! strings holding `p/q` or decimal literals, parsed without rounding.

use std::path::Path;

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::eigen::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::matrix::DenseMatrix;
use crate::scalar::{parse_literal, Backend, Rational, Scalar};
use crate::subspace::Subspace;

pub fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// `sha256:<hex>` of the raw input bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn utf8(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|_| Error::parse("input is not valid UTF-8"))
}

/// Parses either supported matrix format, chosen by the first non-blank
/// character (`%` for Matrix Market, `{` for JSON).
pub fn parse_matrix(bytes: &[u8]) -> Result<SymmetricMatrix> {
    let text = utf8(bytes)?;
    match text.trim_start().chars().next() {
        Some('%') => parse_matrix_market(text),
        Some('{') => parse_matrix_json(text),
        _ => Err(Error::parse(
            "unrecognized matrix format: expected a %%MatrixMarket header or a JSON object",
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

pub fn parse_matrix_market(text: &str) -> Result<SymmetricMatrix> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse("empty Matrix Market file"))?;
    let tokens: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::parse(format!("bad Matrix Market header: {header:?}")));
    }
    let coordinate = match tokens[2].as_str() {
        "array" => false,
        "coordinate" => true,
        other => return Err(Error::parse(format!("unsupported Matrix Market format {other:?}"))),
    };
    if !matches!(tokens[3].as_str(), "real" | "integer" | "double") {
        return Err(Error::parse(format!(
            "unsupported Matrix Market field {:?}; only real or integer",
            tokens[3]
        )));
    }
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => {
            return Err(Error::parse(format!("unsupported Matrix Market symmetry {other:?}")))
        }
    };

    let mut body = lines
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('%'));
    let size_line = body
        .next()
        .ok_or_else(|| Error::parse("missing Matrix Market size line"))?;
    let size: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(format!("bad size line {size_line:?}"))))
        .collect::<Result<_>>()?;
    let tokens: Vec<&str> = body.flat_map(str::split_whitespace).collect();
    let number = |t: &str| -> Result<f64> {
        t.parse::<f64>()
            .map_err(|_| Error::parse(format!("bad matrix entry {t:?}")))
    };

    let (rows, cols) = match (coordinate, size.as_slice()) {
        (false, [r, c]) | (true, [r, c, _]) => (*r, *c),
        _ => return Err(Error::parse(format!("bad size line {size_line:?}"))),
    };
    if rows != cols {
        return Err(Error::usage(format!("matrix must be square, got {rows}x{cols}")));
    }
    let n = rows;
    let mut m = DenseMatrix::<f64>::zeros(n, n);

    if coordinate {
        let nnz = size[2];
        if tokens.len() != 3 * nnz {
            return Err(Error::parse(format!(
                "expected {nnz} coordinate entries, found {} tokens",
                tokens.len()
            )));
        }
        for triple in tokens.chunks(3) {
            let i: usize = triple[0].parse().map_err(|_| Error::parse("bad row index"))?;
            let j: usize = triple[1].parse().map_err(|_| Error::parse("bad column index"))?;
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::parse(format!("entry ({i}, {j}) out of range")));
            }
            let v = number(triple[2])?;
            m[(i - 1, j - 1)] = v;
            if symmetry == Symmetry::Symmetric {
                if j > i {
                    return Err(Error::parse(format!(
                        "symmetric coordinate file lists upper-triangle entry ({i}, {j})"
                    )));
                }
                m[(j - 1, i - 1)] = v;
            }
        }
    } else {
        // column-major; symmetric files store only the lower triangle
        let expected = match symmetry {
            Symmetry::General => n * n,
            Symmetry::Symmetric => n * (n + 1) / 2,
        };
        if tokens.len() != expected {
            return Err(Error::parse(format!(
                "expected {expected} array entries for n = {n}, found {}",
                tokens.len()
            )));
        }
        let mut values = tokens.iter();
        for j in 0..n {
            let start = if symmetry == Symmetry::Symmetric { j } else { 0 };
            for i in start..n {
                let v = number(values.next().expect("count checked"))?;
                m[(i, j)] = v;
                if symmetry == Symmetry::Symmetric {
                    m[(j, i)] = v;
                }
            }
        }
    }
    SymmetricMatrix::new(m)
}

/// Matrix Market `array real symmetric`: lower triangle, column-major, values
/// in shortest round-trip form.
pub fn write_matrix_market(m: &SymmetricMatrix) -> String {
    let n = m.dim();
    let mut out = String::from("%%MatrixMarket matrix array real symmetric\n");
    out.push_str(&format!("{n} {n}\n"));
    for j in 0..n {
        for i in j..n {
            out.push_str(&m.get(i, j).render());
            out.push('\n');
        }
    }
    out
}

fn json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::parse(format!("invalid JSON: {e}")))
}

fn literal(value: &Value) -> Result<Rational> {
    match value {
        Value::Number(n) => parse_literal(&n.to_string()),
        Value::String(s) => parse_literal(s),
        other => Err(Error::parse(format!("expected a number or a numeric string, got {other}"))),
    }
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::parse(format!("missing field {name:?}")))
}

fn dimension(obj: &Value, name: &str) -> Result<usize> {
    field(obj, name)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::parse(format!("field {name:?} must be a nonnegative integer")))
}

fn vector_list(obj: &Value, name: &str) -> Result<Vec<Vec<Value>>> {
    let list = field(obj, name)?
        .as_array()
        .ok_or_else(|| Error::parse(format!("field {name:?} must be a list of lists")))?;
    list.iter()
        .map(|v| {
            v.as_array()
                .cloned()
                .ok_or_else(|| Error::parse(format!("every entry of {name:?} must be a list")))
        })
        .collect()
}

pub fn parse_matrix_json(text: &str) -> Result<SymmetricMatrix> {
    let obj = json(text)?;
    let n = dimension(&obj, "dim")?;
    let rows = vector_list(&obj, "rows")?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::parse(format!("\"rows\" must be {n} lists of {n} entries")));
    }
    let rows: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| literal(v).map(|q| f64::from_rational(&q))).collect())
        .collect::<Result<_>>()?;
    SymmetricMatrix::from_rows(&rows)
}

pub fn matrix_json(m: &SymmetricMatrix) -> String {
    let rows: Vec<Vec<f64>> = (0..m.dim()).map(|i| m.matrix().row(i).to_vec()).collect();
    let value = serde_json::json!({ "dim": m.dim(), "rows": rows });
    serde_json::to_string_pretty(&value).expect("serializable") + "\n"
}

/// A parsed subspace file, still in exact form.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceInput {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Rational>>,
    /// Some entry was written as `p/q`.
    pub has_fraction_literals: bool,
}

impl SubspaceInput {
    /// Backend picked when none is requested: exact if the file uses `p/q`.
    pub fn preferred_backend(&self) -> Backend {
        if self.has_fraction_literals {
            Backend::Exact
        } else {
            Backend::Float
        }
    }

    pub fn vectors_as<T: Scalar>(&self) -> Vec<Vec<T>> {
        self.vectors
            .iter()
            .map(|v| v.iter().map(T::from_rational).collect())
            .collect()
    }

    pub fn subspace<T: Scalar>(&self, rank_tol: f64) -> Result<Subspace<T>> {
        Subspace::span(self.ambient_dim, &self.vectors_as::<T>(), rank_tol)
    }
}

pub fn parse_subspace(bytes: &[u8]) -> Result<SubspaceInput> {
    let obj = json(utf8(bytes)?)?;
    let ambient_dim = dimension(&obj, "ambient_dim")?;
    if ambient_dim == 0 {
        return Err(Error::usage("ambient_dim must be at least 1"));
    }
    let raw = vector_list(&obj, "vectors")?;
    let mut has_fraction_literals = false;
    let mut vectors = Vec::with_capacity(raw.len());
    for (i, v) in raw.iter().enumerate() {
        if v.len() != ambient_dim {
            return Err(Error::parse(format!(
                "vector {i} has {} entries, expected {ambient_dim}",
                v.len()
            )));
        }
        has_fraction_literals |= v.iter().any(|e| e.as_str().is_some_and(|s| s.contains('/')));
        vectors.push(v.iter().map(literal).collect::<Result<Vec<_>>>()?);
    }
    Ok(SubspaceInput {
        ambient_dim,
        vectors,
        has_fraction_literals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_symmetric_array_lower_triangle() {
        let text = "%%MatrixMarket matrix array real symmetric\n% comment\n3 3\n1\n2\n3\n4\n5\n6\n";
        let m = parse_matrix(text.as_bytes()).unwrap();
        let expect = [[1.0, 2.0, 3.0], [2.0, 4.0, 5.0], [3.0, 5.0, 6.0]];
        for (i, row) in expect.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), e);
            }
        }
    }

    #[test]
    fn general_array_is_column_major_and_checked() {
        let ok = "%%MatrixMarket matrix array real general\n2 2\n1 2\n2 3\n";
        let m = parse_matrix(ok.as_bytes()).unwrap();
        assert_eq!((m.get(0, 1), m.get(1, 0), m.get(1, 1)), (2.0, 2.0, 3.0));
        let asym = "%%MatrixMarket matrix array real general\n2 2\n1 2\n5 3\n";
        let err = parse_matrix(asym.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("not symmetric"), "{err}");
    }

    #[test]
    fn coordinate_symmetric_is_mirrored() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 4\n2 1 -1\n";
        let m = parse_matrix(text.as_bytes()).unwrap();
        assert_eq!((m.get(0, 0), m.get(0, 1), m.get(1, 1)), (4.0, -1.0, 0.0));
    }

    #[test]
    fn malformed_matrix_market_is_rejected() {
        for bad in [
            "%%MatrixMarket matrix array complex symmetric\n1 1\n1\n",
            "%%MatrixMarket matrix array real symmetric\n2 2\n1\n2\n",
            "%%MatrixMarket matrix array real symmetric\n2 3\n1\n2\n3\n4\n5\n6\n",
            "%%MatrixMarket matrix array real symmetric\n1 1\nx\n",
            "hello",
        ] {
            assert!(parse_matrix(bad.as_bytes()).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn writer_round_trips_bitwise() {
        let m = SymmetricMatrix::from_rows(&[
            vec![0.1, 1.0 / 3.0, -2.5e-17],
            vec![1.0 / 3.0, 7.0, 1e300],
            vec![-2.5e-17, 1e300, -0.0],
        ])
        .unwrap();
        let text = write_matrix_market(&m);
        assert!(text.starts_with("%%MatrixMarket matrix array real symmetric\n3 3\n"));
        assert_eq!(parse_matrix(text.as_bytes()).unwrap(), m);
        assert_eq!(parse_matrix(matrix_json(&m).as_bytes()).unwrap(), m);
    }

    #[test]
    fn json_matrix_accepts_rational_strings() {
        let m = parse_matrix(br#"{"dim": 2, "rows": [[1, "1/2"], ["0.5", 2]]}"#).unwrap();
        assert_eq!(m.get(0, 1), 0.5);
        assert!(parse_matrix(br#"{"dim": 2, "rows": [[1, 2]]}"#).is_err());
    }

    #[test]
    fn subspace_literals_are_exact() {
        let s = parse_subspace(br#"{"ambient_dim": 3, "vectors": [["-1/2", 1, 1], [1, "-0.5", 0.1]]}"#).unwrap();
        assert!(s.has_fraction_literals);
        assert_eq!(s.preferred_backend(), Backend::Exact);
        assert_eq!(s.vectors[0][0], Rational::from_ratio(-1, 2));
        assert_eq!(s.vectors[1][2], Rational::from_ratio(1, 10));

        let f = parse_subspace(br#"{"ambient_dim": 2, "vectors": [[1, 0]]}"#).unwrap();
        assert_eq!(f.preferred_backend(), Backend::Float);
        let empty = parse_subspace(br#"{"ambient_dim": 3, "vectors": []}"#).unwrap();
        assert_eq!(empty.subspace::<f64>(1e-10).unwrap().dim(), 0);
    }

    #[test]
    fn subspace_errors() {
        assert!(parse_subspace(br#"{"ambient_dim": 2, "vectors": [[1]]}"#).is_err());
        assert!(parse_subspace(br#"{"ambient_dim": 0, "vectors": []}"#).is_err());
        assert!(parse_subspace(br#"{"vectors": []}"#).is_err());
        assert!(parse_subspace(br#"{"ambient_dim": 1, "vectors": [["1/0"]]}"#).is_err());
        assert!(parse_subspace(b"not json").is_err());
    }
}
