//! JSON file formats and command-line value parsing.
//!
//! - Parameter tuples: `{"type": "A2", "word": [1,2,1], "values": [1,2,3], "mode": "tropical"}`.
//!   Geometric values are `"p/q"` strings; integers are accepted as well.
//! - Exact matrices: an array of rows of `"p/q"` strings (or integers).
//! - Exchange matrices and seeds: `{"n", "m", "entries", "coefficient_names"}`
//!   with optional `cluster_names` and `cluster`. A cluster variable is a list
//!   of terms `{"exponents": [...], "coefficient": "..."}` over all `m` initial
//!   variables; `text` is informational and ignored on input.

use std::path::Path;
use std::str::FromStr;

use lrtrop_core::cluster::{default_names, ExchangeMatrix, LaurentPoly, Seed};
use lrtrop_core::minors::ExactMatrix;
use lrtrop_core::Rational;
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Parses a comma-separated list such as `1,2,1`. The empty string is the
/// empty list.
pub fn parse_list<T: FromStr>(s: &str) -> CliResult<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("cannot parse {x:?} in list {s:?}")))
        })
        .collect()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> CliResult<Rational> {
    let (num, den) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p = BigInt::from_str(num).map_err(|_| CliError::Domain(format!("cannot parse rational {s:?}")))?;
    let q = BigInt::from_str(den).map_err(|_| CliError::Domain(format!("cannot parse rational {s:?}")))?;
    if q == BigInt::from(0) {
        return Err(CliError::Domain(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

/// A JSON scalar that is either an integer or a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    pub fn rational(&self) -> CliResult<Rational> {
        match self {
            Scalar::Int(x) => Ok(Rational::from_integer((*x).into())),
            Scalar::Str(s) => parse_rational(s),
        }
    }

    pub fn natural(&self) -> CliResult<u64> {
        let bad = || CliError::Domain(format!("tropical values must be nonnegative integers, got {self:?}"));
        match self {
            Scalar::Int(x) => u64::try_from(*x).map_err(|_| bad()),
            Scalar::Str(s) => s.trim().parse().map_err(|_| bad()),
        }
    }
}

/// Reads and decodes a UTF-8 JSON file.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Domain(format!("invalid JSON in {}: {e}", path.display())))
}

/// Parameter tuple file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleFile {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub cartan_type: Option<String>,
    pub word: Vec<usize>,
    pub values: Vec<Scalar>,
    pub mode: String,
}

/// Exact matrix file: rows of `"p/q"` strings.
pub fn matrix_to_json(x: &ExactMatrix) -> Vec<Vec<String>> {
    x.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
}

pub fn matrix_from_json(rows: &[Vec<Scalar>]) -> CliResult<ExactMatrix> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(Scalar::rational).collect::<CliResult<Vec<_>>>())
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ExactMatrix::from_rows(rows)?)
}

/// One term of a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<i32>,
    pub coefficient: String,
}

/// A cluster variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    pub terms: Vec<TermJson>,
}

/// Exchange matrix, optionally with a cluster: a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeFile {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<i64>>,
    #[serde(default)]
    pub coefficient_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster_names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<Vec<VariableJson>>,
}

impl ExchangeFile {
    pub fn matrix(&self) -> CliResult<ExchangeMatrix> {
        if self.entries.len() != self.m {
            return Err(CliError::Domain(format!("expected m = {} rows, got {}", self.m, self.entries.len())));
        }
        if let Some(bad) = self.entries.iter().find(|r| r.len() != self.n) {
            return Err(CliError::Domain(format!("expected n = {} columns, got a row of {}", self.n, bad.len())));
        }
        Ok(ExchangeMatrix::new(&self.entries)?)
    }

    fn names(&self) -> CliResult<Vec<String>> {
        let defaults = default_names(self.n, self.m);
        let mut names: Vec<String> = match &self.cluster_names {
            Some(c) if c.len() != self.n => {
                return Err(CliError::Domain(format!("expected {} cluster names, got {}", self.n, c.len())))
            }
            Some(c) => c.clone(),
            None => defaults[..self.n].to_vec(),
        };
        match &self.coefficient_names {
            Some(c) if c.len() != self.m - self.n => {
                return Err(CliError::Domain(format!(
                    "expected {} coefficient names, got {}",
                    self.m - self.n,
                    c.len()
                )))
            }
            Some(c) => names.extend(c.iter().cloned()),
            None => names.extend(defaults[self.n..].iter().cloned()),
        }
        Ok(names)
    }

    /// The seed described by the file; the initial cluster when `cluster`
    /// is absent.
    pub fn seed(&self) -> CliResult<Seed> {
        let matrix = self.matrix()?;
        let names = self.names()?;
        match &self.cluster {
            None => Ok(Seed::with_names(matrix, names)?),
            Some(vars) => {
                let cluster = vars.iter().map(|v| variable_from_json(v, self.m)).collect::<CliResult<Vec<_>>>()?;
                Ok(Seed::from_parts(matrix, cluster, names)?)
            }
        }
    }

    pub fn from_seed(seed: &Seed) -> Self {
        let (n, m) = (seed.n(), seed.m());
        let names = seed.names();
        ExchangeFile {
            n,
            m,
            entries: seed.matrix().rows(),
            coefficient_names: Some(names[n..].to_vec()),
            cluster_names: Some(names[..n].to_vec()),
            cluster: Some(
                seed.cluster()
                    .iter()
                    .map(|x| VariableJson {
                        text: Some(x.render(names)),
                        terms: x
                            .terms()
                            .map(|(e, c)| TermJson {
                                exponents: e.clone(),
                                coefficient: c.to_string(),
                            })
                            .collect(),
                    })
                    .collect(),
            ),
        }
    }

    pub fn from_matrix(b: &ExchangeMatrix) -> Self {
        ExchangeFile {
            n: b.n(),
            m: b.m(),
            entries: b.rows(),
            coefficient_names: None,
            cluster_names: None,
            cluster: None,
        }
    }
}

fn variable_from_json(v: &VariableJson, m: usize) -> CliResult<LaurentPoly> {
    let mut terms = Vec::with_capacity(v.terms.len());
    for t in &v.terms {
        if t.exponents.len() != m {
            return Err(CliError::Domain(format!("term has {} exponents, expected {m}", t.exponents.len())));
        }
        let c = BigInt::from_str(t.coefficient.trim())
            .map_err(|_| CliError::Domain(format!("cannot parse coefficient {:?}", t.coefficient)))?;
        terms.push((t.exponents.clone(), c));
    }
    Ok(LaurentPoly::from_terms(m, terms))
}
