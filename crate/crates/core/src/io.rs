//! JSON file formats and machine-readable reports.
//!
//! Groups: `{"name": str, "order": n, "table": [[int]], "kind": "group"|"monoid"|"semigroup"}`
//! with optional `"labels"`. Operators: `{"map": [int]}`. Rationals serialize
//! as strings `"p/q"` (`"p"` for integers); matrices as row-major string
//! arrays `{"rows": [["p/q"]]}`; Lie algebras as
//! `{"dim": n, "c": [[["p/q"]]], "labels": [str]}`.

use crate::lie::{LieAlgebra, LieError};
use crate::qlinalg::{format_rat, parse_rat, Rat, RationalMatrix};
use crate::rbs::RbsEq;
use crate::tables::{Kind, MulTable, TableError};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("{path}: field {field}: {message}")]
    Invalid { path: String, field: String, message: String },
}

impl IoError {
    pub fn invalid(path: &str, field: &str, message: impl ToString) -> Self {
        IoError::Invalid {
            path: path.to_string(),
            field: field.to_string(),
            message: message.to_string(),
        }
    }
}

pub fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    serde_json::from_str(&text)
        .map_err(|source| IoError::Parse { path: path.display().to_string(), source })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupFile {
    pub fn to_table(&self, path: &str) -> Result<MulTable, IoError> {
        let kind = match self.kind.as_str() {
            "group" => Kind::Group,
            "monoid" => Kind::Monoid,
            "semigroup" => Kind::Semigroup,
            other => {
                return Err(IoError::invalid(
                    path,
                    "kind",
                    format!("expected group|monoid|semigroup, got {other:?}"),
                ))
            }
        };
        if self.table.len() != self.order || self.table.iter().any(|r| r.len() != self.order) {
            return Err(IoError::invalid(path, "table", "must be order x order"));
        }
        let flat: Vec<usize> = self.table.iter().flatten().copied().collect();
        MulTable::validate(self.order, flat, kind)
            .map_err(|e: TableError| IoError::invalid(path, "table", e))
    }

    pub fn from_table(name: Option<String>, table: &MulTable) -> Self {
        let kind = match table.kind() {
            Kind::Group => "group",
            Kind::Monoid => "monoid",
            Kind::Semigroup => "semigroup",
            Kind::Magma => "magma",
        };
        GroupFile {
            name,
            order: table.order(),
            table: table.rows(),
            kind: kind.to_string(),
            labels: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorFile {
    pub map: Vec<usize>,
}

/// One violation line of a verification report. `c` is null for pair
/// equations and set for triple laws ("assoc", "truss").
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ViolationJson {
    pub eq: String,
    pub a: usize,
    pub b: usize,
    pub c: Option<usize>,
}

impl ViolationJson {
    pub fn pair(eq: RbsEq, a: usize, b: usize) -> Self {
        ViolationJson { eq: eq.as_str().to_string(), a, b, c: None }
    }

    pub fn triple(eq: &str, a: usize, b: usize, c: usize) -> Self {
        ViolationJson { eq: eq.to_string(), a, b, c: Some(c) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub violations: Vec<ViolationJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureReport {
    pub components: Vec<Vec<usize>>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub base: usize,
    pub opl_ok: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementFactorization {
    pub element: usize,
    pub a1: usize,
    pub a2: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorizationReport {
    #[serde(rename = "G1")]
    pub g1: Vec<usize>,
    #[serde(rename = "G2")]
    pub g2: Vec<usize>,
    #[serde(rename = "H1")]
    pub h1: Vec<usize>,
    #[serde(rename = "H2")]
    pub h2: Vec<usize>,
    pub theta: Vec<usize>,
    pub g_theta: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementFactorization>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn to_matrix(&self, path: &str) -> Result<RationalMatrix, IoError> {
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let parsed: Result<Vec<Rat>, _> = row.iter().map(|s| parse_rat(s)).collect();
            rows.push(parsed.map_err(|e| IoError::invalid(path, "rows", e))?);
        }
        RationalMatrix::from_rows(rows).map_err(|e| IoError::invalid(path, "rows", e))
    }

    pub fn from_matrix(m: &RationalMatrix) -> Self {
        MatrixFile {
            rows: (0..m.rows())
                .map(|i| m.row(i).iter().map(format_rat).collect())
                .collect(),
        }
    }

    /// A single row vector.
    pub fn to_vector(&self, path: &str) -> Result<Vec<Rat>, IoError> {
        if self.rows.len() != 1 {
            return Err(IoError::invalid(path, "rows", "expected exactly one row vector"));
        }
        self.rows[0]
            .iter()
            .map(|s| parse_rat(s).map_err(|e| IoError::invalid(path, "rows", e)))
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieAlgebraFile {
    pub dim: usize,
    pub c: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl LieAlgebraFile {
    pub fn to_algebra(&self, path: &str) -> Result<LieAlgebra, IoError> {
        let n = self.dim;
        if self.c.len() != n
            || self.c.iter().any(|p| p.len() != n || p.iter().any(|q| q.len() != n))
        {
            return Err(IoError::invalid(path, "c", "tensor must be dim x dim x dim"));
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for plane in &self.c {
            for row in plane {
                for s in row {
                    flat.push(parse_rat(s).map_err(|e| IoError::invalid(path, "c", e))?);
                }
            }
        }
        LieAlgebra::new(n, flat, self.labels.clone())
            .map_err(|e: LieError| IoError::invalid(path, "c", e))
    }

    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let c = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| format_rat(alg.c_at(i, j, k))).collect())
                    .collect()
            })
            .collect();
        LieAlgebraFile { dim: n, c, labels: alg.labels().map(|l| l.to_vec()) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieViolationJson {
    pub eq: String,
    pub i: usize,
    pub j: usize,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieVerifyReport {
    pub ok: bool,
    pub violations: Vec<LieViolationJson>,
}

impl LieVerifyReport {
    pub fn from_violations(violations: &[LieError]) -> Self {
        let rows: Vec<LieViolationJson> = violations
            .iter()
            .filter_map(|v| match v {
                LieError::Violation { eq, i, j, lhs, rhs } => Some(LieViolationJson {
                    eq: eq.as_str().to_string(),
                    i: *i,
                    j: *j,
                    lhs: lhs.iter().map(format_rat).collect(),
                    rhs: rhs.iter().map(format_rat).collect(),
                }),
                _ => None,
            })
            .collect();
        LieVerifyReport { ok: rows.is_empty(), violations: rows }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieFactorizeReport {
    pub ok: bool,
    pub u_plus: Vec<String>,
    pub u_minus: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LieProjectionsReport {
    pub ok: bool,
    pub b1: MatrixFile,
    pub b2: MatrixFile,
}

/// Serializes a report as a deterministic byte stream.
pub fn render<T: Serialize>(value: &T, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("reports serialize")
    } else {
        serde_json::to_string(value).expect("reports serialize")
    }
}
