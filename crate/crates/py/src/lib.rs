//! Python bindings for the Rota-Baxter system workbench.
//!
//! Group-side types are exposed as classes over plain index lists; reports
//! come back as JSON strings matching the CLI schemas, so one parser serves
//! both front ends. Lie-side payloads use the same string-rational JSON.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rbsys::io::{
    render, FactorizationReport, GroupFile, LieAlgebraFile, LieVerifyReport, MatrixFile,
    StructureReport, VerifyReport, ViolationJson,
};
use rbsys::qlinalg::format_rat;
use rbsys::search::{enumerate_naive, enumerate_pruned, Mode};
use rbsys::tables::Kind;

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated finite multiplication table.
#[pyclass(name = "MulTable", skip_from_py_object)]
#[derive(Clone)]
struct PyMulTable {
    inner: rbsys::MulTable,
}

#[pymethods]
impl PyMulTable {
    #[new]
    fn new(order: usize, table: Vec<Vec<usize>>, kind: &str) -> PyResult<Self> {
        let kind = match kind {
            "group" => Kind::Group,
            "monoid" => Kind::Monoid,
            "semigroup" => Kind::Semigroup,
            "magma" => Kind::Magma,
            other => return Err(value_err(format!("unknown kind {other:?}"))),
        };
        if table.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(value_err("table must be order x order"));
        }
        let flat = table.into_iter().flatten().collect();
        let inner = rbsys::MulTable::validate(order, flat, kind).map_err(value_err)?;
        Ok(PyMulTable { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: GroupFile = serde_json::from_str(text).map_err(value_err)?;
        Ok(PyMulTable { inner: file.to_table("<json>").map_err(value_err)? })
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        PyMulTable { inner: rbsys::MulTable::cyclic(n) }
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        PyMulTable { inner: rbsys::MulTable::symmetric(n) }
    }

    #[staticmethod]
    fn klein_four() -> Self {
        PyMulTable { inner: rbsys::MulTable::klein_four() }
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        if a >= self.inner.order() || b >= self.inner.order() {
            return Err(value_err("element index out of range"));
        }
        Ok(self.inner.mul(a, b))
    }

    fn identity(&self) -> Option<usize> {
        self.inner.identity()
    }

    fn center(&self) -> Vec<usize> {
        self.inner.center().members().to_vec()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner.rows()
    }

    fn to_json(&self) -> String {
        render(&GroupFile::from_table(None, &self.inner), false)
    }

    fn __repr__(&self) -> String {
        format!("MulTable(order={}, kind={:?})", self.inner.order(), self.inner.kind())
    }
}

/// A verified Rota-Baxter system.
#[pyclass(name = "RbsInstance")]
struct PyRbsInstance {
    inner: rbsys::RbsInstance,
}

#[pymethods]
impl PyRbsInstance {
    fn b1(&self) -> Vec<usize> {
        self.inner.b1().as_slice().to_vec()
    }

    fn b2(&self) -> Vec<usize> {
        self.inner.b2().as_slice().to_vec()
    }

    fn phi(&self) -> Vec<usize> {
        self.inner.phi().as_slice().to_vec()
    }

    fn circ(&self, a: usize, b: usize) -> PyResult<usize> {
        if a >= self.inner.order() || b >= self.inner.order() {
            return Err(value_err("element index out of range"));
        }
        Ok(self.inner.circ_mul(a, b))
    }

    fn left_identity(&self, a: usize) -> usize {
        self.inner.left_identity(a)
    }

    fn verified(&self) -> bool {
        self.inner.is_verified()
    }

    fn __repr__(&self) -> String {
        format!("RbsInstance(order={})", self.inner.order())
    }
}

fn operator(map: Vec<usize>, order: usize) -> PyResult<rbsys::OperatorMap> {
    rbsys::OperatorMap::new(map, order).map_err(value_err)
}

/// Verify the defining identities; raises ValueError with the first
/// violation on failure.
#[pyfunction]
fn verify(table: &PyMulTable, b1: Vec<usize>, b2: Vec<usize>) -> PyResult<PyRbsInstance> {
    let n = table.inner.order();
    let inst = rbsys::verify_rbs(&table.inner, &operator(b1, n)?, &operator(b2, n)?)
        .map_err(value_err)?;
    Ok(PyRbsInstance { inner: inst })
}

/// Verification report as a JSON string: {"ok": bool, "violations": [...]}.
#[pyfunction]
#[pyo3(signature = (table, b1, b2, all=false))]
fn verify_report(table: &PyMulTable, b1: Vec<usize>, b2: Vec<usize>, all: bool) -> PyResult<String> {
    let n = table.inner.order();
    let b1 = operator(b1, n)?;
    let b2 = operator(b2, n)?;
    let violations: Vec<ViolationJson> = if all {
        rbsys::rbs::violations(&table.inner, &b1, &b2)
            .into_iter()
            .map(|(eq, a, b)| ViolationJson::pair(eq, a, b))
            .collect()
    } else {
        rbsys::rbs::first_violation(&table.inner, &b1, &b2)
            .map(|(eq, a, b)| ViolationJson::pair(eq, a, b))
            .into_iter()
            .collect()
    };
    Ok(render(&VerifyReport { ok: violations.is_empty(), violations }, false))
}

/// Catalog of all operator pairs on the carrier, as a JSON string.
#[pyfunction]
#[pyo3(signature = (table, mode="rbs", jobs=1, naive=false, budget=None))]
fn enumerate(
    table: &PyMulTable,
    mode: &str,
    jobs: usize,
    naive: bool,
    budget: Option<u64>,
) -> PyResult<String> {
    let mode = match mode {
        "rbs" => Mode::Rbs,
        "associative" => Mode::Associative,
        other => return Err(value_err(format!("unknown mode {other:?}"))),
    };
    let catalog = if naive {
        enumerate_naive(&table.inner, mode).map_err(value_err)?
    } else {
        enumerate_pruned(&table.inner, mode, jobs, budget.unwrap_or(u64::MAX))
    };
    Ok(render(&catalog, false))
}

/// Component/decomposition report as a JSON string:
/// {"components": [[int]], "K": [int], "base": int, "opl_ok": bool}.
#[pyfunction]
fn structure_report(table: &PyMulTable, b1: Vec<usize>, b2: Vec<usize>) -> PyResult<String> {
    let n = table.inner.order();
    let inst = rbsys::verify_rbs(&table.inner, &operator(b1, n)?, &operator(b2, n)?)
        .map_err(value_err)?;
    let decomposition = rbsys::structure::direct_sum_decomposition(&inst);
    let partition = rbsys::structure::partition(&inst);
    let report = StructureReport {
        components: partition.components.iter().map(|c| c.members().to_vec()).collect(),
        k: partition.e_classes.members().to_vec(),
        base: partition.base,
        opl_ok: decomposition.psi.len() == n,
    };
    Ok(render(&report, false))
}

/// Factorization report as a JSON string:
/// {"G1": [...], "G2": [...], "H1": [...], "H2": [...], "theta": [...],
///  "g_theta": [[a1,a2], ...]}.
#[pyfunction]
fn factorization_report(table: &PyMulTable, b1: Vec<usize>, b2: Vec<usize>) -> PyResult<String> {
    let n = table.inner.order();
    let inst = rbsys::verify_rbs(&table.inner, &operator(b1, n)?, &operator(b2, n)?)
        .map_err(value_err)?;
    let fd = rbsys::factorization::build_factorization(&inst).map_err(value_err)?;
    rbsys::factorization::pair_embedding(&inst, &fd).map_err(value_err)?;
    let report = FactorizationReport {
        g1: fd.g1.members().to_vec(),
        g2: fd.g2.members().to_vec(),
        h1: fd.h1.members().to_vec(),
        h2: fd.h2.members().to_vec(),
        theta: fd.theta.clone(),
        g_theta: fd.g_theta.clone(),
        element: None,
    };
    Ok(render(&report, false))
}

/// Unique pair (a1, a2) with a = a1 a2 over the Cayley-compatible pairs.
#[pyfunction]
fn factorize_element(
    table: &PyMulTable,
    b1: Vec<usize>,
    b2: Vec<usize>,
    a: usize,
) -> PyResult<(usize, usize)> {
    let n = table.inner.order();
    let inst = rbsys::verify_rbs(&table.inner, &operator(b1, n)?, &operator(b2, n)?)
        .map_err(value_err)?;
    let fd = rbsys::factorization::build_factorization(&inst).map_err(value_err)?;
    rbsys::factorization::factorize_element(&inst, &fd, a).map_err(value_err)
}

fn parse_algebra(text: &str) -> PyResult<rbsys::lie::LieAlgebra> {
    let file: LieAlgebraFile = serde_json::from_str(text).map_err(value_err)?;
    file.to_algebra("<json>").map_err(value_err)
}

fn parse_matrix(text: &str) -> PyResult<rbsys::qlinalg::RationalMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(value_err)?;
    file.to_matrix("<json>").map_err(value_err)
}

/// Lie verification report as a JSON string (algebra and matrices as JSON).
#[pyfunction]
fn lie_verify_report(algebra: &str, b1: &str, b2: &str) -> PyResult<String> {
    let alg = parse_algebra(algebra)?;
    let violations = rbsys::lie::lie_rbs_violations(&alg, &parse_matrix(b1)?, &parse_matrix(b2)?);
    Ok(render(&LieVerifyReport::from_violations(&violations), false))
}

/// The biconditional flag: (B1, B2) is a system iff (B1-B2, B1+B2) satisfies
/// the twisted modified Yang-Baxter equations. Asserted internally; the
/// common value is returned.
#[pyfunction]
fn tmybe_equivalence(algebra: &str, b1: &str, b2: &str) -> PyResult<bool> {
    let alg = parse_algebra(algebra)?;
    Ok(rbsys::lie::tmybe_equivalence(&alg, &parse_matrix(b1)?, &parse_matrix(b2)?))
}

/// Unique decomposition of w (one-row matrix JSON) as u_plus + u_minus;
/// returns two lists of rational strings.
#[pyfunction]
fn lie_factorize(algebra: &str, b1: &str, b2: &str, w: &str) -> PyResult<(Vec<String>, Vec<String>)> {
    let alg = parse_algebra(algebra)?;
    let lr = rbsys::lie::verify_lie_rbs(&alg, &parse_matrix(b1)?, &parse_matrix(b2)?)
        .map_err(value_err)?;
    let file: MatrixFile = serde_json::from_str(w).map_err(value_err)?;
    let w = file.to_vector("<json>").map_err(value_err)?;
    let (up, um) = rbsys::lie::lie_factorize(&lr, &w).map_err(value_err)?;
    Ok((up.iter().map(format_rat).collect(), um.iter().map(format_rat).collect()))
}

/// B1/B2 matrices (as matrix JSON strings) of the projection system for a
/// triple decomposition; subspaces given as matrix JSON whose rows span them.
#[pyfunction]
fn lie_from_projections(
    algebra: &str,
    gplus: &str,
    gminus: &str,
    v: &str,
) -> PyResult<(String, String)> {
    let alg = parse_algebra(algebra)?;
    let parse_space = |text: &str| -> PyResult<rbsys::qlinalg::Subspace> {
        let m = parse_matrix(text)?;
        let rows: Vec<Vec<rbsys::qlinalg::Rat>> =
            (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        rbsys::qlinalg::Subspace::span(alg.dim(), &rows).map_err(value_err)
    };
    let lr = rbsys::lie::from_triple_decomposition(
        &alg,
        &parse_space(gplus)?,
        &parse_space(gminus)?,
        &parse_space(v)?,
    )
    .map_err(value_err)?;
    Ok((
        render(&MatrixFile::from_matrix(lr.b1()), false),
        render(&MatrixFile::from_matrix(lr.b2()), false),
    ))
}

/// Structure-constant JSON for sl2 with ordered basis (e, h, f).
#[pyfunction]
fn sl2_json() -> String {
    render(&LieAlgebraFile::from_algebra(&rbsys::lie::LieAlgebra::sl2()), false)
}

#[pymodule]
fn rbsys_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMulTable>()?;
    m.add_class::<PyRbsInstance>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_report, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(structure_report, m)?)?;
    m.add_function(wrap_pyfunction!(factorization_report, m)?)?;
    m.add_function(wrap_pyfunction!(factorize_element, m)?)?;
    m.add_function(wrap_pyfunction!(lie_verify_report, m)?)?;
    m.add_function(wrap_pyfunction!(tmybe_equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(lie_factorize, m)?)?;
    m.add_function(wrap_pyfunction!(lie_from_projections, m)?)?;
    m.add_function(wrap_pyfunction!(sl2_json, m)?)?;
    Ok(())
}
