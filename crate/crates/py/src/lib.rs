//! Python bindings. Results come back as plain dicts and lists with
//! exact coordinates kept as `"n/d"` strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use sepline::decomposition::{build_switch_graph, decompose, diagnostics_json};
use sepline::generate::{gen_circle, Pattern};
use sepline::geometry::{verify_separation, Separation};
use sepline::oracle::{feasible_pq, min_axis_separation, min_general_separation_circle};
use sepline::reduction::{extract, lift, normalize_with, reduce, Crbds, Layout, Normalization};
use sepline::solution::{line_json, lines_from_json_str};
use sepline::solvers::{solve_axis, solve_general, wedge_baseline};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

#[pyclass(frozen, module = "sepline_py")]
struct Instance {
    inner: sepline::Instance,
}

#[pymethods]
impl Instance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Instance { inner: sepline::Instance::from_json_str(text).map_err(err)? })
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed = 0, pattern = "random"))]
    fn generate(n: usize, seed: u64, pattern: &str) -> PyResult<Self> {
        let pattern: Pattern = pattern.parse().map_err(err)?;
        Ok(Instance { inner: gen_circle(n, seed, &pattern).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn digest(&self) -> String {
        self.inner.digest()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Instance(n={}, digest={})", self.inner.len(), &self.inner.digest()[..12])
    }
}

#[pyfunction]
#[pyo3(signature = (inst, variant = "axis"))]
fn solve<'py>(py: Python<'py>, inst: &Instance, variant: &str) -> PyResult<Bound<'py, PyAny>> {
    let doc = match variant {
        "axis" => solve_axis(&inst.inner).map_err(err)?.to_json("axis"),
        "general" => solve_general(&inst.inner).map_err(err)?.to_json(),
        "wedge" => wedge_baseline(&inst.inner).map_err(err)?.to_json("wedge"),
        other => return Err(PyValueError::new_err(format!("unknown variant {other:?}"))),
    };
    to_py(py, &doc)
}

#[pyfunction]
fn kappa<'py>(py: Python<'py>, inst: &Instance) -> PyResult<Bound<'py, PyAny>> {
    let dec = decompose(&inst.inner).map_err(err)?;
    let g = build_switch_graph(&dec).map_err(err)?;
    to_py(py, &diagnostics_json(&dec, &g))
}

#[pyfunction]
#[pyo3(signature = (inst, variant = "axis"))]
fn oracle<'py>(py: Python<'py>, inst: &Instance, variant: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = match variant {
        "axis" => min_axis_separation(&inst.inner),
        "general" => min_general_separation_circle(&inst.inner),
        other => return Err(PyValueError::new_err(format!("unknown oracle {other:?}"))),
    }
    .map_err(err)?;
    to_py(py, &json!({"size": r.size, "lines": r.lines.iter().map(line_json).collect::<Vec<_>>()}))
}

/// Lines of a `(p, q)`-separation, or `None`.
#[pyfunction]
fn separate_pq<'py>(py: Python<'py>, inst: &Instance, p: usize, q: usize) -> PyResult<Option<Bound<'py, PyAny>>> {
    match feasible_pq(&inst.inner, p, q).map_err(err)? {
        Some(lines) => Ok(Some(to_py(py, &Value::from(lines.iter().map(line_json).collect::<Vec<_>>()))?)),
        None => Ok(None),
    }
}

/// `lines` is a solution document or a bare JSON array of lines.
#[pyfunction]
fn verify(inst: &Instance, lines: &str) -> PyResult<bool> {
    let lines = lines_from_json_str(lines).map_err(err)?;
    Ok(matches!(verify_separation(&inst.inner.points, &lines).map_err(err)?, Separation::Separated))
}

/// Returns `(instance, layout_json)`.
#[pyfunction]
#[pyo3(signature = (crbds, normalization = "plain"))]
fn reduce_crbds(crbds: &str, normalization: &str) -> PyResult<(Instance, String)> {
    let g = Crbds::from_json_str(crbds).map_err(err)?;
    let how: Normalization = normalization.parse().map_err(err)?;
    let red = reduce(&normalize_with(&g, how));
    Ok((Instance { inner: red.instance }, red.layout.to_json_string()))
}

#[pyfunction]
fn lift_set<'py>(py: Python<'py>, layout: &str, set: Vec<String>) -> PyResult<Bound<'py, PyAny>> {
    let layout = Layout::from_json_str(layout).map_err(err)?;
    let lifted = lift(&layout, &set).map_err(err)?;
    let doc = json!({
        "lines": lifted.lines.iter().map(line_json).collect::<Vec<_>>(),
        "method": lifted.method,
        "g": lifted.g,
    });
    to_py(py, &doc)
}

#[pyfunction]
fn extract_set(layout: &str, lines: &str) -> PyResult<Vec<String>> {
    let layout = Layout::from_json_str(layout).map_err(err)?;
    let lines = lines_from_json_str(lines).map_err(err)?;
    extract(&layout, &lines).map_err(err)
}

#[pymodule]
fn sepline_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(kappa, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(separate_pq, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(reduce_crbds, m)?)?;
    m.add_function(wrap_pyfunction!(lift_set, m)?)?;
    m.add_function(wrap_pyfunction!(extract_set, m)?)?;
    Ok(())
}
