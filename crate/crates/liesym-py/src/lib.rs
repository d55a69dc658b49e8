//! Python bindings for liesym. Structured results come back as plain dicts
//! and lists; expressions and fields as printable wrapper objects.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use liesym::determining::{build_determining_system, check_candidate, CheckConfig, PdeFamily};
use liesym::flows::{
    closed_form_flow, sweep, time_shift_flow, transform_solution, zero_sample, FdConfig, FlowMap,
    Pde, SolutionFn, SweepGrid,
};
use liesym::generators::{
    basis_for, basis_symbolic, classify as classify_case, heat_basis, parse_rational,
    GeneratorBasis, ParamCase,
};
use liesym::jet::VectorField;
use liesym::liealg::{commutator_table, format_combination, structure_report};
use liesym::symexpr::{self, q_to_f64, ParamSubst, Var};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Python object from a serde_json value via the `json` module.
fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

fn load_basis(case_id: &str, symbolic: bool) -> PyResult<GeneratorBasis> {
    if case_id == "heat" {
        return Ok(heat_basis());
    }
    let c = ParamCase::canonical(case_id).map_err(|e| PyKeyError::new_err(e.to_string()))?;
    Ok(if symbolic {
        basis_symbolic(&c)
    } else {
        basis_for(&c)
    })
}

/// Exact symbolic expression.
#[pyclass(name = "Expr", frozen, from_py_object)]
#[derive(Clone)]
struct PyExpr(symexpr::Expr);

#[pymethods]
impl PyExpr {
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        symexpr::parse(src).map(PyExpr).map_err(err)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Partial derivative by `x`, `y`, `t` or `u`.
    fn diff(&self, var: &str) -> PyResult<Self> {
        let v = match var {
            "x" => Var::X,
            "y" => Var::Y,
            "t" => Var::T,
            "u" => Var::U,
            _ => return Err(PyValueError::new_err(format!("unknown variable {var:?}"))),
        };
        Ok(PyExpr(self.0.differentiate(v)))
    }

    fn __add__(&self, o: &PyExpr) -> Self {
        PyExpr(&self.0 + &o.0)
    }

    fn __sub__(&self, o: &PyExpr) -> Self {
        PyExpr(&self.0 - &o.0)
    }

    fn __mul__(&self, o: &PyExpr) -> Self {
        PyExpr(&self.0 * &o.0)
    }

    fn __neg__(&self) -> Self {
        PyExpr(-&self.0)
    }

    fn __eq__(&self, o: &PyExpr) -> bool {
        self.0 == o.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr('{}')", self.0)
    }
}

/// `xi d/dx + gamma d/dy + tau d/dt + phi d/du`.
#[pyclass(name = "VectorField", frozen, from_py_object)]
#[derive(Clone)]
struct PyVectorField(VectorField);

#[pymethods]
impl PyVectorField {
    #[new]
    fn new(xi: &str, gamma: &str, tau: &str, phi: &str) -> PyResult<Self> {
        let p = |s: &str| symexpr::parse(s).map_err(err);
        Ok(PyVectorField(VectorField::new(
            p(xi)?,
            p(gamma)?,
            p(tau)?,
            p(phi)?,
        )))
    }

    #[getter]
    fn xi(&self) -> PyExpr {
        PyExpr(self.0.xi.clone())
    }

    #[getter]
    fn gamma(&self) -> PyExpr {
        PyExpr(self.0.gamma.clone())
    }

    #[getter]
    fn tau(&self) -> PyExpr {
        PyExpr(self.0.tau.clone())
    }

    #[getter]
    fn phi(&self) -> PyExpr {
        PyExpr(self.0.phi.clone())
    }

    fn __repr__(&self) -> String {
        let v = &self.0;
        format!(
            "VectorField(xi='{}', gamma='{}', tau='{}', phi='{}')",
            v.xi, v.gamma, v.tau, v.phi
        )
    }
}

/// Generator basis of a case.
#[pyclass(name = "Basis", frozen)]
struct PyBasis(GeneratorBasis);

#[pymethods]
impl PyBasis {
    #[new]
    #[pyo3(signature = (case_id, symbolic = false))]
    fn new(case_id: &str, symbolic: bool) -> PyResult<Self> {
        load_basis(case_id, symbolic).map(PyBasis)
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels.clone()
    }

    #[getter]
    fn fields(&self) -> Vec<PyVectorField> {
        self.0.fields.iter().cloned().map(PyVectorField).collect()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    fn __len__(&self) -> usize {
        self.0.fields.len()
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0.to_json_value())
    }
}

/// Closed-form one-parameter group of a catalog generator.
#[pyclass(name = "Flow", frozen)]
struct PyFlow(FlowMap);

#[pymethods]
impl PyFlow {
    /// `generator` is a 1-based index or `"v_t"` for the time shift.
    #[new]
    fn new(case_id: &str, generator: &Bound<'_, PyAny>) -> PyResult<Self> {
        let f = if let Ok(i) = generator.extract::<usize>() {
            closed_form_flow(case_id, i)
        } else if generator.extract::<String>()? == "v_t" {
            time_shift_flow(case_id)
        } else {
            return Err(PyValueError::new_err("generator must be an index or 'v_t'"));
        };
        f.map(PyFlow).map_err(err)
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label.clone()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind.name()
    }

    /// Image of `(x, y, t, u)` after time `eps`.
    fn apply(&self, point: [f64; 4], eps: f64) -> PyResult<[f64; 4]> {
        self.0.apply(point, eps).map_err(err)
    }

    /// `u^{eps,v}` for `u = one` or a closed form in x, y, t.
    #[pyo3(signature = (eps, solution = "one"))]
    fn transform(&self, eps: f64, solution: &str) -> PyResult<PySolution> {
        let u = if solution == "one" {
            SolutionFn::one()
        } else {
            SolutionFn::from_expr(solution, &self.0.sample).map_err(err)?
        };
        Ok(PySolution {
            f: transform_solution(&self.0, &u, eps),
            pde: pde_of(&self.0),
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Flow('{}', '{}', {})",
            self.0.case_id,
            self.0.label,
            self.0.kind.name()
        )
    }
}

fn pde_of(f: &FlowMap) -> Pde {
    if f.case_id == "heat" {
        Pde::Heat
    } else {
        Pde::Ls(std::array::from_fn(|k| q_to_f64(&f.sample[k])))
    }
}

/// A transported solution `u(x, y, t)`.
#[pyclass(name = "Solution", frozen)]
struct PySolution {
    f: SolutionFn,
    pde: Pde,
}

#[pymethods]
impl PySolution {
    fn __call__(&self, x: f64, y: f64, t: f64) -> PyResult<f64> {
        self.f.eval([x, y, t]).map_err(err)
    }

    /// `(x, y, t) -> u(x, y, t + s)`.
    fn shift_t(&self, s: f64) -> Self {
        PySolution {
            f: self.f.shift_t(s),
            pde: self.pde,
        }
    }

    #[getter]
    fn provenance(&self) -> Vec<String> {
        self.f.provenance.clone()
    }

    /// Finite-difference residual sweep over the default grid.
    #[pyo3(signature = (tol = 1e-5))]
    fn sweep(&self, py: Python<'_>, tol: f64) -> PyResult<Py<PyAny>> {
        let mut grid = SweepGrid::default();
        if self.pde == Pde::Heat {
            grid.x = (-2.0, 2.0, 10);
            grid.y = (0.0, 0.0, 1);
        }
        let r = sweep(
            &self.pde,
            &self.f,
            &grid,
            tol,
            &FdConfig::default(),
            "",
            "",
            0.0,
        )
        .map_err(err)?;
        to_py(py, &serde_json::to_value(&r).map_err(err)?)
    }
}

/// Case of `(a, b, d, e)` given as rational strings.
#[pyfunction]
fn classify(py: Python<'_>, a: &str, b: &str, d: &str, e: &str) -> PyResult<Py<PyAny>> {
    let q = |s: &str| parse_rational(s).map_err(err);
    let c = classify_case(&q(a)?, &q(d)?, &q(b)?, &q(e)?);
    let v = serde_json::json!({
        "case_id": c.id(),
        "constraints": c.constraint_text(),
        "dimension": c.expected_dimension(),
    });
    to_py(py, &v)
}

/// Rows `(monomial, coefficient)` of the determining system of `"ls"` or `"heat"`.
#[pyfunction]
#[pyo3(signature = (pde = "ls"))]
fn determining_system(pde: &str) -> PyResult<Vec<(String, PyExpr)>> {
    let family = match pde {
        "ls" => PdeFamily::ls(),
        "heat" => PdeFamily::heat(),
        _ => return Err(PyValueError::new_err(format!("unknown equation {pde:?}"))),
    };
    let sys = build_determining_system(&family).map_err(err)?;
    Ok(sys
        .entries
        .into_iter()
        .map(|e| (e.monomial.label(), PyExpr(e.coeff)))
        .collect())
}

/// Whether a field is a symmetry of the case's equation; failing rows are listed.
#[pyfunction]
#[pyo3(signature = (case_id, field, seed = 24301))]
fn check_field(
    py: Python<'_>,
    case_id: &str,
    field: &PyVectorField,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let (family, subst, sample) = if case_id == "heat" {
        (PdeFamily::heat(), ParamSubst::new(), zero_sample())
    } else {
        let c = ParamCase::canonical(case_id).map_err(|e| PyKeyError::new_err(e.to_string()))?;
        (PdeFamily::ls(), c.sample_subst(), c.sample.clone())
    };
    let sys = build_determining_system(&family).map_err(err)?;
    let cfg = CheckConfig {
        seed,
        ..CheckConfig::default()
    };
    let r = check_candidate(&field.0, &sys, &subst, &sample, &cfg).map_err(err)?;
    let failing: Vec<String> = r
        .entries
        .iter()
        .filter(|e| !e.symbolic_pass)
        .map(|e| e.monomial.clone())
        .collect();
    let v = serde_json::json!({
        "passed": r.passed(cfg.tol),
        "failing": failing,
        "numeric_max_residual": r.numeric_max_residual,
    });
    to_py(py, &v)
}

/// Commutator table at the canonical sample as a grid of strings.
#[pyfunction]
fn bracket_table(case_id: &str) -> PyResult<Vec<Vec<String>>> {
    let t = commutator_table(&load_basis(case_id, false)?).map_err(err)?;
    Ok(t.c
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| format_combination(c, &t.labels))
                .collect()
        })
        .collect())
}

/// Structure report (center, radical, identified algebra) of a case.
#[pyfunction]
fn structure(py: Python<'_>, case_id: &str) -> PyResult<Py<PyAny>> {
    let t = commutator_table(&load_basis(case_id, false)?).map_err(err)?;
    to_py(py, &structure_report(&t).map_err(err)?.to_json_value())
}

/// Identifiers of the sixteen cases.
#[pyfunction]
fn cases() -> Vec<String> {
    ParamCase::all().iter().map(ParamCase::id).collect()
}

#[pymodule]
fn liesym_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyVectorField>()?;
    m.add_class::<PyBasis>()?;
    m.add_class::<PyFlow>()?;
    m.add_class::<PySolution>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(determining_system, m)?)?;
    m.add_function(wrap_pyfunction!(check_field, m)?)?;
    m.add_function(wrap_pyfunction!(bracket_table, m)?)?;
    m.add_function(wrap_pyfunction!(structure, m)?)?;
    m.add_function(wrap_pyfunction!(cases, m)?)?;
    Ok(())
}
