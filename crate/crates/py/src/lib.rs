//! Python bindings for `hecke_core`.
//!
//! Structured results are returned as JSON strings; decode them with `json.loads`.

use hecke_core::cli::{parse_gl_element, parse_siegel_element};
use hecke_core::finvec::{PrimePowerField, DEFAULT_BUDGET};
use hecke_core::frobchar::{hecke_charpoly, langlands_oracle_check};
use hecke_core::hecke_gl::{
    dual, express_in_levi_generators, express_in_t_generators, levi_expand, render_levi_expr, GlContext,
};
use hecke_core::hodge::{siegel_hodge, unitary_hodge};
use hecke_core::motive_inv::{enumerate_invariants, to_weights, validate, NilpotentInvariants};
use hecke_core::redsim::{census as run_census, nonordinary_census, ModelPoint};
use hecke_core::siegel::{hat_siegel, siegel_degrees, siegel_frob_charpoly, SiegelContext};
use hecke_core::verify::{run_suite, Suite};
use hecke_core::Error;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Hecke algebra of GL_r at level (r - n, n).
#[pyclass(frozen)]
struct GlHecke {
    ctx: GlContext,
}

#[pymethods]
impl GlHecke {
    #[new]
    #[pyo3(signature = (r, n, quotient = true))]
    fn new(r: usize, n: usize, quotient: bool) -> PyResult<Self> {
        Ok(Self { ctx: GlContext::new(r, n, quotient).map_err(py_err)? })
    }

    #[getter]
    fn r(&self) -> usize {
        self.ctx.r()
    }

    #[getter]
    fn n(&self) -> usize {
        self.ctx.n()
    }

    /// Satake image of `T<i>`, `Phi<i>`, `Psi<i>` or `fr`.
    fn satake(&self, element: &str) -> PyResult<String> {
        Ok(parse_gl_element(&self.ctx, element).map_err(py_err)?.to_string())
    }

    /// Dual of an element, written in T generators for `T<i>` and in Levi generators otherwise.
    fn dual(&self, element: &str) -> PyResult<String> {
        let d = dual(&parse_gl_element(&self.ctx, element).map_err(py_err)?).map_err(py_err)?;
        if element.starts_with('T') {
            Ok(express_in_t_generators(&d).map_err(py_err)?.to_string())
        } else {
            Ok(render_levi_expr(&express_in_levi_generators(&d).map_err(py_err)?, self.ctx.n()))
        }
    }

    fn dual_image(&self, element: &str) -> PyResult<String> {
        let e = parse_gl_element(&self.ctx, element).map_err(py_err)?;
        Ok(dual(&e).map_err(py_err)?.to_string())
    }

    /// Levi expansion of T_j as rendered terms, largest Frobenius power first.
    fn expand(&self, j: usize) -> PyResult<Vec<String>> {
        let terms = levi_expand(&self.ctx, j).map_err(py_err)?;
        Ok(terms.iter().map(|t| t.render(self.ctx.n())).collect())
    }

    #[pyo3(signature = (var = "X"))]
    fn charpoly(&self, var: &str) -> PyResult<String> {
        Ok(hecke_charpoly(self.ctx.r(), self.ctx.n()).map_err(py_err)?.to_text(var))
    }

    fn charpoly_json(&self) -> PyResult<String> {
        Ok(hecke_charpoly(self.ctx.r(), self.ctx.n()).map_err(py_err)?.to_json().to_string())
    }

    /// Numerically compares the charpoly with the Frobenius roots; returns (passed, summary).
    #[pyo3(signature = (trials = 50, seed = 0))]
    fn oracle_check(&self, trials: usize, seed: u64) -> PyResult<(bool, String)> {
        let rep = langlands_oracle_check(self.ctx.r(), self.ctx.n(), trials, seed).map_err(py_err)?;
        Ok((rep.passed(), rep.summary()))
    }

    fn __repr__(&self) -> String {
        format!("GlHecke(r={}, n={}, quotient={})", self.ctx.r(), self.ctx.n(), self.ctx.quotient())
    }
}

/// Hecke algebra of GSp_2g at Siegel parahoric level.
#[pyclass(frozen)]
struct SiegelHecke {
    ctx: SiegelContext,
}

#[pymethods]
impl SiegelHecke {
    #[new]
    fn new(g: usize) -> PyResult<Self> {
        Ok(Self { ctx: SiegelContext::new(g).map_err(py_err)? })
    }

    #[getter]
    fn g(&self) -> usize {
        self.ctx.g()
    }

    /// Satake image of `Phi<i>` or `Tp`.
    fn satake(&self, element: &str) -> PyResult<String> {
        Ok(parse_siegel_element(&self.ctx, element).map_err(py_err)?.to_string())
    }

    fn hat(&self, element: &str) -> PyResult<String> {
        let e = parse_siegel_element(&self.ctx, element).map_err(py_err)?;
        Ok(hat_siegel(&e).to_string())
    }

    #[pyo3(signature = (var = "X"))]
    fn charpoly(&self, var: &str) -> PyResult<String> {
        Ok(siegel_frob_charpoly(&self.ctx).map_err(py_err)?.to_text(var))
    }

    /// (d1, d2, d1_ns, d2_ns) for Phi_i over F_p.
    fn degrees(&self, i: usize, p: u64) -> PyResult<String> {
        Ok(siegel_degrees(self.ctx.g(), i, p).map_err(py_err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("SiegelHecke(g={})", self.ctx.g())
    }
}

/// Reduction census over F_q as JSON. `flavor` is one of
/// ordinary, siegel, unitary, nonordinary, quadratic.
#[pyfunction]
#[pyo3(signature = (flavor, q, r = None, n = None, g = None, j = None, budget = DEFAULT_BUDGET))]
fn census(
    flavor: &str,
    q: usize,
    r: Option<usize>,
    n: Option<usize>,
    g: Option<usize>,
    j: Option<usize>,
    budget: u128,
) -> PyResult<String> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| PyValueError::new_err(format!("{flavor} census needs {name}")));
    let field = PrimePowerField::of_order(q).map_err(py_err)?;
    let point = match flavor {
        "ordinary" => ModelPoint::ordinary(field, need(r, "r")?, need(n, "n")?),
        "siegel" => ModelPoint::siegel(field, need(g, "g")?),
        "unitary" => ModelPoint::unitary(field, need(r, "r")?, need(n, "n")?),
        "nonordinary" => ModelPoint::nonordinary(field, need(r, "r")?),
        "quadratic" => ModelPoint::quadratic(field, need(r, "r")?),
        other => return Err(PyValueError::new_err(format!("unknown flavor '{other}'"))),
    }
    .map_err(py_err)?;
    if matches!(flavor, "nonordinary" | "quadratic") {
        let rep = nonordinary_census(&point, budget).map_err(py_err)?;
        return Ok(rep.to_json(point.field()).to_string());
    }
    let j = if flavor == "siegel" { j.or(g) } else { j };
    let c = run_census(&point, need(j, "j")?, budget).map_err(py_err)?;
    Ok(c.to_json().to_string())
}

/// Hodge numbers; pass `g` for the Siegel case or `r` and `n` for the unitary case.
#[pyfunction]
#[pyo3(signature = (g = None, r = None, n = None))]
fn hodge(g: Option<usize>, r: Option<usize>, n: Option<usize>) -> PyResult<Vec<u128>> {
    let h = match (g, r, n) {
        (Some(g), None, None) => siegel_hodge(g),
        (None, Some(r), Some(n)) => unitary_hodge(r, n),
        _ => return Err(PyValueError::new_err("pass either g, or both r and n")),
    }
    .map_err(py_err)?;
    Ok(h.entries)
}

/// All (nu, k) with the given r and n, nu ≤ nu_max.
#[pyfunction]
fn invariants(r: usize, n: usize, nu_max: usize) -> PyResult<Vec<(usize, Vec<usize>)>> {
    let all = enumerate_invariants(r, n, nu_max).map_err(py_err)?;
    Ok(all.into_iter().map(|inv| (inv.nu, inv.k)).collect())
}

/// Weights of (nu, k); raises ValueError if the pair is not valid for its own r and n.
#[pyfunction]
fn weights(nu: usize, k: Vec<usize>) -> PyResult<Vec<i64>> {
    let inv = NilpotentInvariants { nu, k };
    let v = validate(nu, &inv.k, inv.r(), inv.n());
    if !v.valid() {
        return Err(PyValueError::new_err(v.problems.join("; ")));
    }
    to_weights(&inv).map_err(py_err)
}

/// Runs a self-check suite; returns (passed, report text).
#[pyfunction]
#[pyo3(signature = (suite = "all", max_r = 4, seed = 0))]
fn verify(suite: &str, max_r: usize, seed: u64) -> PyResult<(bool, String)> {
    let s: Suite = suite.parse().map_err(py_err)?;
    let rep = run_suite(s, max_r, seed).map_err(py_err)?;
    Ok((rep.passed(), rep.to_text()))
}

/// Runs the `hecke` command line with the given arguments; returns (exit code, output).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    let out = hecke_core::cli::run(std::iter::once("hecke".to_string()).chain(args));
    (out.code, out.output)
}

#[pymodule]
fn hecke_satake(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<GlHecke>()?;
    m.add_class::<SiegelHecke>()?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(hodge, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(weights, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
