//! Python bindings. Words cross the boundary as strings in word syntax.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use graphprod::amalgam::{amalgam_wp, evaluate_xy, AmalgamInstance, PSolver, SyllableWord};
use graphprod::conjugacy::{conjugate, cyclically_reduce, is_cyclically_reduced};
use graphprod::dependence::{emit_dot, DependenceGraph};
use graphprod::oracles::{self, OracleBudget};
use graphprod::{corpus, normal_form, trace, Error, GWord, GraphProductSpec, NodeId};

create_exception!(graphprod, GraphProductError, PyValueError);
create_exception!(graphprod, BudgetExceeded, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded => BudgetExceeded::new_err(e.to_string()),
        Error::CrossCheck(_) => PyRuntimeError::new_err(e.to_string()),
        _ => GraphProductError::new_err(e.to_string()),
    }
}

/// A graph product of node groups, loaded from the spec file format.
#[pyclass(name = "GraphProduct", module = "graphprod", frozen)]
struct PyGraphProduct {
    spec: GraphProductSpec,
}

impl PyGraphProduct {
    fn word(&self, text: &str) -> PyResult<GWord> {
        GWord::parse(&self.spec, text).map_err(to_py)
    }

    fn show(&self, w: &GWord) -> String {
        w.display(&self.spec).to_string()
    }

    fn symbols(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&g| self.spec.sigma()[g].symbol.clone()).collect()
    }
}

#[pymethods]
impl PyGraphProduct {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyGraphProduct {
            spec: GraphProductSpec::parse(text).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| GraphProductError::new_err(e.to_string()))?;
        Self::new(&text)
    }

    /// One of the built-in specs: fig2, racg, free_c2_c3, direct_c2_c2, mixed.
    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        let spec = match name {
            "mixed" => corpus::mixed(),
            _ => corpus::all()
                .into_iter()
                .find(|(n, _)| *n == name)
                .map(|(_, s)| s)
                .ok_or_else(|| GraphProductError::new_err(format!("no corpus spec named {name}")))?,
        };
        Ok(PyGraphProduct { spec })
    }

    #[getter]
    fn nodes(&self) -> Vec<String> {
        self.spec.nodes().iter().map(|n| n.name.clone()).collect()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.spec.sigma().iter().map(|g| g.symbol.clone()).collect()
    }

    fn is_finite(&self) -> bool {
        self.spec.is_finite()
    }

    fn to_text(&self) -> String {
        self.spec.to_spec_text()
    }

    fn word_problem(&self, w: &str) -> PyResult<bool> {
        Ok(normal_form::word_problem(&self.spec, &self.word(w)?))
    }

    /// Canonical linearization of the reduced dependence graph.
    fn normal_form(&self, w: &str) -> PyResult<String> {
        Ok(self.show(&normal_form::normal_word(&self.spec, &self.word(w)?)))
    }

    fn shortlex(&self, w: &str) -> PyResult<Vec<String>> {
        Ok(normal_form::shortlex_symbols(&self.spec, &self.word(w)?))
    }

    fn trace_equal(&self, u: &str, v: &str) -> PyResult<bool> {
        Ok(trace::trace_equal(&self.spec, &self.word(u)?, &self.word(v)?))
    }

    fn cyclically_reduce(&self, w: &str) -> PyResult<String> {
        Ok(self.show(&cyclically_reduce(&self.spec, &self.word(w)?)))
    }

    fn is_cyclically_reduced(&self, w: &str) -> PyResult<bool> {
        is_cyclically_reduced(&self.spec, &self.word(w)?).map_err(to_py)
    }

    fn conjugate(&self, u: &str, v: &str) -> PyResult<bool> {
        Ok(conjugate(&self.spec, &self.word(u)?, &self.word(v)?))
    }

    /// Word problem through the amalgamated product split at `base`
    /// (default: the last node).
    #[pyo3(signature = (w, base=None))]
    fn amalgam_wp(&self, w: &str, base: Option<&str>) -> PyResult<bool> {
        let w = self.word(w)?;
        if self.spec.len() == 1 {
            return Ok(normal_form::word_problem(&self.spec, &w));
        }
        let base = match base {
            Some(name) => self.spec.node_by_name(name).map_err(to_py)?,
            None => NodeId(self.spec.len() - 1),
        };
        let d = self.spec.decompose(base).map_err(to_py)?;
        let inst = AmalgamInstance::from_decomposition(&d, PSolver::Decomposition);
        amalgam_wp(&inst, &SyllableWord::from_word(&d, &w)).map_err(to_py)
    }

    #[pyo3(signature = (w, full=false))]
    fn dot(&self, w: &str, full: bool) -> PyResult<String> {
        Ok(emit_dot(&self.spec, &DependenceGraph::build(&self.spec, &self.word(w)?), full))
    }

    #[pyo3(signature = (w, seed=0, max_states=100_000))]
    fn naive_normal_form(&self, w: &str, seed: u64, max_states: usize) -> PyResult<String> {
        let budget = OracleBudget::new(12, 5, max_states).map_err(to_py)?;
        let nf = oracles::naive_normal_form(&self.spec, &self.word(w)?, seed, &budget).map_err(to_py)?;
        Ok(self.show(&nf))
    }

    #[pyo3(signature = (u, v, max_conjugator_length=5, max_states=100_000))]
    fn brute_conjugate(&self, u: &str, v: &str, max_conjugator_length: usize, max_states: usize) -> PyResult<bool> {
        let budget = OracleBudget::new(12, max_conjugator_length, max_states).map_err(to_py)?;
        oracles::brute_conjugate(&self.spec, &self.word(u)?, &self.word(v)?, &budget).map_err(to_py)
    }

    #[pyo3(signature = (w, max_length=12, max_states=100_000))]
    fn geodesics(&self, w: &str, max_length: usize, max_states: usize) -> PyResult<Vec<Vec<String>>> {
        let budget = OracleBudget::new(max_length, 5, max_states).map_err(to_py)?;
        let all = oracles::enumerate_geodesics(&self.spec, &self.word(w)?, &budget).map_err(to_py)?;
        Ok(all.iter().map(|x| self.symbols(x)).collect())
    }

    fn __repr__(&self) -> String {
        format!("GraphProduct(nodes={:?})", self.nodes())
    }
}

/// Image in SL(2, Z) of a word over {x, y}: 1 is x, 2 is y, negatives are
/// inverses.
#[pyfunction]
fn xy_matrix(word: Vec<i64>) -> PyResult<Vec<Vec<BigInt>>> {
    if let Some(bad) = word.iter().find(|l| !matches!(l.abs(), 1 | 2)) {
        return Err(GraphProductError::new_err(format!("letter {bad} is not over x, y")));
    }
    Ok(evaluate_xy(&word).0.iter().map(|row| row.to_vec()).collect())
}

#[pymodule(name = "graphprod")]
fn graphprod_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraphProduct>()?;
    m.add_function(wrap_pyfunction!(xy_matrix, m)?)?;
    m.add("GraphProductError", m.py().get_type::<GraphProductError>())?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    Ok(())
}
