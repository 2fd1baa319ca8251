use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use prooflab::finitary::{diagnostics, parse_script, Proof};
use prooflab::infinitary::{check_local, eval_cutfree_with, render, trace, Deriv, Sampler, TraceFormat};
use prooflab::ord::{ordering_word, parse_ord, parse_query};
use prooflab::syntax::Var;
use prooflab::universe::{DeskSet, HfSet, Hull};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn sampler(seed: Option<u64>) -> Sampler {
    match seed {
        Some(seed) => Sampler::Seeded { seed, count: 8 },
        None => Sampler::Default,
    }
}

/// Normal form of an ordinal expression, or the verdict of `a ? b`.
#[pyfunction]
fn ord(expr: &str) -> PyResult<String> {
    parse_query(expr).map(|q| q.answer()).map_err(value_error)
}

/// `"less"`, `"equal"` or `"greater"`.
#[pyfunction]
fn ord_cmp(a: &str, b: &str) -> PyResult<&'static str> {
    let (a, b) = (parse_ord(a).map_err(value_error)?, parse_ord(b).map_err(value_error)?);
    Ok(ordering_word(a.cmp(&b)))
}

fn parse_proof(script: &str) -> PyResult<Proof> {
    parse_script(script).map_err(value_error)
}

/// Diagnostics for a proof script; empty when the proof checks.
#[pyfunction]
#[pyo3(signature = (script, n = 2))]
fn check(script: &str, n: u32) -> PyResult<Vec<String>> {
    Ok(diagnostics(&parse_proof(script)?, n)
        .iter()
        .map(ToString::to_string)
        .collect())
}

/// An infinitary derivation term.
#[pyclass(frozen, name = "Derivation")]
struct PyDeriv {
    inner: Deriv,
}

#[pymethods]
impl PyDeriv {
    #[getter]
    fn bound(&self) -> String {
        self.inner.bound().to_string()
    }

    #[getter]
    fn rank(&self) -> u32 {
        self.inner.rank()
    }

    /// The end sequent, one formula per entry.
    #[getter]
    fn sequent(&self) -> Vec<String> {
        self.inner.seq().iter().map(ToString::to_string).collect()
    }

    /// The last inference: `vee`, `wedge`, `cut` or `ref`.
    fn rule(&self) -> PyResult<String> {
        let view = self.inner.rule().map_err(value_error)?;
        Ok(view.tag().to_string())
    }

    /// One round of cut-elimination.
    fn elim(&self) -> PyResult<PyDeriv> {
        Ok(PyDeriv {
            inner: Deriv::elim_cuts(&self.inner).map_err(value_error)?,
        })
    }

    /// Rounds of cut-elimination until the rank is 0.
    fn cut_free(&self) -> PyResult<PyDeriv> {
        let mut d = self.inner.clone();
        while d.rank() > 0 {
            d = Deriv::elim_cuts(&d).map_err(value_error)?;
        }
        Ok(PyDeriv { inner: d })
    }

    /// Local check to `depth`; returns the violation, or None.
    #[pyo3(signature = (depth = 3, n = 2, seed = None))]
    fn check(&self, depth: usize, n: u32, seed: Option<u64>) -> Option<String> {
        check_local(&self.inner, depth, &sampler(seed), n)
            .violation
            .map(|v| v.to_string())
    }

    #[pyo3(signature = (depth = 8, seed = None))]
    fn eval(&self, depth: usize, seed: Option<u64>) -> PyResult<String> {
        Ok(eval_cutfree_with(&self.inner, depth, &sampler(seed))
            .map_err(value_error)?
            .to_string())
    }

    #[pyo3(signature = (depth = 3, seed = None, records = false))]
    fn trace(&self, depth: usize, seed: Option<u64>, records: bool) -> PyResult<String> {
        let rows = trace(&self.inner, depth, &sampler(seed)).map_err(value_error)?;
        let format = if records {
            TraceFormat::Records
        } else {
            TraceFormat::Text
        };
        Ok(render(&rows, format))
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner.sig())
    }
}

/// Embeds a checked proof. `sets` maps free variables to hereditarily finite
/// sets such as `"{{}}"`; unmapped variables are ∅.
#[pyfunction]
#[pyo3(signature = (script, sets = BTreeMap::new(), n = 2))]
fn embed(script: &str, sets: BTreeMap<String, String>, n: u32) -> PyResult<PyDeriv> {
    let proof = parse_proof(script)?;
    if let Some(d) = diagnostics(&proof, n).first() {
        return Err(value_error(d));
    }
    let free = proof.end_sequent().map(|s| s.free_vars()).unwrap_or_default();
    let mut assign: Vec<(Var, DeskSet)> = free.into_iter().map(|v| (v, DeskSet::empty())).collect();
    for (name, set) in sets {
        let set = HfSet::parse(&set).map_err(value_error)?;
        match assign.iter_mut().find(|(v, _)| v.name() == name) {
            Some(slot) => slot.1 = DeskSet::Concrete(set),
            None => return Err(value_error(format!("{name} is not free in the end sequent"))),
        }
    }
    let inner = Deriv::embed(Arc::new(proof), &assign, &Hull::new()).map_err(value_error)?;
    Ok(PyDeriv { inner })
}

#[pymodule]
fn prooflab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(ord, m)?)?;
    m.add_function(wrap_pyfunction!(ord_cmp, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_class::<PyDeriv>()?;
    Ok(())
}
