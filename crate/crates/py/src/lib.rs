//! Python bindings: sequences, the solver ladder, the generator and the
//! bounded-difference min-plus product.

use dyckdist::codec::{self, Encoding};
use dyckdist::minplus::{self, BdMatrix, BdParams, Matrix, Strategy};
use dyckdist::solver::{self, SolveOptions};
use dyckdist::{oracle, Error, HeightProfile, Symbol};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Invariant(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Immutable parenthesis sequence.
#[pyclass(name = "ParenSeq", module = "pydyck", frozen, eq)]
#[derive(Clone, PartialEq)]
pub struct PyParenSeq {
    inner: dyckdist::ParenSeq,
}

#[pymethods]
impl PyParenSeq {
    /// Parses `text` as `ascii` (`()[]{}<>`) or `tokens` (`o0 c0 ...`).
    #[new]
    #[pyo3(signature = (text, encoding = "ascii"))]
    fn new(text: &str, encoding: &str) -> PyResult<Self> {
        let enc: Encoding = encoding.parse().map_err(to_py)?;
        let inner = codec::parse(text, enc).map_err(to_py)?;
        Ok(PyParenSeq { inner })
    }

    /// From `(is_open, type)` pairs.
    #[staticmethod]
    fn from_symbols(symbols: Vec<(bool, u32)>) -> Self {
        let syms = symbols
            .into_iter()
            .map(|(open, t)| if open { Symbol::open(t) } else { Symbol::close(t) })
            .collect();
        PyParenSeq {
            inner: dyckdist::ParenSeq::from_symbols(syms),
        }
    }

    fn symbols(&self) -> Vec<(bool, u32)> {
        self.inner.symbols().iter().map(|s| (s.is_open(), s.kind)).collect()
    }

    #[getter]
    fn types(&self) -> u32 {
        self.inner.alphabet().type_count()
    }

    #[pyo3(signature = (encoding = "ascii"))]
    fn format(&self, encoding: &str) -> PyResult<String> {
        let enc: Encoding = encoding.parse().map_err(to_py)?;
        codec::format(&self.inner, enc).map_err(to_py)
    }

    fn is_balanced(&self) -> bool {
        self.inner.is_balanced()
    }

    fn reverse_complement(&self) -> Self {
        PyParenSeq {
            inner: self.inner.reverse_complement(),
        }
    }

    fn slice(&self, i: usize, j: usize) -> PyResult<Self> {
        if i > j || j > self.inner.len() {
            return Err(PyValueError::new_err(format!("bad range {i}..{j}")));
        }
        Ok(PyParenSeq {
            inner: self.inner.slice(i, j),
        })
    }

    /// Prefix heights `H(0..=n)`.
    fn heights(&self) -> Vec<i64> {
        HeightProfile::new(&self.inner).heights
    }

    fn valleys(&self) -> Vec<usize> {
        HeightProfile::new(&self.inner).valleys
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        codec::format_ascii(&self.inner).unwrap_or_else(|_| codec::format_tokens(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("ParenSeq({:?}, types={})", self.__str__(), self.types())
    }
}

fn params(delta: Option<usize>, rho: Option<usize>, strategy: &str, seed: u64) -> PyResult<BdParams> {
    let strategy: Strategy = strategy.parse().map_err(to_py)?;
    Ok(BdParams {
        delta,
        rho,
        strategy,
        seed,
    })
}

/// `min(ed(s), k+1)` via the `O(n + k^5)` algorithm.
#[pyfunction]
fn solve_k5(s: &PyParenSeq, k: usize) -> PyResult<u32> {
    solver::solve_k5(&s.inner, k).map_err(to_py)
}

/// Same, filling large clusters through the interval recursion and the BD kernel.
#[pyfunction]
#[pyo3(signature = (s, k, delta = None, rho = None, strategy = "greedy", seed = 0))]
fn solve_fast(
    s: &PyParenSeq,
    k: usize,
    delta: Option<usize>,
    rho: Option<usize>,
    strategy: &str,
    seed: u64,
) -> PyResult<u32> {
    solver::solve_fast(&s.inner, k, params(delta, rho, strategy, seed)?).map_err(to_py)
}

#[pyfunction]
fn solve_quadratic(s: &PyParenSeq, k: usize) -> u32 {
    solver::solve_quadratic(&s.inner, k)
}

#[pyfunction]
fn dp_cubic(s: &PyParenSeq, k: usize) -> u32 {
    oracle::dp_cubic(&s.inner, k).total()
}

/// Brute force; refuses sequences longer than 14.
#[pyfunction]
fn exhaustive(s: &PyParenSeq, k: usize) -> PyResult<usize> {
    oracle::exhaustive_distance(&s.inner, k).map_err(to_py)
}

/// Runs the solver and returns the distance with its counters.
#[pyfunction]
#[pyo3(signature = (s, k, fast = false, seed = 0))]
fn solve_with_stats<'py>(
    py: Python<'py>,
    s: &PyParenSeq,
    k: usize,
    fast: bool,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = if fast {
        SolveOptions::fast(BdParams {
            seed,
            ..Default::default()
        })
    } else {
        SolveOptions::k5()
    };
    let sol = solver::solve(&s.inner, k, &opts).map_err(to_py)?;
    let st = sol.stats;
    let d = PyDict::new(py);
    d.set_item("distance", sol.distance)?;
    d.set_item("reduced_len", st.reduced_len)?;
    d.set_item("rejected_early", st.rejected_early)?;
    d.set_item("clusters", st.clusters)?;
    d.set_item("trapezoids", st.trapezoids)?;
    d.set_item("extended_total", st.extended_total)?;
    d.set_item("midpoints_total", st.midpoints_total)?;
    d.set_item("valiant_clusters", st.valiant_clusters)?;
    d.set_item("kernel_calls", st.kernel.calls)?;
    d.set_item("kernel_triples", st.kernel.triples)?;
    Ok(d)
}

/// Random Dyck word with planted edits; returns `(seq, edits_applied)`.
#[pyfunction]
#[pyo3(signature = (n, types = 2, edits = 0, seed = 0))]
fn generate(n: usize, types: u32, edits: usize, seed: u64) -> PyResult<(PyParenSeq, usize)> {
    if types == 0 {
        return Err(to_py(Error::EmptyAlphabet));
    }
    let g = dyckdist::gen::generate(n, types, edits, seed);
    Ok((PyParenSeq { inner: g.seq }, g.edits))
}

fn matrix(rows: Vec<Vec<i64>>) -> PyResult<Matrix> {
    Matrix::from_rows(rows).map_err(to_py)
}

/// Exact min-plus product of a column-BD and a row-BD matrix.
#[pyfunction]
#[pyo3(signature = (a, b, delta = None, rho = None, strategy = "greedy", seed = 0))]
fn minplus_bd(
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
    delta: Option<usize>,
    rho: Option<usize>,
    strategy: &str,
    seed: u64,
) -> PyResult<Vec<Vec<i64>>> {
    let a = BdMatrix::column(matrix(a)?).map_err(to_py)?;
    let b = BdMatrix::row(matrix(b)?).map_err(to_py)?;
    let c = minplus::minplus_bd(&a, &b, &params(delta, rho, strategy, seed)?).map_err(to_py)?;
    Ok(c.to_rows())
}

#[pyfunction]
fn minplus_naive(a: Vec<Vec<i64>>, b: Vec<Vec<i64>>) -> PyResult<Vec<Vec<i64>>> {
    let c = oracle::minplus_naive(&matrix(a)?, &matrix(b)?).map_err(to_py)?;
    Ok(c.to_rows())
}

#[pymodule]
fn pydyck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParenSeq>()?;
    m.add_function(wrap_pyfunction!(solve_k5, m)?)?;
    m.add_function(wrap_pyfunction!(solve_fast, m)?)?;
    m.add_function(wrap_pyfunction!(solve_quadratic, m)?)?;
    m.add_function(wrap_pyfunction!(dp_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(exhaustive, m)?)?;
    m.add_function(wrap_pyfunction!(solve_with_stats, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(minplus_bd, m)?)?;
    m.add_function(wrap_pyfunction!(minplus_naive, m)?)?;
    Ok(())
}
