//! Python bindings. Composite results cross the boundary as JSON strings in
//! the same schema as the command-line tool.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use superspin_core::checks;
use superspin_core::exactnum::{self, Sign};
use superspin_core::gradedstruct::{graded_tensor, isotypic_type, m_standard, q_standard, BlockType};
use superspin_core::seminormal::{self, AlgebraTag};
use superspin_core::shiftedcomb::{self, GraphSource};

fn value_error<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(value_error)
}

/// Exact element of a multi-quadratic field.
#[pyclass(name = "SqrtNumber", module = "superspin", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySqrtNumber(exactnum::SqrtNumber);

#[pymethods]
impl PySqrtNumber {
    #[new]
    #[pyo3(signature = (num, den = 1))]
    fn new(num: i64, den: i64) -> PyResult<Self> {
        if den == 0 {
            return Err(PyZeroDivisionError::new_err("zero denominator"));
        }
        Ok(Self(exactnum::SqrtNumber::from_ratio(num, den)))
    }

    /// Square root of the nonnegative rational `num / den`.
    #[staticmethod]
    #[pyo3(signature = (num, den = 1))]
    fn sqrt(num: i64, den: i64) -> PyResult<Self> {
        if den == 0 {
            return Err(PyZeroDivisionError::new_err("zero denominator"));
        }
        let q = exactnum::parse_rational(&format!("{num}/{den}")).map_err(value_error)?;
        exactnum::SqrtNumber::sqrt_rational(&q).map(Self).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(value_error)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }

    fn __add__(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_div(&other.0).map(Self).map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Self).map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    /// -1, 0 or 1, decided exactly.
    fn sign(&self) -> i8 {
        match self.0.sign() {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("SqrtNumber({})", self.0)
    }
}

/// A strict partition with its shifted tableaux and spectrum vectors.
#[pyclass(name = "StrictPartition", module = "superspin", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyStrictPartition(shiftedcomb::StrictPartition);

#[pymethods]
impl PyStrictPartition {
    /// Accepts `"3,1"` or a list of parts.
    #[new]
    fn new(spec: &Bound<'_, PyAny>) -> PyResult<Self> {
        let p = if let Ok(s) = spec.extract::<String>() {
            shiftedcomb::StrictPartition::parse(&s)
        } else {
            shiftedcomb::StrictPartition::new(spec.extract::<Vec<usize>>()?)
        };
        p.map(Self).map_err(value_error)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    /// `"M"` or `"Q"`, from the parity of `n - len`.
    #[getter]
    fn vertex_type(&self) -> String {
        self.0.parity_type().to_string()
    }

    fn tableaux(&self) -> Vec<Vec<Vec<usize>>> {
        shiftedcomb::standard_tableaux(&self.0).into_iter().map(|t| t.rows).collect()
    }

    /// `(b, a)` for every tableau, row-reading tableau first.
    fn spectrum(&self) -> Vec<(Vec<usize>, Vec<u64>)> {
        shiftedcomb::standard_tableaux(&self.0)
            .iter()
            .map(|t| {
                let v = shiftedcomb::spectrum_vector(t);
                (v.b, v.a)
            })
            .collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("StrictPartition{}", self.0)
    }
}

/// A seminormal-form representation.
#[pyclass(name = "GradedRep", module = "superspin", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGradedRep(seminormal::GradedRep);

#[pymethods]
impl PyGradedRep {
    /// Build the representation of shape `partition`, over the Clifford
    /// tensor algebra when `tensor` is true.
    #[staticmethod]
    #[pyo3(signature = (partition, tensor = false))]
    fn build(py: Python<'_>, partition: &PyStrictPartition, tensor: bool) -> PyResult<Self> {
        let alpha = partition.0.clone();
        py.detach(|| {
            if tensor {
                seminormal::build_rep_clifford_tensor(&alpha)
            } else {
                seminormal::build_rep_plain(&alpha)
            }
        })
        .map(Self)
        .map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(value_error)
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim
    }

    #[getter]
    fn shape(&self) -> Vec<usize> {
        self.0.shape.parts().to_vec()
    }

    #[getter]
    fn algebra(&self) -> String {
        self.0.algebra.to_string()
    }

    #[getter]
    fn generator_names(&self) -> Vec<String> {
        self.0.generators.iter().map(|g| g.name.clone()).collect()
    }

    /// `(all_pass, failing identities)`.
    fn verify(&self, py: Python<'_>) -> PyResult<(bool, Vec<String>)> {
        let report = py.detach(|| seminormal::verify_relations(&self.0)).map_err(value_error)?;
        let failed = report.failures().map(|f| f.identity.clone()).collect();
        Ok((report.all_pass, failed))
    }

    fn spectrum(&self) -> PyResult<Vec<Vec<u64>>> {
        seminormal::spectrum_of(&self.0).map_err(value_error)
    }

    /// `(block type, number of simple constituents)`, e.g. `("M(2,2)", 4)`.
    fn classify(&self, py: Python<'_>) -> PyResult<(String, usize)> {
        let c = py.detach(|| seminormal::classify_rep(&self.0)).map_err(value_error)?;
        Ok((c.block_type.to_string(), c.copies))
    }

    /// Copy with one entry of generator `index` negated.
    fn with_flipped_entry(&self, index: usize) -> PyResult<Self> {
        if index >= self.0.generators.len() {
            return Err(PyValueError::new_err(format!("generator index {index} out of range")));
        }
        Ok(Self(self.0.with_flipped_entry(index)))
    }

    fn __repr__(&self) -> String {
        format!("GradedRep({} {}, dim {})", self.0.algebra, self.0.shape, self.0.dim)
    }
}

#[pyfunction]
fn strict_partitions(n: usize) -> Vec<Vec<usize>> {
    shiftedcomb::strict_partitions(n).into_iter().map(Vec::from).collect()
}

#[pyfunction]
fn odd_partitions(n: usize) -> Vec<Vec<usize>> {
    shiftedcomb::odd_partitions(n)
}

/// Branching graph up to level `n`: JSON, or DOT when `dot` is set.
#[pyfunction]
#[pyo3(signature = (n, dot = false, doubled = false, from_reps = false))]
fn branching_graph(py: Python<'_>, n: usize, dot: bool, doubled: bool, from_reps: bool) -> PyResult<String> {
    let source = if from_reps { GraphSource::FromReps } else { GraphSource::Combinatorial };
    let g = py.detach(|| shiftedcomb::schur_branching_graph(n, source)).map_err(value_error)?;
    if dot {
        Ok(g.to_dot(doubled))
    } else {
        to_json(&g)
    }
}

/// Brute-force block decomposition of the regular representation, as JSON.
#[pyfunction]
#[pyo3(signature = (n, tensor = false))]
fn decompose_regular(py: Python<'_>, n: usize, tensor: bool) -> PyResult<String> {
    let tag = if tensor { AlgebraTag::CliffordTensor } else { AlgebraTag::Spin };
    let report = py.detach(|| seminormal::regular_decompose(tag, n)).map_err(value_error)?;
    to_json(&report)
}

/// Type of the graded tensor product of two simple algebras given as
/// `("M", r, s)` or `("Q", r, 0)`.
#[pyfunction]
fn tensor_type(a: (String, usize, usize), b: (String, usize, usize)) -> PyResult<String> {
    let module = |(kind, r, s): &(String, usize, usize)| match kind.as_str() {
        "M" => Ok(m_standard(*r, *s)),
        "Q" => Ok(q_standard(*r)),
        other => Err(PyValueError::new_err(format!("unknown block kind {other:?}"))),
    };
    let t: BlockType = isotypic_type(&graded_tensor(&module(&a)?, &module(&b)?)).map_err(value_error)?.0;
    Ok(t.to_string())
}

/// Acceptance checks up to rank `max_n`, as JSON.
#[pyfunction]
#[pyo3(signature = (max_n = 3))]
fn check_all(py: Python<'_>, max_n: usize) -> PyResult<String> {
    if max_n > checks::MAX_CHECK_RANK {
        return Err(PyValueError::new_err(format!("max_n must be at most {}", checks::MAX_CHECK_RANK)));
    }
    let mut report = py.detach(|| checks::check_all(max_n));
    report.criteria.iter_mut().for_each(|c| c.seconds = 0.0);
    to_json(&report)
}

#[pymodule]
fn superspin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("SCHEMA", superspin_core::SCHEMA)?;
    m.add_class::<PySqrtNumber>()?;
    m.add_class::<PyStrictPartition>()?;
    m.add_class::<PyGradedRep>()?;
    m.add_function(wrap_pyfunction!(strict_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(odd_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(branching_graph, m)?)?;
    m.add_function(wrap_pyfunction!(decompose_regular, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_type, m)?)?;
    m.add_function(wrap_pyfunction!(check_all, m)?)?;
    Ok(())
}
