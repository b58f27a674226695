//! Python bindings for `simplex-design`.
//!
//! Exact values cross the boundary as `fractions.Fraction`. Point coordinates
//! may be given as `Fraction`, `int`, `"p/q"` strings or `float`; a point is
//! exact only when none of its coordinates is a float.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyFloat;

use simplex::algebra::{self, SymPoly};
use simplex::construct;
use simplex::io;
use simplex::moments;
use simplex::scalar::parse_exact;
use simplex::verify::{self, BruteForceOptions, DEFAULT_TOLERANCE};
use simplex::{Exact, MultiIndex, PointVector};

fn value_error(e: simplex::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

enum Coord {
    Exact(Exact),
    Float(f64),
}

fn extract_coord(obj: &Bound<'_, PyAny>) -> PyResult<Coord> {
    if let Ok(s) = obj.extract::<String>() {
        return parse_exact(&s).map(Coord::Exact).map_err(value_error);
    }
    if obj.is_instance_of::<PyFloat>() {
        return Ok(Coord::Float(obj.extract()?));
    }
    Ok(Coord::Exact(obj.extract::<Exact>()?))
}

fn extract_point(obj: &Bound<'_, PyAny>) -> PyResult<PointVector> {
    let coords = obj.try_iter()?.map(|c| extract_coord(&c?)).collect::<PyResult<Vec<_>>>()?;
    let point = if coords.iter().all(|c| matches!(c, Coord::Exact(_))) {
        PointVector::exact(
            coords
                .into_iter()
                .map(|c| match c {
                    Coord::Exact(q) => q,
                    Coord::Float(_) => unreachable!(),
                })
                .collect(),
        )
    } else {
        PointVector::float(
            coords
                .iter()
                .map(|c| match c {
                    Coord::Exact(q) => simplex::scalar::exact_to_f64(q),
                    Coord::Float(x) => *x,
                })
                .collect(),
        )
    };
    point.map_err(value_error)
}

fn extract_points(obj: &Bound<'_, PyAny>) -> PyResult<Vec<PointVector>> {
    obj.try_iter()?.map(|p| extract_point(&p?)).collect()
}

/// Permutation group acting on coordinate positions.
#[pyclass(name = "PermGroup", module = "simplex_design", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPermGroup {
    inner: simplex::PermGroup,
}

#[pymethods]
impl PyPermGroup {
    #[staticmethod]
    fn symmetric(d: usize) -> Self {
        PyPermGroup { inner: simplex::PermGroup::symmetric(d) }
    }

    #[staticmethod]
    fn cyclic(d: usize) -> Self {
        PyPermGroup { inner: simplex::PermGroup::cyclic(d) }
    }

    #[staticmethod]
    fn trivial(d: usize) -> Self {
        PyPermGroup { inner: simplex::PermGroup::trivial(d) }
    }

    /// Group generated by 1-indexed image lists, e.g. `[[2, 3, 1]]`.
    #[staticmethod]
    fn generated(d: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        let gens = generators
            .iter()
            .map(|g| simplex::Permutation::from_one_based(g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(value_error)?;
        Ok(PyPermGroup { inner: simplex::PermGroup::generated(d, gens).map_err(value_error)? })
    }

    /// Parses `sym`, `cyc`, `none` or `gen:2,3,1;...`.
    #[staticmethod]
    fn parse(spec: &str, d: usize) -> PyResult<Self> {
        Ok(PyPermGroup { inner: io::parse_group(spec, d).map_err(value_error)? })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn order(&self) -> u128 {
        self.inner.order()
    }

    fn elements(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.inner.elements().map_err(value_error)?.map(|p| p.one_based()).collect())
    }

    fn orbit(&self, k: Vec<u32>) -> PyResult<Vec<Vec<u32>>> {
        let orbit = self.inner.orbit(&MultiIndex::new(k)).map_err(value_error)?;
        Ok(orbit.into_iter().map(|m| m.exponents().to_vec()).collect())
    }

    fn is_invariant(&self, k: Vec<u32>) -> PyResult<bool> {
        self.inner.is_invariant(&MultiIndex::new(k)).map_err(value_error)
    }

    fn coset_representatives(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self.inner.coset_representatives().map_err(value_error)?.iter().map(|p| p.one_based()).collect())
    }

    fn __repr__(&self) -> String {
        format!("PermGroup({})", self.inner.tag())
    }
}

/// A finite point multiset on the simplex, explicit or as a group orbit.
#[pyclass(name = "Design", module = "simplex_design", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDesign {
    inner: simplex::DesignSet,
}

#[pymethods]
impl PyDesign {
    #[staticmethod]
    fn explicit(points: &Bound<'_, PyAny>) -> PyResult<Self> {
        let inner = simplex::DesignSet::explicit(extract_points(points)?).map_err(value_error)?;
        Ok(PyDesign { inner })
    }

    #[staticmethod]
    fn orbit(points: &Bound<'_, PyAny>, group: &PyPermGroup) -> PyResult<Self> {
        let inner =
            simplex::DesignSet::orbit(extract_points(points)?, group.inner.clone()).map_err(value_error)?;
        Ok(PyDesign { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDesign { inner: io::parse_design(text).map_err(value_error)? })
    }

    fn to_json(&self) -> String {
        io::design_to_json(&self.inner).to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Number of points counted with multiplicity.
    fn __len__(&self) -> usize {
        self.inner.size().min(usize::MAX as u128) as usize
    }

    #[getter]
    fn is_proper(&self) -> bool {
        self.inner.is_proper()
    }

    #[getter]
    fn is_exact(&self) -> bool {
        self.inner.is_exact()
    }

    /// Expanded points as floats.
    fn points(&self) -> PyResult<Vec<Vec<f64>>> {
        Ok(self.inner.expand().map_err(value_error)?.iter().map(PointVector::to_f64).collect())
    }

    fn monomial_average(&self, k: Vec<u32>) -> PyResult<f64> {
        Ok(moments::monomial_average(&self.inner, &MultiIndex::new(k)).map_err(value_error)?.to_f64())
    }

    fn __repr__(&self) -> String {
        format!("Design(d={}, size={})", self.inner.dim(), self.inner.size())
    }
}

#[pyclass(name = "VerificationResult", module = "simplex_design", frozen, skip_from_py_object)]
struct PyVerificationResult {
    inner: verify::VerificationResult,
}

#[pymethods]
impl PyVerificationResult {
    #[getter]
    fn is_design(&self) -> bool {
        self.inner.is_design
    }

    #[getter]
    fn classification(&self) -> &'static str {
        self.inner.classification.as_str()
    }

    #[getter]
    fn max_abs_residual(&self) -> f64 {
        self.inner.max_abs_residual
    }

    #[getter]
    fn t(&self) -> u32 {
        self.inner.t
    }

    /// Checked exponent vectors, one per report.
    fn indices(&self) -> Vec<Vec<u32>> {
        self.inner.reports.iter().map(|r| r.index.exponents().to_vec()).collect()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __bool__(&self) -> bool {
        self.inner.is_design
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationResult(t={}, {}, max_abs_residual={:e})",
            self.inner.t,
            self.inner.classification.as_str(),
            self.inner.max_abs_residual
        )
    }
}

#[pyclass(name = "FamilySolution", module = "simplex_design", frozen, get_all)]
struct PyFamilySolution {
    d: usize,
    a: f64,
    b: f64,
    c: f64,
    proper: bool,
    satisfies_restriction: bool,
    orbit_size: u128,
    base_point: Vec<f64>,
}

#[pymethods]
impl PyFamilySolution {
    /// The `S_d` orbit of the base point.
    fn design(&self) -> PyResult<PyDesign> {
        let base = PointVector::float(self.base_point.clone()).map_err(value_error)?;
        let inner = simplex::DesignSet::orbit(vec![base], simplex::PermGroup::symmetric(self.d))
            .map_err(value_error)?;
        Ok(PyDesign { inner })
    }

    fn __repr__(&self) -> String {
        format!("FamilySolution(d={}, a={}, b={}, c={}, proper={})", self.d, self.a, self.b, self.c, self.proper)
    }
}

#[pyfunction]
fn simplex_moment(k: Vec<u32>) -> Exact {
    moments::simplex_moment(&MultiIndex::new(k))
}

#[pyfunction]
fn power_sum_target(n: u64, k: u64) -> Exact {
    moments::power_sum_target(n, k)
}

#[pyfunction]
fn generalized_beta(alphas: Vec<u64>) -> PyResult<Exact> {
    moments::generalized_beta(&alphas).map_err(value_error)
}

#[pyfunction]
#[pyo3(signature = (design, t, tolerance = DEFAULT_TOLERANCE))]
fn verify_brute_force(design: &PyDesign, t: u32, tolerance: f64) -> PyResult<PyVerificationResult> {
    let inner = verify::verify_brute_force(&design.inner, t, BruteForceOptions { tolerance, canonical_only: false })
        .map_err(value_error)?;
    Ok(PyVerificationResult { inner })
}

/// Checks the `S_n`-orbit of `base_points` through power sums only.
#[pyfunction]
#[pyo3(signature = (base_points, t, tolerance = DEFAULT_TOLERANCE))]
fn verify_power_sum_criterion(base_points: &Bound<'_, PyAny>, t: u32, tolerance: f64) -> PyResult<PyVerificationResult> {
    let base = extract_points(base_points)?;
    let inner = verify::verify_power_sum_criterion(&base, t, tolerance).map_err(value_error)?;
    Ok(PyVerificationResult { inner })
}

#[pyfunction]
#[pyo3(signature = (design, t, group, tolerance = DEFAULT_TOLERANCE))]
fn verify_g_restricted(design: &PyDesign, t: u32, group: &PyPermGroup, tolerance: f64) -> PyResult<PyVerificationResult> {
    let inner = verify::verify_g_restricted(&design.inner, t, &group.inner, tolerance).map_err(value_error)?;
    Ok(PyVerificationResult { inner })
}

/// Exact test of `F_G(candidate) ∈ span{F_G(k) : k in basis}` modulo `Σx = 1`.
///
/// Returns `(in_span, coefficients)`; coefficients are `None` outside the span.
#[pyfunction]
fn in_span(group: &PyPermGroup, candidate: Vec<u32>, basis: Vec<Vec<u32>>) -> PyResult<(bool, Option<Vec<Exact>>)> {
    let g = &group.inner;
    let cand = algebra::symmetrized_monomial(g, &MultiIndex::new(candidate)).map_err(value_error)?;
    let polys: Vec<SymPoly> = basis
        .into_iter()
        .map(|k| algebra::symmetrized_monomial(g, &MultiIndex::new(k)))
        .collect::<Result<_, _>>()
        .map_err(value_error)?;
    let r = algebra::in_span(&cand, &polys).map_err(value_error)?;
    Ok((r.in_span, r.coefficients))
}

/// Span test against the constant and `F_G(j, 0, ..., 0)` for `j ≤ t`.
#[pyfunction]
fn in_power_sum_span(group: &PyPermGroup, candidate: Vec<u32>, t: u32) -> PyResult<bool> {
    let basis = algebra::power_sum_basis(&group.inner, t).map_err(value_error)?;
    let cand = algebra::symmetrized_monomial(&group.inner, &MultiIndex::new(candidate)).map_err(value_error)?;
    Ok(algebra::in_span(&cand, &basis).map_err(value_error)?.in_span)
}

#[pyfunction]
fn triangle_cubic_roots() -> PyResult<Vec<f64>> {
    Ok(construct::triangle_cubic_roots().map_err(value_error)?.to_f64())
}

#[pyfunction]
fn solve_three_value_family(d: usize) -> PyResult<Vec<PyFamilySolution>> {
    Ok(construct::solve_three_value_family(d)
        .map_err(value_error)?
        .into_iter()
        .map(|s| PyFamilySolution {
            d: s.d,
            a: s.a,
            b: s.b,
            c: s.c,
            proper: s.proper,
            satisfies_restriction: s.satisfies_restriction,
            orbit_size: s.orbit_size,
            base_point: s.base_point.to_f64(),
        })
        .collect())
}

/// `(a, b)` pairs of the uniform-excess 2-design family.
#[pyfunction]
fn uniform_excess_family(d: usize) -> PyResult<Vec<(f64, f64)>> {
    Ok(construct::uniform_excess_family(d, 2).map_err(value_error)?.iter().map(|s| (s.a, s.b)).collect())
}

#[pyfunction]
#[pyo3(signature = (decimals = None))]
fn tables_csv(decimals: Option<usize>) -> PyResult<String> {
    Ok(construct::tables_csv(&construct::table_rows().map_err(value_error)?, decimals))
}

#[pymodule]
fn simplex_design(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PyDesign>()?;
    m.add_class::<PyVerificationResult>()?;
    m.add_class::<PyFamilySolution>()?;
    m.add_function(wrap_pyfunction!(simplex_moment, m)?)?;
    m.add_function(wrap_pyfunction!(power_sum_target, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_beta, m)?)?;
    m.add_function(wrap_pyfunction!(verify_brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(verify_power_sum_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(verify_g_restricted, m)?)?;
    m.add_function(wrap_pyfunction!(in_span, m)?)?;
    m.add_function(wrap_pyfunction!(in_power_sum_span, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_cubic_roots, m)?)?;
    m.add_function(wrap_pyfunction!(solve_three_value_family, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_excess_family, m)?)?;
    m.add_function(wrap_pyfunction!(tables_csv, m)?)?;
    Ok(())
}
