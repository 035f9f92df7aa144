//! Python bindings. Matrices cross the boundary as nested lists of
//! complex numbers in row-major order; every constructor revalidates, so
//! a Python caller cannot build an inconsistent value. Domain errors
//! surface as ValueError with the library's own message.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use hyperchron::breaking::{
    embed_minkowski, is_embedded, segre_factor, twistor_pseudo_norm, BrokenEvent, Hypertwistor,
};
use hyperchron::chronometry::{
    causal_classify, chronometric_form, event_to_minkowski, minkowski_to_event, mixed_chronometric,
    proper_time,
};
use hyperchron::jsonio::{event_from_json, event_to_json};
use hyperchron::mechanics::{
    mass, shift_origin, spin_covector, spin_magnitude, transform_system, AngularMomentum,
    ElementarySystem, Momentum,
};
use hyperchron::projection::{falsify_non_psd, project_candidate, CandidateMap};
use hyperchron::suites::{
    run_cone, run_dimension, run_invariance, run_killing, run_mechanics, run_projection,
    SuiteReport,
};
use hyperchron::symmetry::{apply_poincare, random_sl, LorentzElement, PoincareElement};
use hyperchron::Tolerance;
use nalgebra::{DMatrix, DVector};

fn err<T>(e: impl std::fmt::Display) -> PyResult<T> {
    Err(PyValueError::new_err(e.to_string()))
}

fn matrix_from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<DMatrix<Complex64>> {
    let nrows = rows.len();
    if nrows == 0 {
        return err("matrix needs at least one row");
    }
    let ncols = rows[0].len();
    if ncols == 0 || rows.iter().any(|row| row.len() != ncols) {
        return err("matrix rows must be nonempty and of equal length");
    }
    Ok(DMatrix::from_fn(nrows, ncols, |i, j| rows[i][j]))
}

fn rows_from_matrix(m: &DMatrix<Complex64>) -> Vec<Vec<Complex64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn class_dict<'py>(
    py: Python<'py>,
    class: &hyperchron::chronometry::CausalClass,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("rank", class.rank)?;
    d.set_item("p", class.plus)?;
    d.set_item("q", class.minus)?;
    d.set_item("label", class.label.as_str())?;
    Ok(d)
}

fn report_dict<'py>(py: Python<'py>, report: &SuiteReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("suite", &report.suite)?;
    if let Some(r) = report.r {
        d.set_item("r", r)?;
    }
    if let Some(n) = report.n {
        d.set_item("n", n)?;
    }
    d.set_item("trials", report.trials)?;
    d.set_item("seed", report.seed)?;
    d.set_item("max_violation", report.max_violation)?;
    d.set_item("pass", report.pass)?;
    if let Some(c) = &report.counterexample {
        d.set_item("counterexample", c)?;
    }
    Ok(d)
}

/// Weakly Hermitian event of an r x r hyperspin space-time.
#[pyclass(name = "Event", frozen)]
struct PyEvent {
    inner: hyperchron::chronometry::Event,
}

#[pymethods]
impl PyEvent {
    #[new]
    fn new(entries: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let m = matrix_from_rows(entries)?;
        match hyperchron::chronometry::Event::new(m, &Tolerance::default()) {
            Ok(inner) => Ok(PyEvent { inner }),
            Err(e) => err(e),
        }
    }

    #[staticmethod]
    fn zero(r: usize) -> PyResult<Self> {
        if r == 0 {
            return err("dimension must be positive");
        }
        Ok(PyEvent { inner: hyperchron::chronometry::Event::zero(r) })
    }

    /// Encode a Minkowski four-vector as a 2 x 2 event.
    #[staticmethod]
    fn from_minkowski(t: f64, x: f64, y: f64, z: f64) -> Self {
        PyEvent { inner: minkowski_to_event(t, x, y, z) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match event_from_json(text, &Tolerance::default()) {
            Ok(inner) => Ok(PyEvent { inner }),
            Err(e) => err(e),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn entries(&self) -> Vec<Vec<Complex64>> {
        rows_from_matrix(self.inner.matrix())
    }

    /// Chronometric form r! * det.
    fn delta(&self) -> f64 {
        chronometric_form(&self.inner)
    }

    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        class_dict(py, &causal_classify(&self.inner, &Tolerance::default()))
    }

    fn to_minkowski(&self) -> PyResult<(f64, f64, f64, f64)> {
        event_to_minkowski(&self.inner).or_else(err)
    }

    fn to_json(&self) -> String {
        event_to_json(&self.inner)
    }

    fn proper_time_to(&self, other: &PyEvent) -> PyResult<f64> {
        proper_time(&self.inner, &other.inner, &Tolerance::default()).or_else(err)
    }

    fn add(&self, other: &PyEvent) -> PyResult<Self> {
        if self.inner.dim() != other.inner.dim() {
            return err("event dimensions differ");
        }
        Ok(PyEvent { inner: &self.inner + &other.inner })
    }

    fn sub(&self, other: &PyEvent) -> PyResult<Self> {
        if self.inner.dim() != other.inner.dim() {
            return err("event dimensions differ");
        }
        Ok(PyEvent { inner: &self.inner - &other.inner })
    }

    fn scale(&self, c: f64) -> Self {
        PyEvent { inner: self.inner.scale(c) }
    }

    fn __repr__(&self) -> String {
        format!("Event(r={}, delta={:.6e})", self.inner.dim(), chronometric_form(&self.inner))
    }
}

/// Inhomogeneous symmetry x -> lambda x lambda^dagger + beta.
#[pyclass(name = "PoincareElement", frozen)]
struct PyPoincareElement {
    inner: PoincareElement,
}

#[pymethods]
impl PyPoincareElement {
    #[new]
    fn new(lambda: Vec<Vec<Complex64>>, beta: &PyEvent) -> PyResult<Self> {
        let m = matrix_from_rows(lambda)?;
        let lambda = match LorentzElement::new(m, &Tolerance::default()) {
            Ok(l) => l,
            Err(e) => return err(e),
        };
        match PoincareElement::new(lambda, beta.inner.clone()) {
            Ok(inner) => Ok(PyPoincareElement { inner }),
            Err(e) => err(e),
        }
    }

    /// Seeded random element: well-conditioned unimodular part, zero shift.
    #[staticmethod]
    fn sample(r: usize, seed: u64) -> PyResult<Self> {
        if r < 2 {
            return err("dimension must be at least 2");
        }
        let lambda = match random_sl(r, seed) {
            Ok(l) => l,
            Err(e) => return err(e),
        };
        let beta = hyperchron::chronometry::Event::zero(r);
        match PoincareElement::new(lambda, beta) {
            Ok(inner) => Ok(PyPoincareElement { inner }),
            Err(e) => err(e),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn lambda_entries(&self) -> Vec<Vec<Complex64>> {
        rows_from_matrix(self.inner.lambda.matrix())
    }

    fn beta(&self) -> PyEvent {
        PyEvent { inner: self.inner.beta.clone() }
    }

    fn apply(&self, x: &PyEvent) -> PyResult<PyEvent> {
        match apply_poincare(&self.inner, &x.inner) {
            Ok(inner) => Ok(PyEvent { inner }),
            Err(e) => err(e),
        }
    }

    fn compose(&self, other: &PyPoincareElement) -> PyResult<Self> {
        match self.inner.compose(&other.inner) {
            Ok(inner) => Ok(PyPoincareElement { inner }),
            Err(e) => err(e),
        }
    }
}

/// Momentum plus angular momentum of a free system.
#[pyclass(name = "ElementarySystem", frozen)]
struct PyElementarySystem {
    inner: ElementarySystem,
}

#[pymethods]
impl PyElementarySystem {
    #[new]
    fn new(p: &PyEvent, l: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let lm = matrix_from_rows(l)?;
        let angular = match AngularMomentum::new(lm, &Tolerance::default()) {
            Ok(a) => a,
            Err(e) => return err(e),
        };
        match ElementarySystem::new(Momentum::new(p.inner.clone()), angular) {
            Ok(inner) => Ok(PyElementarySystem { inner }),
            Err(e) => err(e),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn momentum(&self) -> PyEvent {
        PyEvent { inner: self.inner.momentum().event().clone() }
    }

    fn angular_entries(&self) -> Vec<Vec<Complex64>> {
        rows_from_matrix(self.inner.angular_momentum().matrix())
    }

    fn mass(&self) -> PyResult<f64> {
        mass(self.inner.momentum()).or_else(err)
    }

    fn spin(&self) -> PyResult<f64> {
        spin_magnitude(&self.inner).or_else(err)
    }

    fn spin_entries(&self) -> PyResult<Vec<Vec<Complex64>>> {
        match spin_covector(&self.inner) {
            Ok(s) => Ok(rows_from_matrix(s.matrix())),
            Err(e) => err(e),
        }
    }

    /// Move the origin by beta; the spin magnitude is unchanged.
    fn shift(&self, beta: &PyEvent) -> PyResult<Self> {
        match shift_origin(&self.inner, &beta.inner) {
            Ok(inner) => Ok(PyElementarySystem { inner }),
            Err(e) => err(e),
        }
    }

    fn transform(&self, lambda: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let m = matrix_from_rows(lambda)?;
        let g = match LorentzElement::new(m, &Tolerance::default()) {
            Ok(l) => l,
            Err(e) => return err(e),
        };
        match transform_system(&self.inner, &g) {
            Ok(inner) => Ok(PyElementarySystem { inner }),
            Err(e) => err(e),
        }
    }
}

/// Event of an r = 2n space-time carrying its block split.
#[pyclass(name = "BrokenEvent", frozen)]
struct PyBrokenEvent {
    inner: BrokenEvent,
}

#[pymethods]
impl PyBrokenEvent {
    #[new]
    fn new(entries: Vec<Vec<Complex64>>, n: usize) -> PyResult<Self> {
        let m = matrix_from_rows(entries)?;
        match BrokenEvent::new(m, n, &Tolerance::default()) {
            Ok(inner) => Ok(PyBrokenEvent { inner }),
            Err(e) => err(e),
        }
    }

    /// Diagonal embedding x tensor identity of a 2 x 2 event.
    #[staticmethod]
    fn embed(x: &PyEvent, n: usize) -> PyResult<Self> {
        match embed_minkowski(&x.inner, n) {
            Ok(inner) => Ok(PyBrokenEvent { inner }),
            Err(e) => err(e),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.internal_dim()
    }

    fn entries(&self) -> Vec<Vec<Complex64>> {
        rows_from_matrix(self.inner.matrix())
    }

    fn event(&self) -> PyEvent {
        PyEvent { inner: self.inner.event().clone() }
    }

    /// The 2 x 2 factor when the event lies on the embedded subspace,
    /// None otherwise.
    #[pyo3(signature = (tol=1e-9))]
    fn recover(&self, tol: f64) -> Option<PyEvent> {
        is_embedded(&self.inner, tol).map(|inner| PyEvent { inner })
    }
}

/// Internal state: Hermitian, unit trace, PSD enforced at projection time
/// only when asked.
#[pyclass(name = "DensityMatrix", frozen)]
struct PyDensityMatrix {
    inner: CandidateMap,
    positive: bool,
}

#[pymethods]
impl PyDensityMatrix {
    #[new]
    fn new(entries: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let m = matrix_from_rows(entries)?;
        let tol = Tolerance::default();
        let positive = hyperchron::projection::DensityMatrix::new(m.clone(), &tol).is_ok();
        match CandidateMap::new(m, &tol) {
            Ok(inner) => Ok(PyDensityMatrix { inner, positive }),
            Err(e) => err(e),
        }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.internal_dim()
    }

    #[getter]
    fn positive(&self) -> bool {
        self.positive
    }

    fn entries(&self) -> Vec<Vec<Complex64>> {
        rows_from_matrix(self.inner.matrix())
    }

    /// Project a composite event down to a 2 x 2 event through this state.
    fn project(&self, x: &PyBrokenEvent) -> PyResult<PyEvent> {
        match project_candidate(&self.inner, &x.inner) {
            Ok(inner) => Ok(PyEvent { inner }),
            Err(e) => err(e),
        }
    }

    /// For a non-PSD state: a future-null composite event whose image is
    /// past-pointing. None when the state is PSD.
    fn falsify<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        let tol = Tolerance::default();
        match falsify_non_psd(&self.inner, &tol) {
            None => Ok(None),
            Some(f) => {
                let d = PyDict::new(py);
                d.set_item("input", PyBrokenEvent { inner: f.input })?;
                d.set_item("image", PyEvent { inner: f.image })?;
                d.set_item("input_label", f.input_class.label.as_str())?;
                d.set_item("image_label", f.image_class.label.as_str())?;
                Ok(Some(d))
            }
        }
    }
}

/// Mixed chronometric form on a list of equal-dimension events.
#[pyfunction]
fn mixed_form(slots: Vec<PyRef<PyEvent>>) -> PyResult<f64> {
    let events: Vec<hyperchron::chronometry::Event> =
        slots.iter().map(|s| s.inner.clone()).collect();
    mixed_chronometric(&events).or_else(err)
}

/// Pseudo-norm of the twistor (omega, pi).
#[pyfunction]
fn twistor_norm(omega: Vec<Complex64>, pi: Vec<Complex64>) -> PyResult<f64> {
    let z = match Hypertwistor::new(DVector::from_vec(omega), DVector::from_vec(pi)) {
        Ok(z) => z,
        Err(e) => return err(e),
    };
    Ok(twistor_pseudo_norm(&z))
}

/// Split a rank-one matrix into its outer-product factors, None when the
/// matrix has higher rank.
#[pyfunction]
fn rank_one_factors(
    z: Vec<Vec<Complex64>>,
) -> PyResult<Option<(Vec<Complex64>, Vec<Complex64>)>> {
    let m = matrix_from_rows(z)?;
    match segre_factor(&m, &Tolerance::default()) {
        Ok(None) => Ok(None),
        Ok(Some((left, right))) => {
            Ok(Some((left.iter().copied().collect(), right.iter().copied().collect())))
        }
        Err(e) => err(e),
    }
}

/// Run a named verification suite and return its report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, r=2, n=2, trials=200, seed=0))]
fn run_suite<'py>(
    py: Python<'py>,
    suite: &str,
    r: usize,
    n: usize,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let report = match suite {
        "invariance" => run_invariance(r, trials, seed),
        "killing" => run_killing(r, trials, seed),
        "cone" => run_cone(r, trials, seed),
        "mechanics" => run_mechanics(r, trials, seed),
        "dimension" => run_dimension(r, trials, seed),
        "projection" => run_projection(n, trials, seed, None).0,
        other => return err(format!("unknown suite {other:?}")),
    };
    report_dict(py, &report)
}

#[pymodule]
fn hyperchron_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEvent>()?;
    m.add_class::<PyPoincareElement>()?;
    m.add_class::<PyElementarySystem>()?;
    m.add_class::<PyBrokenEvent>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_function(wrap_pyfunction!(mixed_form, m)?)?;
    m.add_function(wrap_pyfunction!(twistor_norm, m)?)?;
    m.add_function(wrap_pyfunction!(rank_one_factors, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
