//! Python bindings: meshes, smooth-space analysis, basis generation, and
//! verification, all backed by the exact rational implementation.
//!
//! Structured reports cross the boundary as JSON strings so Python sees the
//! same byte-identical documents the CLI prints.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use c1glue::basisgen::BasisSet;
use c1glue::report::{
    analyze_report, basis_report, run_verification, to_json_pretty, VerifyOptions,
};
use c1glue::verify::{dimension_oracle as oracle_dim, sample_surface};
use c1glue::{
    example_mesh, Error, ErrorCategory, MeshPair, ScalingMode, TraceNormalSpace, EXAMPLE_NAMES,
};

fn to_py_err(e: Error) -> PyErr {
    match e.category() {
        ErrorCategory::Parse | ErrorCategory::Validation => PyValueError::new_err(e.to_string()),
        ErrorCategory::Computation => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_scaling(name: &str) -> PyResult<ScalingMode> {
    match name {
        "paper" | "weighted" => Ok(ScalingMode::Weighted),
        "unit" => Ok(ScalingMode::Unit),
        other => Err(PyValueError::new_err(format!(
            "unknown scaling {other:?}; expected paper or unit"
        ))),
    }
}

/// A validated two-element mesh.
#[pyclass(frozen, module = "c1glue_py")]
struct Mesh {
    inner: MeshPair,
}

#[pymethods]
impl Mesh {
    /// Parses a mesh from its JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = MeshPair::from_json_str(text).map_err(to_py_err)?;
        inner.validate().map_err(to_py_err)?;
        Ok(Mesh { inner })
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.inner.to_json_value())
            .expect("mesh JSON serializes")
    }

    fn __repr__(&self) -> String {
        format!(
            "Mesh({} + {})",
            self.inner.elements[0].kind.as_str(),
            self.inner.elements[1].kind.as_str()
        )
    }
}

/// The smooth trace/normal space of one mesh at one degree.
#[pyclass(frozen, module = "c1glue_py")]
struct Space {
    mesh: MeshPair,
    inner: TraceNormalSpace,
}

#[pymethods]
impl Space {
    #[new]
    fn new(mesh: &Mesh, degree: usize) -> PyResult<Self> {
        let inner = TraceNormalSpace::build(&mesh.inner, degree).map_err(to_py_err)?;
        Ok(Space {
            mesh: mesh.inner.clone(),
            inner,
        })
    }

    fn case(&self) -> String {
        self.inner.branch.case_label().to_string()
    }

    fn branch(&self) -> String {
        self.inner.branch.branch_name().to_string()
    }

    fn edge(&self) -> String {
        self.inner.edge.label().to_string()
    }

    fn dimension(&self) -> usize {
        self.inner.dimensions().total
    }

    fn interface_dimension(&self) -> usize {
        self.inner.dimensions().interface
    }

    fn analyze_json(&self) -> String {
        to_json_pretty(&analyze_report(&self.inner))
    }

    /// Generates the basis; `scaling` is "paper" or "unit".
    #[pyo3(signature = (scaling = "paper", orthogonalize_mu = true))]
    fn basis(&self, scaling: &str, orthogonalize_mu: bool) -> PyResult<Basis> {
        let mode = parse_scaling(scaling)?;
        let set = BasisSet::generate(&self.mesh, &self.inner, mode, orthogonalize_mu)
            .map_err(to_py_err)?;
        Ok(Basis {
            mesh: self.mesh.clone(),
            space: self.inner.clone(),
            set,
            scaling: mode,
            orthogonalized: orthogonalize_mu,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Space(degree={}, case={}, branch={}, dim={})",
            self.inner.degree,
            self.case(),
            self.branch(),
            self.dimension()
        )
    }
}

/// A generated basis of the smooth space.
#[pyclass(frozen, module = "c1glue_py")]
struct Basis {
    mesh: MeshPair,
    space: TraceNormalSpace,
    set: BasisSet,
    scaling: ScalingMode,
    orthogonalized: bool,
}

#[pymethods]
impl Basis {
    fn __len__(&self) -> usize {
        self.set.functions.len()
    }

    fn tags(&self) -> Vec<String> {
        self.set.functions.iter().map(|f| f.tag.clone()).collect()
    }

    fn condition_number(&self) -> f64 {
        c1glue::condition_number(&self.set.collocation.matrix)
    }

    /// Both coefficient nets of one function as exact rational strings.
    fn net(&self, tag: &str) -> PyResult<(Vec<String>, Vec<String>)> {
        let f = self.find(tag)?;
        let strings =
            |net: &[c1glue::Rational]| net.iter().map(c1glue::rational_string).collect();
        Ok((strings(&f.nets[0]), strings(&f.nets[1])))
    }

    #[pyo3(signature = (with_float = false))]
    fn report_json(&self, with_float: bool) -> String {
        to_json_pretty(&basis_report(
            &self.space,
            &self.set,
            self.scaling,
            self.orthogonalized,
            with_float,
        ))
    }

    /// Runs the default verification battery and returns its JSON report.
    fn verify_json(&self) -> PyResult<String> {
        let report = run_verification(
            &self.mesh,
            &self.space,
            &self.set,
            &VerifyOptions::default(),
        )
        .map_err(to_py_err)?;
        Ok(to_json_pretty(&report))
    }

    /// Samples one function on a uniform reference grid; rows are
    /// `(elem, u, v, x, y, value)`.
    #[pyo3(signature = (tag, grid = 10))]
    fn sample(&self, tag: &str, grid: usize) -> PyResult<Vec<(usize, f64, f64, f64, f64, f64)>> {
        let f = self.find(tag)?;
        let rows =
            sample_surface(&self.mesh, self.set.degree, &f.nets, grid).map_err(to_py_err)?;
        Ok(rows
            .into_iter()
            .map(|r| (r.elem, r.u, r.v, r.x, r.y, r.value))
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Basis(degree={}, functions={})",
            self.set.degree,
            self.set.functions.len()
        )
    }
}

impl Basis {
    fn find(&self, tag: &str) -> PyResult<&c1glue::IsoFunction> {
        self.set
            .functions
            .iter()
            .find(|f| f.tag == tag)
            .ok_or_else(|| PyValueError::new_err(format!("no basis function tagged {tag:?}")))
    }
}

/// Loads one of the bundled example meshes.
#[pyfunction]
fn example(name: &str) -> PyResult<Mesh> {
    let inner = example_mesh(name).map_err(to_py_err)?;
    Ok(Mesh { inner })
}

/// Names of all bundled example meshes.
#[pyfunction]
fn example_names() -> Vec<String> {
    EXAMPLE_NAMES.iter().map(|s| s.to_string()).collect()
}

/// Independent dimension count from the exact constraint nullspace.
#[pyfunction]
fn dimension_oracle(mesh: &Mesh, degree: usize) -> PyResult<usize> {
    oracle_dim(&mesh.inner, degree).map_err(to_py_err)
}

#[pymodule]
fn c1glue_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Mesh>()?;
    m.add_class::<Space>()?;
    m.add_class::<Basis>()?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(example_names, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_oracle, m)?)?;
    Ok(())
}
