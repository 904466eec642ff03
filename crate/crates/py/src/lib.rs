//! Python bindings: catalog algebras, their elements and the formal group
//! law operations.

use std::sync::Arc;

use orient::algebra::json::{element_strings, from_json, to_json};
use orient::algebra::{Element as CoreElement, GradedFreeAlgebra};
use orient::catalog;
use orient::cli::{build, Expression, Space};
use orient::fgl::{self, FormalGroupLaw, Specialization, Theory, Truncated};
use orient::symbolic::{CoefficientPoly, Variable};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn theory(name: &str) -> PyResult<Theory> {
    match name {
        "universal" | "chow" | "ktheory" | "ktheory+" => Ok(Theory::parse(name)),
        other => Err(err(format!("unknown theory '{other}'"))),
    }
}

fn specialization(name: &str) -> PyResult<Specialization> {
    match name {
        "identity" => Ok(Specialization::identity()),
        "chow" => Ok(Specialization::chow()),
        "ktheory" => Ok(Specialization::ktheory()),
        "ktheory+" => Ok(Specialization::ktheory_positive()),
        other => match other.strip_prefix("b=").and_then(|v| v.parse().ok()) {
            Some(v) => Ok(Specialization::beta_value(v)),
            None => Err(err(format!("unknown specialization '{other}'"))),
        },
    }
}

/// A finite free graded algebra given by structure constants.
#[pyclass(module = "orient", frozen)]
struct Algebra {
    inner: Arc<GradedFreeAlgebra>,
}

#[pymethods]
impl Algebra {
    /// Builds a catalog space such as `p3`, `dp4`, `blc-p3`, `blv-p5`, `m0n5`.
    #[staticmethod]
    #[pyo3(signature = (space, theory_name = "universal", allow_large = false))]
    fn build(space: &str, theory_name: &str, allow_large: bool) -> PyResult<Self> {
        let sp: Space = space.parse().map_err(err)?;
        let built = build(sp, &theory(theory_name)?, allow_large).map_err(err)?;
        Ok(Algebra { inner: built.algebra })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        Ok(Algebra {
            inner: Arc::new(from_json(&v).map_err(err)?),
        })
    }

    fn to_json(&self) -> String {
        to_json(&self.inner).to_string()
    }

    fn rank(&self) -> usize {
        self.inner.total_rank()
    }

    fn rank_vector(&self) -> Vec<usize> {
        self.inner.rank_vector()
    }

    fn basis(&self) -> Vec<(String, i32)> {
        self.inner.basis().iter().map(|b| (b.label.clone(), b.degree)).collect()
    }

    fn names(&self) -> Vec<String> {
        self.inner.names().iter().map(|(n, _)| n.clone()).collect()
    }

    fn theory(&self) -> String {
        self.inner.law().theory().name().to_string()
    }

    /// A named class, or `None`.
    fn class_(&self, name: &str) -> Option<Element> {
        self.inner.named(name).map(|e| self.wrap(e.clone()))
    }

    fn one(&self) -> Element {
        self.wrap(self.inner.one())
    }

    /// Evaluates an expression such as `fadd(nser(6,alpha), chi(nser(2,e00)))^5`.
    fn eval(&self, expr: &str) -> PyResult<Element> {
        let e = Expression::parse(expr).map_err(err)?;
        Ok(self.wrap(e.eval(&self.inner).map_err(err)?))
    }

    /// Substitutes the coefficients: `chow`, `ktheory`, `ktheory+`,
    /// `identity` or `b=<int>`.
    fn specialize(&self, name: &str) -> PyResult<Algebra> {
        Ok(Algebra {
            inner: Arc::new(self.inner.specialize(&specialization(name)?).map_err(err)?),
        })
    }

    fn check_associative(&self) -> PyResult<()> {
        self.inner.check_associative().map_err(err)
    }

    fn __eq__(&self, other: &Algebra) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Algebra(rank={}, theory={})", self.inner.total_rank(), self.theory())
    }
}

impl Algebra {
    fn wrap(&self, e: CoreElement) -> Element {
        Element {
            algebra: self.inner.clone(),
            inner: e,
        }
    }
}

/// An element of an `Algebra`.
#[pyclass(module = "orient", frozen)]
struct Element {
    algebra: Arc<GradedFreeAlgebra>,
    inner: CoreElement,
}

#[derive(FromPyObject)]
enum Operand<'py> {
    Elem(PyRef<'py, Element>),
    Int(i64),
}

impl Element {
    fn same(&self, e: CoreElement) -> Element {
        Element {
            algebra: self.algebra.clone(),
            inner: e,
        }
    }

    fn operand(&self, o: &Operand) -> PyResult<CoreElement> {
        match o {
            Operand::Elem(e) => {
                if e.algebra != self.algebra {
                    return Err(err("elements of different algebras"));
                }
                Ok(e.inner.clone())
            }
            Operand::Int(n) => Ok(self.algebra.scalar(CoefficientPoly::constant(*n))),
        }
    }
}

#[pymethods]
impl Element {
    fn __add__(&self, o: Operand) -> PyResult<Element> {
        Ok(self.same(&self.inner + &self.operand(&o)?))
    }

    fn __radd__(&self, o: Operand) -> PyResult<Element> {
        self.__add__(o)
    }

    fn __sub__(&self, o: Operand) -> PyResult<Element> {
        Ok(self.same(&self.inner - &self.operand(&o)?))
    }

    fn __rsub__(&self, o: Operand) -> PyResult<Element> {
        Ok(self.same(&self.operand(&o)? - &self.inner))
    }

    fn __mul__(&self, o: Operand) -> PyResult<Element> {
        Ok(self.same(self.algebra.mul(&self.inner, &self.operand(&o)?)))
    }

    fn __rmul__(&self, o: Operand) -> PyResult<Element> {
        self.__mul__(o)
    }

    fn __neg__(&self) -> Element {
        self.same(-&self.inner)
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> Element {
        self.same(self.algebra.pow(&self.inner, e))
    }

    fn __eq__(&self, o: Operand) -> PyResult<bool> {
        Ok(self.inner == self.operand(&o)?)
    }

    fn __str__(&self) -> String {
        self.algebra.format(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.algebra.format(&self.inner))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Coefficients on the basis, as polynomial strings.
    fn coefficients(&self) -> Vec<String> {
        element_strings(&self.inner)
    }

    /// The coefficient of the point class, when the algebra has one.
    fn degree(&self) -> Option<String> {
        self.algebra.degree_functional(&self.inner).map(|c| c.to_string())
    }

    /// The formal sum with `other`.
    fn fadd(&self, other: Operand) -> PyResult<Element> {
        let y = self.operand(&other)?;
        Ok(self.same(fgl::f_add(self.algebra.as_ref(), self.algebra.law(), &self.inner, &y)))
    }

    /// The formal inverse.
    fn chi(&self) -> Element {
        self.same(fgl::formal_inverse(self.algebra.as_ref(), self.algebra.law(), &self.inner))
    }

    /// The n-series.
    fn nser(&self, n: i64) -> PyResult<Element> {
        let v = fgl::n_series(self.algebra.as_ref(), self.algebra.law(), n, &self.inner).map_err(err)?;
        Ok(self.same(v))
    }
}

fn law(theory_name: &str, cap: u32) -> PyResult<FormalGroupLaw> {
    FormalGroupLaw::for_theory(&theory(theory_name)?, cap).map_err(err)
}

/// `[n](u)` truncated above degree `truncate`.
#[pyfunction]
#[pyo3(signature = (n, truncate = 4, theory_name = "universal"))]
fn n_series(n: i64, truncate: u32, theory_name: &str) -> PyResult<String> {
    let u = Variable::new("u", 1);
    let ring = Truncated::new(vec![u.clone()], truncate);
    let v = fgl::n_series(&ring, &law(theory_name, truncate)?, n, &CoefficientPoly::var(u)).map_err(err)?;
    Ok(v.to_string())
}

/// `chi(u)` truncated above degree `truncate`.
#[pyfunction]
#[pyo3(signature = (truncate = 4, theory_name = "universal"))]
fn formal_inverse(truncate: u32, theory_name: &str) -> PyResult<String> {
    let u = Variable::new("u", 1);
    let ring = Truncated::new(vec![u.clone()], truncate);
    Ok(fgl::formal_inverse(&ring, &law(theory_name, truncate)?, &CoefficientPoly::var(u)).to_string())
}

/// The coefficients `omega_0 .. omega_r` of the invariant differential.
#[pyfunction]
#[pyo3(signature = (r, theory_name = "universal"))]
fn invariant_differential(r: u32, theory_name: &str) -> PyResult<Vec<String>> {
    let w = fgl::invariant_differential(&law(theory_name, r.max(1))?, r).map_err(err)?;
    Ok(w.coefficients().iter().map(|c| c.to_string()).collect())
}

/// Secant lines to the twisted cubic through a general point.
#[pyfunction]
#[pyo3(signature = (theory_name = "universal"))]
fn count_secants(theory_name: &str) -> PyResult<String> {
    let tc = catalog::blowup_twisted_cubic(&theory(theory_name)?).map_err(err)?;
    Ok(catalog::count_secants(&tc).map_err(err)?.to_string())
}

/// Conics tangent to five general conics.
#[pyfunction]
#[pyo3(signature = (theory_name = "universal"))]
fn count_steiner(theory_name: &str) -> PyResult<String> {
    let v = catalog::blowup_veronese(&theory(theory_name)?).map_err(err)?;
    Ok(catalog::count_steiner(&v).map_err(err)?.to_string())
}

/// The products `e_{a,b} * e_{c,d}` on the Veronese blowup.
#[pyfunction]
#[pyo3(signature = (theory_name = "universal"))]
fn pushforward_table(theory_name: &str) -> PyResult<Vec<Vec<String>>> {
    let v = catalog::blowup_veronese(&theory(theory_name)?).map_err(err)?;
    Ok(catalog::pushforward_table(&v)
        .iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect())
        .collect())
}

/// Runs the command line with `args` (without the program name).
#[pyfunction]
fn run(args: Vec<String>) -> i32 {
    orient::cli::run(std::iter::once("orient".to_string()).chain(args))
}

#[pymodule]
#[pyo3(name = "orient")]
fn orient_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Element>()?;
    m.add_function(wrap_pyfunction!(n_series, m)?)?;
    m.add_function(wrap_pyfunction!(formal_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(invariant_differential, m)?)?;
    m.add_function(wrap_pyfunction!(count_secants, m)?)?;
    m.add_function(wrap_pyfunction!(count_steiner, m)?)?;
    m.add_function(wrap_pyfunction!(pushforward_table, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}
