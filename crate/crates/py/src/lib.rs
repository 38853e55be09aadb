//! Python bindings. Arrows, words and characters cross the boundary as strings
//! in the same syntax the command line accepts.

use std::sync::Arc;

use germforge::characters::{char_act, char_eq, PrincipalCharacter};
use germforge::families::{self, SuiteOptions};
use germforge::germ::{self, IsoVerdict, NoCertificate, SubgroupoidSpec};
use germforge::hull::{hull_eq, show_normal, HullEq};
use germforge::lcsc::{CancellationVerdict, EqualizerOutcome, LcmWitness};
use germforge::report::Document;
use germforge::{syntax, Bounds, Category, FiniteCategory, HullElement};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Family", module = "germforge_py", frozen)]
struct PyFamily {
    cat: Arc<Category>,
}

impl PyFamily {
    fn arrow(&self, s: &str) -> PyResult<germforge::Arrow> {
        syntax::parse_arrow(&self.cat, s).map_err(err)
    }

    fn chi(&self, s: &str) -> PyResult<PrincipalCharacter> {
        syntax::parse_character(&self.cat, s).map_err(err)
    }

    fn hull_el(&self, h: HullElement) -> PyHull {
        PyHull { cat: self.cat.clone(), h }
    }
}

#[pymethods]
impl PyFamily {
    #[staticmethod]
    fn nx_zmod(n: u64) -> PyResult<Self> {
        if n == 0 {
            return Err(err("modulus must be positive"));
        }
        Ok(PyFamily { cat: Arc::new(Category::nx_zmod(n)) })
    }

    #[staticmethod]
    fn z_nx() -> Self {
        PyFamily { cat: Arc::new(Category::z_nx()) }
    }

    /// Loads a composition table in the JSON format used by `--family table:<path>`.
    #[staticmethod]
    fn from_table_json(text: &str) -> PyResult<Self> {
        let t = FiniteCategory::from_json(text).map_err(err)?;
        Ok(PyFamily { cat: Arc::new(Category::Table(t)) })
    }

    fn compose(&self, a: &str, b: &str) -> PyResult<String> {
        let c = self.cat.compose(&self.arrow(a)?, &self.arrow(b)?).map_err(err)?;
        Ok(self.cat.show(&c))
    }

    fn divide_left(&self, q: &str, p: &str) -> PyResult<Option<String>> {
        Ok(self.cat.divide_left(&self.arrow(q)?, &self.arrow(p)?).ok().map(|r| self.cat.show(&r)))
    }

    fn canonical(&self, a: &str) -> PyResult<String> {
        Ok(self.cat.show(&self.cat.canonical(&self.arrow(a)?)))
    }

    fn is_unit(&self, a: &str) -> PyResult<bool> {
        Ok(self.cat.is_unit(&self.arrow(a)?))
    }

    /// Generator of `aC ∩ bC`, or `None` when the intersection is empty.
    fn right_lcm(&self, a: &str, b: &str) -> PyResult<Option<String>> {
        match self.cat.right_lcm(&self.arrow(a)?, &self.arrow(b)?).map_err(err)? {
            LcmWitness::Meet { w, .. } => Ok(Some(self.cat.show(&w))),
            LcmWitness::Empty => Ok(None),
        }
    }

    #[pyo3(signature = (a, b, bound = 1000))]
    fn equalizer(&self, a: &str, b: &str, bound: u64) -> PyResult<Option<String>> {
        match self.cat.equalizer_ideal(&self.arrow(a)?, &self.arrow(b)?, Bounds::uniform(bound)).map_err(err)? {
            EqualizerOutcome::Generator(g) => Ok(Some(self.cat.show(&g))),
            EqualizerOutcome::Empty => Ok(None),
            EqualizerOutcome::NotPrincipal(x, y) => {
                Err(err(format!("not principal: {} and {}", self.cat.show(&x), self.cat.show(&y))))
            }
        }
    }

    #[pyo3(signature = (bound = 40))]
    fn validate_left_cancellative(&self, bound: u64) -> String {
        match self.cat.validate_left_cancellative(bound) {
            CancellationVerdict::Proven => "Proven".into(),
            CancellationVerdict::VerifiedUpTo(k) => format!("VerifiedUpTo({k})"),
            CancellationVerdict::Counterexample(x, y, z) => {
                format!("Counterexample({}, {}, {})", self.cat.show(&x), self.cat.show(&y), self.cat.show(&z))
            }
        }
    }

    fn hull(&self, expr: &str) -> PyResult<PyHull> {
        Ok(self.hull_el(syntax::parse_hull(&self.cat, expr).map_err(err)?))
    }

    /// `germ("<word>", "chi(a,k)")`.
    fn germ(&self, word: &str, at: &str) -> PyResult<PyGerm> {
        let h = syntax::parse_hull(&self.cat, word).map_err(err)?;
        let g = germ::Germ::of_hull(&self.cat, h, self.chi(at)?).map_err(err)?;
        Ok(PyGerm { cat: self.cat.clone(), g })
    }

    fn char_eq(&self, a: &str, b: &str) -> PyResult<bool> {
        Ok(char_eq(&self.cat, &self.chi(a)?, &self.chi(b)?))
    }

    fn char_eval(&self, chi: &str, ideal: &str) -> PyResult<bool> {
        let b = syntax::parse_ideal(&self.cat, ideal).map_err(err)?;
        Ok(b.contains(&self.cat, &self.chi(chi)?.c))
    }

    /// `s·χ`, or `None` outside the domain.
    fn char_act(&self, s: &str, chi: &str) -> PyResult<Option<String>> {
        let h = syntax::parse_hull(&self.cat, s).map_err(err)?;
        Ok(char_act(&self.cat, &h, &self.chi(chi)?).ok().map(|c| c.show(&self.cat)))
    }

    /// Generators of the isotropy at `chi` (all elements when the group is finite).
    fn isotropy(&self, chi: &str) -> PyResult<Vec<PyGerm>> {
        let iso = germ::isotropy_at(&self.cat, &self.chi(chi)?).map_err(err)?;
        let el = iso.elements.unwrap_or(iso.generators);
        Ok(el.into_iter().map(|g| PyGerm { cat: self.cat.clone(), g }).collect())
    }

    /// `("yes" | "no" | "unknown", detail)`.
    #[pyo3(signature = (g, budget = 1000))]
    fn iso_interior(&self, g: PyRef<'_, PyGerm>, budget: u64) -> (String, String) {
        match germ::in_iso_interior(&self.cat, &g.g, budget) {
            IsoVerdict::Yes(e) => ("yes".into(), e.show(&self.cat)),
            IsoVerdict::No(NoCertificate::NotIsotropy { from, to }) => {
                ("no".into(), format!("moves {} to {}", self.cat.show(&from), self.cat.show(&to)))
            }
            IsoVerdict::No(NoCertificate::MovedPoints { rule, .. }) => ("no".into(), rule),
            IsoVerdict::Unknown(why) => ("unknown".into(), why),
        }
    }

    /// Whether the canonical bisection certifies principality relative to `family`
    /// (names: "units", "invertibles", "iso-interior").
    #[pyo3(signature = (chi, family = vec!["invertibles".to_string()], budget = 1000))]
    fn rtp(&self, chi: &str, family: Vec<String>, budget: u64) -> PyResult<bool> {
        let specs = family
            .iter()
            .map(|f| match f.as_str() {
                "units" => Ok(SubgroupoidSpec::UnitSpace),
                "invertibles" => Ok(SubgroupoidSpec::InvertiblesAction),
                "iso-interior" => Ok(SubgroupoidSpec::IsoInterior),
                other => Err(err(format!("unknown subgroupoid `{other}`"))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(germ::rtp_witness(&self.cat, &self.chi(chi)?, &specs, budget).is_ok())
    }

    fn __repr__(&self) -> String {
        format!("Family({})", self.cat)
    }
}

#[pyclass(name = "Hull", module = "germforge_py", frozen)]
struct PyHull {
    cat: Arc<Category>,
    h: HullElement,
}

#[pymethods]
impl PyHull {
    fn apply(&self, x: &str) -> PyResult<Option<String>> {
        let x = syntax::parse_arrow(&self.cat, x).map_err(err)?;
        Ok(self.h.apply(&self.cat, &x).map(|y| self.cat.show(&y)))
    }

    fn compose(&self, other: PyRef<'_, PyHull>) -> PyResult<PyHull> {
        let h = self.h.compose(&self.cat, &other.h).map_err(err)?;
        Ok(PyHull { cat: self.cat.clone(), h })
    }

    fn invert(&self) -> PyHull {
        PyHull { cat: self.cat.clone(), h: self.h.invert(&self.cat) }
    }

    fn normal_form(&self) -> PyResult<String> {
        Ok(show_normal(&self.cat, &self.h.normalize(&self.cat).map_err(err)?))
    }

    fn domain(&self) -> String {
        self.h.domain(&self.cat).show(&self.cat)
    }

    #[pyo3(signature = (bound = 200))]
    fn is_idempotent(&self, bound: u64) -> bool {
        self.h.is_idempotent(&self.cat, bound)
    }

    /// `"equal"`, `"distinct at <x>"` or `"agree up to <bound>"`.
    #[pyo3(signature = (other, bound = 200))]
    fn eq(&self, other: PyRef<'_, PyHull>, bound: u64) -> String {
        match hull_eq(&self.cat, &self.h, &other.h, Bounds::uniform(bound)) {
            HullEq::Equal => "equal".into(),
            HullEq::Distinct(x) => format!("distinct at {}", self.cat.show(&x)),
            HullEq::VerifiedUpTo(k) => format!("agree up to {k}"),
        }
    }

    fn __repr__(&self) -> String {
        self.h.show(&self.cat)
    }
}

#[pyclass(name = "Germ", module = "germforge_py", frozen)]
struct PyGerm {
    cat: Arc<Category>,
    g: germ::Germ,
}

#[pymethods]
impl PyGerm {
    fn value(&self) -> String {
        self.cat.show(&self.g.value(&self.cat))
    }

    fn source(&self) -> String {
        self.g.source().show(&self.cat)
    }

    fn target(&self) -> String {
        self.g.target(&self.cat).show(&self.cat)
    }

    fn is_isotropy(&self) -> bool {
        self.g.is_isotropy(&self.cat)
    }

    fn compose(&self, other: PyRef<'_, PyGerm>) -> PyResult<PyGerm> {
        let g = germ::germ_compose(&self.cat, &self.g, &other.g).map_err(err)?;
        Ok(PyGerm { cat: self.cat.clone(), g })
    }

    fn inverse(&self) -> PyGerm {
        PyGerm { cat: self.cat.clone(), g: germ::germ_inverse(&self.cat, &self.g) }
    }

    fn equals(&self, other: PyRef<'_, PyGerm>) -> bool {
        germ::germ_equal(&self.cat, &self.g, &other.g)
    }

    fn __repr__(&self) -> String {
        self.g.show(&self.cat)
    }
}

/// `(a,[k])c = (b,[l])c` generator as `(mult, residue)`, or `None` when empty.
#[pyfunction]
fn equalizer_closed_form(n: u64, a: u64, k: i64, b: u64, l: i64) -> PyResult<Option<String>> {
    if n == 0 {
        return Err(err("modulus must be positive"));
    }
    let cat = Category::nx_zmod(n);
    Ok(match families::equalizer_closed_form(n, a, k, b, l) {
        EqualizerOutcome::Generator(g) => Some(cat.show(&g)),
        _ => None,
    })
}

#[pyfunction]
fn right_cancel_failure_witness(n: u64) -> Option<(String, String, String)> {
    let cat = Category::nx_zmod(n.max(1));
    families::right_cancel_failure_witness(n).map(|(x, y, z)| (cat.show(&x), cat.show(&y), cat.show(&z)))
}

/// The proposition suite as a JSON document.
#[pyfunction]
#[pyo3(signature = (n, samples = 50, seed = 0, bound = 200, budget = 1000))]
fn paper_witness_suite(n: u64, samples: usize, seed: u64, bound: u64, budget: u64) -> String {
    let opts = SuiteOptions { bound, budget, samples, seed, oracle: true };
    let doc = Document { meta: None, reports: families::paper_witness_suite(n, &opts) };
    serde_json::to_string(&doc).expect("serializable")
}

/// Runs the command line in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = germforge::cli::run(std::iter::once("germforge".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn germforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFamily>()?;
    m.add_class::<PyHull>()?;
    m.add_class::<PyGerm>()?;
    m.add_function(wrap_pyfunction!(equalizer_closed_form, m)?)?;
    m.add_function(wrap_pyfunction!(right_cancel_failure_witness, m)?)?;
    m.add_function(wrap_pyfunction!(paper_witness_suite, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
