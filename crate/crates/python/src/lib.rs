//! Python bindings. Values cross the boundary as wrapped Rust objects;
//! reports come back as plain dictionaries decoded from their JSON form.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use incidence_grading as ig;
use incidence_grading::json;

fn err(e: ig::Error) -> PyErr {
    PyValueError::new_err(format!("{}: {}", e.kind(), e))
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (json::to_text(v),))
}

#[pyclass(name = "Group", frozen, from_py_object)]
#[derive(Clone)]
struct Group(ig::AbelianGroup);

#[pymethods]
impl Group {
    #[new]
    #[pyo3(signature = (torsion, free_rank = 0))]
    fn new(torsion: Vec<u64>, free_rank: usize) -> PyResult<Self> {
        ig::AbelianGroup::new(free_rank, torsion).map(Group).map_err(err)
    }

    #[getter]
    fn torsion(&self) -> Vec<u64> {
        self.0.torsion().to_vec()
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.0.free_rank()
    }

    /// `None` for infinite groups.
    #[getter]
    fn order(&self) -> Option<u64> {
        self.0.order()
    }

    fn full(&self) -> Subgroup {
        Subgroup(self.0.full())
    }

    fn trivial(&self) -> Subgroup {
        Subgroup(self.0.trivial())
    }

    fn subgroup(&self, generators: Vec<Vec<i64>>) -> PyResult<Subgroup> {
        let gens = generators.iter().map(|c| self.0.element(c)).collect::<ig::Result<Vec<_>>>().map_err(err)?;
        ig::Subgroup::generated(&self.0, &gens).map(Subgroup).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Group(torsion={:?}, free_rank={})", self.0.torsion(), self.0.free_rank())
    }
}

#[pyclass(name = "Subgroup", frozen, from_py_object)]
#[derive(Clone)]
struct Subgroup(ig::Subgroup);

#[pymethods]
impl Subgroup {
    #[getter]
    fn ambient(&self) -> Group {
        Group(self.0.ambient().clone())
    }

    #[getter]
    fn generators(&self) -> Vec<Vec<i64>> {
        self.0.generators().iter().map(|g| g.coords().to_vec()).collect()
    }

    #[getter]
    fn structure(&self) -> Vec<u64> {
        self.0.structure().to_vec()
    }

    #[getter]
    fn order(&self) -> Option<u64> {
        self.0.order()
    }

    fn exponent(&self) -> PyResult<u64> {
        self.0.exponent().map_err(err)
    }

    fn elements(&self) -> PyResult<Vec<Vec<i64>>> {
        Ok(self.0.enumerate().map_err(err)?.iter().map(|g| g.coords().to_vec()).collect())
    }

    fn contains(&self, element: Vec<i64>) -> PyResult<bool> {
        let g = self.0.ambient().element(&element).map_err(err)?;
        self.0.contains(&g).map_err(err)
    }

    fn intersect(&self, other: &Subgroup) -> PyResult<Subgroup> {
        self.0.intersect(&other.0).map(Subgroup).map_err(err)
    }

    fn sum(&self, other: &Subgroup) -> PyResult<Subgroup> {
        self.0.sum(&other.0).map(Subgroup).map_err(err)
    }

    /// All characters, the trivial one first.
    fn dual(&self) -> PyResult<Vec<Character>> {
        Ok(ig::dual_group(&self.0).map_err(err)?.into_iter().map(Character).collect())
    }

    fn trivial_character(&self) -> PyResult<Character> {
        ig::Character::trivial(&self.0).map(Character).map_err(err)
    }

    /// Character with the given `"p/q"` values on `generators`.
    fn character(&self, values: Vec<String>) -> PyResult<Character> {
        let vals = values.iter().map(|v| v.parse()).collect::<ig::Result<Vec<ig::Phase>>>().map_err(err)?;
        ig::Character::from_generator_values(&self.0, &vals).map(Character).map_err(err)
    }

    fn to_json(&self) -> String {
        json::to_text(&json::subgroup_file_to_json(&self.0))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Subgroup> {
        json::parse(text).and_then(|v| json::subgroup_file_from_json(&v)).map(Subgroup).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Subgroup(generators={:?})", self.generators())
    }
}

#[pyclass(name = "Character", frozen, from_py_object)]
#[derive(Clone)]
struct Character(ig::Character);

#[pymethods]
impl Character {
    #[getter]
    fn domain(&self) -> Subgroup {
        Subgroup(self.0.domain().clone())
    }

    /// Values on the domain's generators, as `"p/q"` strings.
    #[getter]
    fn values(&self) -> Vec<String> {
        self.0.values().iter().map(ToString::to_string).collect()
    }

    fn __call__(&self, element: Vec<i64>) -> PyResult<String> {
        let g = self.0.domain().ambient().element(&element).map_err(err)?;
        self.0.eval(&g).map(|p| p.to_string()).map_err(err)
    }

    fn is_trivial(&self) -> bool {
        self.0.is_trivial()
    }

    fn restrict(&self, k: &Subgroup) -> PyResult<Character> {
        self.0.restrict(&k.0).map(Character).map_err(err)
    }

    fn __mul__(&self, other: &Character) -> PyResult<Character> {
        self.0.mul(&other.0).map(Character).map_err(err)
    }

    fn inverse(&self) -> Character {
        Character(self.0.inv())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.values().hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Character({})", self.0)
    }
}

#[pyclass(name = "Bimodule", frozen, from_py_object)]
#[derive(Clone)]
struct Bimodule(ig::BimoduleClass);

#[pymethods]
impl Bimodule {
    /// `pairs` is a list of `(character, degree)` with characters of
    /// `left ∩ right`.
    #[new]
    fn new(left: &Subgroup, right: &Subgroup, pairs: Vec<(Character, Vec<i64>)>) -> PyResult<Self> {
        let amb = left.0.ambient();
        let pairs = pairs
            .into_iter()
            .map(|(c, d)| Ok((c.0, amb.element(&d)?)))
            .collect::<ig::Result<Vec<_>>>()
            .map_err(err)?;
        ig::BimoduleClass::new(&left.0, &right.0, pairs).map(Bimodule).map_err(err)
    }

    #[getter]
    fn left(&self) -> Subgroup {
        Subgroup(self.0.left().clone())
    }

    #[getter]
    fn right(&self) -> Subgroup {
        Subgroup(self.0.right().clone())
    }

    #[getter]
    fn pairs(&self) -> Vec<(Character, Vec<i64>)> {
        self.0.pairs().iter().map(|(c, d)| (Character(c.clone()), d.coords().to_vec())).collect()
    }

    #[getter]
    fn dimension(&self) -> u64 {
        self.0.dimension()
    }

    fn realizable(&self) -> bool {
        ig::realizable(&self.0)
    }

    fn twist(&self, mu_left: &Character, mu_right: &Character) -> PyResult<Bimodule> {
        ig::twist(&self.0, &mu_left.0, &mu_right.0).map(Bimodule).map_err(err)
    }

    /// Product with a class over `(right, H₃)`.
    fn __matmul__(&self, other: &Bimodule) -> PyResult<Bimodule> {
        ig::bimodule_product(&self.0, &other.0).map(Bimodule).map_err(err)
    }

    /// Permutation matching the pairs, or `None`.
    fn isomorphism(&self, other: &Bimodule) -> PyResult<Option<Vec<usize>>> {
        ig::bimodule_iso(&self.0, &other.0).map_err(err)
    }

    fn to_json(&self) -> String {
        json::to_text(&json::bimodule_file_to_json(&self.0))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Bimodule> {
        json::parse(text).and_then(|v| json::bimodule_file_from_json(&v)).map(Bimodule).map_err(err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self.0.pairs().iter().map(|(c, d)| format!("({c}, {d})")).collect();
        format!("Bimodule([{}])", parts.join(", "))
    }
}

#[pyclass(name = "Datum", frozen, from_py_object)]
#[derive(Clone)]
struct Datum(ig::GradingDatum);

#[pymethods]
impl Datum {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Datum> {
        json::parse(text).and_then(|v| json::datum_from_json(&v)).map(Datum).map_err(err)
    }

    /// A chain `1 ⋖ 2 ⋖ … ⋖ n` with the given blocks and cover classes.
    #[staticmethod]
    fn chain(blocks: Vec<Subgroup>, covers: Vec<Bimodule>) -> PyResult<Datum> {
        let first = blocks.first().ok_or_else(|| PyValueError::new_err("a chain needs at least one block"))?;
        let amb = first.0.ambient().clone();
        let n = blocks.len();
        let map = covers.into_iter().enumerate().map(|(i, m)| ((i, i + 1), m.0)).collect();
        ig::GradingDatum::new(amb, ig::Poset::chain(n), blocks.into_iter().map(|b| b.0).collect(), map)
            .map(Datum)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        json::to_text(&json::datum_to_json(&self.0))
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.skeleton().labels().to_vec()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &json::validation_report_to_json(&ig::validate_datum(&self.0)))
    }

    fn is_valid(&self) -> bool {
        ig::validate_datum(&self.0).is_valid()
    }

    /// Every bimodule `M(x, y)` for `x < y`, keyed by label pairs.
    fn full_bimodules(&self) -> PyResult<Vec<((String, String), Bimodule)>> {
        let sk = self.0.skeleton();
        Ok(ig::derive_full_bimodules(&self.0)
            .map_err(err)?
            .into_iter()
            .map(|((i, j), m)| ((sk.label(i).to_owned(), sk.label(j).to_owned()), Bimodule(m)))
            .collect())
    }

    fn realize(&self) -> PyResult<Realized> {
        self.0.realize().map(Realized).map_err(err)
    }

    /// `(alpha, mu)` with `alpha` mapping labels to labels, or `None`.
    fn isomorphism<'py>(&self, py: Python<'py>, other: &Datum) -> PyResult<Bound<'py, PyAny>> {
        let w = ig::grading_iso(&self.0, &other.0).map_err(err)?;
        to_py(py, &json::grading_iso_to_json(&self.0, &other.0, w.as_ref()))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "Realized", frozen)]
struct Realized(ig::RealizedGrading);

#[pymethods]
impl Realized {
    #[getter]
    fn dimension(&self) -> usize {
        self.0.basis().len()
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.0.poset().labels().to_vec()
    }

    /// Basis elements as `(terms, degree)`, each term `(from, to, coefficient)`
    /// with the coefficient's power-basis coordinates as `"p/q"` strings.
    fn basis(&self) -> Vec<(Vec<(String, String, Vec<String>)>, Vec<i64>)> {
        let p = self.0.poset();
        self.0
            .basis()
            .iter()
            .map(|h| {
                let terms = h
                    .element
                    .terms()
                    .iter()
                    .map(|(&(x, y), c)| {
                        let coeffs = c.coefficients().iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect();
                        (p.label(x).to_owned(), p.label(y).to_owned(), coeffs)
                    })
                    .collect();
                (terms, h.degree.coords().to_vec())
            })
            .collect()
    }

    fn verify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &json::verification_report_to_json(&ig::verify_grading(&self.0)))
    }

    fn link_report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &json::link_report_to_json(&ig::check_link_equation(&self.0).map_err(err)?))
    }

    /// The class of `M(x, y)` read off the algebra, for `x < y` with an
    /// element strictly between them.
    fn radical_square_component(&self, x: &str, y: &str) -> PyResult<Bimodule> {
        let sk = self.0.skeleton();
        let idx = |l: &str| sk.index_of(l).ok_or_else(|| PyValueError::new_err(format!("unknown label {l:?}")));
        ig::radical_square_component(&self.0, idx(x)?, idx(y)?).map(Bimodule).map_err(err)
    }

    fn to_json(&self) -> String {
        json::to_text(&json::realized_to_json(&self.0))
    }
}

#[pyfunction]
fn bimodule_product(m12: &Bimodule, m23: &Bimodule) -> PyResult<Bimodule> {
    m12.__matmul__(m23)
}

#[pymodule]
pub fn pyincidence(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Subgroup>()?;
    m.add_class::<Character>()?;
    m.add_class::<Bimodule>()?;
    m.add_class::<Datum>()?;
    m.add_class::<Realized>()?;
    m.add_function(wrap_pyfunction!(bimodule_product, m)?)?;
    Ok(())
}
