//! Python bindings. Integers map to `int`, rationals to `fractions.Fraction`.

use std::fmt::Display;

use dngon_core::bounds::{self, BoundReport as CoreBoundReport};
use dngon_core::circle;
use dngon_core::kernel::{self, QuadPoint, Rational};
use dngon_core::search::{self, HalfPlane, SearchConfig, SearchMode};
use dngon_core::trigon::{self, AngleCompareInstance, CrossingInstance, TriangleCompareInstance};
use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string(v).map_err(err)
}

/// Certified point set with natural pairwise distances.
#[pyclass(frozen, module = "dngon")]
struct DiophantineSet {
    inner: kernel::DiophantineSet,
}

#[pymethods]
impl DiophantineSet {
    /// Certify rational points given as `(x, y)` pairs.
    #[staticmethod]
    #[pyo3(signature = (points, scale=None))]
    fn certify(points: Vec<(Rational, Rational)>, scale: Option<BigUint>) -> PyResult<Self> {
        let pts = points
            .into_iter()
            .map(|(x, y)| QuadPoint::rational(x, y))
            .collect();
        let inner = kernel::DiophantineSet::certify(pts, scale).map_err(err)?;
        Ok(DiophantineSet { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner: kernel::DiophantineSet = serde_json::from_str(text).map_err(err)?;
        inner.verify().map_err(err)?;
        Ok(DiophantineSet { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.inner)
    }

    fn verify(&self) -> PyResult<()> {
        self.inner.verify().map_err(err)
    }

    fn distances(&self) -> Vec<Vec<BigUint>> {
        self.inner.distances().to_vec()
    }

    fn distance(&self, i: usize, j: usize) -> PyResult<BigUint> {
        let n = self.inner.len();
        if i >= n || j >= n {
            return Err(err(format!("index out of range for {n} points")));
        }
        Ok(self.inner.distance(i, j).clone())
    }

    /// Floating-point coordinates, for plotting only.
    fn points_f64(&self) -> Vec<(f64, f64)> {
        self.inner.points().iter().map(QuadPoint::to_f64).collect()
    }

    #[getter]
    fn scale(&self) -> Option<BigUint> {
        self.inner.scale().cloned()
    }

    #[getter]
    fn radicand(&self) -> u64 {
        self.inner.radicand()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("DiophantineSet(n={})", self.inner.len())
    }
}

#[pyclass(frozen, module = "dngon")]
struct Witness {
    inner: search::Witness,
}

#[pymethods]
impl Witness {
    /// `(a, b, "+"|"-")` per apex.
    #[getter]
    fn apexes(&self) -> Vec<(u64, u64, String)> {
        self.inner
            .apexes
            .iter()
            .map(|l| (l.a, l.b, l.sign.to_string()))
            .collect()
    }

    #[getter]
    fn shape(&self) -> &'static str {
        match self.inner.shape {
            search::PolygonShape::Convex => "convex",
            search::PolygonShape::Concave => "concave",
        }
    }

    #[getter]
    fn polygon(&self) -> Vec<usize> {
        self.inner.polygon.clone()
    }

    #[getter]
    fn set(&self) -> DiophantineSet {
        DiophantineSet {
            inner: self.inner.set.clone(),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }
}

#[pyclass(frozen, module = "dngon")]
struct SearchReport {
    inner: search::SearchReport,
}

#[pymethods]
impl SearchReport {
    #[getter]
    fn k(&self) -> u64 {
        self.inner.k
    }
    #[getter]
    fn max_dist(&self) -> u64 {
        self.inner.max_dist
    }
    #[getter]
    fn mode(&self) -> String {
        self.inner.mode.to_string()
    }
    #[getter]
    fn scope(&self) -> String {
        self.inner.scope.clone()
    }
    #[getter]
    fn apex_count(&self) -> usize {
        self.inner.apex_count
    }
    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count
    }
    #[getter]
    fn max_n_found(&self) -> usize {
        self.inner.max_n_found
    }
    #[getter]
    fn bound_4k(&self) -> u64 {
        self.inner.bound_4k
    }
    #[getter]
    fn exceeded(&self) -> bool {
        self.inner.exceeded
    }
    #[getter]
    fn target_reached(&self) -> Option<bool> {
        self.inner.target_reached
    }
    #[getter]
    fn witnesses(&self) -> Vec<Witness> {
        self.inner
            .witnesses
            .iter()
            .map(|w| Witness { inner: w.clone() })
            .collect()
    }

    fn summary_line(&self) -> String {
        self.inner.summary_line()
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("SearchReport({})", self.inner.summary_line())
    }
}

#[pyclass(frozen, module = "dngon")]
struct BoundReport {
    inner: CoreBoundReport,
}

#[pymethods]
impl BoundReport {
    #[getter]
    fn k(&self) -> u64 {
        self.inner.k
    }
    #[getter]
    fn n0(&self) -> u64 {
        self.inner.n0
    }
    #[getter]
    fn search_max_n(&self) -> Option<u64> {
        self.inner.search_max_n
    }
    #[getter]
    fn within_claim(&self) -> Option<bool> {
        self.inner.within_claim
    }
    #[getter]
    fn consistent(&self) -> bool {
        self.inner.consistent
    }

    fn table(&self) -> String {
        self.inner.table()
    }

    fn to_json(&self) -> PyResult<String> {
        json(&self.inner)
    }
}

#[pyfunction]
fn is_perfect_square(n: BigUint) -> Option<BigUint> {
    kernel::is_perfect_square(&n)
}

/// `n = D·f²` with `D` square-free; returns `(D, f)`.
#[pyfunction]
fn squarefree_decompose(n: BigUint) -> PyResult<(BigUint, BigUint)> {
    kernel::squarefree_decompose(&n).map_err(err)
}

#[pyfunction]
fn rational_sqrt(q: Rational) -> PyResult<Option<Rational>> {
    kernel::rational_sqrt(&q).map_err(err)
}

#[pyfunction]
fn cos_angle(adj1: u64, adj2: u64, opp: u64) -> PyResult<Rational> {
    trigon::cos_angle(adj1, adj2, opp).map_err(err)
}

/// `(cos C1, cos C2, cos A1, cos A2)` for the two triangles of the instance.
#[pyfunction]
fn lemma1_cosines(
    a: u64,
    b: u64,
    k: u64,
    m: u64,
) -> PyResult<(Rational, Rational, Rational, Rational)> {
    let c = trigon::lemma1_cosines(&TriangleCompareInstance::new(a, b, k, m).map_err(err)?);
    Ok((c.cos_c1, c.cos_c2, c.cos_a1, c.cos_a2))
}

#[pyfunction]
fn lemma1_check(a: u64, b: u64, k: u64, m: u64) -> PyResult<bool> {
    Ok(trigon::lemma1_check(
        &TriangleCompareInstance::new(a, b, k, m).map_err(err)?,
    ))
}

#[pyfunction]
fn task1_check(a: u64, b: u64, c: u64) -> PyResult<bool> {
    trigon::task1_check(&AngleCompareInstance::task1(a, b, c).map_err(err)?).map_err(err)
}

#[pyfunction]
fn task2_check(a: u64, b: u64, c: u64) -> PyResult<bool> {
    trigon::task2_check(&AngleCompareInstance::task2(a, b, c).map_err(err)?).map_err(err)
}

/// Crossing inequality for rational points; segments `A–C2` and `B–C1` must cross.
#[pyfunction]
fn crossing_inequality(
    a: (Rational, Rational),
    b: (Rational, Rational),
    c1: (Rational, Rational),
    c2: (Rational, Rational),
) -> PyResult<bool> {
    let p = |(x, y)| QuadPoint::rational(x, y);
    let inst = CrossingInstance::new(p(a), p(b), p(c1), p(c2)).map_err(err)?;
    trigon::crossing_inequality(&inst).map_err(err)
}

#[pyfunction]
fn lemma2_integer_consequence(b: u64, a: u64, m: u64, t: u64) -> bool {
    trigon::lemma2_integer_consequence(b, a, m, t)
}

/// First `count` primitive Pythagorean triples `(p, q, r)`.
#[pyfunction]
fn pythagorean_angles(count: usize) -> Vec<(u64, u64, u64)> {
    circle::gen_pythagorean_angles(count)
        .into_iter()
        .map(|t| (t.p, t.q, t.r))
        .collect()
}

#[pyfunction]
fn construct_diophantine(py: Python<'_>, n: usize) -> PyResult<DiophantineSet> {
    let inner = py
        .detach(|| circle::construct_diophantine(n))
        .map_err(err)?;
    Ok(DiophantineSet { inner })
}

fn config(k: u64, max_dist: u64, mode: &str, target_n: Option<usize>) -> PyResult<SearchConfig> {
    let mode: SearchMode = mode.parse().map_err(err)?;
    let mut cfg = SearchConfig::new(k, max_dist, mode).map_err(err)?;
    cfg.target_n = target_n;
    Ok(cfg)
}

#[pyfunction(name = "search")]
#[pyo3(signature = (k, max_dist, mode="sets", target_n=None))]
fn run_search(
    py: Python<'_>,
    k: u64,
    max_dist: u64,
    mode: &str,
    target_n: Option<usize>,
) -> PyResult<SearchReport> {
    let cfg = config(k, max_dist, mode, target_n)?;
    let inner = py.detach(|| search::search(&cfg)).map_err(err)?;
    Ok(SearchReport { inner })
}

#[pyfunction]
#[pyo3(signature = (k, max_dist, mode="sets", target_n=None))]
fn brute_force_oracle(
    py: Python<'_>,
    k: u64,
    max_dist: u64,
    mode: &str,
    target_n: Option<usize>,
) -> PyResult<SearchReport> {
    let cfg = config(k, max_dist, mode, target_n)?;
    let inner = py
        .detach(|| search::brute_force_oracle(&cfg))
        .map_err(err)?;
    Ok(SearchReport { inner })
}

#[pyfunction]
fn n0_bound(k: u64) -> PyResult<u64> {
    bounds::n0_bound(k).map_err(err)
}

#[pyfunction]
fn concave_side_bound(k: u64) -> PyResult<u64> {
    bounds::concave_side_bound(k).map_err(err)
}

#[pyfunction]
fn concave_diagonal_bound(k: u64) -> PyResult<u64> {
    bounds::concave_diagonal_bound(k).map_err(err)
}

#[pyfunction]
fn convex_halfplane_bound(k: u64) -> PyResult<u64> {
    bounds::convex_halfplane_bound(k).map_err(err)
}

#[pyfunction]
fn claimed_n_range(py: Python<'_>, k: u64) -> PyResult<Option<Bound<'_, PyDict>>> {
    let Some(c) = bounds::claimed_n_range(k) else {
        return Ok(None);
    };
    let d = PyDict::new(py);
    d.set_item("k", c.k)?;
    d.set_item("convex", c.convex)?;
    d.set_item("concave", c.concave)?;
    d.set_item("unconfirmed", c.unconfirmed)?;
    d.set_item("note", c.note)?;
    Ok(Some(d))
}

/// `δ = |VP| − |VQ|` per side of line `PQ`, as a dict.
#[pyfunction]
fn halfplane_difference_profile<'py>(
    py: Python<'py>,
    set: &DiophantineSet,
    p: usize,
    q: usize,
    k: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let prof = bounds::halfplane_difference_profile(&set.inner, p, q, k).map_err(err)?;
    let d = PyDict::new(py);
    for g in [&prof.upper, &prof.lower] {
        let side = PyDict::new(py);
        side.set_item("vertices", g.vertices.clone())?;
        side.set_item("deltas", g.deltas.clone())?;
        side.set_item("strictly_monotone", g.strictly_monotone)?;
        side.set_item("distinct", g.distinct)?;
        d.set_item(
            if g.side == HalfPlane::Plus {
                "upper"
            } else {
                "lower"
            },
            side,
        )?;
    }
    d.set_item("within_range", prof.within_range())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (k=None, report=None))]
fn check_bounds(k: Option<u64>, report: Option<&SearchReport>) -> PyResult<BoundReport> {
    let inner = match (report, k) {
        (Some(r), _) => bounds::check_claims(&r.inner),
        (None, Some(k)) => CoreBoundReport::for_k(k).map_err(err)?,
        (None, None) => return Err(err("give k or a report")),
    };
    Ok(BoundReport { inner })
}

#[pymodule]
fn dngon(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<DiophantineSet>()?;
    m.add_class::<Witness>()?;
    m.add_class::<SearchReport>()?;
    m.add_class::<BoundReport>()?;
    m.add_function(wrap_pyfunction!(is_perfect_square, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(rational_sqrt, m)?)?;
    m.add_function(wrap_pyfunction!(cos_angle, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_cosines, m)?)?;
    m.add_function(wrap_pyfunction!(lemma1_check, m)?)?;
    m.add_function(wrap_pyfunction!(task1_check, m)?)?;
    m.add_function(wrap_pyfunction!(task2_check, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_inequality, m)?)?;
    m.add_function(wrap_pyfunction!(lemma2_integer_consequence, m)?)?;
    m.add_function(wrap_pyfunction!(pythagorean_angles, m)?)?;
    m.add_function(wrap_pyfunction!(construct_diophantine, m)?)?;
    m.add_function(wrap_pyfunction!(run_search, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(n0_bound, m)?)?;
    m.add_function(wrap_pyfunction!(concave_side_bound, m)?)?;
    m.add_function(wrap_pyfunction!(concave_diagonal_bound, m)?)?;
    m.add_function(wrap_pyfunction!(convex_halfplane_bound, m)?)?;
    m.add_function(wrap_pyfunction!(claimed_n_range, m)?)?;
    m.add_function(wrap_pyfunction!(halfplane_difference_profile, m)?)?;
    m.add_function(wrap_pyfunction!(check_bounds, m)?)?;
    Ok(())
}
