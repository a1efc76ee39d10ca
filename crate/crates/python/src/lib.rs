//! Python bindings for hyperlab.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hyperlab::abelian::{AbelianGroup, GroupElement};
use hyperlab::harness::{run_sweep as run_sweep_rs, write_csv, SweepConfig, SweepKind};
use hyperlab::hypergraph::Hypergraph;
use hyperlab::offset::{self, OffsetCycleCertificate, SearchBudget, SearchOutcome, ThresholdMode};
use hyperlab::trail::{self, TConnectivity, TrailCertificate, TrailMode, TrailSearch};
use hyperlab::weighting::{self, GroupColoring};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type DominoTuple = (usize, Vec<usize>, usize);
type WeightList = Vec<(Vec<usize>, Vec<u64>)>;

fn trail_tuples(t: &TrailCertificate) -> Vec<DominoTuple> {
    t.dominoes
        .iter()
        .map(|d| (d.start, d.block.clone(), d.end))
        .collect()
}

/// A k-uniform hypergraph on vertices 0..n.
#[pyclass(name = "Hypergraph", frozen)]
struct PyHypergraph(Hypergraph);

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        Hypergraph::new(n, k, &edges).map(Self).map_err(value_err)
    }

    #[staticmethod]
    fn complete(n: usize, k: usize) -> PyResult<Self> {
        Hypergraph::complete(n, k).map(Self).map_err(value_err)
    }

    /// H(n, p, k) drawn from `seed`.
    #[staticmethod]
    fn sample(n: usize, k: usize, p: f64, seed: u64) -> PyResult<Self> {
        Hypergraph::sample(n, k, p, seed)
            .map(Self)
            .map_err(value_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Hypergraph::parse(text).map(Self).map_err(value_err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn edges(&self) -> Vec<Vec<usize>> {
        self.0.edges().map(<[usize]>::to_vec).collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.0.n() {
            return Err(value_err(format!("vertex {v} out of range")));
        }
        Ok(self.0.degree(v))
    }

    fn __contains__(&self, edge: Vec<usize>) -> bool {
        self.0.contains(&edge)
    }

    fn __len__(&self) -> usize {
        self.0.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(n={}, k={}, edges={})",
            self.0.n(),
            self.0.k(),
            self.0.edge_count()
        )
    }
}

/// Finite abelian group Z_{d1} x ... x Z_{dr}; elements are tuples of residues.
#[pyclass(name = "AbelianGroup", frozen)]
struct PyAbelianGroup(AbelianGroup);

impl PyAbelianGroup {
    fn elem(&self, residues: Vec<i64>) -> PyResult<GroupElement> {
        self.0.element(&residues).map_err(value_err)
    }
}

#[pymethods]
impl PyAbelianGroup {
    #[new]
    fn new(moduli: Vec<u64>) -> PyResult<Self> {
        AbelianGroup::new(moduli).map(Self).map_err(value_err)
    }

    /// From a spec such as "5" or "2x2".
    #[staticmethod]
    fn parse(spec: &str) -> PyResult<Self> {
        spec.parse().map(Self).map_err(value_err)
    }

    #[getter]
    fn order(&self) -> u64 {
        self.0.order()
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        self.0
            .elements()
            .iter()
            .map(|g| g.residues().to_vec())
            .collect()
    }

    fn add(&self, a: Vec<i64>, b: Vec<i64>) -> PyResult<Vec<u64>> {
        let s = self
            .0
            .add(&self.elem(a)?, &self.elem(b)?)
            .map_err(value_err)?;
        Ok(s.residues().to_vec())
    }

    fn scalar_mul(&self, m: u64, g: Vec<i64>) -> PyResult<Vec<u64>> {
        let r = self.0.scalar_mul(m, &self.elem(g)?).map_err(value_err)?;
        Ok(r.residues().to_vec())
    }

    /// The unique h with k·h = g; requires gcd(k, d_i) = 1 for every modulus.
    fn solve_scaled(&self, k: u64, g: Vec<i64>) -> PyResult<Vec<u64>> {
        let r = self.0.solve_scaled(k, &self.elem(g)?).map_err(value_err)?;
        Ok(r.residues().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup('{}')", self.0)
    }
}

/// `("found", groups)`, `("none", None)` or `("budget", None)`.
#[pyfunction]
#[pyo3(signature = (h, l, budget = SweepConfig::DEFAULT_BUDGET))]
fn find_offset_cycle(
    h: &PyHypergraph,
    l: usize,
    budget: u64,
) -> PyResult<(&'static str, Option<Vec<Vec<usize>>>)> {
    let budget = SearchBudget::new(budget).map_err(value_err)?;
    Ok(
        match offset::find_offset_cycle(&h.0, l, budget).map_err(value_err)? {
            SearchOutcome::Found(c) => ("found", Some(c.groups)),
            SearchOutcome::NoCycle => ("none", None),
            SearchOutcome::BudgetExceeded => ("budget", None),
        },
    )
}

/// `None` if the group sequence is an ℓ-offset Hamilton cycle of `h`,
/// otherwise the reason it is not.
#[pyfunction]
fn verify_offset_cycle(
    h: &PyHypergraph,
    groups: Vec<Vec<usize>>,
    l: usize,
) -> PyResult<Option<String>> {
    let cert = OffsetCycleCertificate::new(groups);
    let verdict = offset::verify_offset_cycle(&h.0, &cert, l).map_err(value_err)?;
    Ok(verdict.err().map(|v| v.to_string()))
}

/// Closed-form cycle count of the complete hypergraph as a `Fraction`.
#[pyfunction]
fn gamma_count(py: Python<'_>, n: usize, k: usize, l: usize) -> PyResult<Py<PyAny>> {
    let g = offset::gamma_count(n, k, l).map_err(value_err)?;
    let fraction = py.import("fractions")?.getattr("Fraction")?;
    Ok(fraction.call1((g.to_string(),))?.unbind())
}

#[pyfunction]
fn brute_force_cycle_count(n: usize, k: usize, l: usize) -> PyResult<u64> {
    offset::brute_force_cycle_count(n, k, l).map_err(value_err)
}

#[pyfunction]
fn ln_expected_cycle_count(n: usize, k: usize, l: usize, p: f64) -> PyResult<f64> {
    offset::ln_expected_cycle_count(n, k, l, p).map_err(value_err)
}

/// `(value, validity)` for mode "sharp" or "conjectural-l1".
#[pyfunction]
#[pyo3(signature = (n, k, l, mode = "sharp"))]
fn offset_threshold(n: usize, k: usize, l: usize, mode: &str) -> PyResult<(f64, String)> {
    let mode: ThresholdMode = mode.parse().map_err(value_err)?;
    let t = offset::offset_threshold(n, k, l, mode).map_err(value_err)?;
    Ok((t.value, t.validity.to_string()))
}

#[pyfunction]
fn t_threshold(n: usize, k: usize) -> f64 {
    trail::t_threshold(n, k)
}

#[pyfunction]
fn length2_absence_prob(n: usize, k: usize, p: f64) -> f64 {
    trail::length2_absence_prob(n, k, p)
}

/// `("found", [(s, block, t), ...])`, `("none", None)` or `("bound", None)`.
#[pyfunction]
#[pyo3(signature = (h, u, v, max_dominoes = None))]
fn find_trail(
    h: &PyHypergraph,
    u: usize,
    v: usize,
    max_dominoes: Option<usize>,
) -> PyResult<(&'static str, Option<Vec<DominoTuple>>)> {
    let bound = max_dominoes.unwrap_or(h.0.n());
    Ok(
        match trail::find_trail(&h.0, u, v, bound).map_err(value_err)? {
            TrailSearch::Found(t) => ("found", Some(trail_tuples(&t))),
            TrailSearch::NotFound { exhausted: true } => ("none", None),
            TrailSearch::NotFound { exhausted: false } => ("bound", None),
        },
    )
}

/// `None` if the dominoes form a uv-trail of `h`, otherwise the reason.
#[pyfunction]
#[pyo3(signature = (h, dominoes, u, v, strict = false))]
fn verify_trail(
    h: &PyHypergraph,
    dominoes: Vec<DominoTuple>,
    u: usize,
    v: usize,
    strict: bool,
) -> PyResult<Option<String>> {
    let cert = TrailCertificate::new(
        dominoes
            .into_iter()
            .map(|(s, b, t)| hyperlab::domino::Domino::new(s, b, t))
            .collect(),
    );
    let mode = if strict {
        TrailMode::Strict
    } else {
        TrailMode::Positional
    };
    let verdict = trail::verify_trail(&h.0, &cert, u, v, mode).map_err(value_err)?;
    Ok(verdict.err().map(|e| e.to_string()))
}

#[pyfunction]
fn has_length2_trail(h: &PyHypergraph, u: usize, v: usize) -> PyResult<bool> {
    trail::has_length2_trail(&h.0, u, v).map_err(value_err)
}

/// `("connected", None)`, `("not-connected", (u, v))` or `("undetermined", (u, v))`.
#[pyfunction]
#[pyo3(signature = (h, max_dominoes = None))]
fn is_t_connected(
    h: &PyHypergraph,
    max_dominoes: Option<usize>,
) -> (&'static str, Option<(usize, usize)>) {
    match trail::is_t_connected(&h.0, max_dominoes.unwrap_or(h.0.n())).verdict {
        TConnectivity::Connected => ("connected", None),
        TConnectivity::NotConnected { u, v } => ("not-connected", Some((u, v))),
        TConnectivity::Undetermined { u, v } => ("undetermined", Some((u, v))),
    }
}

/// Edge weighting whose vertex sums equal `target`. Returns the non-identity
/// weights as `(edge, residues)` pairs and the number of correction rounds.
#[pyfunction]
#[pyo3(signature = (h, group, target, max_dominoes = None))]
fn realize_weighting(
    h: &PyHypergraph,
    group: &PyAbelianGroup,
    target: Vec<Vec<i64>>,
    max_dominoes: Option<usize>,
) -> PyResult<(WeightList, usize)> {
    let colors = target
        .into_iter()
        .map(|r| group.elem(r))
        .collect::<PyResult<Vec<_>>>()?;
    let coloring = GroupColoring::new(group.0.clone(), colors).map_err(value_err)?;
    let r = weighting::realize_weighting(&h.0, &coloring, max_dominoes.unwrap_or(h.0.n()))
        .map_err(value_err)?;
    let weights = r
        .weighting
        .support()
        .map(|(id, w)| (h.0.edge(id).to_vec(), w.residues().to_vec()))
        .collect();
    Ok((weights, r.rounds.len()))
}

/// Runs a sweep and returns its CSV text. `kind` is "offset" (needs `l`) or
/// "tconnect".
#[pyfunction]
#[pyo3(signature = (kind, k, n_list, multipliers, trials, seed, l = None, budget = SweepConfig::DEFAULT_BUDGET, threads = None))]
#[allow(clippy::too_many_arguments)]
fn run_sweep(
    py: Python<'_>,
    kind: &str,
    k: usize,
    n_list: Vec<usize>,
    multipliers: Vec<f64>,
    trials: u64,
    seed: u64,
    l: Option<usize>,
    budget: u64,
    threads: Option<usize>,
) -> PyResult<String> {
    let kind = match (kind, l) {
        ("offset", Some(l)) => SweepKind::OffsetCycle { l },
        ("offset", None) => return Err(value_err("offset sweeps need l")),
        ("tconnect", _) => SweepKind::TConnect,
        (other, _) => return Err(value_err(format!("unknown kind {other:?}"))),
    };
    let mut config = SweepConfig::new(kind, k, n_list, multipliers, trials, seed);
    config.budget = budget;
    config.threads = threads;
    let records = py.detach(|| run_sweep_rs(&config)).map_err(value_err)?;
    Ok(write_csv(&records))
}

#[pymodule]
fn pyhyperlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_class::<PyAbelianGroup>()?;
    m.add_function(wrap_pyfunction!(find_offset_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(verify_offset_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_count, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_cycle_count, m)?)?;
    m.add_function(wrap_pyfunction!(ln_expected_cycle_count, m)?)?;
    m.add_function(wrap_pyfunction!(offset_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(t_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(length2_absence_prob, m)?)?;
    m.add_function(wrap_pyfunction!(find_trail, m)?)?;
    m.add_function(wrap_pyfunction!(verify_trail, m)?)?;
    m.add_function(wrap_pyfunction!(has_length2_trail, m)?)?;
    m.add_function(wrap_pyfunction!(is_t_connected, m)?)?;
    m.add_function(wrap_pyfunction!(realize_weighting, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    Ok(())
}
