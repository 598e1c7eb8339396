//! Python bindings exposing the admission-control library: graphs and the
//! combinatorial toolkit, conflict-graph construction under both
//! interference models, the exact feasibility oracles and conditions, the
//! distance-d algorithm, the flooding simulator, generators, text formats
//! and experiment runners.
//!
//! Exact rationals cross the boundary as `p/q` strings in both directions;
//! nothing is ever rounded through a float.

// Binding signatures mirror the Python-side tuples they produce.
#![allow(clippy::type_complexity)]

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qosadm::feasibility::{self, DemandVector};
use qosadm::rational::{format_rational, parse_rational, Rat};
use qosadm::{distalgo, experiment, gen, interference, io, simnet};

fn err(e: qosadm::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rat(s: &str) -> PyResult<Rat> {
    parse_rational(s).map_err(err)
}

fn parse_rats(values: &[String]) -> PyResult<Vec<Rat>> {
    values.iter().map(|s| parse_rat(s)).collect()
}

fn to_demands(entries: HashMap<(usize, usize), String>) -> PyResult<DemandVector> {
    let parsed = entries
        .into_iter()
        .map(|(k, v)| Ok((k, parse_rat(&v)?)))
        .collect::<PyResult<Vec<_>>>()?;
    DemandVector::new(parsed).map_err(err)
}

fn transmissions_from(
    raw: Vec<(usize, Vec<usize>)>,
) -> PyResult<Vec<interference::Transmission>> {
    raw.into_iter()
        .map(|(tx, rx)| interference::Transmission::new(tx, rx).map_err(err))
        .collect()
}

fn transmission_tuple(t: &interference::Transmission) -> (usize, Vec<usize>) {
    (t.transmitter(), t.receivers().iter().copied().collect())
}

/// Simple undirected graph over node ids `0..n`; doubles as a conflict
/// graph when vertices stand for links or transmissions.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Graph {
    inner: qosadm::graph::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph {
            inner: qosadm::graph::Graph::new(n, edges).map_err(err)?,
        })
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|e| e.endpoints()).collect()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.node_count() {
            return Err(PyValueError::new_err("node out of range"));
        }
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        if v >= self.inner.node_count() {
            return Err(PyValueError::new_err("node out of range"));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    /// Nodes within distance d of v.
    fn ball(&self, v: usize, d: usize) -> PyResult<Vec<usize>> {
        Ok(self.inner.ball(v, d).map_err(err)?.into_iter().collect())
    }

    /// Subgraph induced by `nodes`, plus the new-to-old relabeling map.
    fn induced_subgraph(&self, nodes: Vec<usize>) -> PyResult<(Graph, Vec<usize>)> {
        let set = nodes.into_iter().collect();
        let (sub, map) = self.inner.induced_subgraph(&set).map_err(err)?;
        Ok((Graph { inner: sub }, map))
    }

    /// Line graph plus the edge-to-vertex map.
    fn line_graph(&self) -> (Graph, HashMap<(usize, usize), usize>) {
        let (lg, map) = self.inner.line_graph();
        let dict = map
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.endpoints(), i))
            .collect();
        (Graph { inner: lg }, dict)
    }

    fn matchings(&self) -> PyResult<Vec<Vec<(usize, usize)>>> {
        Ok(self
            .inner
            .matchings()
            .map_err(err)?
            .into_iter()
            .map(|m| m.into_iter().map(|e| e.endpoints()).collect())
            .collect())
    }

    fn independent_sets(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .inner
            .independent_sets()
            .map_err(err)?
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect())
    }

    fn maximal_cliques(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .inner
            .maximal_cliques()
            .map_err(err)?
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect())
    }

    fn independence_number(&self) -> PyResult<usize> {
        self.inner.independence_number().map_err(err)
    }

    /// `(sigma, witness)` where the witness is `(center, leaves)` or None.
    fn induced_star_number(&self) -> PyResult<(usize, Option<(usize, Vec<usize>)>)> {
        let (sigma, witness) = self.inner.induced_star_number().map_err(err)?;
        Ok((
            sigma,
            witness.map(|w| (w.center, w.leaves.into_iter().collect())),
        ))
    }

    /// `(center, leaves)` of some induced claw, or None.
    fn find_claw(&self) -> Option<(usize, Vec<usize>)> {
        self.inner
            .find_claw()
            .map(|w| (w.center, w.leaves.to_vec()))
    }

    fn min_odd_hole_length(&self) -> PyResult<Option<usize>> {
        self.inner.min_odd_hole_length().map_err(err)
    }

    fn replace_vertex_with_clique(&self, v: usize, r: usize) -> PyResult<Graph> {
        Ok(Graph {
            inner: self.inner.replace_vertex_with_clique(v, r).map_err(err)?,
        })
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, edges={})",
            self.inner.node_count(),
            self.inner.edge_count()
        )
    }
}

/// Nodes on a line with a shared transmission radius and eastward
/// transmissions. Positions and the radius are exact `p/q` strings.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct LineNetwork {
    inner: interference::LineNetwork,
}

#[pymethods]
impl LineNetwork {
    #[new]
    fn new(
        positions: Vec<String>,
        radius: String,
        transmissions: Vec<(usize, Vec<usize>)>,
    ) -> PyResult<Self> {
        let positions = parse_rats(&positions)?;
        let inner = interference::LineNetwork::new(
            positions,
            parse_rat(&radius)?,
            transmissions_from(transmissions)?,
        )
        .map_err(err)?;
        Ok(LineNetwork { inner })
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn positions(&self) -> Vec<String> {
        self.inner.positions().iter().map(format_rational).collect()
    }

    fn radius(&self) -> String {
        format_rational(self.inner.radius())
    }

    fn transmissions(&self) -> Vec<(usize, Vec<usize>)> {
        self.inner
            .transmissions()
            .iter()
            .map(transmission_tuple)
            .collect()
    }

    fn spacing_satisfied(&self) -> bool {
        self.inner.spacing_satisfied()
    }

    fn spacing_violations(&self) -> Vec<usize> {
        self.inner.spacing_violations().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "LineNetwork(n={}, tx={}, spacing_ok={})",
            self.inner.node_count(),
            self.inner.transmissions().len(),
            self.inner.spacing_satisfied()
        )
    }
}

/// Outcome of an admission-control run.
#[pyclass(frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct DecisionReport {
    inner: distalgo::DecisionReport,
}

#[pymethods]
impl DecisionReport {
    #[getter]
    fn d(&self) -> usize {
        self.inner.d
    }

    fn alpha(&self) -> String {
        format_rational(&self.inner.alpha)
    }

    fn threshold(&self) -> String {
        format_rational(&self.inner.threshold)
    }

    /// `(node, estimate, feasible)` triples, sorted by node.
    fn estimates(&self) -> Vec<(usize, String, bool)> {
        self.inner
            .estimates
            .iter()
            .map(|e| (e.node, format_rational(&e.value), e.feasible))
            .collect()
    }

    /// `((u, v), accepted)` pairs, sorted by link.
    fn decisions(&self) -> Vec<((usize, usize), bool)> {
        self.inner
            .decisions
            .iter()
            .map(|f| (f.link.endpoints(), f.accepted))
            .collect()
    }

    fn all_accepted(&self) -> bool {
        self.inner.all_accepted()
    }

    /// The structured text rendering.
    fn text(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        let accepted = self.inner.decisions.iter().filter(|f| f.accepted).count();
        format!(
            "DecisionReport(d={}, accepted={}/{})",
            self.inner.d,
            accepted,
            self.inner.decisions.len()
        )
    }
}

#[pyfunction]
fn primary_conflict_graph(network: &Graph) -> (Graph, Vec<(usize, usize)>) {
    let gc = interference::primary_conflict_graph(&network.inner);
    let labels = gc.labels().iter().map(|e| e.endpoints()).collect();
    (
        Graph {
            inner: gc.graph().clone(),
        },
        labels,
    )
}

#[pyfunction]
fn protocol_conflict_graph(net: &LineNetwork) -> (Graph, Vec<(usize, Vec<usize>)>) {
    let gc = interference::protocol_conflict_graph(&net.inner);
    let labels = gc.labels().iter().map(transmission_tuple).collect();
    (
        Graph {
            inner: gc.graph().clone(),
        },
        labels,
    )
}

/// Interval adjacency test for eastward unicasts `a -> b` and `c -> d`
/// with `c >= a`: conflict iff `c` lies in `[a, 2b - a]`.
#[pyfunction]
fn unicast_adjacent(a: &str, b: &str, c: &str, d: &str) -> PyResult<bool> {
    interference::unicast_adjacent(&parse_rat(a)?, &parse_rat(b)?, &parse_rat(c)?, &parse_rat(d)?)
        .map_err(err)
}

/// Replaces multicasts by unicasts to the rightmost receiver and removes
/// duplicates; returns `((transmitter, receiver), multiplicity)` pairs.
#[pyfunction]
fn normalize_to_unicast(
    transmissions: Vec<(usize, Vec<usize>)>,
) -> PyResult<Vec<((usize, usize), usize)>> {
    let ts = transmissions_from(transmissions)?;
    Ok(interference::normalize_to_unicast(&ts)
        .map_err(err)?
        .into_iter()
        .map(|(t, count)| ((t.transmitter(), t.last_receiver()), count))
        .collect())
}

#[pyfunction]
fn demand_degree(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
    v: usize,
) -> PyResult<String> {
    let tau = to_demands(demands)?;
    Ok(format_rational(
        &feasibility::demand_degree(&g.inner, &tau, v).map_err(err)?,
    ))
}

#[pyfunction]
fn max_demand_degree(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
) -> PyResult<(String, Option<usize>)> {
    let tau = to_demands(demands)?;
    let (value, node) = feasibility::max_demand_degree(&g.inner, &tau).map_err(err)?;
    Ok((format_rational(&value), node))
}

/// Odd-set density: `(value, witness nodes)`.
#[pyfunction]
fn density(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
) -> PyResult<(String, Vec<usize>)> {
    let tau = to_demands(demands)?;
    let result = feasibility::density(&g.inner, &tau).map_err(err)?;
    Ok((
        format_rational(&result.value),
        result.witness.into_iter().collect(),
    ))
}

/// Exact minimum schedule duration under primary interference.
#[pyfunction]
fn fractional_chromatic_index(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
) -> PyResult<String> {
    let tau = to_demands(demands)?;
    Ok(format_rational(
        &feasibility::fractional_chromatic_index(&g.inner, &tau).map_err(err)?,
    ))
}

/// Exact LP duration on a conflict graph with per-vertex demands:
/// `(value, [(independent set, weight)])`.
#[pyfunction]
fn fractional_chromatic_number_lp(
    gc: &Graph,
    tau: Vec<String>,
) -> PyResult<(String, Vec<(Vec<usize>, String)>)> {
    let gc = interference::ConflictGraph::from_graph(gc.inner.clone());
    let result =
        feasibility::fractional_chromatic_number_lp(&gc, &parse_rats(&tau)?).map_err(err)?;
    Ok((
        format_rational(&result.value),
        result
            .column_weights
            .into_iter()
            .map(|(set, w)| (set.into_iter().collect(), format_rational(&w)))
            .collect(),
    ))
}

#[pyfunction]
fn clique_bound(gc: &Graph, tau: Vec<String>) -> PyResult<(String, Vec<usize>)> {
    let gc = interference::ConflictGraph::from_graph(gc.inner.clone());
    let (value, witness) = feasibility::clique_bound(&gc, &parse_rats(&tau)?).map_err(err)?;
    Ok((format_rational(&value), witness.into_iter().collect()))
}

/// Imperfection ratio of the primary-model conflict graph of `network`:
/// 1 without odd holes, else `g/(g-1)` for the shortest odd hole length g.
#[pyfunction]
fn imperfection_ratio_of_network(network: &Graph) -> PyResult<String> {
    let gc = interference::primary_conflict_graph(&network.inner);
    Ok(format_rational(
        &feasibility::imperfection_ratio(&gc).map_err(err)?,
    ))
}

#[pyfunction]
fn check_shannon_condition(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
) -> PyResult<(bool, String)> {
    let tau = to_demands(demands)?;
    let v = feasibility::check_shannon_condition(&g.inner, &tau).map_err(err)?;
    Ok((v.accepted, format_rational(&v.bound_value)))
}

#[pyfunction]
fn check_d1_condition(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
) -> PyResult<(bool, String)> {
    let tau = to_demands(demands)?;
    let v = feasibility::check_d1_condition(&g.inner, &tau).map_err(err)?;
    Ok((v.accepted, format_rational(&v.bound_value)))
}

#[pyfunction]
fn check_degree_condition(gc: &Graph, tau: Vec<String>) -> PyResult<(bool, String)> {
    let gc = interference::ConflictGraph::from_graph(gc.inner.clone());
    let v = feasibility::check_degree_condition(&gc, &parse_rats(&tau)?).map_err(err)?;
    Ok((v.accepted, format_rational(&v.bound_value)))
}

#[pyfunction]
fn check_row_constraints(gc: &Graph, tau: Vec<String>, t: &str) -> PyResult<(bool, String)> {
    let gc = interference::ConflictGraph::from_graph(gc.inner.clone());
    let v = feasibility::check_row_constraints(&gc, &parse_rats(&tau)?, &parse_rat(t)?)
        .map_err(err)?;
    Ok((v.accepted, format_rational(&v.bound_value)))
}

/// Guarantee factor `(2d+3)/(2d+2)` of the distance-d algorithm.
#[pyfunction]
fn alpha(d: usize) -> String {
    format_rational(&distalgo::alpha(d))
}

#[pyfunction]
fn admission_threshold(d: usize) -> String {
    format_rational(&distalgo::admission_threshold(d))
}

#[pyfunction]
fn local_estimate(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
    v: usize,
    d: usize,
) -> PyResult<String> {
    let tau = to_demands(demands)?;
    Ok(format_rational(
        &distalgo::local_estimate(&g.inner, &tau, v, d).map_err(err)?,
    ))
}

#[pyfunction]
fn global_local_bound(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
    d: usize,
) -> PyResult<(String, Option<usize>)> {
    let tau = to_demands(demands)?;
    let (value, node) = distalgo::global_local_bound(&g.inner, &tau, d).map_err(err)?;
    Ok((format_rational(&value), node))
}

#[pyfunction]
fn admission_control_reference(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
    d: usize,
) -> PyResult<DecisionReport> {
    let tau = to_demands(demands)?;
    Ok(DecisionReport {
        inner: distalgo::admission_control_reference(&g.inner, &tau, d).map_err(err)?,
    })
}

/// Distributed execution via distance-d flooding:
/// `(report, trace export)`.
#[pyfunction]
fn run_distributed(
    g: &Graph,
    demands: HashMap<(usize, usize), String>,
    d: usize,
) -> PyResult<(DecisionReport, String)> {
    let tau = to_demands(demands)?;
    let (report, trace) = simnet::run_distributed(&g.inner, &tau, d).map_err(err)?;
    Ok((DecisionReport { inner: report }, trace.export()))
}

/// Floods one message with hop budget d: `(delivered nodes, trace export)`.
#[pyfunction]
fn run_flood(g: &Graph, origin: usize, feasible: bool, d: usize) -> PyResult<(Vec<usize>, String)> {
    let verdict = if feasible {
        simnet::Verdict::Feasible
    } else {
        simnet::Verdict::Infeasible
    };
    let outcome = simnet::run_flood(&g.inner, origin, verdict, d).map_err(err)?;
    Ok((
        outcome.delivered.into_iter().collect(),
        outcome.trace.export(),
    ))
}

#[pyfunction]
fn gen_cycle(n: usize) -> PyResult<Graph> {
    Ok(Graph {
        inner: gen::cycle(n).map_err(err)?,
    })
}

#[pyfunction]
fn gen_path(n: usize) -> PyResult<Graph> {
    Ok(Graph {
        inner: gen::path(n).map_err(err)?,
    })
}

#[pyfunction]
fn gen_star(n: usize) -> PyResult<Graph> {
    Ok(Graph {
        inner: gen::star(n).map_err(err)?,
    })
}

#[pyfunction]
fn gen_random_graph(n: usize, p: &str, seed: u64) -> PyResult<Graph> {
    Ok(Graph {
        inner: gen::random_graph(n, &parse_rat(p)?, seed).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (n, seed, multicast = false))]
fn gen_random_line_network(n: usize, seed: u64, multicast: bool) -> PyResult<LineNetwork> {
    let inner = if multicast {
        gen::random_line_network_mixed(n, seed).map_err(err)?
    } else {
        gen::random_line_network(n, seed).map_err(err)?
    };
    Ok(LineNetwork { inner })
}

/// The 8-node line network whose protocol conflict graph contains a claw.
#[pyfunction]
fn claw_witness_network() -> PyResult<LineNetwork> {
    Ok(LineNetwork {
        inner: experiment::claw_witness_network().map_err(err)?,
    })
}

#[pyfunction]
fn parse_graph(text: &str) -> PyResult<Graph> {
    Ok(Graph {
        inner: io::parse_graph(text).map_err(err)?,
    })
}

#[pyfunction]
fn write_graph(g: &Graph) -> String {
    io::write_graph(&g.inner)
}

#[pyfunction]
fn parse_line_network(text: &str) -> PyResult<LineNetwork> {
    Ok(LineNetwork {
        inner: io::parse_line_network(text).map_err(err)?,
    })
}

#[pyfunction]
fn write_line_network(net: &LineNetwork) -> String {
    io::write_line_network(&net.inner)
}

#[pyfunction]
fn parse_edge_demands(text: &str) -> PyResult<HashMap<(usize, usize), String>> {
    Ok(io::parse_edge_demands(text)
        .map_err(err)?
        .iter()
        .map(|(e, v)| (e.endpoints(), format_rational(v)))
        .collect())
}

/// Runs a named experiment. Returns `(all_pass, json report, human table)`.
#[pyfunction]
#[pyo3(signature = (name, seed = 0, instances = None, n_values = None, d_values = None))]
fn run_experiment(
    name: &str,
    seed: u64,
    instances: Option<usize>,
    n_values: Option<Vec<usize>>,
    d_values: Option<Vec<usize>>,
) -> PyResult<(bool, String, String)> {
    let parsed: experiment::ExperimentName = name.parse().map_err(err)?;
    let mut spec = experiment::ExperimentSpec::new(parsed).with_seed(seed);
    if let Some(instances) = instances {
        spec.instances = instances;
    }
    if let Some(n_values) = n_values {
        spec.n_values = n_values;
    }
    if let Some(d_values) = d_values {
        spec.d_values = d_values;
    }
    let report = experiment::run_experiment(&spec).map_err(err)?;
    Ok((report.all_pass, report.to_json(), report.human_table()))
}

#[pymodule]
fn qosadm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<LineNetwork>()?;
    m.add_class::<DecisionReport>()?;

    m.add_function(wrap_pyfunction!(primary_conflict_graph, m)?)?;
    m.add_function(wrap_pyfunction!(protocol_conflict_graph, m)?)?;
    m.add_function(wrap_pyfunction!(unicast_adjacent, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_to_unicast, m)?)?;

    m.add_function(wrap_pyfunction!(demand_degree, m)?)?;
    m.add_function(wrap_pyfunction!(max_demand_degree, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_chromatic_index, m)?)?;
    m.add_function(wrap_pyfunction!(fractional_chromatic_number_lp, m)?)?;
    m.add_function(wrap_pyfunction!(clique_bound, m)?)?;
    m.add_function(wrap_pyfunction!(imperfection_ratio_of_network, m)?)?;
    m.add_function(wrap_pyfunction!(check_shannon_condition, m)?)?;
    m.add_function(wrap_pyfunction!(check_d1_condition, m)?)?;
    m.add_function(wrap_pyfunction!(check_degree_condition, m)?)?;
    m.add_function(wrap_pyfunction!(check_row_constraints, m)?)?;

    m.add_function(wrap_pyfunction!(alpha, m)?)?;
    m.add_function(wrap_pyfunction!(admission_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(local_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(global_local_bound, m)?)?;
    m.add_function(wrap_pyfunction!(admission_control_reference, m)?)?;
    m.add_function(wrap_pyfunction!(run_distributed, m)?)?;
    m.add_function(wrap_pyfunction!(run_flood, m)?)?;

    m.add_function(wrap_pyfunction!(gen_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(gen_path, m)?)?;
    m.add_function(wrap_pyfunction!(gen_star, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_graph, m)?)?;
    m.add_function(wrap_pyfunction!(gen_random_line_network, m)?)?;
    m.add_function(wrap_pyfunction!(claw_witness_network, m)?)?;

    m.add_function(wrap_pyfunction!(parse_graph, m)?)?;
    m.add_function(wrap_pyfunction!(write_graph, m)?)?;
    m.add_function(wrap_pyfunction!(parse_line_network, m)?)?;
    m.add_function(wrap_pyfunction!(write_line_network, m)?)?;
    m.add_function(wrap_pyfunction!(parse_edge_demands, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;

    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
