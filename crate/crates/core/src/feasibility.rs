//! Exact feasibility oracles and admission-control conditions.
//!
//! The duration oracle comes in two independent forms that must agree: the
//! closed form `max(max demand degree, odd-set density)` for primary
//! interference, and a linear program over independent-set columns solved
//! with exact simplex. The sufficient conditions (Shannon, the distance-1
//! degree/triangle test, the degree condition, the row constraints) and the
//! lower-bound machinery (clique bound, imperfection ratio) all compare
//! against exact rational thresholds.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Edge, Graph, NodeSet, ENUMERATION_NODE_CAP, ODD_HOLE_NODE_CAP};
use crate::interference::{ConflictGraph, PrimaryConflictGraph};
use crate::rational::{rat, Rat};
use crate::simplex;

/// Default cap on `|V(G)|` for odd-subset density enumeration.
pub const DENSITY_NODE_CAP: usize = 16;

/// Shannon threshold 2/3: demands are feasible when every node's demand
/// degree stays below it.
pub fn shannon_threshold() -> Rat {
    rat(2, 3)
}

/// Threshold 4/5 for the distance-1 degree and triangle conditions.
pub fn d1_threshold() -> Rat {
    rat(4, 5)
}

/// Per-link demands on a network graph: each edge carries the fraction of
/// every time unit it must be active. Optionally retains the raw rate pair
/// (demand `f`, capacity `C`) the fraction was derived from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DemandVector {
    demands: BTreeMap<Edge, Rat>,
    rates: BTreeMap<Edge, (Rat, Rat)>,
}

impl DemandVector {
    pub fn new(
        entries: impl IntoIterator<Item = ((usize, usize), Rat)>,
    ) -> Result<Self, Error> {
        let mut demands = BTreeMap::new();
        for ((u, v), value) in entries {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if value.is_negative() {
                return Err(Error::NegativeDemand {
                    key: Edge::new(u, v).to_string(),
                    value: value.to_string(),
                });
            }
            demands.insert(Edge::new(u, v), value);
        }
        Ok(DemandVector {
            demands,
            rates: BTreeMap::new(),
        })
    }

    /// Builds demands from rate pairs: the fraction for a link demanding
    /// `f` b/s on a link of capacity `C` b/s is exactly `f / C`.
    pub fn from_rates(
        entries: impl IntoIterator<Item = ((usize, usize), Rat, Rat)>,
    ) -> Result<Self, Error> {
        let mut demands = BTreeMap::new();
        let mut rates = BTreeMap::new();
        for ((u, v), f, c) in entries {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let edge = Edge::new(u, v);
            if !c.is_positive() {
                return Err(Error::NonPositiveCapacity {
                    key: edge.to_string(),
                });
            }
            if f.is_negative() {
                return Err(Error::NegativeDemand {
                    key: edge.to_string(),
                    value: f.to_string(),
                });
            }
            demands.insert(edge, &f / &c);
            rates.insert(edge, (f, c));
        }
        Ok(DemandVector { demands, rates })
    }

    /// Same demand on every edge of `g`.
    pub fn uniform(g: &Graph, value: Rat) -> Result<Self, Error> {
        Self::new(g.edges().iter().map(|e| (e.endpoints(), value.clone())))
    }

    pub fn get(&self, edge: &Edge) -> Option<&Rat> {
        self.demands.get(edge)
    }

    pub fn require(&self, edge: &Edge) -> Result<&Rat, Error> {
        self.demands.get(edge).ok_or(Error::MissingDemand(*edge))
    }

    /// Raw `(f, C)` pair, when the vector was built from rates.
    pub fn rate(&self, edge: &Edge) -> Option<&(Rat, Rat)> {
        self.rates.get(edge)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &Rat)> {
        self.demands.iter()
    }

    pub fn len(&self) -> usize {
        self.demands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.demands.is_empty()
    }

    /// Pulls demands onto an induced subgraph, given the relabeling map
    /// returned by [`Graph::induced_subgraph`].
    pub fn restrict(&self, sub: &Graph, map: &[usize]) -> Result<DemandVector, Error> {
        let mut entries = Vec::new();
        for e in sub.edges() {
            let original = Edge::new(map[e.0], map[e.1]);
            entries.push((e.endpoints(), self.require(&original)?.clone()));
        }
        DemandVector::new(entries)
    }

    /// Pointwise scaling by a nonnegative rational.
    pub fn scaled(&self, factor: &Rat) -> Result<DemandVector, Error> {
        if factor.is_negative() {
            return Err(Error::InvalidParameter(
                "scale factor must be nonnegative".into(),
            ));
        }
        DemandVector::new(
            self.demands
                .iter()
                .map(|(e, v)| (e.endpoints(), v * factor)),
        )
    }
}

/// Demands attached to the vertices of a conflict graph, validated against
/// its vertex count.
pub fn validate_vertex_demands(expected: usize, tau: &[Rat]) -> Result<(), Error> {
    if tau.len() != expected {
        return Err(Error::DemandLengthMismatch {
            expected,
            got: tau.len(),
        });
    }
    for (v, value) in tau.iter().enumerate() {
        if value.is_negative() {
            return Err(Error::NegativeDemand {
                key: format!("vertex {v}"),
                value: value.to_string(),
            });
        }
    }
    Ok(())
}

impl ConflictGraph<Edge> {
    /// Maps per-link demands onto the conflict-graph vertices (one per link).
    pub fn vertex_demands(&self, tau: &DemandVector) -> Result<Vec<Rat>, Error> {
        self.labels()
            .iter()
            .map(|e| tau.require(e).cloned())
            .collect()
    }
}

/// What a condition's bound value refers to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    Vertex(usize),
    Clique(NodeSet),
    OddSet(NodeSet),
    Triangle([usize; 3]),
}

/// Outcome of a sufficient condition: whether it accepts, the exact bound
/// it compared against its threshold, and where that bound is attained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub accepted: bool,
    pub bound_value: Rat,
    pub witness: Option<Witness>,
}

/// Exact LP optimum with its certificate: nonnegative durations on
/// independent sets that cover every vertex demand and sum to the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub value: Rat,
    pub column_weights: Vec<(NodeSet, Rat)>,
}

/// Demand degree at a node: the sum of demands over incident links.
pub fn demand_degree(g: &Graph, tau: &DemandVector, v: usize) -> Result<Rat, Error> {
    if v >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: v,
            n: g.node_count(),
        });
    }
    let mut sum = Rat::zero();
    for &w in g.neighbors(v) {
        sum += tau.require(&Edge::new(v, w))?;
    }
    Ok(sum)
}

/// Maximum demand degree over all nodes, with the lowest-id maximizer.
pub fn max_demand_degree(g: &Graph, tau: &DemandVector) -> Result<(Rat, Option<usize>), Error> {
    let mut best = Rat::zero();
    let mut node = None;
    for v in 0..g.node_count() {
        let deg = demand_degree(g, tau, v)?;
        if node.is_none() || deg > best {
            best = deg;
            node = Some(v);
        }
    }
    Ok((best, node))
}

/// Odd-set density and its maximizing subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityResult {
    pub value: Rat,
    pub witness: NodeSet,
}

/// Maximum, over odd vertex subsets `W` with `|W| >= 3`, of the total
/// demand inside `G[W]` divided by `(|W|-1)/2`, the matching capacity of an
/// odd set. Returns 0 with an empty witness when no such subset has edges.
pub fn density(g: &Graph, tau: &DemandVector) -> Result<DensityResult, Error> {
    density_with_cap(g, tau, DENSITY_NODE_CAP)
}

pub fn density_with_cap(g: &Graph, tau: &DemandVector, cap: usize) -> Result<DensityResult, Error> {
    let n = g.node_count();
    if n > cap.min(crate::graph::MASK_NODE_LIMIT) || n > 62 {
        return Err(Error::CapExceeded {
            what: "odd-set density",
            size: n,
            cap: cap.min(crate::graph::MASK_NODE_LIMIT),
        });
    }
    let zero = DensityResult {
        value: Rat::zero(),
        witness: NodeSet::new(),
    };
    if n < 3 || g.edge_count() == 0 {
        return Ok(zero);
    }

    // Scale all demands to a common denominator so subset sums are plain
    // integer additions.
    let mut denom = BigInt::one();
    for e in g.edges() {
        denom = denom.lcm(tau.require(e)?.denom());
    }
    let mut weight = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges() {
        let t = tau.require(e)?;
        let scaled = t.numer() * (&denom / t.denom());
        weight[e.0][e.1] = scaled.clone();
        weight[e.1][e.0] = scaled;
    }

    // sum[mask] = total scaled demand inside the induced subgraph on mask.
    let size = 1usize << n;
    let mut sums = vec![BigInt::zero(); size];
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut s = sums[rest].clone();
        for &u in g.neighbors(v) {
            if rest & (1 << u) != 0 {
                s += &weight[v][u];
            }
        }
        sums[mask] = s;
    }

    // best = max over odd masks of sums[mask] / ((k-1)/2), tracked as an
    // integer pair and compared by cross-multiplication.
    let mut best_num = BigInt::zero();
    let mut best_den = BigInt::one();
    let mut witness = NodeSet::new();
    for (mask, sum) in sums.iter().enumerate().skip(1) {
        let k = mask.count_ones() as usize;
        if k < 3 || k.is_multiple_of(2) || sum.is_zero() {
            continue;
        }
        let half = BigInt::from((k - 1) / 2);
        if sum * &best_den > &best_num * &half {
            best_num = sum.clone();
            best_den = half;
            witness = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        }
    }
    if best_num.is_zero() {
        return Ok(zero);
    }
    Ok(DensityResult {
        value: Rat::new(best_num, best_den * denom),
        witness,
    })
}

/// Minimum schedule duration for per-link demands under primary
/// interference: the larger of the maximum demand degree and the odd-set
/// density.
pub fn fractional_chromatic_index(g: &Graph, tau: &DemandVector) -> Result<Rat, Error> {
    fractional_chromatic_index_with_cap(g, tau, DENSITY_NODE_CAP)
}

pub fn fractional_chromatic_index_with_cap(
    g: &Graph,
    tau: &DemandVector,
    cap: usize,
) -> Result<Rat, Error> {
    let (delta, _) = max_demand_degree(g, tau)?;
    let lambda = density_with_cap(g, tau, cap)?.value;
    Ok(delta.max(lambda))
}

/// Minimum schedule duration for vertex demands on an arbitrary conflict
/// graph: the exact optimum of `min 1'x, Bx >= tau, x >= 0` over all
/// independent-set columns, solved by exact simplex. The certificate weights
/// are returned and re-checked.
pub fn fractional_chromatic_number_lp<L>(
    gc: &ConflictGraph<L>,
    tau: &[Rat],
) -> Result<LpResult, Error> {
    fractional_chromatic_number_lp_with_cap(gc, tau, ENUMERATION_NODE_CAP)
}

pub fn fractional_chromatic_number_lp_with_cap<L>(
    gc: &ConflictGraph<L>,
    tau: &[Rat],
    cap: usize,
) -> Result<LpResult, Error> {
    let n = gc.vertex_count();
    validate_vertex_demands(n, tau)?;
    if n == 0 {
        return Ok(LpResult {
            value: Rat::zero(),
            column_weights: Vec::new(),
        });
    }
    let sets = gc.graph().independent_sets_with_cap(cap)?;
    let columns: Vec<Vec<usize>> = sets
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.iter().copied().collect())
        .collect();
    let solution = simplex::solve_covering(n, &columns, tau);
    let column_weights: Vec<(NodeSet, Rat)> = solution
        .column_weights
        .into_iter()
        .map(|(j, w)| (columns[j].iter().copied().collect(), w))
        .collect();

    // The certificate must reproduce the value exactly.
    let mut coverage = vec![Rat::zero(); n];
    let mut total = Rat::zero();
    for (set, w) in &column_weights {
        total += w;
        for &v in set {
            coverage[v] += w;
        }
    }
    assert!(
        total == solution.value && coverage.iter().zip(tau).all(|(c, t)| c >= t),
        "simplex certificate failed exact re-evaluation"
    );

    Ok(LpResult {
        value: solution.value,
        column_weights,
    })
}

/// Maximum total demand over cliques of the conflict graph, a lower bound
/// on the required duration. The maximum over all cliques is attained on a
/// maximal one.
pub fn clique_bound<L>(gc: &ConflictGraph<L>, tau: &[Rat]) -> Result<(Rat, NodeSet), Error> {
    clique_bound_with_cap(gc, tau, ENUMERATION_NODE_CAP)
}

pub fn clique_bound_with_cap<L>(
    gc: &ConflictGraph<L>,
    tau: &[Rat],
    cap: usize,
) -> Result<(Rat, NodeSet), Error> {
    validate_vertex_demands(gc.vertex_count(), tau)?;
    let mut best = Rat::zero();
    let mut witness = NodeSet::new();
    for clique in gc.graph().maximal_cliques_with_cap(cap)? {
        let sum: Rat = clique.iter().map(|&v| tau[v].clone()).sum();
        if sum > best {
            best = sum;
            witness = clique;
        }
    }
    Ok((best, witness))
}

/// Worst-case ratio between the exact duration and the clique bound for a
/// conflict graph arising from primary interference: 1 when the graph has
/// no odd hole, else `g/(g-1)` for the shortest odd hole length `g`.
///
/// Only defined here for line graphs (the type restricts the input to
/// conflict graphs built by
/// [`crate::interference::primary_conflict_graph`]); the closed form does
/// not extend to arbitrary conflict graphs.
pub fn imperfection_ratio(gc: &PrimaryConflictGraph) -> Result<Rat, Error> {
    imperfection_ratio_with_cap(gc, ODD_HOLE_NODE_CAP)
}

pub fn imperfection_ratio_with_cap(
    gc: &PrimaryConflictGraph,
    cap: usize,
) -> Result<Rat, Error> {
    match gc.graph().min_odd_hole_length_with_cap(cap)? {
        None => Ok(Rat::one()),
        Some(g) => Ok(rat(g as i64, g as i64 - 1)),
    }
}

/// Row constraints: every vertex's own demand plus its neighbors' demands
/// must stay within `t`. Reports the largest closed-neighborhood sum and
/// the vertex attaining it.
pub fn check_row_constraints<L>(
    gc: &ConflictGraph<L>,
    tau: &[Rat],
    t: &Rat,
) -> Result<FeasibilityVerdict, Error> {
    let g = gc.graph();
    validate_vertex_demands(g.node_count(), tau)?;
    let mut bound = Rat::zero();
    let mut witness = None;
    for (v, own) in tau.iter().enumerate() {
        let mut sum = own.clone();
        for &w in g.neighbors(v) {
            sum += &tau[w];
        }
        if witness.is_none() || sum > bound {
            bound = sum;
            witness = Some(Witness::Vertex(v));
        }
    }
    Ok(FeasibilityVerdict {
        accepted: bound <= *t,
        bound_value: bound,
        witness,
    })
}

/// Degree condition: `tau(v) * (deg(v) + 1) <= 1` at every conflict vertex.
pub fn check_degree_condition<L>(
    gc: &ConflictGraph<L>,
    tau: &[Rat],
) -> Result<FeasibilityVerdict, Error> {
    let g = gc.graph();
    validate_vertex_demands(g.node_count(), tau)?;
    let mut bound = Rat::zero();
    let mut witness = None;
    for (v, own) in tau.iter().enumerate() {
        let value = own * Rat::from_integer(BigInt::from(g.degree(v) as i64 + 1));
        if witness.is_none() || value > bound {
            bound = value;
            witness = Some(Witness::Vertex(v));
        }
    }
    Ok(FeasibilityVerdict {
        accepted: bound <= Rat::one(),
        bound_value: bound,
        witness,
    })
}

/// Shannon condition on the network graph: accept iff the maximum demand
/// degree is at most 2/3. Sufficient for feasibility within one time unit;
/// worst case a factor 3/2 from optimal.
pub fn check_shannon_condition(g: &Graph, tau: &DemandVector) -> Result<FeasibilityVerdict, Error> {
    let (bound, node) = max_demand_degree(g, tau)?;
    Ok(FeasibilityVerdict {
        accepted: bound <= shannon_threshold(),
        bound_value: bound,
        witness: node.map(Witness::Vertex),
    })
}

/// All triangles of the network graph, ascending.
fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for e in g.edges() {
        for &w in g.neighbors(e.1) {
            if w > e.1 && g.has_edge(e.0, w) {
                out.push([e.0, e.1, w]);
            }
        }
    }
    out
}

/// Distance-1 condition: demand degree at every node and total demand on
/// every triangle of the network graph at most 4/5. Sufficient for
/// feasibility; worst case a factor 5/4 from optimal.
pub fn check_d1_condition(g: &Graph, tau: &DemandVector) -> Result<FeasibilityVerdict, Error> {
    let (deg_bound, node) = max_demand_degree(g, tau)?;
    let mut bound = deg_bound;
    let mut witness = node.map(Witness::Vertex);
    for tri in triangles(g) {
        let [a, b, c] = tri;
        let sum = tau.require(&Edge::new(a, b))?
            + tau.require(&Edge::new(a, c))?
            + tau.require(&Edge::new(b, c))?;
        if sum > bound {
            bound = sum;
            witness = Some(Witness::Triangle(tri));
        }
    }
    Ok(FeasibilityVerdict {
        accepted: bound <= d1_threshold(),
        bound_value: bound,
        witness,
    })
}
