//! Conflict-graph construction from physical network descriptions.
//!
//! Two interference models are covered: the primary model, where two links
//! conflict iff they share an endpoint (the conflict graph is the line graph
//! of the network graph), and the protocol model for line networks, where
//! conflicts between transmissions follow distance-based rules evaluated
//! with exact rational positions.

use std::collections::BTreeSet;
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{Edge, Graph};
use crate::rational::Rat;

/// A (multicast) transmission: one transmitter, one or two receivers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transmission {
    transmitter: usize,
    receivers: BTreeSet<usize>,
}

impl Transmission {
    pub fn new(
        transmitter: usize,
        receivers: impl IntoIterator<Item = usize>,
    ) -> Result<Self, Error> {
        let receivers: BTreeSet<usize> = receivers.into_iter().collect();
        if receivers.contains(&transmitter) {
            return Err(Error::TransmitterIsReceiver(transmitter));
        }
        if receivers.is_empty() || receivers.len() > 2 {
            return Err(Error::ReceiverCount {
                transmitter,
                count: receivers.len(),
            });
        }
        Ok(Transmission {
            transmitter,
            receivers,
        })
    }

    pub fn unicast(transmitter: usize, receiver: usize) -> Result<Self, Error> {
        Self::new(transmitter, [receiver])
    }

    pub fn transmitter(&self) -> usize {
        self.transmitter
    }

    pub fn receivers(&self) -> &BTreeSet<usize> {
        &self.receivers
    }

    pub fn is_unicast(&self) -> bool {
        self.receivers.len() == 1
    }

    /// Rightmost receiver (node ids are ordered by position in a line
    /// network).
    pub fn last_receiver(&self) -> usize {
        *self.receivers.iter().next_back().expect("nonempty")
    }
}

impl fmt::Display for Transmission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rx: Vec<String> = self.receivers.iter().map(|r| r.to_string()).collect();
        write!(f, "{} -> {}", self.transmitter, rx.join(","))
    }
}

/// Nodes on a line with a common transmission radius and a set of valid
/// eastward transmissions. Node ids follow position order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineNetwork {
    positions: Vec<Rat>,
    radius: Rat,
    transmissions: Vec<Transmission>,
    spacing_violations: Vec<usize>,
}

impl LineNetwork {
    /// Validates raw inputs: positions strictly increasing, radius positive,
    /// every transmission eastward and within radius. The spacing constraint
    /// `x_{i+3} - x_i > r_T` is recorded as a flag, not an error, so callers
    /// can study networks that violate it.
    pub fn new(
        positions: Vec<Rat>,
        radius: Rat,
        transmissions: Vec<Transmission>,
    ) -> Result<Self, Error> {
        if radius <= Rat::zero() {
            return Err(Error::InvalidParameter(
                "transmission radius must be positive".into(),
            ));
        }
        for i in 1..positions.len() {
            if positions[i - 1] >= positions[i] {
                return Err(Error::PositionsNotIncreasing { index: i });
            }
        }
        let n = positions.len();
        for t in &transmissions {
            if t.transmitter >= n {
                return Err(Error::NodeOutOfRange {
                    node: t.transmitter,
                    n,
                });
            }
            for &r in &t.receivers {
                if r >= n {
                    return Err(Error::NodeOutOfRange { node: r, n });
                }
                if positions[r] < positions[t.transmitter] {
                    return Err(Error::WestwardReceiver {
                        transmitter: t.transmitter,
                        receiver: r,
                    });
                }
                if &positions[r] - &positions[t.transmitter] > radius {
                    return Err(Error::ReceiverNotReachable {
                        transmitter: t.transmitter,
                        receiver: r,
                    });
                }
            }
        }
        let spacing_violations = (0..n.saturating_sub(3))
            .filter(|&i| &positions[i + 3] - &positions[i] <= radius)
            .collect();
        Ok(LineNetwork {
            positions,
            radius,
            transmissions,
            spacing_violations,
        })
    }

    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[Rat] {
        &self.positions
    }

    pub fn radius(&self) -> &Rat {
        &self.radius
    }

    pub fn transmissions(&self) -> &[Transmission] {
        &self.transmissions
    }

    /// Indices `i` where `x_{i+3} - x_i <= r_T`, i.e. where some node could
    /// reach three or more nodes to its right.
    pub fn spacing_violations(&self) -> &[usize] {
        &self.spacing_violations
    }

    pub fn spacing_satisfied(&self) -> bool {
        self.spacing_violations.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> Rat {
        let d = &self.positions[i] - &self.positions[j];
        if d < Rat::zero() {
            -d
        } else {
            d
        }
    }

    /// Closed position interval spanned by a transmission: from the
    /// transmitter to its rightmost receiver.
    pub fn span(&self, t: &Transmission) -> (Rat, Rat) {
        (
            self.positions[t.transmitter].clone(),
            self.positions[t.last_receiver()].clone(),
        )
    }

    /// Same nodes and radius, different transmission set.
    pub fn with_transmissions(&self, transmissions: Vec<Transmission>) -> Result<Self, Error> {
        LineNetwork::new(self.positions.clone(), self.radius.clone(), transmissions)
    }
}

/// A conflict graph together with the objects its vertices stand for:
/// network links under the primary model, transmissions under the protocol
/// model, or unit labels for conflict graphs given directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph<L> {
    graph: Graph,
    labels: Vec<L>,
}

pub type PrimaryConflictGraph = ConflictGraph<Edge>;
pub type ProtocolConflictGraph = ConflictGraph<Transmission>;

impl<L> ConflictGraph<L> {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> &L {
        &self.labels[vertex]
    }
}

impl ConflictGraph<()> {
    /// Wraps a conflict graph given directly, without physical provenance.
    pub fn from_graph(graph: Graph) -> Self {
        let labels = vec![(); graph.node_count()];
        ConflictGraph { graph, labels }
    }
}

/// Conflict graph under the primary interference model: the line graph of
/// the network graph, with each vertex labeled by its link.
pub fn primary_conflict_graph(network: &Graph) -> PrimaryConflictGraph {
    let (graph, map) = network.line_graph();
    ConflictGraph {
        graph,
        labels: map.edges().to_vec(),
    }
}

/// Whether two valid transmissions interfere under the protocol model.
///
/// The five conditions: (a) shared transmitter; (b) one transmitter is the
/// other's receiver; (c) shared receiver; (d)/(e) some receiver is at least
/// as close to the other transmitter as to its own. Ties in (d)/(e) count
/// as interference: a receiver equidistant between two transmitters is not
/// strictly closest to its own, so the transmission cannot succeed.
pub fn transmissions_conflict(net: &LineNetwork, t1: &Transmission, t2: &Transmission) -> bool {
    if t1.transmitter == t2.transmitter {
        return true; // (a)
    }
    if t2.receivers.contains(&t1.transmitter) || t1.receivers.contains(&t2.transmitter) {
        return true; // (b)
    }
    if t1.receivers.intersection(&t2.receivers).next().is_some() {
        return true; // (c)
    }
    let at_least_as_close = |other_tx: usize, own_tx: usize, rx: &BTreeSet<usize>| {
        rx.iter()
            .any(|&j| net.distance(other_tx, j) <= net.distance(own_tx, j))
    };
    at_least_as_close(t2.transmitter, t1.transmitter, &t1.receivers) // (d)
        || at_least_as_close(t1.transmitter, t2.transmitter, &t2.receivers) // (e)
}

/// Conflict graph of a line network under the protocol model: one vertex
/// per transmission, adjacency from [`transmissions_conflict`].
pub fn protocol_conflict_graph(net: &LineNetwork) -> ProtocolConflictGraph {
    let ts = net.transmissions();
    let mut pairs = Vec::new();
    for i in 0..ts.len() {
        for j in (i + 1)..ts.len() {
            if transmissions_conflict(net, &ts[i], &ts[j]) {
                pairs.push((i, j));
            }
        }
    }
    ConflictGraph {
        graph: Graph::new(ts.len(), pairs).expect("valid conflict graph"),
        labels: ts.to_vec(),
    }
}

/// Interval test for two eastward unicast transmissions at positions
/// `a -> b` and `c -> d` with `c >= a`: they conflict iff
/// `c` lies in the closed interval `[a, 2b - a]`, equivalently iff
/// `c <= b + (b - a)`.
pub fn unicast_adjacent(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Result<bool, Error> {
    if a > b || c > d {
        return Err(Error::InvalidParameter(
            "transmissions must be eastward (transmitter left of receiver)".into(),
        ));
    }
    if c < a {
        return Err(Error::InvalidParameter(
            "second transmitter must not lie left of the first; swap the roles".into(),
        ));
    }
    Ok(*c <= b + (b - a))
}

/// Replaces every two-receiver transmission by a unicast to its rightmost
/// receiver and removes exact duplicates. Returns the deduplicated list in
/// first-occurrence order with each transmission's multiplicity.
///
/// The conflict graph is insensitive to both steps: dropping the nearer
/// receiver preserves every pairwise conflict, and duplicate transmissions
/// form mutually conflicting twins with identical neighborhoods.
pub fn normalize_to_unicast(
    transmissions: &[Transmission],
) -> Result<Vec<(Transmission, usize)>, Error> {
    let mut out: Vec<(Transmission, usize)> = Vec::new();
    for t in transmissions {
        if t.receivers.len() > 2 {
            return Err(Error::ReceiverCount {
                transmitter: t.transmitter,
                count: t.receivers.len(),
            });
        }
        let unicast = Transmission::unicast(t.transmitter, t.last_receiver())?;
        match out.iter_mut().find(|(u, _)| *u == unicast) {
            Some((_, count)) => *count += 1,
            None => out.push((unicast, 1)),
        }
    }
    Ok(out)
}
