//! Round-synchronous message-passing simulator for the distributed
//! admission-control run: each node floods its verdict through its
//! distance-d neighborhood (a hop counter bounds the flood), and each link
//! decides from what its endpoints received.
//!
//! Execution is deterministic: all sends of round r are delivered in round
//! r+1, deliveries are processed in sorted order, and a node forwards each
//! origin's message at most once (duplicate receipts are logged but not
//! re-forwarded; the delivery set is unchanged by the suppression).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::distalgo::{
    admission_threshold, alpha, local_verdicts, DecisionReport, FlowDecision,
};
use crate::error::Error;
use crate::feasibility::DemandVector;
use crate::graph::{Graph, NodeSet};

/// Verdict a node attaches to its flooded message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    Feasible,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
        })
    }
}

/// A flooded message: who it speaks for, their verdict, and the remaining
/// hop budget. The counter starts at d and is decremented by each receiver;
/// a receiver forwards only while the decremented counter stays positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Message {
    pub origin: usize,
    pub verdict: Verdict,
    pub counter: usize,
}

/// One delivery: `sender` handed `receiver` the message in round `round`.
/// The counter is the value carried on the wire (before the receiver
/// decrements it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub round: usize,
    pub sender: usize,
    pub receiver: usize,
    pub origin: usize,
    pub verdict: Verdict,
    pub counter: usize,
}

/// Deterministic log of a simulation: every delivery plus each node's final
/// inbox of distinct origins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimTrace {
    records: Vec<TraceRecord>,
    inboxes: Vec<BTreeMap<usize, Verdict>>,
}

impl SimTrace {
    pub fn records(&self) -> &[TraceRecord] {
        &self.records
    }

    /// Distinct origins node `v` heard from (itself included).
    pub fn inbox(&self, v: usize) -> &BTreeMap<usize, Verdict> {
        &self.inboxes[v]
    }

    pub fn message_count(&self) -> usize {
        self.records.len()
    }

    /// Line-oriented export: `round sender receiver origin verdict counter`.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{} {} {} {} {} {}\n",
                r.round, r.sender, r.receiver, r.origin, r.verdict, r.counter
            ));
        }
        out
    }
}

/// Result of flooding one origin's message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloodOutcome {
    pub delivered: NodeSet,
    pub trace: SimTrace,
}

/// Floods `(origin, verdict)` with hop budget `d`. The delivery set is
/// exactly the distance-d ball around the origin; the origin knows its own
/// message without a wire transfer.
pub fn run_flood(
    g: &Graph,
    origin: usize,
    verdict: Verdict,
    d: usize,
) -> Result<FloodOutcome, Error> {
    let mut inboxes = vec![BTreeMap::new(); g.node_count()];
    let records = flood_into(g, origin, verdict, d, &mut inboxes)?;
    let delivered: NodeSet = (0..g.node_count())
        .filter(|&v| inboxes[v].contains_key(&origin))
        .collect();
    Ok(FloodOutcome {
        delivered,
        trace: SimTrace { records, inboxes },
    })
}

fn flood_into(
    g: &Graph,
    origin: usize,
    verdict: Verdict,
    d: usize,
    inboxes: &mut [BTreeMap<usize, Verdict>],
) -> Result<Vec<TraceRecord>, Error> {
    if origin >= g.node_count() {
        return Err(Error::NodeOutOfRange {
            node: origin,
            n: g.node_count(),
        });
    }
    inboxes[origin].insert(origin, verdict);
    let mut records = Vec::new();
    if d == 0 {
        return Ok(records);
    }
    // (sender, receiver, counter on the wire)
    let mut pending: Vec<(usize, usize, usize)> = g
        .neighbors(origin)
        .iter()
        .map(|&w| (origin, w, d))
        .collect();
    let mut round = 1;
    while !pending.is_empty() {
        // Process deliveries receiver-first so the forwarding node's
        // "incoming link" is pinned to its lowest-id sender.
        pending.sort_unstable_by_key(|&(s, r, _)| (r, s));
        let mut next = Vec::new();
        for &(sender, receiver, counter) in &pending {
            records.push(TraceRecord {
                round,
                sender,
                receiver,
                origin,
                verdict,
                counter,
            });
            let first_receipt = !inboxes[receiver].contains_key(&origin);
            inboxes[receiver].insert(origin, verdict);
            let remaining = counter - 1;
            if first_receipt && remaining > 0 {
                for &w in g.neighbors(receiver) {
                    if w != sender {
                        next.push((receiver, w, remaining));
                    }
                }
            }
        }
        pending = next;
        round += 1;
    }
    Ok(records)
}

/// Executes the admission-control protocol distributively: every node
/// computes its local estimate, floods its verdict through its distance-d
/// neighborhood, and every link is rejected iff both endpoints received
/// `infeasible` from a common origin. Matches the centralized reference
/// decision for decision.
pub fn run_distributed(
    g: &Graph,
    tau: &DemandVector,
    d: usize,
) -> Result<(DecisionReport, SimTrace), Error> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "the distributed protocol needs d >= 1".into(),
        ));
    }
    let estimates = local_verdicts(g, tau, d)?;
    let mut inboxes = vec![BTreeMap::new(); g.node_count()];
    let mut records = Vec::new();
    for est in &estimates {
        let verdict = if est.feasible {
            Verdict::Feasible
        } else {
            Verdict::Infeasible
        };
        records.extend(flood_into(g, est.node, verdict, d, &mut inboxes)?);
    }
    records.sort_unstable_by_key(|r| (r.round, r.origin, r.sender, r.receiver));

    let decisions = g
        .edges()
        .iter()
        .map(|e| {
            let rejected = inboxes[e.0].iter().any(|(origin, v)| {
                *v == Verdict::Infeasible && inboxes[e.1].get(origin) == Some(&Verdict::Infeasible)
            });
            FlowDecision {
                link: *e,
                accepted: !rejected,
            }
        })
        .collect();

    let report = DecisionReport {
        d,
        alpha: alpha(d),
        threshold: admission_threshold(d),
        estimates,
        decisions,
    };
    Ok((report, SimTrace { records, inboxes }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distalgo::admission_control_reference;
    use crate::rational::rat;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn flood_reaches_exactly_the_ball() {
        let c5 = cycle(5);
        let out = run_flood(&c5, 0, Verdict::Feasible, 1).unwrap();
        assert_eq!(out.delivered, NodeSet::from([0, 1, 4]));

        let out = run_flood(&c5, 3, Verdict::Feasible, 0).unwrap();
        assert_eq!(out.delivered, NodeSet::from([3]));
        assert!(out.trace.records().is_empty());

        let p6 = path(6);
        let out = run_flood(&p6, 0, Verdict::Infeasible, 3).unwrap();
        assert_eq!(out.delivered, NodeSet::from([0, 1, 2, 3]));
        assert_eq!(out.delivered, p6.ball(0, 3).unwrap());
    }

    #[test]
    fn counters_decrement_along_the_path() {
        let p6 = path(6);
        let out = run_flood(&p6, 0, Verdict::Feasible, 3).unwrap();
        let counters: Vec<(usize, usize, usize)> = out
            .trace
            .records()
            .iter()
            .map(|r| (r.round, r.receiver, r.counter))
            .collect();
        assert_eq!(counters, vec![(1, 1, 3), (2, 2, 2), (3, 3, 1)]);
    }

    #[test]
    fn duplicate_receipts_do_not_refan() {
        // On a cycle the two ends of the flood meet; nodes must forward a
        // given origin only once.
        let c4 = cycle(4);
        let out = run_flood(&c4, 0, Verdict::Feasible, 3).unwrap();
        assert_eq!(out.delivered, NodeSet::from([0, 1, 2, 3]));
        let ball_edges = 4; // every edge lies inside the ball
        assert!(out.trace.message_count() <= 2 * ball_edges);
    }

    #[test]
    fn distributed_matches_reference_on_c5() {
        let c5 = cycle(5);
        for (num, den) in [(1i64, 2i64), (2, 5), (0, 1)] {
            let tau = DemandVector::uniform(&c5, rat(num, den)).unwrap();
            let reference = admission_control_reference(&c5, &tau, 1).unwrap();
            let (report, _) = run_distributed(&c5, &tau, 1).unwrap();
            assert_eq!(report, reference);
        }
    }

    #[test]
    fn distributed_rejects_locally_overloaded_flows() {
        let g = path(7);
        let entries: Vec<((usize, usize), _)> = g
            .edges()
            .iter()
            .map(|e| {
                let t = if (e.0, e.1) == (2, 3) { rat(1, 1) } else { rat(1, 10) };
                (e.endpoints(), t)
            })
            .collect();
        let tau = DemandVector::new(entries).unwrap();
        let (report, trace) = run_distributed(&g, &tau, 1).unwrap();
        let reference = admission_control_reference(&g, &tau, 1).unwrap();
        assert_eq!(report, reference);
        // Distant nodes never hear the overloaded nodes' verdicts.
        assert!(!trace.inbox(6).contains_key(&2));

        let text = trace.export();
        assert!(text.lines().count() == trace.message_count());
        assert!(text.contains(" infeasible "));
    }

    #[test]
    fn d_zero_is_rejected() {
        let c5 = cycle(5);
        let tau = DemandVector::uniform(&c5, rat(1, 2)).unwrap();
        assert!(run_distributed(&c5, &tau, 0).is_err());
    }
}
