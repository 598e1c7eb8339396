//! The distance-d admission-control algorithm: per-node local estimates on
//! distance-d balls, the guarantee factor `alpha_d = (2d+3)/(2d+2)`, the
//! global bound `max_v T*(G_{v,d}, tau)`, and a centralized reference for
//! the accept/reject decisions of the distributed protocol.
//!
//! A ball of radius d holds O(Delta^d) nodes, so with a strongly
//! polynomial O(n^5) fractional-edge-coloring subroutine each node's local
//! computation would cost O(Delta^{5d}). This implementation evaluates the
//! local estimates by exact enumeration instead: slower asymptotically,
//! exact at desk scale.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Error;
use crate::feasibility::{
    demand_degree, fractional_chromatic_index, shannon_threshold, DemandVector,
};
use crate::graph::{Edge, Graph};
use crate::rational::{format_rational, rat, rat_string, Rat};

/// Guarantee factor of the distance-d algorithm: `(2d+3)/(2d+2)`, always in
/// lowest terms. `alpha(0) = 3/2` matches the Shannon-condition factor.
pub fn alpha(d: usize) -> Rat {
    rat(2 * d as i64 + 3, 2 * d as i64 + 2)
}

/// Acceptance threshold `1/alpha_d = (2d+2)/(2d+3)`. For `d = 0` this is
/// the Shannon threshold 2/3.
pub fn admission_threshold(d: usize) -> Rat {
    rat(2 * d as i64 + 2, 2 * d as i64 + 3)
}

/// One node's view: the minimum duration needed for the demands it can see,
/// and whether that stays within the acceptance threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalEstimate {
    pub node: usize,
    #[serde(with = "rat_string")]
    pub value: Rat,
    pub feasible: bool,
}

/// Per-flow outcome of the admission-control run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlowDecision {
    pub link: Edge,
    pub accepted: bool,
}

/// Full outcome of an admission-control run: the parameters, each node's
/// local estimate and verdict, and each flow's decision.
///
/// A flow `xy` is rejected iff some node whose distance-d ball contains
/// both `x` and `y` reported an infeasible local estimate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub d: usize,
    #[serde(with = "rat_string")]
    pub alpha: Rat,
    #[serde(with = "rat_string")]
    pub threshold: Rat,
    pub estimates: Vec<LocalEstimate>,
    pub decisions: Vec<FlowDecision>,
}

impl DecisionReport {
    pub fn all_accepted(&self) -> bool {
        self.decisions.iter().all(|f| f.accepted)
    }

    pub fn accepted_links(&self) -> Vec<Edge> {
        self.decisions
            .iter()
            .filter(|f| f.accepted)
            .map(|f| f.link)
            .collect()
    }
}

impl fmt::Display for DecisionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d {}", self.d)?;
        writeln!(f, "alpha {}", format_rational(&self.alpha))?;
        writeln!(f, "threshold {}", format_rational(&self.threshold))?;
        for e in &self.estimates {
            writeln!(
                f,
                "node {} estimate {} {}",
                e.node,
                format_rational(&e.value),
                if e.feasible { "feasible" } else { "infeasible" }
            )?;
        }
        let mut body = String::new();
        for dec in &self.decisions {
            writeln!(
                body,
                "flow {} {} {}",
                dec.link.0,
                dec.link.1,
                if dec.accepted { "accept" } else { "reject" }
            )?;
        }
        f.write_str(&body)
    }
}

/// Minimum duration of a schedule satisfying the demands a node sees:
/// the fractional chromatic index of the subgraph induced by its
/// distance-d ball, with demands restricted to that subgraph. Requires
/// `d >= 1`; the `d = 0` rule works from the plain demand degree instead.
pub fn local_estimate(g: &Graph, tau: &DemandVector, v: usize, d: usize) -> Result<Rat, Error> {
    if d == 0 {
        return Err(Error::InvalidParameter(
            "local estimates need d >= 1; at d = 0 use the demand degree".into(),
        ));
    }
    let ball = g.ball(v, d)?;
    let (sub, map) = g.induced_subgraph(&ball)?;
    let restricted = tau.restrict(&sub, &map)?;
    fractional_chromatic_index(&sub, &restricted)
}

/// `max_v T*(G_{v,d}, tau)`: the tightest lower bound on the global
/// duration available from distance-d views, with its lowest-id maximizer.
pub fn global_local_bound(
    g: &Graph,
    tau: &DemandVector,
    d: usize,
) -> Result<(Rat, Option<usize>), Error> {
    let mut best = Rat::from_integer(0.into());
    let mut node = None;
    for v in 0..g.node_count() {
        let value = local_estimate(g, tau, v, d)?;
        if node.is_none() || value > best {
            best = value;
            node = Some(v);
        }
    }
    Ok((best, node))
}

/// Per-node estimates and verdicts for degree of centralization `d`.
///
/// For `d >= 1` a node is feasible iff its local estimate is at most
/// `(2d+2)/(2d+3)` (the boundary accepts). For `d = 0` the node checks its
/// demand degree against the Shannon threshold 2/3.
pub fn local_verdicts(g: &Graph, tau: &DemandVector, d: usize) -> Result<Vec<LocalEstimate>, Error> {
    let threshold = if d == 0 {
        shannon_threshold()
    } else {
        admission_threshold(d)
    };
    let mut estimates = Vec::with_capacity(g.node_count());
    for v in 0..g.node_count() {
        let value = if d == 0 {
            demand_degree(g, tau, v)?
        } else {
            local_estimate(g, tau, v, d)?
        };
        let feasible = value <= threshold;
        estimates.push(LocalEstimate { node: v, value, feasible });
    }
    Ok(estimates)
}

/// Centralized reference for the distributed admission-control run: every
/// node evaluates its local estimate, and a flow `xy` is rejected iff some
/// node with both `x` and `y` in its distance-d ball is infeasible. For
/// `d = 0` a flow needs both of its own endpoints to pass the Shannon
/// check.
pub fn admission_control_reference(
    g: &Graph,
    tau: &DemandVector,
    d: usize,
) -> Result<DecisionReport, Error> {
    let estimates = local_verdicts(g, tau, d)?;
    let mut rejected = vec![false; g.edge_count()];
    if d == 0 {
        for (i, e) in g.edges().iter().enumerate() {
            rejected[i] = !estimates[e.0].feasible || !estimates[e.1].feasible;
        }
    } else {
        for est in &estimates {
            if est.feasible {
                continue;
            }
            let ball = g.ball(est.node, d)?;
            for (i, e) in g.edges().iter().enumerate() {
                if ball.contains(&e.0) && ball.contains(&e.1) {
                    rejected[i] = true;
                }
            }
        }
    }
    let decisions = g
        .edges()
        .iter()
        .zip(&rejected)
        .map(|(e, &r)| FlowDecision {
            link: *e,
            accepted: !r,
        })
        .collect();
    Ok(DecisionReport {
        d,
        alpha: alpha(d),
        threshold: if d == 0 {
            shannon_threshold()
        } else {
            admission_threshold(d)
        },
        estimates,
        decisions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn uniform(g: &Graph, num: i64, den: i64) -> DemandVector {
        DemandVector::uniform(g, rat(num, den)).unwrap()
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(1), rat(5, 4));
        assert_eq!(alpha(0), rat(3, 2));
        assert_eq!(alpha(3), rat(9, 8));
        assert_eq!(admission_threshold(0), rat(2, 3));
        assert_eq!(admission_threshold(1), rat(4, 5));
    }

    #[test]
    fn local_estimates_on_c5() {
        let c5 = cycle(5);
        // The radius-1 ball induces a 2-edge path; its duration is the
        // demand degree at the center.
        for v in 0..5 {
            assert_eq!(
                local_estimate(&c5, &uniform(&c5, 1, 2), v, 1).unwrap(),
                rat_int(1)
            );
            assert_eq!(
                local_estimate(&c5, &uniform(&c5, 2, 5), v, 1).unwrap(),
                rat(4, 5)
            );
            assert_eq!(
                local_estimate(&c5, &uniform(&c5, 0, 1), v, 2).unwrap(),
                rat_int(0)
            );
        }
        assert!(local_estimate(&c5, &uniform(&c5, 1, 2), 0, 0).is_err());
    }

    #[test]
    fn global_bounds() {
        for d in 1..=3usize {
            let n = 2 * d + 3;
            let g = cycle(n);
            let tau = uniform(&g, 1, 2);
            assert_eq!(global_local_bound(&g, &tau, d).unwrap().0, rat_int(1));
            assert_eq!(
                fractional_chromatic_index(&g, &tau).unwrap(),
                alpha(d)
            );
        }

        let c5 = cycle(5);
        // Radius-2 balls cover the whole cycle.
        assert_eq!(
            global_local_bound(&c5, &uniform(&c5, 1, 1), 2).unwrap().0,
            rat(5, 2)
        );

        // One idle link makes the local and global views agree.
        let mut entries: Vec<((usize, usize), Rat)> = c5
            .edges()
            .iter()
            .map(|e| (e.endpoints(), rat(1, 2)))
            .collect();
        entries[4].1 = rat_int(0);
        let tau = DemandVector::new(entries).unwrap();
        assert_eq!(global_local_bound(&c5, &tau, 1).unwrap().0, rat_int(1));
        assert_eq!(fractional_chromatic_index(&c5, &tau).unwrap(), rat_int(1));
    }

    #[test]
    fn reference_decisions_on_c5() {
        let c5 = cycle(5);

        // Exactly at the threshold: all nodes feasible, all flows accepted.
        let report = admission_control_reference(&c5, &uniform(&c5, 2, 5), 1).unwrap();
        assert!(report.estimates.iter().all(|e| e.feasible));
        assert!(report.all_accepted());
        assert_eq!(
            fractional_chromatic_index(&c5, &uniform(&c5, 2, 5)).unwrap(),
            rat_int(1)
        );

        // Just over: every node infeasible, every flow rejected.
        let report = admission_control_reference(&c5, &uniform(&c5, 1, 2), 1).unwrap();
        assert!(report.estimates.iter().all(|e| !e.feasible));
        assert!(report.decisions.iter().all(|f| !f.accepted));
        assert_eq!(
            fractional_chromatic_index(&c5, &uniform(&c5, 1, 2)).unwrap(),
            rat(5, 4)
        );

        let report = admission_control_reference(&c5, &uniform(&c5, 0, 1), 1).unwrap();
        assert!(report.all_accepted());
    }

    #[test]
    fn overload_is_rejected_locally() {
        // Path on 7 nodes, one saturated middle edge: only flows within the
        // overloaded nodes' balls are rejected.
        let g = Graph::new(7, (0..6).map(|i| (i, i + 1))).unwrap();
        let entries: Vec<((usize, usize), Rat)> = g
            .edges()
            .iter()
            .map(|e| {
                let t = if *e == Edge(2, 3) { rat_int(1) } else { rat(1, 10) };
                (e.endpoints(), t)
            })
            .collect();
        let tau = DemandVector::new(entries).unwrap();
        let report = admission_control_reference(&g, &tau, 1).unwrap();
        let accepted = report.accepted_links();
        assert_eq!(
            accepted,
            vec![Edge(0, 1), Edge(4, 5), Edge(5, 6)],
        );
    }

    #[test]
    fn d0_routes_to_shannon() {
        let c3 = cycle(3);
        let report = admission_control_reference(&c3, &uniform(&c3, 1, 3), 0).unwrap();
        assert_eq!(report.alpha, rat(3, 2));
        assert_eq!(report.threshold, rat(2, 3));
        assert!(report.all_accepted());

        let report = admission_control_reference(&c3, &uniform(&c3, 1, 2), 0).unwrap();
        assert!(report.decisions.iter().all(|f| !f.accepted));
    }

    #[test]
    fn report_text_is_structured() {
        let c3 = cycle(3);
        let report = admission_control_reference(&c3, &uniform(&c3, 1, 3), 0).unwrap();
        let text = report.to_string();
        assert!(text.starts_with("d 0\nalpha 3/2\nthreshold 2/3\n"));
        assert!(text.contains("node 0 estimate 2/3 feasible"));
        assert!(text.contains("flow 0 1 accept"));
    }
}
