//! Deterministic instance generators: named topologies, seeded random
//! graphs and demand vectors, seeded line networks, and the catalogue of
//! small connected graphs up to isomorphism used by the oracle cross-check.

use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::feasibility::DemandVector;
use crate::graph::Graph;
use crate::interference::{LineNetwork, Transmission};
use crate::rational::{rat, rat_int, Rat};

pub fn cycle(n: usize) -> Result<Graph, Error> {
    if n < 3 {
        return Err(Error::InvalidParameter("a cycle needs n >= 3".into()));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("a path needs n >= 1".into()));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Star on `n` nodes: node 0 is the hub, so `star(4)` is the claw.
pub fn star(n: usize) -> Result<Graph, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("a star needs n >= 1".into()));
    }
    Graph::new(n, (1..n).map(|i| (0, i)))
}

/// Erdos-Renyi graph with exact rational edge probability.
pub fn random_graph(n: usize, p: &Rat, seed: u64) -> Result<Graph, Error> {
    if p < &rat_int(0) || p > &rat_int(1) {
        return Err(Error::InvalidParameter(
            "edge probability must lie in [0, 1]".into(),
        ));
    }
    let (num, den) = (
        p.numer().to_u32().ok_or_else(|| {
            Error::InvalidParameter("edge probability numerator too large".into())
        })?,
        p.denom().to_u32().ok_or_else(|| {
            Error::InvalidParameter("edge probability denominator too large".into())
        })?,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if den > 0 && rng.random_ratio(num, den) {
                pairs.push((i, j));
            }
        }
    }
    Graph::new(n, pairs)
}

/// Like [`random_graph`] but redraws until the graph has at least one edge
/// and at most `max_edges` edges (both deterministic in the seed).
pub fn random_graph_bounded(
    n: usize,
    p: &Rat,
    seed: u64,
    max_edges: usize,
) -> Result<Graph, Error> {
    let mut attempt = 0u64;
    loop {
        let g = random_graph(n, p, seed.wrapping_add(attempt.wrapping_mul(0x9e3779b97f4a7c15)))?;
        if g.edge_count() >= 1 && g.edge_count() <= max_edges {
            return Ok(g);
        }
        attempt += 1;
        if attempt > 10_000 {
            return Err(Error::InvalidParameter(
                "could not generate a graph within the edge bounds".into(),
            ));
        }
    }
}

/// Random per-link demands: each edge gets `k/q` scaled by a per-instance
/// load level, giving a mix of clearly feasible, borderline and overloaded
/// instances.
pub fn random_demand_vector(g: &Graph, seed: u64) -> DemandVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let load = rat(rng.random_range(1..=4), 4);
    let entries: Vec<((usize, usize), Rat)> = g
        .edges()
        .iter()
        .map(|e| {
            let q = rng.random_range(1..=8i64);
            let k = rng.random_range(0..=q);
            (e.endpoints(), rat(k, q) * &load)
        })
        .collect();
    DemandVector::new(entries).expect("generated demands are nonnegative")
}

/// Random point of the independent-set polytope with at least one positive
/// coordinate: a sub-convex combination of independent sets of `gc`.
pub fn random_feasible_vertex_demands(gc: &Graph, seed: u64) -> Result<Vec<Rat>, Error> {
    let sets: Vec<_> = gc
        .independent_sets()?
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    if sets.is_empty() {
        return Err(Error::InvalidParameter(
            "conflict graph has no vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rng.random_range(1..=3.min(sets.len()));
    let mut weights: Vec<(usize, Rat)> = (0..picks)
        .map(|_| {
            let idx = rng.random_range(0..sets.len());
            let q = rng.random_range(2..=8i64);
            (idx, rat(rng.random_range(1..=q), q))
        })
        .collect();
    let total: Rat = weights.iter().map(|(_, w)| w.clone()).sum();
    if total > rat_int(1) {
        for (_, w) in &mut weights {
            *w /= &total;
        }
    }
    let mut tau = vec![rat_int(0); gc.node_count()];
    for (idx, w) in weights {
        for &v in &sets[idx] {
            tau[v] += &w;
        }
    }
    Ok(tau)
}

struct LineNetworkParams {
    /// Inclusive range of inter-node gaps, in hundredths of the radius.
    gap_range: (i64, i64),
    /// Whether two-receiver transmissions may be emitted.
    multicast: bool,
}

fn random_line_network_with(
    n: usize,
    seed: u64,
    params: LineNetworkParams,
) -> Result<LineNetwork, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "a line network needs n >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = rat_int(1);
    let mut positions = vec![rat_int(0)];
    for i in 1..n {
        let gap = rat(rng.random_range(params.gap_range.0..=params.gap_range.1), 100);
        let next = &positions[i - 1] + gap;
        positions.push(next);
    }
    let mut transmissions = Vec::new();
    for i in 0..n.saturating_sub(1) {
        if !rng.random_ratio(3, 4) {
            continue;
        }
        let reachable: Vec<usize> = (i + 1..n)
            .take_while(|&j| &positions[j] - &positions[i] <= radius)
            .collect();
        if reachable.is_empty() {
            continue;
        }
        if params.multicast && reachable.len() >= 2 && rng.random_ratio(1, 2) {
            let j = rng.random_range(0..reachable.len() - 1);
            transmissions.push(Transmission::new(i, [reachable[j], reachable[j + 1]])?);
        } else {
            let j = reachable[rng.random_range(0..reachable.len())];
            transmissions.push(Transmission::unicast(i, j)?);
        }
    }
    LineNetwork::new(positions, radius, transmissions)
}

/// Random line network with unicast transmissions. Gaps are at least 0.35
/// times the radius, so any three consecutive gaps exceed the radius and
/// the spacing constraint holds by construction.
pub fn random_line_network(n: usize, seed: u64) -> Result<LineNetwork, Error> {
    random_line_network_with(
        n,
        seed,
        LineNetworkParams {
            gap_range: (35, 100),
            multicast: false,
        },
    )
}

/// Like [`random_line_network`] but with two-receiver transmissions mixed
/// in (spacing still holds by construction).
pub fn random_line_network_mixed(n: usize, seed: u64) -> Result<LineNetwork, Error> {
    random_line_network_with(
        n,
        seed,
        LineNetworkParams {
            gap_range: (35, 100),
            multicast: true,
        },
    )
}

/// Densely packed line network: gaps small enough that the spacing flag is
/// usually raised. Negative control for the spacing-dependent results.
pub fn random_line_network_dense(n: usize, seed: u64) -> Result<LineNetwork, Error> {
    random_line_network_with(
        n,
        seed,
        LineNetworkParams {
            gap_range: (5, 45),
            multicast: false,
        },
    )
}

/// All connected graphs with `1..=max_n` nodes, one representative per
/// isomorphism class (canonical form: the minimum edge bitmask over all
/// node permutations).
pub fn connected_graphs_up_to_iso(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 8, "catalogue intended for small n");
    let mut out = Vec::new();
    for n in 1..=max_n {
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        let mut slot_of = vec![vec![usize::MAX; n]; n];
        for (k, &(i, j)) in slots.iter().enumerate() {
            slot_of[i][j] = k;
            slot_of[j][i] = k;
        }
        let perms = permutations(n);
        // perm_slot[p][k]: where slot k lands under permutation p.
        let perm_slot: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| slots.iter().map(|&(i, j)| slot_of[p[i]][p[j]]).collect())
            .collect();

        let m = slots.len();
        'mask: for mask in 0u32..(1u32 << m) {
            if !connected_mask(n, &slots, mask) {
                continue;
            }
            for table in &perm_slot {
                let mut permuted = 0u32;
                let mut bits = mask;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    permuted |= 1 << table[k];
                    bits &= bits - 1;
                }
                if permuted < mask {
                    continue 'mask; // not the canonical representative
                }
            }
            let pairs = slots
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &p)| p);
            out.push(Graph::new(n, pairs).expect("valid catalogue graph"));
        }
    }
    out
}

fn connected_mask(n: usize, slots: &[(usize, usize)], mask: u32) -> bool {
    let mut adj = vec![0u32; n];
    let mut bits = mask;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        let (i, j) = slots[k];
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
        bits &= bits - 1;
    }
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            next |= adj[v] & !seen;
            f &= f - 1;
        }
        seen |= next;
        frontier = next;
    }
    seen.count_ones() as usize == n
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    heap_permute(&mut items, n, &mut out);
    out
}

fn heap_permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_topologies() {
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert_eq!(path(6).unwrap().edge_count(), 5);
        let claw = star(4).unwrap();
        assert_eq!(claw.degree(0), 3);
        assert!(cycle(2).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn random_graph_is_seed_deterministic() {
        let p = rat(1, 2);
        let a = random_graph(6, &p, 1).unwrap();
        let b = random_graph(6, &p, 1).unwrap();
        assert_eq!(a, b);
        let c = random_graph(6, &p, 2).unwrap();
        assert!(a != c || a.edge_count() == c.edge_count());

        assert_eq!(random_graph(5, &rat_int(1), 9).unwrap().edge_count(), 10);
        assert_eq!(random_graph(5, &rat_int(0), 9).unwrap().edge_count(), 0);
        assert!(random_graph(5, &rat(3, 2), 9).is_err());
    }

    #[test]
    fn bounded_random_graph_always_has_an_edge() {
        for seed in 0..50 {
            let g = random_graph_bounded(3, &rat(1, 8), seed, 2).unwrap();
            assert!(g.edge_count() >= 1 && g.edge_count() <= 2);
        }
    }

    #[test]
    fn random_demands_are_seed_deterministic() {
        let g = cycle(5).unwrap();
        assert_eq!(random_demand_vector(&g, 7), random_demand_vector(&g, 7));
    }

    #[test]
    fn feasible_demands_lie_in_the_polytope() {
        use crate::feasibility::fractional_chromatic_number_lp;
        use crate::interference::ConflictGraph;
        for seed in 0..20 {
            let gc = random_graph_bounded(6, &rat(1, 2), seed, 12).unwrap();
            let tau = random_feasible_vertex_demands(&gc, seed).unwrap();
            let gc = ConflictGraph::from_graph(gc);
            let lp = fractional_chromatic_number_lp(&gc, &tau).unwrap();
            assert!(lp.value <= rat_int(1), "seed {seed}: value {}", lp.value);
        }
    }

    #[test]
    fn line_networks_respect_spacing_by_construction() {
        for seed in 0..30 {
            let net = random_line_network(10, seed).unwrap();
            assert!(net.spacing_satisfied());
            assert!(net.transmissions().iter().all(|t| t.is_unicast()));
            let mixed = random_line_network_mixed(10, seed).unwrap();
            assert!(mixed.spacing_satisfied());
        }
        // The dense generator violates spacing for most seeds.
        let violations = (0..30)
            .filter(|&seed| !random_line_network_dense(12, seed).unwrap().spacing_satisfied())
            .count();
        assert!(violations > 20);
    }

    #[test]
    fn connected_catalogue_counts() {
        // Connected graphs up to isomorphism on 1..=6 nodes.
        let catalogue = connected_graphs_up_to_iso(6);
        let counts: Vec<usize> = (1..=6)
            .map(|n| catalogue.iter().filter(|g| g.node_count() == n).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(catalogue.iter().all(|g| g.is_connected()));
    }
}
