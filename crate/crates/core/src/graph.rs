//! Simple undirected graphs over integer node ids, plus the exact
//! combinatorial machinery the feasibility oracles are built on: balls,
//! induced subgraphs, line graphs, matchings, independent sets, cliques,
//! the induced star number, odd holes and clique substitution.
//!
//! Every enumeration carries an explicit instance-size cap (the underlying
//! problems are exponential in general; this crate targets desk-scale
//! instances) and iterates in sorted node order so witnesses are
//! reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default cap on `|E(G)|` for matching enumeration.
pub const MATCHING_EDGE_CAP: usize = 24;
/// Default cap on `|V(G)|` for independent-set/clique enumeration.
pub const ENUMERATION_NODE_CAP: usize = 20;
/// Default cap on `|V(G)|` for odd-hole search.
pub const ODD_HOLE_NODE_CAP: usize = 16;
/// Hard limit for every mask-based enumeration in this module.
pub const MASK_NODE_LIMIT: usize = 64;

/// Set of node ids; iterates in ascending order.
pub type NodeSet = BTreeSet<usize>;

/// Undirected edge, stored with its endpoints in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    /// Normalizes endpoint order. Panics on a self-loop; input validation
    /// belongs to [`Graph::new`].
    pub fn new(u: usize, v: usize) -> Self {
        assert!(u != v, "self-loop edge ({u},{u})");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn touches(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.0) || self.touches(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Bijection between the edges of a network graph and the vertices of its
/// line graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeIndexMap {
    edges: Vec<Edge>,
    index: BTreeMap<Edge, usize>,
}

impl EdgeIndexMap {
    fn new(edges: Vec<Edge>) -> Self {
        let index = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        EdgeIndexMap { edges, index }
    }

    /// Line-graph vertex corresponding to `edge`.
    pub fn vertex_of(&self, edge: Edge) -> Option<usize> {
        self.index.get(&edge).copied()
    }

    /// Network edge corresponding to line-graph vertex `v`.
    pub fn edge_of(&self, v: usize) -> Option<Edge> {
        self.edges.get(v).copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

/// Simple undirected graph: no self-loops, no parallel edges.
///
/// Serves both as the network graph (nodes are transceivers, edges are
/// links) and, via [`crate::interference::ConflictGraph`], as the conflict
/// graph whose vertices are links or transmissions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

/// Maximum induced star found by [`Graph::induced_star_number`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarWitness {
    pub center: usize,
    pub leaves: NodeSet,
}

/// Claw (induced `K_{1,3}`) witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClawWitness {
    pub center: usize,
    pub leaves: [usize; 3],
}

impl Graph {
    /// Builds a graph on nodes `0..n` from an edge list. Edges are
    /// deduplicated; self-loops and out-of-range endpoints are rejected.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        let mut edges = BTreeSet::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::NodeOutOfRange { node: w, n });
                }
            }
            edges.insert(Edge::new(u, v));
        }
        let edges: Vec<Edge> = edges.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(u,v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    fn check_node(&self, v: usize) -> Result<(), Error> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }

    /// Ball of radius `d` around `v`: all nodes at graph distance at most
    /// `d`, computed by breadth-first layers.
    pub fn ball(&self, v: usize, d: usize) -> Result<NodeSet, Error> {
        self.check_node(v)?;
        let mut dist = vec![usize::MAX; self.n];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        let mut out = NodeSet::from([v]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == d {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    out.insert(w);
                    queue.push_back(w);
                }
            }
        }
        Ok(out)
    }

    /// Subgraph induced by `nodes`, plus the relabeling map: new node `i`
    /// corresponds to old node `map[i]` (old ids in ascending order).
    pub fn induced_subgraph(&self, nodes: &NodeSet) -> Result<(Graph, Vec<usize>), Error> {
        let map: Vec<usize> = nodes.iter().copied().collect();
        if let Some(&node) = map.iter().find(|&&v| v >= self.n) {
            return Err(Error::NodeOutOfRange { node, n: self.n });
        }
        let mut inverse = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let pairs = self.edges.iter().filter_map(|e| {
            let (u, v) = (inverse[e.0], inverse[e.1]);
            (u != usize::MAX && v != usize::MAX).then_some((u, v))
        });
        let sub = Graph::new(map.len(), pairs)?;
        Ok((sub, map))
    }

    /// Line graph: one vertex per edge, adjacency iff the two edges share an
    /// endpoint. The returned map ties line-graph vertices to their edges.
    pub fn line_graph(&self) -> (Graph, EdgeIndexMap) {
        let m = self.edges.len();
        let mut pairs = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                if self.edges[i].shares_endpoint(&self.edges[j]) {
                    pairs.push((i, j));
                }
            }
        }
        let lg = Graph::new(m, pairs).expect("line graph construction is always valid");
        (lg, EdgeIndexMap::new(self.edges.clone()))
    }

    fn adjacency_masks(&self) -> Vec<u64> {
        let mut masks = vec![0u64; self.n];
        for e in &self.edges {
            masks[e.0] |= 1 << e.1;
            masks[e.1] |= 1 << e.0;
        }
        masks
    }

    fn check_cap(&self, what: &'static str, size: usize, cap: usize) -> Result<(), Error> {
        if size > cap.min(MASK_NODE_LIMIT) {
            return Err(Error::CapExceeded {
                what,
                size,
                cap: cap.min(MASK_NODE_LIMIT),
            });
        }
        Ok(())
    }

    /// All matchings (sets of pairwise non-incident edges), including the
    /// empty matching, under the default edge cap.
    pub fn matchings(&self) -> Result<Vec<Vec<Edge>>, Error> {
        self.matchings_with_cap(MATCHING_EDGE_CAP)
    }

    pub fn matchings_with_cap(&self, cap: usize) -> Result<Vec<Vec<Edge>>, Error> {
        if self.edges.len() > cap {
            return Err(Error::CapExceeded {
                what: "matching enumeration",
                size: self.edges.len(),
                cap,
            });
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        let mut used = vec![false; self.n];
        fn rec(
            edges: &[Edge],
            i: usize,
            used: &mut Vec<bool>,
            current: &mut Vec<Edge>,
            out: &mut Vec<Vec<Edge>>,
        ) {
            if i == edges.len() {
                out.push(current.clone());
                return;
            }
            rec(edges, i + 1, used, current, out);
            let e = edges[i];
            if !used[e.0] && !used[e.1] {
                used[e.0] = true;
                used[e.1] = true;
                current.push(e);
                rec(edges, i + 1, used, current, out);
                current.pop();
                used[e.0] = false;
                used[e.1] = false;
            }
        }
        rec(&self.edges, 0, &mut used, &mut current, &mut out);
        Ok(out)
    }

    /// All independent sets, including the empty set, under the default
    /// node cap.
    pub fn independent_sets(&self) -> Result<Vec<NodeSet>, Error> {
        self.independent_sets_with_cap(ENUMERATION_NODE_CAP)
    }

    pub fn independent_sets_with_cap(&self, cap: usize) -> Result<Vec<NodeSet>, Error> {
        self.check_cap("independent-set enumeration", self.n, cap)?;
        let masks = self.adjacency_masks();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(
            n: usize,
            masks: &[u64],
            v: usize,
            chosen: u64,
            current: &mut Vec<usize>,
            out: &mut Vec<NodeSet>,
        ) {
            if v == n {
                out.push(current.iter().copied().collect());
                return;
            }
            rec(n, masks, v + 1, chosen, current, out);
            if masks[v] & chosen == 0 {
                current.push(v);
                rec(n, masks, v + 1, chosen | (1 << v), current, out);
                current.pop();
            }
        }
        rec(self.n, &masks, 0, 0, &mut current, &mut out);
        Ok(out)
    }

    /// All inclusion-maximal cliques (Bron-Kerbosch over ascending node
    /// ids), sorted lexicographically.
    pub fn maximal_cliques(&self) -> Result<Vec<NodeSet>, Error> {
        self.maximal_cliques_with_cap(ENUMERATION_NODE_CAP)
    }

    pub fn maximal_cliques_with_cap(&self, cap: usize) -> Result<Vec<NodeSet>, Error> {
        self.check_cap("clique enumeration", self.n, cap)?;
        let masks = self.adjacency_masks();
        let mut out = Vec::new();
        fn bk(masks: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<NodeSet>) {
            if p == 0 && x == 0 {
                out.push(mask_to_set(r));
                return;
            }
            while p != 0 {
                let v = p.trailing_zeros() as usize;
                let bit = 1u64 << v;
                bk(masks, r | bit, p & masks[v], x & masks[v], out);
                p &= !bit;
                x |= bit;
            }
        }
        bk(&masks, 0, mask_below(self.n), 0, &mut out);
        out.sort();
        Ok(out)
    }

    /// Maximum independent set (lexicographically first among maximum ones).
    pub fn max_independent_set(&self) -> Result<NodeSet, Error> {
        self.max_independent_set_with_cap(ENUMERATION_NODE_CAP)
    }

    pub fn max_independent_set_with_cap(&self, cap: usize) -> Result<NodeSet, Error> {
        self.check_cap("independence number", self.n, cap)?;
        let masks = self.adjacency_masks();
        let mut best = 0u64;
        max_ind_set_in(&masks, mask_below(self.n), 0, &mut best);
        Ok(mask_to_set(best))
    }

    /// Size of a maximum independent set.
    pub fn independence_number(&self) -> Result<usize, Error> {
        self.independence_number_with_cap(ENUMERATION_NODE_CAP)
    }

    pub fn independence_number_with_cap(&self, cap: usize) -> Result<usize, Error> {
        Ok(self.max_independent_set_with_cap(cap)?.len())
    }

    /// Induced star number: the maximum, over nodes `v`, of the independence
    /// number of the subgraph induced by the neighbors of `v`. An edgeless
    /// graph has induced star number 0 and no witness.
    pub fn induced_star_number(&self) -> Result<(usize, Option<StarWitness>), Error> {
        self.induced_star_number_with_cap(ENUMERATION_NODE_CAP)
    }

    pub fn induced_star_number_with_cap(
        &self,
        cap: usize,
    ) -> Result<(usize, Option<StarWitness>), Error> {
        self.check_cap("induced star number", self.n, cap)?;
        let masks = self.adjacency_masks();
        let mut sigma = 0usize;
        let mut witness = None;
        for center in 0..self.n {
            let mut best = 0u64;
            max_ind_set_in(&masks, masks[center], 0, &mut best);
            let size = best.count_ones() as usize;
            if size > sigma {
                sigma = size;
                witness = Some(StarWitness {
                    center,
                    leaves: mask_to_set(best),
                });
            }
        }
        Ok((sigma, witness))
    }

    /// First claw (induced `K_{1,3}`) in sorted order, if any. A witness
    /// exists iff the induced star number is at least 3. Polynomial; no cap.
    pub fn find_claw(&self) -> Option<ClawWitness> {
        for center in 0..self.n {
            let nb = &self.adj[center];
            for (i, &a) in nb.iter().enumerate() {
                for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                    if self.has_edge(a, b) {
                        continue;
                    }
                    for &c in nb.iter().skip(j + 1) {
                        if !self.has_edge(a, c) && !self.has_edge(b, c) {
                            return Some(ClawWitness {
                                center,
                                leaves: [a, b, c],
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Length of a shortest odd hole (induced odd cycle of length >= 5), or
    /// `None` if the graph has none.
    pub fn min_odd_hole_length(&self) -> Result<Option<usize>, Error> {
        self.min_odd_hole_length_with_cap(ODD_HOLE_NODE_CAP)
    }

    pub fn min_odd_hole_length_with_cap(&self, cap: usize) -> Result<Option<usize>, Error> {
        self.check_cap("odd-hole search", self.n, cap)?;
        let masks = self.adjacency_masks();
        let mut best: Option<usize> = None;
        // A vertex subset induces a cycle iff every member has exactly two
        // neighbors inside and the subset is connected.
        for mask in 1u64..(1u64 << self.n) {
            let k = mask.count_ones() as usize;
            if k < 5 || k.is_multiple_of(2) || best.is_some_and(|b| k >= b) {
                continue;
            }
            if induces_cycle(&masks, mask) {
                best = Some(k);
            }
        }
        Ok(best)
    }

    /// Replaces node `v` by a clique `K_r`: the result is `G - v` plus `K_r`,
    /// with every clique node joined to every former neighbor of `v`.
    ///
    /// Old node `u != v` becomes `u` if `u < v` and `u - 1` otherwise; the
    /// clique occupies the highest `r` ids.
    pub fn replace_vertex_with_clique(&self, v: usize, r: usize) -> Result<Graph, Error> {
        self.check_node(v)?;
        if r == 0 {
            return Err(Error::InvalidParameter(
                "clique substitution requires r >= 1".into(),
            ));
        }
        let relabel = |u: usize| if u < v { u } else { u - 1 };
        let n = self.n - 1 + r;
        let mut pairs = Vec::new();
        for e in &self.edges {
            if !e.touches(v) {
                pairs.push((relabel(e.0), relabel(e.1)));
            }
        }
        let clique_ids: Vec<usize> = (self.n - 1..n).collect();
        for (i, &a) in clique_ids.iter().enumerate() {
            for &b in &clique_ids[i + 1..] {
                pairs.push((a, b));
            }
        }
        for &w in &self.adj[v] {
            for &c in &clique_ids {
                pairs.push((relabel(w), c));
            }
        }
        Graph::new(n, pairs)
    }

    /// Whether the graph is connected (vacuously true when empty).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.ball(0, self.n).map(|b| b.len() == self.n).unwrap_or(false)
    }
}

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_to_set(mask: u64) -> NodeSet {
    let mut set = NodeSet::new();
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        set.insert(v);
        m &= m - 1;
    }
    set
}

/// Maximum independent set within `allowed`, branching on the lowest id.
/// Keeps the first maximum found, so the witness is deterministic.
fn max_ind_set_in(masks: &[u64], allowed: u64, chosen: u64, best: &mut u64) {
    if allowed == 0 {
        if chosen.count_ones() > best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + allowed.count_ones() <= best.count_ones() {
        return;
    }
    let v = allowed.trailing_zeros() as usize;
    let bit = 1u64 << v;
    max_ind_set_in(masks, allowed & !(bit | masks[v]), chosen | bit, best);
    max_ind_set_in(masks, allowed & !bit, chosen, best);
}

fn induces_cycle(masks: &[u64], mask: u64) -> bool {
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        if (masks[v] & mask).count_ones() != 2 {
            return false;
        }
        m &= m - 1;
    }
    // Degree-2 everywhere: connected iff a single cycle.
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        let mut nb = masks[v] & mask & !seen;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            seen |= 1 << w;
            stack.push(w);
            nb &= nb - 1;
        }
    }
    seen == mask
}
