//! Bushes in the augmented incidence graph, at brute-force scale.
//!
//! A bush of dimension (a1, …, ap) is a triangle (x, y, z) together with p
//! stars of sizes a1..ap whose centers are joined to y. B*_H is the
//! incidence graph of H plus a triangle whose y node sees every vertex node.
//! H has a k-mini-hitting set iff B*_H contains a bush with p ≤ k and
//! a1 + … + ap = p + k.

use thiserror::Error;

use crate::bipartite::BipartiteGraph;
use crate::hitset::{Hypergraph, Vertex};

/// n + m accepted by [`bush_exists_small`].
pub const BUSH_MAX_SIZE: usize = 12;
/// Host nodes accepted by [`find_subgraph`].
pub const SUBGRAPH_MAX_NODES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BushError {
    #[error("brute force limited to n + m ≤ {limit}, got {size}")]
    TooLarge { size: usize, limit: usize },
    #[error("dimension must have positive parts")]
    BadDimension,
}

/// Non-increasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionTuple {
    parts: Vec<usize>,
}

impl PartitionTuple {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, BushError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(BushError::BadDimension);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionTuple { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// All partitions of `s` into exactly `l` positive parts.
pub fn generate_partitions(s: usize, l: usize) -> Vec<PartitionTuple> {
    let mut out = Vec::new();
    if l == 0 || l > s {
        return out;
    }
    let mut cur = Vec::with_capacity(l);
    descend(s, l, s, &mut cur, &mut out);
    out
}

fn descend(
    rest: usize,
    slots: usize,
    cap: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<PartitionTuple>,
) {
    if slots == 0 {
        if rest == 0 {
            out.push(PartitionTuple { parts: cur.clone() });
        }
        return;
    }
    // the remaining slots - 1 parts need at least one each
    let hi = cap.min(rest + 1 - slots);
    let lo = rest.div_ceil(slots);
    for a in (lo..=hi).rev() {
        cur.push(a);
        descend(rest - a, slots - 1, a, cur, out);
        cur.pop();
    }
}

/// Undirected simple graph on `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(nodes: usize) -> Self {
        SimpleGraph {
            adj: vec![Vec::new(); nodes],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b && !self.adj[a].contains(&b) {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }
}

/// B*_H. Vertex v is node v − 1, edge e is node n + e, then x, y, z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedIncidence {
    pub graph: SimpleGraph,
    pub num_vertices: usize,
    pub num_edges: usize,
}

impl AugmentedIncidence {
    pub fn vertex_node(&self, v: Vertex) -> usize {
        v as usize - 1
    }

    pub fn edge_node(&self, e: usize) -> usize {
        self.num_vertices + e
    }

    pub fn x(&self) -> usize {
        self.num_vertices + self.num_edges
    }

    pub fn y(&self) -> usize {
        self.x() + 1
    }

    pub fn z(&self) -> usize {
        self.x() + 2
    }

    pub fn is_vertex_node(&self, node: usize) -> bool {
        node < self.num_vertices
    }
}

pub fn build_augmented_incidence(h: &Hypergraph) -> AugmentedIncidence {
    let n = h.num_vertices() as usize;
    let m = h.num_edges();
    let mut out = AugmentedIncidence {
        graph: SimpleGraph::new(n + m + 3),
        num_vertices: n,
        num_edges: m,
    };
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            let (a, b) = (out.vertex_node(v), out.edge_node(e));
            out.graph.add_edge(a, b);
        }
    }
    let (x, y, z) = (out.x(), out.y(), out.z());
    out.graph.add_edge(x, y);
    out.graph.add_edge(y, z);
    out.graph.add_edge(z, x);
    for v in 0..n {
        out.graph.add_edge(y, v);
    }
    out
}

/// The bush of dimension `dim`: x, y, z are nodes 0, 1, 2, then each star's
/// center followed by its leaves.
pub fn bush_graph(dim: &PartitionTuple) -> SimpleGraph {
    let mut g = SimpleGraph::new(3 + dim.parts.len() + dim.sum());
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 0);
    let mut next = 3;
    for &a in &dim.parts {
        let center = next;
        g.add_edge(1, center);
        for leaf in center + 1..=center + a {
            g.add_edge(center, leaf);
        }
        next += a + 1;
    }
    g
}

/// Star centers (hypergraph vertices) and the edges used as each star's
/// leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BushEmbedding {
    pub centers: Vec<Vertex>,
    pub leaves: Vec<Vec<usize>>,
}

/// Tries every tuple of distinct centers; leaves for a tuple exist iff the
/// graph with center i copied a_i times matches every copy to its own edge.
pub fn find_bush_small(
    h: &Hypergraph,
    dim: &PartitionTuple,
) -> Result<Option<BushEmbedding>, BushError> {
    let size = h.num_vertices() as usize + h.num_edges();
    if size > BUSH_MAX_SIZE {
        return Err(BushError::TooLarge {
            size,
            limit: BUSH_MAX_SIZE,
        });
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); h.num_vertices() as usize + 1];
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            incident[v as usize].push(e);
        }
    }
    let mut centers = Vec::with_capacity(dim.parts.len());
    Ok(try_centers(h, dim, &incident, &mut centers))
}

fn try_centers(
    h: &Hypergraph,
    dim: &PartitionTuple,
    incident: &[Vec<usize>],
    centers: &mut Vec<Vertex>,
) -> Option<BushEmbedding> {
    let i = centers.len();
    if i == dim.parts.len() {
        return assign_leaves(h.num_edges(), dim, incident, centers);
    }
    for v in 1..=h.num_vertices() {
        if centers.contains(&v) || incident[v as usize].len() < dim.parts[i] {
            continue;
        }
        centers.push(v);
        if let Some(found) = try_centers(h, dim, incident, centers) {
            return Some(found);
        }
        centers.pop();
    }
    None
}

fn assign_leaves(
    m: usize,
    dim: &PartitionTuple,
    incident: &[Vec<usize>],
    centers: &[Vertex],
) -> Option<BushEmbedding> {
    let mut owner = Vec::new();
    let mut adj = Vec::new();
    for (i, (&c, &a)) in centers.iter().zip(&dim.parts).enumerate() {
        for _ in 0..a {
            owner.push(i);
            adj.push(incident[c as usize].clone());
        }
    }
    let g = BipartiteGraph::new(m, adj);
    let state = g.maximum_matching();
    if state.size() < owner.len() {
        return None;
    }
    let mut leaves = vec![Vec::new(); centers.len()];
    for (u, e) in state.pairs() {
        leaves[owner[u]].push(e);
    }
    for l in &mut leaves {
        l.sort_unstable();
    }
    Some(BushEmbedding {
        centers: centers.to_vec(),
        leaves,
    })
}

pub fn bush_exists_small(h: &Hypergraph, dim: &PartitionTuple) -> Result<bool, BushError> {
    Ok(find_bush_small(h, dim)?.is_some())
}

/// Whether some dimension with p ≤ k parts summing to p + k admits a bush.
pub fn some_bush_exists(h: &Hypergraph, k: usize) -> Result<bool, BushError> {
    for p in 1..=k {
        for dim in generate_partitions(p + k, p) {
            if bush_exists_small(h, &dim)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// An injective map from `pattern` nodes to `host` nodes that carries edges
/// to edges, by backtracking. Not required to be induced.
pub fn find_subgraph(
    pattern: &SimpleGraph,
    host: &SimpleGraph,
) -> Result<Option<Vec<usize>>, BushError> {
    if host.num_nodes() > SUBGRAPH_MAX_NODES {
        return Err(BushError::TooLarge {
            size: host.num_nodes(),
            limit: SUBGRAPH_MAX_NODES,
        });
    }
    if pattern.num_nodes() > host.num_nodes() {
        return Ok(None);
    }
    let mut map = Vec::with_capacity(pattern.num_nodes());
    let mut used = vec![false; host.num_nodes()];
    Ok(extend_map(pattern, host, &mut map, &mut used).then_some(map))
}

fn extend_map(
    pattern: &SimpleGraph,
    host: &SimpleGraph,
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = map.len();
    if i == pattern.num_nodes() {
        return true;
    }
    for cand in 0..host.num_nodes() {
        if used[cand] || host.neighbors(cand).len() < pattern.neighbors(i).len() {
            continue;
        }
        let fits = pattern
            .neighbors(i)
            .iter()
            .filter(|&&j| j < i)
            .all(|&j| host.has_edge(cand, map[j]));
        if !fits {
            continue;
        }
        used[cand] = true;
        map.push(cand);
        if extend_map(pattern, host, map, used) {
            return true;
        }
        map.pop();
        used[cand] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(n: u32, edges: &[&[Vertex]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    fn parts(v: &[PartitionTuple]) -> Vec<Vec<usize>> {
        v.iter().map(|p| p.parts().to_vec()).collect()
    }

    #[test]
    fn partition_examples() {
        assert_eq!(
            parts(&generate_partitions(4, 2)),
            vec![vec![3, 1], vec![2, 2]]
        );
        assert_eq!(parts(&generate_partitions(5, 1)), vec![vec![5]]);
        assert!(generate_partitions(2, 3).is_empty());
        let total = |s| {
            (1..=s)
                .map(|l| generate_partitions(s, l).len())
                .sum::<usize>()
        };
        assert_eq!(total(5), 7);
        assert_eq!(total(10), 42);
    }

    #[test]
    fn augmented_examples() {
        let b = build_augmented_incidence(&hg(1, &[&[1]]));
        assert_eq!(b.graph.num_nodes(), 5);
        assert_eq!(b.graph.num_edges(), 5);
        assert!(b.graph.has_edge(b.y(), b.vertex_node(1)));
        assert!(b.graph.has_edge(b.vertex_node(1), b.edge_node(0)));

        let b = build_augmented_incidence(&hg(3, &[]));
        assert_eq!(b.graph.num_nodes(), 6);
        assert_eq!(b.graph.num_edges(), 6);
    }

    #[test]
    fn bush_examples() {
        let dim = PartitionTuple::new(vec![2]).unwrap();
        let found = find_bush_small(&hg(2, &[&[1], &[1, 2]]), &dim)
            .unwrap()
            .unwrap();
        assert_eq!(found.centers, vec![1]);
        assert_eq!(found.leaves, vec![vec![0, 1]]);
        assert!(!bush_exists_small(&hg(2, &[&[1], &[2]]), &dim).unwrap());
    }

    #[test]
    fn guards() {
        let dim = PartitionTuple::new(vec![1]).unwrap();
        let big = hg(13, &[]);
        assert!(bush_exists_small(&big, &dim).is_err());
        assert!(PartitionTuple::new(vec![]).is_err());
        assert!(PartitionTuple::new(vec![2, 0]).is_err());
    }

    #[test]
    fn agrees_with_generic_subgraph_search() {
        let h = hg(3, &[&[1, 2], &[2, 3], &[2], &[1]]);
        let host = build_augmented_incidence(&h);
        for s in 1..=4 {
            for l in 1..=s {
                for dim in generate_partitions(s, l) {
                    let fast = bush_exists_small(&h, &dim).unwrap();
                    let slow = find_subgraph(&bush_graph(&dim), &host.graph)
                        .unwrap()
                        .is_some();
                    assert_eq!(fast, slow, "{dim:?}");
                }
            }
        }
    }
}
