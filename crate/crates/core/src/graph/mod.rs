//! Oriented graphs and their elementary statistics.
//!
//! An [`OrientedGraph`] is a loop-free digraph in which at most one of `u→v`
//! and `v→u` is present. Adjacency is stored as sorted neighbour lists in both
//! directions and never changes after construction, so a graph can be shared
//! freely between threads.

mod io;
mod shen;

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::walks::{DirectedWalk, MixedWalk};

pub use io::{parse_edge_list, read_edge_list, write_edge_list, EdgeListError};
pub use shen::{corollary_shen_threshold, shen_girth_bound, shen_ratio_bounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {from}->{to} appears twice")]
    Duplicate { from: usize, to: usize },
    #[error("edge {from}->{to} is anti-parallel to an existing edge")]
    AntiParallel { from: usize, to: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("degree bound d={d} must satisfy 1 <= d <= n-1 (n={n})")]
    InvalidDegree { n: u64, d: u64 },
    #[error("k={0} is below 7")]
    KTooSmall(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl OrientedGraph {
    /// Builds a graph on vertices `0..n`, rejecting loops, repeated edges and
    /// anti-parallel pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let mut edge_count = 0;
        for (u, list) in out_adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::Duplicate { from: u, to: w[0] });
            }
            edge_count += list.len();
        }
        for list in in_adj.iter_mut() {
            list.sort_unstable();
        }
        for (u, list) in out_adj.iter().enumerate() {
            for &v in list {
                if out_adj[v].binary_search(&u).is_ok() {
                    let (from, to) = if u < v { (v, u) } else { (u, v) };
                    return Err(GraphError::AntiParallel { from, to });
                }
            }
        }
        Ok(Self {
            out_adj,
            in_adj,
            edge_count,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.out_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Underlying-graph neighbours: out-neighbours first, then in-neighbours.
    pub fn underlying_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out_adj[v].iter().chain(self.in_adj[v].iter()).copied()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)))
    }
}

/// Minimum degrees of an oriented graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub min_out: usize,
    pub min_in: usize,
    pub min_semi: usize,
    pub min_underlying: usize,
}

pub fn degree_summary(g: &OrientedGraph) -> Result<DegreeSummary, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let min_out = (0..n).map(|v| g.out_degree(v)).min().unwrap_or(0);
    let min_in = (0..n).map(|v| g.in_degree(v)).min().unwrap_or(0);
    let min_underlying = (0..n)
        .map(|v| g.out_degree(v) + g.in_degree(v))
        .min()
        .unwrap_or(0);
    Ok(DegreeSummary {
        min_out,
        min_in,
        min_semi: min_out.min(min_in),
        min_underlying,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Girth {
    Finite { length: usize, cycle: DirectedWalk },
    Infinite,
}

impl Girth {
    pub fn length(&self) -> Option<usize> {
        match self {
            Girth::Finite { length, .. } => Some(*length),
            Girth::Infinite => None,
        }
    }
}

/// Shortest directed cycle, by a breadth-first search from every vertex.
///
/// Ties on length go to the smallest start vertex, so the witness does not
/// depend on the thread schedule.
pub fn directed_girth(g: &OrientedGraph) -> Girth {
    let n = g.vertex_count();
    let best = AtomicUsize::new(usize::MAX);
    let found = (0..n)
        .into_par_iter()
        .filter_map(|s| {
            let cycle = shortest_cycle_through(g, s, best.load(Ordering::Relaxed))?;
            best.fetch_min(cycle.len(), Ordering::Relaxed);
            Some((cycle.len(), s, cycle))
        })
        .min_by_key(|(len, s, _)| (*len, *s));
    match found {
        Some((length, _, cycle)) => Girth::Finite { length, cycle },
        None => Girth::Infinite,
    }
}

// Shortest directed cycle through `s` of length at most `bound`.
fn shortest_cycle_through(g: &OrientedGraph, s: usize, bound: usize) -> Option<DirectedWalk> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        if dist[u] + 1 > bound {
            return None;
        }
        for &w in g.out_neighbors(u) {
            if w == s {
                return Some(DirectedWalk::closed_unchecked(closing_cycle(&parent, s, u)));
            }
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

// `[s, ..., u, s]` from BFS parents, where `u -> s` closes the cycle.
fn closing_cycle(parent: &[usize], s: usize, u: usize) -> Vec<usize> {
    let mut back = Vec::new();
    let mut cur = u;
    while cur != s {
        back.push(cur);
        cur = parent[cur];
    }
    let mut vertices = Vec::with_capacity(back.len() + 2);
    vertices.push(s);
    vertices.extend(back.into_iter().rev());
    vertices.push(s);
    vertices
}

/// Shortest odd cycle of the underlying undirected graph with length below
/// `cap`, labelled by the orientation of its edges and traversed so that
/// forward steps are at least as many as backward ones.
pub fn underlying_odd_girth(g: &OrientedGraph, cap: usize) -> Option<MixedWalk> {
    if cap <= 3 {
        return None;
    }
    let n = g.vertex_count();
    let best = AtomicUsize::new(cap - 1);
    let found = (0..n)
        .into_par_iter()
        .filter_map(|s| {
            let cycle = shortest_odd_closed_walk_from(g, s, best.load(Ordering::Relaxed))?;
            best.fetch_min(cycle.len(), Ordering::Relaxed);
            Some((cycle.len(), s, cycle))
        })
        .min_by_key(|(len, s, _)| (*len, *s));
    let (_, _, vertices) = found?;
    debug_assert!({
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    });
    let walk = MixedWalk::from_host(g, vertices).expect("odd cycle follows underlying edges");
    Some(walk.with_forward_majority())
}

// Odd closed walk `s ... u w ... s` of length at most `bound`, where `u` and
// `w` are adjacent and equidistant from `s`. Returned without the repeated
// final vertex.
fn shortest_odd_closed_walk_from(g: &OrientedGraph, s: usize, bound: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let d = dist[u];
        if 2 * d + 1 > bound {
            return None;
        }
        for w in g.underlying_neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = d + 1;
                parent[w] = u;
                queue.push_back(w);
            } else if dist[w] == d {
                let mut to_u = tree_path(&parent, s, u);
                let to_w = tree_path(&parent, s, w);
                to_u.extend(to_w[1..].iter().rev());
                return Some(to_u);
            }
        }
    }
    None
}

// `[s, ..., v]` along BFS parents.
fn tree_path(parent: &[usize], s: usize, v: usize) -> Vec<usize> {
    let mut path = vec![v];
    let mut cur = v;
    while cur != s {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Colour classes with `larger.len() >= smaller.len()`.
    Bipartite { larger: Vec<usize>, smaller: Vec<usize> },
    NotBipartite { witness: MixedWalk },
}

/// Two-colours the underlying graph. Each component's smallest vertex gets
/// the first colour; the classes are then swapped if needed so the first is
/// the larger.
pub fn bipartition(g: &OrientedGraph) -> Bipartition {
    let n = g.vertex_count();
    let mut colour: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for w in g.underlying_neighbors(u) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => {
                        let witness = underlying_odd_girth(g, n + 1)
                            .expect("a colouring conflict implies an odd cycle");
                        return Bipartition::NotBipartite { witness };
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let (mut first, mut second): (Vec<usize>, Vec<usize>) =
        (0..n).partition(|&v| colour[v] == Some(false));
    if first.len() < second.len() {
        std::mem::swap(&mut first, &mut second);
    }
    Bipartition::Bipartite {
        larger: first,
        smaller: second,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{blow_up_cycle, regular_tournament};

    fn triangle() -> OrientedGraph {
        OrientedGraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn rejects_loops_duplicates_and_two_cycles() {
        assert_eq!(
            OrientedGraph::from_edges(2, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            OrientedGraph::from_edges(3, [(0, 1), (0, 1)]),
            Err(GraphError::Duplicate { from: 0, to: 1 })
        );
        assert!(matches!(
            OrientedGraph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::AntiParallel { .. })
        ));
        assert_eq!(
            OrientedGraph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn adjacency_is_consistent() {
        let g = blow_up_cycle(4, 3).unwrap();
        for (u, v) in g.edges() {
            assert!(g.in_neighbors(v).contains(&u));
            assert!(!g.has_edge(v, u));
        }
        let ins: usize = (0..g.vertex_count()).map(|v| g.in_degree(v)).sum();
        assert_eq!(ins, g.edge_count());
    }

    #[test]
    fn degree_summaries() {
        let s = degree_summary(&triangle()).unwrap();
        assert_eq!((s.min_out, s.min_in, s.min_semi, s.min_underlying), (1, 1, 1, 2));
        let s = degree_summary(&regular_tournament(5).unwrap()).unwrap();
        assert_eq!((s.min_out, s.min_in, s.min_semi, s.min_underlying), (2, 2, 2, 4));
        let s = degree_summary(&blow_up_cycle(5, 2).unwrap()).unwrap();
        assert_eq!(s.min_semi, 10 / 5);
        let empty = OrientedGraph::from_edges(0, []).unwrap();
        assert_eq!(degree_summary(&empty), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(directed_girth(&triangle()).length(), Some(3));
        let transitive =
            OrientedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(directed_girth(&transitive), Girth::Infinite);
        let g = blow_up_cycle(5, 2).unwrap();
        match directed_girth(&g) {
            Girth::Finite { length, cycle } => {
                assert_eq!(length, 5);
                assert_eq!(cycle.len(), 5);
                assert!(crate::walks::validate_directed_walk(&g, &cycle).is_ok());
            }
            Girth::Infinite => panic!("blow-up has cycles"),
        }
    }

    #[test]
    fn odd_girth_examples() {
        let w = underlying_odd_girth(&triangle(), 7).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!((w.forward_count(), w.backward_count()), (3, 0));

        // 0->1->2->3->4 plus 0->4: four forward, one backward.
        let g = OrientedGraph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let w = underlying_odd_girth(&g, 7).unwrap();
        assert_eq!((w.len(), w.forward_count(), w.backward_count()), (5, 4, 1));
        assert!(w.validate(&g).is_ok());
        assert_eq!(underlying_odd_girth(&g, 5), None);

        let bip = blow_up_cycle(4, 3).unwrap();
        assert_eq!(underlying_odd_girth(&bip, 100), None);
    }

    #[test]
    fn bipartition_examples() {
        let path = OrientedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            bipartition(&path),
            Bipartition::Bipartite {
                larger: vec![0, 2],
                smaller: vec![1]
            }
        );
        match bipartition(&triangle()) {
            Bipartition::NotBipartite { witness } => assert_eq!(witness.len(), 3),
            other => panic!("{other:?}"),
        }
        match bipartition(&blow_up_cycle(4, 3).unwrap()) {
            Bipartition::Bipartite { larger, smaller } => {
                assert_eq!((larger.len(), smaller.len()), (6, 6))
            }
            other => panic!("{other:?}"),
        }
    }
}
