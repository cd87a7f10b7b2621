#![allow(dead_code)]

use std::collections::VecDeque;

use rand::Rng;
use skewwalk_core::graph::OrientedGraph;

/// Every pair is joined with probability `p`, in a uniformly random direction.
pub fn random_oriented<R: Rng>(n: usize, p: f64, rng: &mut R) -> OrientedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    OrientedGraph::from_edges(n, edges).unwrap()
}

/// Random orientation of a random bipartite graph with sides `0..left` and
/// `left..n`.
pub fn random_bipartite<R: Rng>(n: usize, left: usize, p: f64, rng: &mut R) -> OrientedGraph {
    let mut edges = Vec::new();
    for u in 0..left {
        for v in left..n {
            if rng.gen_bool(p) {
                edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    OrientedGraph::from_edges(n, edges).unwrap()
}

/// `exists[t]` for `t <= max`: some vertex returns to itself after exactly
/// `t` steps. Plain reachability iterated step by step.
pub fn naive_closed_walks(g: &OrientedGraph, max: usize) -> Vec<bool> {
    let n = g.vertex_count();
    let mut exists = vec![false; max + 1];
    for s in 0..n {
        let mut cur = vec![false; n];
        cur[s] = true;
        for slot in exists.iter_mut().skip(1) {
            let mut next = vec![false; n];
            for u in (0..n).filter(|&u| cur[u]) {
                for &w in g.out_neighbors(u) {
                    next[w] = true;
                }
            }
            cur = next;
            *slot |= cur[s];
        }
    }
    exists
}

/// Whether some closed walk of the underlying graph has `a` forward and `b`
/// backward steps with `a != b` and `a + b < k`, by search over
/// (vertex, a, b) states.
pub fn brute_skew_exists(g: &OrientedGraph, k: usize) -> bool {
    let n = g.vertex_count();
    let idx = |v: usize, a: usize, b: usize| (v * k + a) * k + b;
    for x in 0..n {
        let mut seen = vec![false; n * k * k];
        let mut queue = VecDeque::from([(x, 0, 0)]);
        seen[idx(x, 0, 0)] = true;
        while let Some((v, a, b)) = queue.pop_front() {
            if v == x && a != b {
                return true;
            }
            if a + b + 1 >= k {
                continue;
            }
            for (&w, fa, fb) in g
                .out_neighbors(v)
                .iter()
                .map(|w| (w, 1, 0))
                .chain(g.in_neighbors(v).iter().map(|w| (w, 0, 1)))
            {
                let s = idx(w, a + fa, b + fb);
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back((w, a + fa, b + fb));
                }
            }
        }
    }
    false
}

/// Sizes of the weakly connected components of `g` with vertex `cut` removed.
pub fn components_without(g: &OrientedGraph, cut: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[cut] = true;
    let mut sizes = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for w in g.underlying_neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}
