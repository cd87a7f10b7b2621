//! Search for a skew closed walk by forward and backward layering.
//!
//! From a start vertex `x` the forward layers are `X_1 = N⁺(x)`,
//! `X_{i+1} = N⁺(X_i)` and the backward layers `Y_1 = N⁻(x)`,
//! `Y_{i+1} = N⁻(Y_i)`, up to depth `⌈k/2⌉`. Layers are sets of walk
//! endpoints, so a vertex may sit in several of them. A vertex in two forward
//! layers `X_i`, `X_j` with `i ≠ j` closes a walk with `i` forward and `j`
//! backward steps; two backward layers behave symmetrically. A vertex in
//! `X_i ∩ Y_j` closes a directed walk of length `i + j`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::OrientedGraph;
use crate::walks::{DirectedWalk, MixedWalk, SkewWalk};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("k={0} is below 4")]
    KTooSmall(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("no start vertex gives a skew collision: {0}")]
    NotFound(SearchDiagnostics),
    #[error("only a closed directed walk of length {} below k was found", .0.len())]
    DirectedShortWalk(DirectedWalk),
}

/// Sizes reported when no collision turns up; in the intended regime every
/// nonempty layer has more than `n/k` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchDiagnostics {
    pub starts_scanned: usize,
    pub n: usize,
    pub k: usize,
    pub smallest_forward_layer: usize,
    pub smallest_backward_layer: usize,
}

impl std::fmt::Display for SearchDiagnostics {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} starts scanned, n={} k={}, smallest layers {} forward / {} backward",
            self.starts_scanned,
            self.n,
            self.k,
            self.smallest_forward_layer,
            self.smallest_backward_layer
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSystem {
    start: usize,
    depth: usize,
    // Index 0 holds the start vertex alone.
    x: Vec<Vec<usize>>,
    y: Vec<Vec<usize>>,
    x_parent: Vec<Vec<usize>>,
    y_parent: Vec<Vec<usize>>,
}

impl LayerSystem {
    pub fn start(&self) -> usize {
        self.start
    }

    /// `⌈k/2⌉`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `X_i` in increasing vertex order, for `1 <= i <= depth`.
    pub fn forward(&self, i: usize) -> &[usize] {
        &self.x[i]
    }

    /// `Y_j` in increasing vertex order, for `1 <= j <= depth`.
    pub fn backward(&self, j: usize) -> &[usize] {
        &self.y[j]
    }

    fn in_x(&self, i: usize, v: usize) -> bool {
        self.x_parent[i][v] != NONE
    }

    fn in_y(&self, j: usize, v: usize) -> bool {
        self.y_parent[j][v] != NONE
    }

    /// Walk `x -> ... -> v` of length `i` through the recorded parents.
    pub fn forward_chain(&self, i: usize, v: usize) -> Vec<usize> {
        let mut chain = vec![v];
        let mut cur = v;
        for layer in (1..=i).rev() {
            cur = self.x_parent[layer][cur];
            chain.push(cur);
        }
        chain.reverse();
        chain
    }

    /// Walk `v -> ... -> x` of length `j` through the recorded parents.
    pub fn backward_chain(&self, j: usize, v: usize) -> Vec<usize> {
        let mut chain = vec![v];
        let mut cur = v;
        for layer in (1..=j).rev() {
            cur = self.y_parent[layer][cur];
            chain.push(cur);
        }
        chain
    }
}

pub fn build_layers(g: &OrientedGraph, x: usize, k: usize) -> Result<LayerSystem, SkewError> {
    let n = g.vertex_count();
    if k < 4 {
        return Err(SkewError::KTooSmall(k));
    }
    if x >= n {
        return Err(SkewError::VertexOutOfRange { vertex: x, n });
    }
    let depth = k.div_ceil(2);
    let grow = |next: fn(&OrientedGraph, usize) -> &[usize]| {
        let mut layers = vec![vec![x]];
        let mut parents = vec![vec![NONE; n]];
        parents[0][x] = x;
        for i in 0..depth {
            let mut parent = vec![NONE; n];
            let mut layer = Vec::new();
            for &u in &layers[i] {
                for &w in next(g, u) {
                    if parent[w] == NONE {
                        parent[w] = u;
                        layer.push(w);
                    }
                }
            }
            layer.sort_unstable();
            layers.push(layer);
            parents.push(parent);
        }
        (layers, parents)
    };
    let (xs, x_parent) = grow(OrientedGraph::out_neighbors);
    let (ys, y_parent) = grow(OrientedGraph::in_neighbors);
    Ok(LayerSystem {
        start: x,
        depth,
        x: xs,
        y: ys,
        x_parent,
        y_parent,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CollisionKind {
    XX,
    YY,
    XY,
}

/// `vertex` lies in layer `i` of the first named side and layer `j` of the
/// second. For `XX` and `YY`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    pub vertex: usize,
    pub kind: CollisionKind,
    pub i: usize,
    pub j: usize,
}

/// First collision with `i + j < k` in scan order: increasing `i + j`, then
/// `XX`, `YY`, `XY`, then smaller first index, then smaller vertex. With
/// `skew_only`, `XY` collisions are skipped.
pub fn first_collision(layers: &LayerSystem, k: usize, skew_only: bool) -> Option<Collision> {
    let d = layers.depth;
    for sum in 2..k.min(2 * d + 1) {
        let lo = sum.saturating_sub(d).max(1);
        for kind in [CollisionKind::XX, CollisionKind::YY, CollisionKind::XY] {
            if skew_only && kind == CollisionKind::XY {
                continue;
            }
            let hi = if kind == CollisionKind::XY { sum - 1 } else { (sum - 1) / 2 };
            for i in lo..=hi.min(d) {
                let j = sum - i;
                if kind != CollisionKind::XY && i == j {
                    continue;
                }
                let (first, hit): (&[usize], Box<dyn Fn(usize) -> bool>) = match kind {
                    CollisionKind::XX => (&layers.x[i], Box::new(move |v| layers.in_x(j, v))),
                    CollisionKind::YY => (&layers.y[i], Box::new(move |v| layers.in_y(j, v))),
                    CollisionKind::XY => (&layers.x[i], Box::new(move |v| layers.in_y(j, v))),
                };
                if let Some(&vertex) = first.iter().find(|&&v| hit(v)) {
                    return Some(Collision { vertex, kind, i, j });
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewHit {
    pub start: usize,
    pub collision: Collision,
    pub walk: SkewWalk,
}

/// Walk closed by a skew collision, normalised so `a > b`.
pub fn skew_walk_from(layers: &LayerSystem, c: Collision) -> SkewWalk {
    let (vertices, forward) = match c.kind {
        CollisionKind::XX => {
            // Out from x along the longer chain, back along the shorter one.
            let long = layers.forward_chain(c.j, c.vertex);
            let short = layers.forward_chain(c.i, c.vertex);
            let mut vertices = long[..c.j].to_vec();
            vertices.extend(short[1..].iter().rev());
            (vertices, labels(c.j, c.i))
        }
        CollisionKind::YY => {
            // From the collision vertex into x along the longer chain, then
            // back out along the shorter one.
            let long = layers.backward_chain(c.j, c.vertex);
            let short = layers.backward_chain(c.i, c.vertex);
            let mut vertices = long;
            vertices.extend(short[1..c.i].iter().rev());
            (vertices, labels(c.j, c.i))
        }
        CollisionKind::XY => unreachable!("directed collisions do not give skew walks"),
    };
    SkewWalk::new(MixedWalk::new(vertices, forward).expect("labels match vertices"))
        .expect("i != j")
}

fn labels(forward: usize, backward: usize) -> Vec<bool> {
    let mut labels = vec![true; forward];
    labels.resize(forward + backward, false);
    labels
}

/// Closed directed walk `x -> v -> x` from an `XY` collision.
pub fn directed_walk_from(layers: &LayerSystem, c: Collision) -> DirectedWalk {
    debug_assert_eq!(c.kind, CollisionKind::XY);
    let mut vertices = layers.forward_chain(c.i, c.vertex);
    vertices.extend_from_slice(&layers.backward_chain(c.j, c.vertex)[1..]);
    DirectedWalk::closed(vertices).expect("both chains end at the start")
}

/// Scans start vertices in increasing order and returns the skew walk from
/// the first start with a skew collision. When no start has one, a closed
/// directed walk shorter than `k` is reported if any start has an `XY`
/// collision.
pub fn find_skew_walk(g: &OrientedGraph, k: usize) -> Result<SkewHit, SkewError> {
    if k < 4 {
        return Err(SkewError::KTooSmall(k));
    }
    let n = g.vertex_count();
    let hit = (0..n).into_par_iter().find_map_first(|x| {
        let layers = build_layers(g, x, k).expect("k and x checked");
        let c = first_collision(&layers, k, true)?;
        Some(SkewHit {
            start: x,
            collision: c,
            walk: skew_walk_from(&layers, c),
        })
    });
    if let Some(hit) = hit {
        hit.walk
            .validate(g)
            .expect("parent chains follow edges of the host");
        debug_assert!(hit.walk.a() + hit.walk.b() < k);
        return Ok(hit);
    }
    let directed = (0..n).into_par_iter().find_map_first(|x| {
        let layers = build_layers(g, x, k).expect("k and x checked");
        let c = first_collision(&layers, k, false)?;
        Some(directed_walk_from(&layers, c))
    });
    if let Some(walk) = directed {
        return Err(SkewError::DirectedShortWalk(walk));
    }
    Err(SkewError::NotFound(diagnose(g, k)))
}

fn diagnose(g: &OrientedGraph, k: usize) -> SearchDiagnostics {
    let n = g.vertex_count();
    let (fwd, bwd) = (0..n)
        .into_par_iter()
        .map(|x| {
            let layers = build_layers(g, x, k).expect("k and x checked");
            let smallest = |l: &[Vec<usize>]| l[1..].iter().map(Vec::len).min().unwrap_or(0);
            (smallest(&layers.x), smallest(&layers.y))
        })
        .reduce(|| (usize::MAX, usize::MAX), |a, b| (a.0.min(b.0), a.1.min(b.1)));
    SearchDiagnostics {
        starts_scanned: n,
        n,
        k,
        smallest_forward_layer: if n == 0 { 0 } else { fwd },
        smallest_backward_layer: if n == 0 { 0 } else { bwd },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::blow_up_cycle;

    fn cycle(n: usize) -> OrientedGraph {
        OrientedGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn star_layers() {
        let g = OrientedGraph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let l = build_layers(&g, 0, 7).unwrap();
        assert_eq!(l.depth(), 4);
        assert_eq!(l.forward(1), &[1, 2]);
        for i in 2..=4 {
            assert!(l.forward(i).is_empty());
        }
        for j in 1..=4 {
            assert!(l.backward(j).is_empty());
        }
        assert_eq!(build_layers(&g, 0, 3), Err(SkewError::KTooSmall(3)));
    }

    #[test]
    fn cycle_layers() {
        let l = build_layers(&cycle(6), 0, 7).unwrap();
        for i in 1..=4 {
            assert_eq!(l.forward(i), &[i % 6]);
            assert_eq!(l.backward(i), &[(6 - i) % 6]);
            assert_eq!(l.forward_chain(i, i % 6), (0..=i).map(|v| v % 6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn blow_up_layers() {
        let g = blow_up_cycle(4, 2).unwrap();
        let l = build_layers(&g, 0, 8).unwrap();
        for i in 1..=4 {
            assert_eq!(l.forward(i).len(), 2);
        }
    }

    #[test]
    fn skew_four_cycle() {
        let g = OrientedGraph::from_edges(
            8,
            [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0)],
        )
        .unwrap();
        let hit = find_skew_walk(&g, 8).unwrap();
        assert_eq!((hit.walk.a(), hit.walk.b()), (3, 1));
        assert_eq!(hit.start, 0);
        assert_eq!(
            hit.collision,
            Collision { vertex: 3, kind: CollisionKind::XX, i: 1, j: 3 }
        );
        assert_eq!(hit.walk.walk().vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn backward_collision_walks_validate() {
        // Reversing every edge turns forward collisions into backward ones.
        let g = OrientedGraph::from_edges(
            8,
            [(1, 0), (2, 1), (3, 2), (3, 0), (4, 3), (5, 4), (6, 5), (7, 6), (0, 7)],
        )
        .unwrap();
        let hit = find_skew_walk(&g, 8).unwrap();
        assert_eq!(hit.collision.kind, CollisionKind::YY);
        assert!(hit.walk.validate(&g).is_ok());
        assert_eq!((hit.walk.a(), hit.walk.b()), (3, 1));
    }

    #[test]
    fn chorded_blow_up_of_eight_cycle() {
        // Parts of size 2 with extra edges to the part three steps ahead,
        // which keeps the graph bipartite and lifts δ⁰ to 3 > 16/8.
        let base = blow_up_cycle(8, 2).unwrap();
        let chords = (0..8).flat_map(|p| (0..2).map(move |a| (2 * p + a, 2 * ((p + 3) % 8) + a)));
        let g = OrientedGraph::from_edges(16, base.edges().chain(chords)).unwrap();
        let hit = find_skew_walk(&g, 8).unwrap();
        let w = &hit.walk;
        assert!(w.validate(&g).is_ok());
        assert!(w.a() != w.b() && w.a() + w.b() < 8);
    }

    #[test]
    fn directed_four_cycle_is_reported() {
        match find_skew_walk(&cycle(4), 8) {
            Err(SkewError::DirectedShortWalk(w)) => {
                assert_eq!(w.len(), 4);
                assert!(crate::walks::validate_directed_walk(&cycle(4), &w).is_ok());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn long_cycle_has_no_collision() {
        assert!(matches!(find_skew_walk(&cycle(9), 8), Err(SkewError::NotFound(_))));
    }
}
