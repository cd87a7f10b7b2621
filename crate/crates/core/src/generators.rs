//! Extremal and test-bed constructions. Every generator is a deterministic
//! function of its arguments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{degree_summary, directed_girth, Girth, OrientedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("regular tournaments need odd order, got {0}")]
    EvenOrder(usize),
    #[error("glue spec violated: {0}")]
    SpecViolation(String),
    #[error("cannot satisfy the requested properties: {0}")]
    CannotSatisfy(String),
}

/// `k` independent parts of size `m`; part `i` sends every edge to part
/// `i + 1 (mod k)`. Vertex `j` of part `i` is `i·m + j`.
pub fn blow_up_cycle(k: usize, m: usize) -> Result<OrientedGraph, GeneratorError> {
    if k < 3 || m < 1 {
        return Err(GeneratorError::InvalidParameter(format!(
            "blow-up needs k >= 3 and m >= 1, got k={k} m={m}"
        )));
    }
    let edges = (0..k).flat_map(move |i| {
        let next = (i + 1) % k;
        (0..m).flat_map(move |a| (0..m).map(move |b| (i * m + a, next * m + b)))
    });
    Ok(OrientedGraph::from_edges(k * m, edges).expect("blow-up is oriented"))
}

/// Rotational tournament: `i` beats `i+1, ..., i+(m-1)/2 (mod m)`.
pub fn regular_tournament(m: usize) -> Result<OrientedGraph, GeneratorError> {
    if m % 2 == 0 {
        return Err(GeneratorError::EvenOrder(m));
    }
    if m < 3 {
        return Err(GeneratorError::InvalidParameter(format!(
            "tournament order must be at least 3, got {m}"
        )));
    }
    let half = (m - 1) / 2;
    let edges = (0..m).flat_map(move |i| (1..=half).map(move |o| (i, (i + o) % m)));
    Ok(OrientedGraph::from_edges(m, edges).expect("rotational tournament is oriented"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueSpec {
    pub k: usize,
    pub ell: usize,
}

impl GlueSpec {
    pub fn copies(&self) -> usize {
        (self.k.saturating_sub(1)) / 2
    }

    pub fn tournament_order(&self) -> usize {
        self.ell - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.copies() * (self.ell - 2) + 1
    }

    pub fn check(&self) -> Result<(), GeneratorError> {
        if self.k < 3 {
            return Err(GeneratorError::SpecViolation(format!("k={} is below 3", self.k)));
        }
        if self.ell <= 4 || self.ell % 2 != 0 {
            return Err(GeneratorError::SpecViolation(format!(
                "ell={} must be even and greater than 4",
                self.ell
            )));
        }
        Ok(())
    }
}

/// `⌊(k-1)/2⌋` copies of the regular tournament on `ell - 1` vertices sharing
/// vertex 0. Copy `c` maps its vertex `t > 0` to `c·(ell-2) + t`.
pub fn glued_tournaments(spec: GlueSpec) -> Result<OrientedGraph, GeneratorError> {
    spec.check()?;
    let t = regular_tournament(spec.tournament_order())?;
    let stride = spec.ell - 2;
    let map = |c: usize, v: usize| if v == 0 { 0 } else { c * stride + v };
    let edges: Vec<_> = (0..spec.copies())
        .flat_map(|c| t.edges().map(move |(u, v)| (map(c, u), map(c, v))))
        .collect();
    Ok(OrientedGraph::from_edges(spec.vertex_count(), edges).expect("copies only share vertex 0"))
}

const REGIME_ATTEMPTS: u64 = 16;

/// A seeded random oriented graph with `δ⁰ > n/k` and directed girth at
/// least `k`, for `n >= 64k`.
///
/// Vertices sit on a circle and every edge jumps forward by at most
/// `J = ⌈n/(k-1)⌉ - 1` positions. A directed cycle has to go round the circle
/// at least once, so it needs more than `k - 1` edges. Each vertex takes a
/// random set of forward jumps of size at least `⌊n/k⌋ + 1`, short in-degrees
/// are topped up, and labels are shuffled. Both properties are checked before
/// returning.
pub fn regime_instance(k: usize, n: usize, seed: u64) -> Result<OrientedGraph, GeneratorError> {
    if k < 4 {
        return Err(GeneratorError::InvalidParameter(format!("k={k} is below 4")));
    }
    if n < 64 * k {
        return Err(GeneratorError::CannotSatisfy(format!(
            "n={n} is below 64k={}",
            64 * k
        )));
    }
    if n / k + 1 > n.div_ceil(k - 1) - 1 {
        return Err(GeneratorError::CannotSatisfy(format!(
            "no room for {} forward jumps below n/(k-1)",
            n / k + 1
        )));
    }
    let mut last = String::new();
    for attempt in 0..REGIME_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(REGIME_ATTEMPTS) + attempt);
        let g = circular_window(k, n, &mut rng);
        match check_regime(&g, k) {
            Ok(()) => return Ok(g),
            Err(reason) => last = reason,
        }
    }
    Err(GeneratorError::CannotSatisfy(last))
}

fn circular_window(k: usize, n: usize, rng: &mut ChaCha8Rng) -> OrientedGraph {
    let jump = n.div_ceil(k - 1) - 1;
    let d = n / k + 1;
    let mut out: Vec<Vec<bool>> = vec![vec![false; jump + 1]; n];
    let mut in_deg = vec![0usize; n];
    let offsets: Vec<usize> = (1..=jump).collect();
    for (v, row) in out.iter_mut().enumerate() {
        let size = rng.gen_range(d..=(d + 2).min(jump));
        for &o in offsets.choose_multiple(rng, size) {
            row[o] = true;
            in_deg[(v + o) % n] += 1;
        }
    }
    for w in 0..n {
        let mut missing: Vec<usize> = (1..=jump)
            .filter(|&o| !out[(w + n - o) % n][o])
            .collect();
        missing.shuffle(rng);
        for o in missing.into_iter().take(d.saturating_sub(in_deg[w])) {
            out[(w + n - o) % n][o] = true;
            in_deg[w] += 1;
        }
    }
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges: Vec<_> = out
        .iter()
        .enumerate()
        .flat_map(|(v, row)| {
            let label = &label;
            (1..=jump)
                .filter(move |&o| row[o])
                .map(move |o| (label[v], label[(v + o) % n]))
        })
        .collect();
    OrientedGraph::from_edges(n, edges).expect("jumps stay below n/2")
}

fn check_regime(g: &OrientedGraph, k: usize) -> Result<(), String> {
    let n = g.vertex_count();
    let s = degree_summary(g).map_err(|e| e.to_string())?;
    if s.min_semi * k <= n {
        return Err(format!("min semidegree {} is not above n/k", s.min_semi));
    }
    if let Girth::Finite { length, .. } = directed_girth(g) {
        if length < k {
            return Err(format!("directed girth {length} is below k={k}"));
        }
    }
    Ok(())
}
