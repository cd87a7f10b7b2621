//! Walks in an oriented graph.
//!
//! Walks store vertices only. Whether a step is an edge of the host graph is
//! checked against that graph on validation, so walk values stay independent
//! of any particular graph.
//!
//! A [`SkewWalk`] is a closed walk of the underlying graph whose steps are
//! labelled forward or backward, with more forward than backward steps. From
//! a skew walk and one directed path per maximal backward run (a
//! [`ConnectorSet`]) [`build_w1_w2`] derives two closed directed walks whose
//! lengths `l1`, `l2` satisfy `2·l1 - l2 = a - b`; [`compose`] then winds them
//! `u` and `v` times to reach a prescribed total length.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{paper_compose, solve_nonneg, ArithError, ComposerCertificate};
use crate::graph::OrientedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("walk has no vertices")]
    Empty,
    #[error("step {index} is not a forward edge of the host")]
    FirstBadStep { index: usize },
    #[error("vertex {vertex} at position {index} is not in the host")]
    VertexOutOfRange { index: usize, vertex: usize },
    #[error("walk is marked closed but ends away from its start")]
    NotClosed,
    #[error("closed walk of length 0 cannot be wound")]
    ZeroLength,
    #[error("walk length {len} does not divide {ell}")]
    NotDivisible { len: usize, ell: BigUint },
    #[error("forward and backward step counts are equal ({0})")]
    Balanced(usize),
    #[error("mixed step {index} does not follow an edge with the labelled orientation")]
    BadMixedStep { index: usize },
    #[error("anchor {anchor} is not the first vertex of both base walks")]
    AnchorMismatch { anchor: usize },
    #[error("connectors do not match the backward segments: {0}")]
    ConnectorMismatch(String),
    #[error("winding multiplicities are both zero")]
    NoWinding,
}

/// A sequence of vertices in which every consecutive pair should be a
/// forward edge of the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedWalk {
    vertices: Vec<usize>,
    closed: bool,
}

impl DirectedWalk {
    pub fn open(vertices: Vec<usize>) -> Result<Self, WalkError> {
        if vertices.is_empty() {
            return Err(WalkError::Empty);
        }
        Ok(Self {
            vertices,
            closed: false,
        })
    }

    /// A closed walk given with its start repeated at the end.
    pub fn closed(vertices: Vec<usize>) -> Result<Self, WalkError> {
        match (vertices.first(), vertices.last()) {
            (None, _) => Err(WalkError::Empty),
            (Some(a), Some(b)) if a == b => Ok(Self {
                vertices,
                closed: true,
            }),
            _ => Err(WalkError::NotClosed),
        }
    }

    pub(crate) fn closed_unchecked(vertices: Vec<usize>) -> Self {
        debug_assert_eq!(vertices.first(), vertices.last());
        Self {
            vertices,
            closed: true,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    /// Rotates a closed walk to start at the first occurrence of `anchor`.
    pub fn rotated_to(&self, anchor: usize) -> Option<Self> {
        if !self.closed {
            return None;
        }
        let steps = &self.vertices[..self.len()];
        if steps.is_empty() {
            return (self.start() == anchor).then(|| self.clone());
        }
        let at = steps.iter().position(|&v| v == anchor)?;
        let mut vertices: Vec<usize> = steps[at..].iter().chain(&steps[..at]).copied().collect();
        vertices.push(anchor);
        Some(Self::closed_unchecked(vertices))
    }

    /// Removes repeated-vertex loops until a simple closed walk remains.
    pub fn simple_cycle(&self) -> Option<Self> {
        if !self.closed || self.is_empty() {
            return None;
        }
        let mut stack: Vec<usize> = Vec::new();
        for &v in &self.vertices[..self.len()] {
            if let Some(at) = stack.iter().position(|&w| w == v) {
                stack.truncate(at);
            }
            stack.push(v);
        }
        // The final return to the start closes whatever remains on the stack.
        let start = stack[0];
        stack.push(start);
        Some(Self::closed_unchecked(stack))
    }
}

pub fn validate_directed_walk(g: &OrientedGraph, w: &DirectedWalk) -> Result<(), WalkError> {
    let n = g.vertex_count();
    if let Some(index) = w.vertices.iter().position(|&v| v >= n) {
        return Err(WalkError::VertexOutOfRange {
            index,
            vertex: w.vertices[index],
        });
    }
    if let Some(index) = w.vertices.windows(2).position(|s| !g.has_edge(s[0], s[1])) {
        return Err(WalkError::FirstBadStep { index });
    }
    if w.closed && w.start() != w.end() {
        return Err(WalkError::NotClosed);
    }
    Ok(())
}

/// A closed walk of the underlying graph with orientation labels.
///
/// Step `i` goes from `vertices[i]` to `vertices[(i + 1) % len]`; it is forward
/// when the host has that edge and backward when the host has the reverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedWalk {
    vertices: Vec<usize>,
    forward: Vec<bool>,
}

impl MixedWalk {
    pub fn new(vertices: Vec<usize>, forward: Vec<bool>) -> Result<Self, WalkError> {
        if vertices.is_empty() {
            return Err(WalkError::Empty);
        }
        if vertices.len() != forward.len() {
            return Err(WalkError::BadMixedStep {
                index: vertices.len().min(forward.len()),
            });
        }
        Ok(Self { vertices, forward })
    }

    /// Labels each step by the orientation the host gives it.
    pub fn from_host(g: &OrientedGraph, vertices: Vec<usize>) -> Result<Self, WalkError> {
        if vertices.is_empty() {
            return Err(WalkError::Empty);
        }
        let len = vertices.len();
        let mut forward = Vec::with_capacity(len);
        for i in 0..len {
            let (x, y) = (vertices[i], vertices[(i + 1) % len]);
            if g.has_edge(x, y) {
                forward.push(true);
            } else if g.has_edge(y, x) {
                forward.push(false);
            } else {
                return Err(WalkError::BadMixedStep { index: i });
            }
        }
        Ok(Self { vertices, forward })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn labels(&self) -> &[bool] {
        &self.forward
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn forward_count(&self) -> usize {
        self.forward.iter().filter(|&&f| f).count()
    }

    pub fn backward_count(&self) -> usize {
        self.len() - self.forward_count()
    }

    /// The same closed walk traversed the other way round.
    pub fn reversed(&self) -> Self {
        let len = self.len();
        let vertices = (0..len).map(|i| self.vertices[(len - i) % len]).collect();
        let forward = (0..len).map(|i| !self.forward[len - 1 - i]).collect();
        Self { vertices, forward }
    }

    pub fn with_forward_majority(self) -> Self {
        if self.forward_count() < self.backward_count() {
            self.reversed()
        } else {
            self
        }
    }

    pub fn validate(&self, g: &OrientedGraph) -> Result<(), WalkError> {
        let len = self.len();
        let n = g.vertex_count();
        if let Some(index) = self.vertices.iter().position(|&v| v >= n) {
            return Err(WalkError::VertexOutOfRange {
                index,
                vertex: self.vertices[index],
            });
        }
        for i in 0..len {
            let (x, y) = (self.vertices[i], self.vertices[(i + 1) % len]);
            let ok = if self.forward[i] {
                g.has_edge(x, y)
            } else {
                g.has_edge(y, x)
            };
            if !ok {
                return Err(WalkError::BadMixedStep { index: i });
            }
        }
        Ok(())
    }
}

/// A maximal run of backward steps. The run is entered at `y` and left at
/// `x`; its edges all point from `x` towards `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackwardSegment {
    pub first_step: usize,
    pub len: usize,
    pub y: usize,
    pub x: usize,
}

/// A [`MixedWalk`] with strictly more forward than backward steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewWalk {
    walk: MixedWalk,
}

impl SkewWalk {
    /// Normalises the direction so forward steps are the majority; rejects
    /// walks with equally many of each.
    pub fn new(walk: MixedWalk) -> Result<Self, WalkError> {
        let (a, b) = (walk.forward_count(), walk.backward_count());
        if a == b {
            return Err(WalkError::Balanced(a));
        }
        Ok(Self {
            walk: walk.with_forward_majority(),
        })
    }

    pub fn walk(&self) -> &MixedWalk {
        &self.walk
    }

    /// Forward step count `a`.
    pub fn a(&self) -> usize {
        self.walk.forward_count()
    }

    /// Backward step count `b`.
    pub fn b(&self) -> usize {
        self.walk.backward_count()
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn validate(&self, g: &OrientedGraph) -> Result<(), WalkError> {
        self.walk.validate(g)
    }

    fn step_forward(&self, i: usize) -> bool {
        self.walk.forward[i % self.len()]
    }

    fn vertex(&self, i: usize) -> usize {
        self.walk.vertices[i % self.len()]
    }

    /// Maximal cyclic runs of backward steps, ordered by first step.
    pub fn backward_segments(&self) -> Vec<BackwardSegment> {
        let len = self.len();
        let mut segments = Vec::new();
        for i in 0..len {
            if self.step_forward(i) || !self.step_forward(i + len - 1) {
                continue;
            }
            let mut run = 0;
            while !self.step_forward(i + run) {
                run += 1;
            }
            segments.push(BackwardSegment {
                first_step: i,
                len: run,
                y: self.vertex(i),
                x: self.vertex(i + run),
            });
        }
        segments
    }

    /// Step index of the first vertex of the first forward run: the smallest
    /// forward step preceded by a backward one, or 0 when there are no
    /// backward steps.
    pub fn anchor_step(&self) -> usize {
        let len = self.len();
        (0..len)
            .find(|&i| self.step_forward(i) && !self.step_forward(i + len - 1))
            .unwrap_or(0)
    }

    pub fn anchor(&self) -> usize {
        self.vertex(self.anchor_step())
    }
}

/// A directed path `y -> x` replacing one backward segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connector {
    pub segment: BackwardSegment,
    pub path: DirectedWalk,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorSet {
    pub connectors: Vec<Connector>,
}

impl ConnectorSet {
    /// `l(P)`, the summed length of all connector paths.
    pub fn total_length(&self) -> usize {
        self.connectors.iter().map(|c| c.path.len()).sum()
    }
}

/// The two closed directed walks built from a skew walk, both starting and
/// ending at `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedWalks {
    pub w1: DirectedWalk,
    pub w2: DirectedWalk,
    pub anchor: usize,
}

/// Builds `W1` (forward steps of `w` with each backward segment replaced by
/// its connector, length `a + l(P)`) and `W2` (every step of `w`, backward
/// segments walked in their true direction and each connector used twice,
/// length `a + b + 2·l(P)`).
///
/// At a backward segment entered at `y` and left at `x`, `W2` follows the
/// connector to `x`, walks the segment's edges back to `y`, then follows the
/// connector to `x` again.
pub fn build_w1_w2(
    g: &OrientedGraph,
    w: &SkewWalk,
    conn: &ConnectorSet,
) -> Result<DerivedWalks, WalkError> {
    w.validate(g)?;
    let segments = w.backward_segments();
    if segments.len() != conn.connectors.len() {
        return Err(WalkError::ConnectorMismatch(format!(
            "{} segments, {} connectors",
            segments.len(),
            conn.connectors.len()
        )));
    }
    for (seg, c) in segments.iter().zip(&conn.connectors) {
        if c.segment != *seg || c.path.start() != seg.y || c.path.end() != seg.x {
            return Err(WalkError::ConnectorMismatch(format!(
                "segment at step {} needs a path {} -> {}",
                seg.first_step, seg.y, seg.x
            )));
        }
        validate_directed_walk(g, &c.path)?;
    }

    let len = w.len();
    let start = w.anchor_step();
    let anchor = w.vertex(start);
    let mut w1 = vec![anchor];
    let mut w2 = vec![anchor];
    let mut offset = 0;
    while offset < len {
        let i = start + offset;
        if w.step_forward(i) {
            w1.push(w.vertex(i + 1));
            w2.push(w.vertex(i + 1));
            offset += 1;
            continue;
        }
        let idx = segments
            .iter()
            .position(|s| s.first_step == i % len)
            .expect("walk starts on a forward run, so every backward step is reached at a run start");
        let (seg, path) = (&segments[idx], &conn.connectors[idx].path);
        let tail = &path.vertices()[1..];
        w1.extend_from_slice(tail);
        w2.extend_from_slice(tail);
        for back in (0..seg.len).rev() {
            w2.push(w.vertex(i + back));
        }
        w2.extend_from_slice(tail);
        offset += seg.len;
    }

    let derived = DerivedWalks {
        w1: DirectedWalk::closed(w1)?,
        w2: DirectedWalk::closed(w2)?,
        anchor,
    };
    validate_directed_walk(g, &derived.w1)?;
    validate_directed_walk(g, &derived.w2)?;
    Ok(derived)
}

/// `u` windings of `base1` followed by `v` windings of `base2`, both closed
/// directed walks starting at `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawExpression")]
pub struct WalkExpression {
    #[serde(serialize_with = "walk_vertices")]
    pub base1: DirectedWalk,
    #[serde(serialize_with = "walk_vertices")]
    pub base2: DirectedWalk,
    pub anchor: usize,
    #[serde(with = "crate::decimal")]
    pub u: BigUint,
    #[serde(with = "crate::decimal")]
    pub v: BigUint,
    #[serde(with = "crate::decimal")]
    pub total_length: BigUint,
}

fn walk_vertices<S: serde::Serializer>(w: &DirectedWalk, s: S) -> Result<S::Ok, S::Error> {
    w.vertices().serialize(s)
}

#[derive(Deserialize)]
struct RawExpression {
    base1: Vec<usize>,
    base2: Vec<usize>,
    anchor: usize,
    #[serde(with = "crate::decimal")]
    u: BigUint,
    #[serde(with = "crate::decimal")]
    v: BigUint,
    #[serde(with = "crate::decimal")]
    total_length: BigUint,
}

impl TryFrom<RawExpression> for WalkExpression {
    type Error = String;

    fn try_from(raw: RawExpression) -> Result<Self, Self::Error> {
        let base1 = DirectedWalk::closed(raw.base1).map_err(|e| e.to_string())?;
        let base2 = DirectedWalk::closed(raw.base2).map_err(|e| e.to_string())?;
        let expr = WalkExpression::new(base1, base2, raw.anchor, raw.u, raw.v)
            .map_err(|e| e.to_string())?;
        if expr.total_length != raw.total_length {
            return Err(format!(
                "total_length {} disagrees with u·len1 + v·len2 = {}",
                raw.total_length, expr.total_length
            ));
        }
        Ok(expr)
    }
}

impl WalkExpression {
    pub fn new(
        base1: DirectedWalk,
        base2: DirectedWalk,
        anchor: usize,
        u: BigUint,
        v: BigUint,
    ) -> Result<Self, WalkError> {
        for base in [&base1, &base2] {
            if !base.is_closed() {
                return Err(WalkError::NotClosed);
            }
            if base.start() != anchor {
                return Err(WalkError::AnchorMismatch { anchor });
            }
        }
        if u.is_zero() && v.is_zero() {
            return Err(WalkError::NoWinding);
        }
        let total_length = &u * base1.len() + &v * base2.len();
        Ok(Self {
            base1,
            base2,
            anchor,
            u,
            v,
            total_length,
        })
    }

    /// Checks both bases against the host and the length identity.
    pub fn validate(&self, g: &OrientedGraph) -> Result<(), WalkError> {
        validate_directed_walk(g, &self.base1)?;
        validate_directed_walk(g, &self.base2)?;
        if self.base1.start() != self.anchor || self.base2.start() != self.anchor {
            return Err(WalkError::AnchorMismatch {
                anchor: self.anchor,
            });
        }
        if self.u.is_zero() && self.v.is_zero() {
            return Err(WalkError::NoWinding);
        }
        debug_assert_eq!(
            self.total_length,
            &self.u * self.base1.len() + &self.v * self.base2.len()
        );
        Ok(())
    }
}

/// Winds a closed directed walk `ell / len` times.
pub fn wind(cycle: &DirectedWalk, ell: &BigUint) -> Result<WalkExpression, WalkError> {
    if !cycle.is_closed() {
        return Err(WalkError::NotClosed);
    }
    if cycle.is_empty() {
        return Err(WalkError::ZeroLength);
    }
    let len = BigUint::from(cycle.len());
    if !(ell % &len).is_zero() {
        return Err(WalkError::NotDivisible {
            len: cycle.len(),
            ell: ell.clone(),
        });
    }
    WalkExpression::new(
        cycle.clone(),
        cycle.clone(),
        cycle.start(),
        ell / len,
        BigUint::zero(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "snake_case")]
pub enum CompositionRoute {
    /// The explicit winding counts applied.
    Explicit { certificate: ComposerCertificate },
    /// The explicit counts failed; the general nonnegative solver was used.
    Fallback { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error("cannot reach length {ell} with walks of lengths {l1} and {l2} ({explicit})")]
    CannotReachLength {
        l1: usize,
        l2: usize,
        ell: BigUint,
        explicit: ArithError,
    },
    #[error(transparent)]
    Walk(#[from] WalkError),
}

/// Combines `W1` and `W2` into a closed walk of total length `ell`: the
/// explicit winding counts first, then the general solver.
pub fn compose(
    w1: &DirectedWalk,
    w2: &DirectedWalk,
    anchor: usize,
    ell: &BigUint,
) -> Result<(WalkExpression, CompositionRoute), ComposeError> {
    let base1 = w1.rotated_to(anchor).ok_or(WalkError::AnchorMismatch { anchor })?;
    let base2 = w2.rotated_to(anchor).ok_or(WalkError::AnchorMismatch { anchor })?;
    let (l1, l2) = (base1.len() as u64, base2.len() as u64);
    let explicit = match paper_compose(l1, l2, ell) {
        Ok(cert) => {
            let expr = WalkExpression::new(base1, base2, anchor, cert.u.clone(), cert.v.clone())?;
            return Ok((expr, CompositionRoute::Explicit { certificate: cert }));
        }
        Err(e) => e,
    };
    match solve_nonneg(l1, l2, ell) {
        Some((u, v)) => {
            let expr = WalkExpression::new(base1, base2, anchor, u, v)?;
            Ok((
                expr,
                CompositionRoute::Fallback {
                    reason: explicit.to_string(),
                },
            ))
        }
        None => Err(ComposeError::CannotReachLength {
            l1: l1 as usize,
            l2: l2 as usize,
            ell: ell.clone(),
            explicit,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("total length {total} exceeds the expansion limit {limit}")]
pub struct TooLong {
    pub total: BigUint,
    pub limit: u64,
}

/// Writes the expression out as an explicit vertex sequence.
pub fn expand(expr: &WalkExpression, limit: u64) -> Result<DirectedWalk, TooLong> {
    let too_long = || TooLong {
        total: expr.total_length.clone(),
        limit,
    };
    if expr.total_length > BigUint::from(limit) {
        return Err(too_long());
    }
    let u = expr.u.to_usize().ok_or_else(too_long)?;
    let v = expr.v.to_usize().ok_or_else(too_long)?;
    let total = expr.total_length.to_usize().ok_or_else(too_long)?;
    let mut vertices = Vec::with_capacity(total + 1);
    vertices.push(expr.anchor);
    for (base, times) in [(&expr.base1, u), (&expr.base2, v)] {
        for _ in 0..times {
            vertices.extend_from_slice(&base.vertices()[1..]);
        }
    }
    Ok(DirectedWalk::closed_unchecked(vertices))
}
