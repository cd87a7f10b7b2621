//! Finding a closed directed walk of a prescribed length.
//!
//! The search runs three stages in a fixed order and stops at the first that
//! applies:
//!
//! 1. a directed cycle shorter than `k` whose length divides `ell` is wound;
//! 2. an odd cycle of the underlying graph shorter than `k` is a skew walk;
//! 3. otherwise the graph must be bipartite and a skew walk is found by
//!    layering.
//!
//! In stages 2 and 3 each backward run of the skew walk is bridged by a
//! shortest directed path, giving two closed directed walks whose windings
//! are combined to reach `ell`.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::minimal_nondivisor;
use crate::graph::{bipartition, degree_summary, directed_girth, underlying_odd_girth};
use crate::graph::{Bipartition, OrientedGraph};
use crate::skew::{find_skew_walk, Collision, SearchDiagnostics, SkewError};
use crate::walks::{
    build_w1_w2, compose, wind, CompositionRoute, Connector, ConnectorSet,
    DirectedWalk, SkewWalk, WalkExpression,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("no directed path from {from} to {to}")]
pub struct NoPath {
    pub from: usize,
    pub to: usize,
}

/// Shortest directed path `x -> y` by breadth-first search. For `x == y` the
/// path has length 0.
pub fn find_short_path(g: &OrientedGraph, x: usize, y: usize) -> Result<DirectedWalk, NoPath> {
    let n = g.vertex_count();
    let no_path = NoPath { from: x, to: y };
    if x >= n || y >= n {
        return Err(no_path);
    }
    let mut parent = vec![usize::MAX; n];
    parent[x] = x;
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        if u == y {
            let mut path = vec![y];
            let mut cur = y;
            while cur != x {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Ok(DirectedWalk::open(path).expect("path is nonempty"));
        }
        for &w in g.out_neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    Err(no_path)
}

/// One shortest path from the entry to the exit of every backward segment.
pub fn connectors_for(g: &OrientedGraph, w: &SkewWalk) -> Result<ConnectorSet, NoPath> {
    let connectors = w
        .backward_segments()
        .into_iter()
        .map(|segment| {
            Ok(Connector {
                segment,
                path: find_short_path(g, segment.y, segment.x)?,
            })
        })
        .collect::<Result<_, NoPath>>()?;
    Ok(ConnectorSet { connectors })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    ShortGirth,
    OddCycle,
    Bipartite,
}

/// Which of the intended hypotheses hold for the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeCheck {
    pub n: usize,
    pub k: usize,
    pub min_semidegree: usize,
    pub n_at_least_64k: bool,
    pub semidegree_above_n_over_k: bool,
    pub girth_at_least_k: bool,
}

impl RegimeCheck {
    pub fn holds(&self) -> bool {
        self.n_at_least_64k && self.semidegree_above_n_over_k && self.girth_at_least_k
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewSummary {
    pub a: usize,
    pub b: usize,
    pub anchor: usize,
    /// Set when the walk came from layering rather than an odd cycle.
    pub collision: Option<Collision>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub regime: Option<RegimeCheck>,
    pub girth: Option<usize>,
    pub odd_cycle: Option<usize>,
    pub bipartite: Option<bool>,
    pub skew: Option<SkewSummary>,
    pub connector_lengths: Vec<usize>,
    pub w1_length: Option<usize>,
    pub w2_length: Option<usize>,
    pub composition: Option<CompositionRoute>,
    /// A closed directed walk shorter than `k` turned up during layering and
    /// its simple cycle was wound instead.
    pub retried_short_cycle: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    #[serde(with = "crate::decimal")]
    pub ell: BigUint,
    pub k: usize,
    pub branch: Branch,
    pub expression: WalkExpression,
    pub diagnostics: Diagnostics,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureReason {
    #[error("walk length must be positive")]
    ZeroLength,
    #[error("shortest directed cycle has length {girth}, which does not divide the target")]
    GirthNotDividing { girth: usize },
    #[error("graph is not bipartite and has no short odd cycle")]
    NotBipartite,
    #[error("k={k} is too small for the layering search")]
    KTooSmall { k: usize },
    #[error("skew walk search failed: {diagnostics}")]
    SkewNotFound { diagnostics: SearchDiagnostics },
    #[error("no directed path from {from} to {to}")]
    NoPath { from: usize, to: usize },
    #[error("composition failed: {message}")]
    CompositionFailed { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("no walk found at stage {stage:?}: {reason}")]
pub struct PipelineFailure {
    pub stage: Branch,
    pub reason: FailureReason,
    pub diagnostics: Diagnostics,
}

fn regime_check(g: &OrientedGraph, k: usize, girth: Option<usize>) -> RegimeCheck {
    let n = g.vertex_count();
    let min_semidegree = degree_summary(g).map(|s| s.min_semi).unwrap_or(0);
    RegimeCheck {
        n,
        k,
        min_semidegree,
        n_at_least_64k: n >= 64 * k,
        semidegree_above_n_over_k: min_semidegree * k > n,
        girth_at_least_k: girth.map_or(true, |s| s >= k),
    }
}

/// Runs the three stages for target length `ell`. `k` defaults to the least
/// integer above 2 that does not divide `ell`.
pub fn find_closed_walk_of_length(
    g: &OrientedGraph,
    ell: &BigUint,
    k: Option<usize>,
) -> Result<PipelineReport, PipelineFailure> {
    let mut diag = Diagnostics::default();
    let fail = |stage, reason, diag: &Diagnostics| PipelineFailure {
        stage,
        reason,
        diagnostics: diag.clone(),
    };
    if ell.is_zero() {
        return Err(fail(Branch::ShortGirth, FailureReason::ZeroLength, &diag));
    }
    let k = match k {
        Some(k) => k,
        None => minimal_nondivisor(ell).expect("ell is positive").k as usize,
    };
    let report = |branch, expression, diagnostics| PipelineReport {
        ell: ell.clone(),
        k,
        branch,
        expression,
        diagnostics,
    };

    let girth = directed_girth(g);
    diag.girth = girth.length();
    let regime = regime_check(g, k, diag.girth);
    diag.regime = Some(regime.clone());

    // Stage 1: a short directed cycle.
    if let crate::graph::Girth::Finite { length, cycle } = &girth {
        if *length < k {
            return match wind(cycle, ell) {
                Ok(expr) => Ok(report(Branch::ShortGirth, expr, diag)),
                Err(_) => Err(fail(
                    Branch::ShortGirth,
                    FailureReason::GirthNotDividing { girth: *length },
                    &diag,
                )),
            };
        }
    }

    // Stage 2: a short odd cycle of the underlying graph.
    if let Some(odd) = underlying_odd_girth(g, k) {
        diag.odd_cycle = Some(odd.len());
        let walk = SkewWalk::new(odd).expect("odd length forces unequal step counts");
        assert_eq!((walk.a() + walk.b()) % 2, 1);
        return finish(g, &walk, None, ell, &regime, Branch::OddCycle, diag)
            .map(|(expr, diag)| report(Branch::OddCycle, expr, diag));
    }

    // Stage 3: bipartite layering.
    match bipartition(g) {
        Bipartition::Bipartite { .. } => diag.bipartite = Some(true),
        Bipartition::NotBipartite { .. } => {
            diag.bipartite = Some(false);
            return Err(fail(Branch::Bipartite, FailureReason::NotBipartite, &diag));
        }
    }
    match find_skew_walk(g, k) {
        Ok(hit) => finish(g, &hit.walk, Some(hit.collision), ell, &regime, Branch::Bipartite, diag)
            .map(|(expr, diag)| report(Branch::Bipartite, expr, diag)),
        Err(SkewError::DirectedShortWalk(w)) => {
            let cycle = w.simple_cycle().expect("closed walk of positive length");
            diag.retried_short_cycle = Some(cycle.len());
            match wind(&cycle, ell) {
                Ok(expr) => Ok(report(Branch::ShortGirth, expr, diag)),
                Err(_) => Err(fail(
                    Branch::ShortGirth,
                    FailureReason::GirthNotDividing { girth: cycle.len() },
                    &diag,
                )),
            }
        }
        Err(SkewError::NotFound(diagnostics)) => Err(fail(
            Branch::Bipartite,
            FailureReason::SkewNotFound { diagnostics },
            &diag,
        )),
        Err(SkewError::KTooSmall(k)) => {
            Err(fail(Branch::Bipartite, FailureReason::KTooSmall { k }, &diag))
        }
        Err(SkewError::VertexOutOfRange { .. }) => unreachable!("starts are graph vertices"),
    }
}

fn finish(
    g: &OrientedGraph,
    walk: &SkewWalk,
    collision: Option<Collision>,
    ell: &BigUint,
    regime: &RegimeCheck,
    stage: Branch,
    mut diag: Diagnostics,
) -> Result<(WalkExpression, Diagnostics), PipelineFailure> {
    let k = regime.k;
    diag.skew = Some(SkewSummary {
        a: walk.a(),
        b: walk.b(),
        anchor: walk.anchor(),
        collision,
    });
    let conn = match connectors_for(g, walk) {
        Ok(conn) => conn,
        Err(NoPath { from, to }) => {
            return Err(PipelineFailure {
                stage,
                reason: FailureReason::NoPath { from, to },
                diagnostics: diag,
            })
        }
    };
    diag.connector_lengths = conn.connectors.iter().map(|c| c.path.len()).collect();
    if regime.holds() {
        for c in &conn.connectors {
            assert!(c.path.len() <= 64 * k, "connector longer than 64k in regime");
        }
        if walk.a() + walk.b() < k {
            assert!(conn.total_length() < 32 * k * k, "connectors total 32k² or more in regime");
        }
    }
    let derived = build_w1_w2(g, walk, &conn).expect("connectors match the walk's segments");
    diag.w1_length = Some(derived.w1.len());
    diag.w2_length = Some(derived.w2.len());
    match compose(&derived.w1, &derived.w2, derived.anchor, ell) {
        Ok((expr, route)) => {
            diag.composition = Some(route);
            expr.validate(g).expect("derived walks are walks of the host");
            debug_assert_eq!(&expr.total_length, ell);
            Ok((expr, diag))
        }
        Err(e) => {
            let message = e.to_string();
            Err(PipelineFailure {
                stage,
                reason: FailureReason::CompositionFailed { message },
                diagnostics: diag,
            })
        }
    }
}
