use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use skewwalk_core::graph::{
    bipartition, degree_summary, directed_girth, read_edge_list, shen_girth_bound, Bipartition,
    DegreeSummary, Girth,
};
use skewwalk_core::oracle::has_closed_walk;
use skewwalk_core::walks::{expand as expand_walk, validate_directed_walk};
use skewwalk_core::{find_closed_walk_of_length, write_edge_list, OrientedGraph, PipelineReport, WalkExpression};

use crate::families;
use crate::{Outcome, EXIT_FALSE, EXIT_NOT_FOUND};

pub fn parse_ell(text: &str) -> anyhow::Result<BigUint> {
    let ell: BigUint = text
        .trim()
        .parse()
        .with_context(|| format!("length `{text}` is not a nonnegative integer"))?;
    if ell == BigUint::from(0u32) {
        bail!("length must be at least 1");
    }
    Ok(ell)
}

pub fn load_graph(path: &Path) -> anyhow::Result<OrientedGraph> {
    read_edge_list(path).with_context(|| format!("reading graph {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn outcome(text: String, code: u8, inputs: Vec<PathBuf>, destination: Option<PathBuf>) -> Outcome {
    Outcome {
        text,
        code,
        inputs,
        seed: None,
        destination,
    }
}

#[derive(Serialize)]
struct GirthReport {
    length: usize,
    cycle: Vec<usize>,
}

#[derive(Serialize)]
struct ShenReport {
    d: usize,
    bound: u64,
}

#[derive(Serialize)]
struct AnalyzeReport {
    vertices: usize,
    edges: usize,
    degrees: DegreeSummary,
    girth: Option<GirthReport>,
    bipartite: bool,
    color_classes: Option<[usize; 2]>,
    odd_cycle: Option<Vec<usize>>,
    /// Upper bound on the girth from the minimum outdegree.
    shen_bound: Option<ShenReport>,
}

pub fn analyze_graph(g: &OrientedGraph) -> anyhow::Result<serde_json::Value> {
    let n = g.vertex_count();
    let degrees = degree_summary(g)?;
    let girth = match directed_girth(g) {
        Girth::Finite { length, cycle } => Some(GirthReport {
            length,
            cycle: cycle.vertices().to_vec(),
        }),
        Girth::Infinite => None,
    };
    let (bipartite, color_classes, odd_cycle) = match bipartition(g) {
        Bipartition::Bipartite { larger, smaller } => (true, Some([larger.len(), smaller.len()]), None),
        Bipartition::NotBipartite { witness } => (false, None, Some(witness.vertices().to_vec())),
    };
    let d = degrees.min_out;
    let shen_bound = (d >= 1 && d < n)
        .then(|| shen_girth_bound(n as u64, d as u64).map(|bound| ShenReport { d, bound }))
        .transpose()?;
    Ok(serde_json::to_value(AnalyzeReport {
        vertices: n,
        edges: g.edge_count(),
        degrees,
        girth,
        bipartite,
        color_classes,
        odd_cycle,
        shen_bound,
    })?)
}

pub fn analyze(graph: PathBuf, json: Option<PathBuf>) -> anyhow::Result<Outcome> {
    let g = load_graph(&graph)?;
    let report = analyze_graph(&g)?;
    Ok(outcome(to_json(&report)?, 0, vec![graph], json))
}

pub fn generate(family: &str, params: &str, seed: u64, out: Option<PathBuf>) -> anyhow::Result<Outcome> {
    let params = families::parse_params(params)?;
    let g = families::build(family, &params, seed)?;
    let mut result = outcome(write_edge_list(&g), 0, Vec::new(), out);
    if family == "regime" {
        result.seed = Some(seed);
    }
    Ok(result)
}

pub fn find_walk(graph: PathBuf, ell: &str, k: Option<usize>, json: Option<PathBuf>) -> anyhow::Result<Outcome> {
    let g = load_graph(&graph)?;
    let ell = parse_ell(ell)?;
    let (text, code) = match find_closed_walk_of_length(&g, &ell, k) {
        Ok(report) => (to_json(&report)?, 0),
        Err(failure) => (to_json(&json!({ "not_found": failure }))?, EXIT_NOT_FOUND),
    };
    Ok(outcome(text, code, vec![graph], json))
}

pub fn verify(graph: PathBuf, ell: &str, json: Option<PathBuf>) -> anyhow::Result<Outcome> {
    let g = load_graph(&graph)?;
    let ell = parse_ell(ell)?;
    let verdict = has_closed_walk(&g, &ell)?;
    let code = if verdict.exists { 0 } else { EXIT_FALSE };
    Ok(outcome(to_json(&verdict)?, code, vec![graph], json))
}

/// Reads a walk expression, either bare or inside a find-walk report.
pub fn read_expression(path: &Path) -> anyhow::Result<WalkExpression> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.get("expression").is_some() {
        let report: PipelineReport = serde_json::from_value(value)
            .with_context(|| format!("{} is not a valid report", path.display()))?;
        Ok(report.expression)
    } else {
        serde_json::from_value(value)
            .with_context(|| format!("{} is not a valid walk expression", path.display()))
    }
}

pub fn expand(
    expr: PathBuf,
    graph: Option<PathBuf>,
    limit: u64,
    json: Option<PathBuf>,
) -> anyhow::Result<Outcome> {
    let expression = read_expression(&expr)?;
    let walk = expand_walk(&expression, limit)?;
    let mut inputs = vec![expr];
    let valid = match &graph {
        Some(path) => {
            let g = load_graph(path)?;
            inputs.push(path.clone());
            Some(validate_directed_walk(&g, &walk).map_err(|e| e.to_string()))
        }
        None => None,
    };
    let code = match &valid {
        Some(Err(_)) => EXIT_FALSE,
        _ => 0,
    };
    let report = json!({
        "length": walk.len(),
        "vertices": walk.vertices(),
        "valid": valid.as_ref().map(|v| v.is_ok()),
        "error": valid.and_then(|v| v.err()),
    });
    Ok(outcome(to_json(&report)?, code, inputs, json))
}
