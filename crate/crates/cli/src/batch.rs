//! Batch files list generated graphs with an expected outcome per row. Rows
//! run in parallel; results keep the file's row order.

use std::path::PathBuf;

use anyhow::Context;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use skewwalk_core::find_closed_walk_of_length;
use skewwalk_core::oracle::has_closed_walk;

use crate::commands::parse_ell;
use crate::families::{self, Params};
use crate::{Outcome, EXIT_FALSE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `expect` is whether a closed walk of length `ell` exists.
    Oracle,
    /// `expect` is whether the staged search returns a walk; returned walks
    /// must also validate and be confirmed by the oracle.
    Pipeline,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    pub name: String,
    pub family: String,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub seed: u64,
    pub ell: String,
    #[serde(default)]
    pub k: Option<usize>,
    pub check: Check,
    pub expect: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchFile {
    #[serde(default)]
    pub description: Option<String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RowResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn run_row(row: &Row) -> Result<String, String> {
    let g = families::build(&row.family, &row.params, row.seed).map_err(|e| format!("{e:#}"))?;
    let ell = parse_ell(&row.ell).map_err(|e| format!("{e:#}"))?;
    let exists = has_closed_walk(&g, &ell).map_err(|e| e.to_string())?.exists;
    match row.check {
        Check::Oracle if exists == row.expect => Ok(format!("exists={exists}")),
        Check::Oracle => Err(format!("exists={exists}, expected {}", row.expect)),
        Check::Pipeline => match find_closed_walk_of_length(&g, &ell, row.k) {
            Ok(report) => {
                report
                    .expression
                    .validate(&g)
                    .map_err(|e| format!("returned walk is invalid: {e}"))?;
                if report.expression.total_length != ell {
                    return Err("returned walk has the wrong length".into());
                }
                if !exists {
                    return Err("walk returned but the oracle finds none".into());
                }
                let found = format!("found via {:?}", report.branch);
                if row.expect {
                    Ok(found)
                } else {
                    Err(format!("{found}, expected no walk"))
                }
            }
            Err(failure) if !row.expect => Ok(failure.to_string()),
            Err(failure) => Err(failure.to_string()),
        },
    }
}

pub fn run_rows(rows: &[Row]) -> Vec<RowResult> {
    rows.par_iter()
        .map(|row| {
            let (pass, detail) = match run_row(row) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            RowResult {
                name: row.name.clone(),
                pass,
                detail,
            }
        })
        .collect()
}

pub fn run(file: PathBuf, json: Option<PathBuf>) -> anyhow::Result<Outcome> {
    let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
    let batch: BatchFile =
        serde_json::from_str(&text).with_context(|| format!("parsing batch file {}", file.display()))?;
    let results = run_rows(&batch.rows);
    let failed = results.iter().filter(|r| !r.pass).count();
    let report = serde_json::json!({
        "passed": results.len() - failed,
        "failed": failed,
        "rows": results,
    });
    Ok(Outcome {
        text: serde_json::to_string_pretty(&report)? + "\n",
        code: if failed == 0 { 0 } else { EXIT_FALSE },
        inputs: vec![file],
        seed: None,
        destination: json,
    })
}
