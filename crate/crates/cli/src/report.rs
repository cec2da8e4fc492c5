//! Text and JSON rendering of law reports and compiled diagrams.

use std::fmt::Write as _;

use branchfoam_core::{FrobeniusAlgebra, LawReport, LinearMap};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct CounterexampleJson {
    pub indices: Vec<usize>,
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Serialize)]
pub struct ResultJson {
    pub law: String,
    pub variant: Option<String>,
    pub passed: bool,
    pub cases: usize,
    pub informational: bool,
    pub counterexample: Option<CounterexampleJson>,
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub algebra: String,
    pub theta: String,
    pub version: &'static str,
    pub results: Vec<ResultJson>,
}

impl From<&LawReport> for ResultJson {
    fn from(r: &LawReport) -> Self {
        ResultJson {
            law: r.law.clone(),
            variant: r.variant.clone(),
            passed: r.passed,
            cases: r.cases,
            informational: r.informational,
            counterexample: r.counterexample.as_ref().map(|c| CounterexampleJson {
                indices: c.indices.clone(),
                inputs: c.inputs.clone(),
                lhs: c.lhs.clone(),
                rhs: c.rhs.clone(),
            }),
        }
    }
}

pub fn report_json(algebra: &str, theta: &str, reports: &[LawReport]) -> ReportJson {
    ReportJson {
        algebra: algebra.to_string(),
        theta: theta.to_string(),
        version: env!("CARGO_PKG_VERSION"),
        results: reports.iter().map(ResultJson::from).collect(),
    }
}

pub fn report_text(algebra: &str, theta: &str, reports: &[LawReport]) -> String {
    let mut out = format!("algebra {}, theta {}\n", algebra, theta);
    for r in reports {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let name = match &r.variant {
            Some(v) => format!("{} [{}]", r.law, v),
            None => r.law.clone(),
        };
        let note = if r.informational {
            ", informational"
        } else {
            ""
        };
        let _ = writeln!(out, "{} {} ({} cases{})", status, name, r.cases, note);
        if let Some(c) = &r.counterexample {
            let _ = writeln!(out, "    at ({})", c.inputs.join(", "));
            let _ = writeln!(out, "    lhs = {}", c.lhs);
            let _ = writeln!(out, "    rhs = {}", c.rhs);
        }
    }
    let blocking = reports.iter().filter(|r| r.is_blocking_failure()).count();
    if blocking == 0 {
        out.push_str("all laws hold\n");
    } else {
        let _ = writeln!(out, "{} law(s) failed", blocking);
    }
    out
}

/// Basis-tuple labels of `A^{⊗k}` in flat-index order.
fn tuple_labels(alg: &FrobeniusAlgebra, order: usize) -> Vec<String> {
    let mut labels = vec![String::new()];
    for _ in 0..order {
        labels = labels
            .iter()
            .flat_map(|prefix| {
                alg.labels().iter().map(move |l| {
                    if prefix.is_empty() {
                        l.clone()
                    } else {
                        format!("{}⊗{}", prefix, l)
                    }
                })
            })
            .collect();
    }
    if order == 0 {
        labels[0] = "k".to_string();
    }
    labels
}

pub fn matrix_rows(map: &LinearMap) -> Vec<Vec<String>> {
    let m = map.matrix();
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|v| v.to_string()).collect())
        .collect()
}

pub fn map_text(alg: &FrobeniusAlgebra, map: &LinearMap) -> String {
    let rows = tuple_labels(alg, map.outputs());
    let cols = tuple_labels(alg, map.inputs());
    let mut out = format!(
        "map {} -> {} ({}x{})\n",
        map.inputs(),
        map.outputs(),
        rows.len(),
        cols.len()
    );
    let _ = writeln!(out, "columns: {}", cols.join(", "));
    for (label, row) in rows.iter().zip(matrix_rows(map)) {
        let _ = writeln!(out, "{}: [{}]", label, row.join(", "));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct EvalJson {
    pub algebra: String,
    pub theta: String,
    pub expr: String,
    pub inputs: usize,
    pub outputs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}
