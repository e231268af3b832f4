//! Report assembly and rendering.
//!
//! The JSON form is the contract: {config, summary, records}, canonical
//! element strings throughout, no timings or parallelism echo, so identical
//! configurations produce byte-identical output at any worker count.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub tool: String,
    pub version: String,
    pub datum: String,
    pub check: String,
    pub max_coord: i64,
    pub max_weyl_len: usize,
    pub max_abs_length: i64,
    pub witness_depth: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Summary {
    pub pairs: usize,
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Term {
    pub z: String,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub x: String,
    pub y: String,
    pub n: usize,
    pub expansion: Vec<Term>,
    pub verdicts: BTreeMap<String, String>,
}

impl Record {
    pub fn overall(&self) -> &'static str {
        let mut unknown = false;
        for v in self.verdicts.values() {
            match v.as_str() {
                "fail" => return "fail",
                "unknown" => unknown = true,
                _ => {}
            }
        }
        if unknown {
            "unknown"
        } else {
            "pass"
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub summary: Summary,
    pub records: Vec<Record>,
}

pub fn summarize(records: &[Record]) -> Summary {
    let mut s = Summary { pairs: records.len(), pass: 0, fail: 0, unknown: 0 };
    for r in records {
        match r.overall() {
            "fail" => s.fail += 1,
            "unknown" => s.unknown += 1,
            _ => s.pass += 1,
        }
    }
    s
}

/// 0 all pass; 1 any violation; 3 clean but with unresolved verdicts.
pub fn exit_code(summary: &Summary) -> i32 {
    if summary.fail > 0 {
        1
    } else if summary.unknown > 0 {
        3
    } else {
        0
    }
}

pub fn render(report: &Report, format: &str) -> Result<String, String> {
    match format {
        "json" => {
            let mut s = serde_json::to_string(report).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
        "text" => Ok(render_text(report)),
        "csv" => Ok(render_csv(report)),
        other => Err(format!(
            "unknown format {:?}: expected json, text, or csv",
            other
        )),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "check {} on {}: pairs={} pass={} fail={} unknown={}\n",
        report.config.check,
        report.config.datum,
        report.summary.pairs,
        report.summary.pass,
        report.summary.fail,
        report.summary.unknown
    ));
    for r in &report.records {
        if r.overall() == "pass" {
            continue;
        }
        let detail: Vec<String> = r
            .verdicts
            .iter()
            .filter(|(_, v)| v.as_str() != "pass")
            .map(|(k, v)| format!("{}={}", k, v))
            .collect();
        out.push_str(&format!(
            "{}: x={} y={} n={} [{}]\n",
            r.overall(),
            r.x,
            r.y,
            r.n,
            detail.join(" ")
        ));
    }
    let word = if report.summary.fail > 0 {
        "FAIL"
    } else if report.summary.unknown > 0 {
        "UNKNOWN"
    } else {
        "PASS"
    };
    out.push_str(&format!("result: {}\n", word));
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::from("x,y,n,overall,verdicts\n");
    for r in &report.records {
        let verdicts: Vec<String> = r
            .verdicts
            .iter()
            .map(|(k, v)| format!("{}={}", k, v))
            .collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_field(&r.x),
            csv_field(&r.y),
            r.n,
            r.overall(),
            csv_field(&verdicts.join(";"))
        ));
    }
    out
}
