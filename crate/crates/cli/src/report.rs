//! Report assembly and rendering.

use std::fmt::Write;

use serde_json::{json, Map, Value};

use crate::error::{CliError, Result};
use crate::run::{Parameters, Task};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

pub const REPORT_FORMAT: u32 = 1;

pub fn header(problem_hash: &str, params: &Parameters) -> Value {
    json!({
        "tool": "syzlab",
        "version": env!("CARGO_PKG_VERSION"),
        "report_format": REPORT_FORMAT,
        "task": params.task.name(),
        "problem_hash": problem_hash,
        "parameters": params,
    })
}

pub fn assemble(header: Value, result: Value) -> Value {
    json!({"header": header, "result": result})
}

/// Bound reports whose conjecture verdict is VIOLATED.
pub fn findings(report: &Value) -> Vec<Value> {
    report["result"]["reports"]
        .as_array()
        .map(|rs| rs.iter().filter(|r| r["verdicts"]["derksen"]["verdict"] == "VIOLATED").cloned().collect())
        .unwrap_or_default()
}

pub fn emit(report: &Value, task: Task, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report).expect("reports serialize") + "\n"),
        Format::Csv => csv(&report["result"], task),
        Format::Markdown => Ok(markdown(report)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv(result: &Value, task: Task) -> Result<String> {
    let mut out = String::new();
    match task {
        Task::Syzygies => {
            out.push_str("p,d,dim\n");
            for row in result["tor_table"]["rows"].as_array().into_iter().flatten() {
                writeln!(out, "{},{},{}", row["p"], row["d"], row["dim"]).unwrap();
            }
        }
        Task::Bounds => {
            out.push_str("p,bound,limit,s_p,s_prime_p,verdict,tight,certified\n");
            for r in result["reports"].as_array().into_iter().flatten() {
                for name in ["derksen", "theorem", "corollary", "lemma2"] {
                    let v = &r["verdicts"][name];
                    writeln!(
                        out,
                        "{},{name},{},{},{},{},{},{}",
                        r["p"],
                        v["bound"],
                        scalar(&r["s_p"]["value"]),
                        scalar(&r["s_prime_p"]["value"]),
                        scalar(&v["verdict"]),
                        v["tight"],
                        v["certified"]
                    )
                    .unwrap();
                }
            }
        }
        other => return Err(CliError::Usage(format!("csv output has no tabular section for task {}", other.name()))),
    }
    Ok(out)
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    if is_scalar(v) {
        scalar(v)
    } else {
        serde_json::to_string(v).expect("values serialize")
    }
}

fn table(rows: &[Value], out: &mut String) -> bool {
    let Some(first) = rows.first().and_then(Value::as_object) else {
        return false;
    };
    let keys: Vec<&String> = first.keys().collect();
    if !rows.iter().all(|r| r.as_object().is_some_and(|o| o.keys().eq(keys.iter().copied()))) {
        return false;
    }
    let cells = |o: &Map<String, Value>| keys.iter().map(|k| inline(&o[k.as_str()])).collect::<Vec<_>>().join(" | ");
    writeln!(out, "| {} |", keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(keys.len())).unwrap();
    for r in rows {
        writeln!(out, "| {} |", cells(r.as_object().unwrap())).unwrap();
    }
    out.push('\n');
    true
}

fn section(title: &str, v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Object(map) => {
            writeln!(out, "{} {title}\n", "#".repeat(level.min(6))).unwrap();
            let mut nested = Vec::new();
            for (k, x) in map {
                let flat = is_scalar(x) || x.as_array().is_some_and(|a| a.iter().all(is_scalar));
                if flat {
                    writeln!(out, "- **{k}**: {}", inline(x)).unwrap();
                } else {
                    nested.push((k, x));
                }
            }
            if nested.len() < map.len() {
                out.push('\n');
            }
            for (k, x) in nested {
                section(k, x, level + 1, out);
            }
        }
        Value::Array(rows) => {
            writeln!(out, "{} {title}\n", "#".repeat(level.min(6))).unwrap();
            if !table(rows, out) {
                for (i, r) in rows.iter().enumerate() {
                    section(&format!("{title} [{i}]"), r, level + 1, out);
                }
            }
        }
        other => writeln!(out, "- **{title}**: {}\n", inline(other)).unwrap(),
    }
}

fn markdown(report: &Value) -> String {
    let mut out = String::new();
    let task = scalar(&report["header"]["task"]);
    section(&format!("syzlab report: {task}"), &report["header"], 1, &mut out);
    section("Result", &report["result"], 2, &mut out);
    out
}
