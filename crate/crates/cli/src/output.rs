//! Report emission: JSON with a fixed key order, or aligned text lines.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use qreflect_core::report::CheckReport;

use crate::config::{Format, RunConfig};
use crate::runner::Summary;

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
struct JsonSummary {
    pass: usize,
    fail: usize,
    skipped: usize,
    finding: usize,
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    check: &'a str,
    tag: &'a str,
    params: Map<String, Value>,
    status: &'a str,
    residual: &'a str,
    elapsed_ms: f64,
    witness: Option<&'a str>,
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    version: &'a str,
    config: Map<String, Value>,
    summary: JsonSummary,
    checks: Vec<JsonCheck<'a>>,
}

fn ordered(pairs: impl IntoIterator<Item = (String, String)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k, Value::String(v))).collect()
}

/// The JSON document for a run. Keys appear in a fixed order.
pub fn to_json(cfg: &RunConfig, reports: &[CheckReport]) -> String {
    let s = Summary::of(reports);
    let doc = JsonReport {
        version: REPORT_VERSION,
        config: ordered(cfg.echo().into_iter().map(|(k, v)| (k.to_string(), v))),
        summary: JsonSummary {
            pass: s.pass,
            fail: s.fail,
            skipped: s.skipped,
            finding: s.finding,
        },
        checks: reports
            .iter()
            .map(|r| JsonCheck {
                check: &r.check,
                tag: &r.tag,
                params: ordered(r.params.iter().cloned()),
                status: r.status.as_str(),
                residual: &r.residual,
                elapsed_ms: (r.elapsed_ms * 1e3).round() / 1e3,
                witness: r.witness.as_deref(),
                note: r.note.as_deref(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

/// One aligned line per entry, followed by a summary line.
pub fn to_text(reports: &[CheckReport]) -> String {
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let params = r
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ");
            let mut tail = params;
            if let Some(note) = &r.note {
                tail.push_str(&format!("  ({note})"));
            }
            [
                r.status.as_str().to_uppercase(),
                r.check.clone(),
                r.tag.clone(),
                r.residual.clone(),
                r.witness.clone().unwrap_or_else(|| "-".into()),
                tail,
            ]
        })
        .collect();
    let mut widths = [0usize; 5];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &rows {
        for (cell, w) in row.iter().zip(widths) {
            out.push_str(&format!("{cell:<w$}  "));
        }
        out.push_str(&row[5]);
        let trimmed = out.trim_end().len();
        out.truncate(trimmed);
        out.push('\n');
    }
    let s = Summary::of(reports);
    out.push_str(&format!(
        "summary: pass={} fail={} skipped={} finding={}\n",
        s.pass, s.fail, s.skipped, s.finding
    ));
    out
}

/// Render the report and write it to `path` (or return it for stdout).
pub fn emit_report(
    cfg: &RunConfig,
    reports: &[CheckReport],
    format: Format,
    path: Option<&Path>,
) -> std::io::Result<Vec<u8>> {
    let text = match format {
        Format::Json => to_json(cfg, reports),
        Format::Text => to_text(reports),
    };
    if let Some(path) = path {
        std::fs::write(path, &text)?;
    }
    Ok(text.into_bytes())
}
