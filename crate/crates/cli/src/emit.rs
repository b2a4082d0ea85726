//! Writing reports and plot tables to disk.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::CliError;
use crate::report::{PlotTable, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Fixed-width scientific notation with 17 significant digits.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(io(path))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "null".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => number(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Array(_) => "[]".to_string(),
        Value::Object(_) => "{}".to_string(),
    }
}

/// Depth-first `(path, scalar)` pairs; object keys in map order.
pub fn flatten(value: &Value, prefix: &str, out: &mut Vec<(String, String)>) {
    match value {
        Value::Array(items) if !items.is_empty() => {
            for (k, v) in items.iter().enumerate() {
                flatten(v, &format!("{prefix}[{k}]"), out);
            }
        }
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(v, &key, out);
            }
        }
        leaf => out.push((prefix.to_string(), scalar(leaf))),
    }
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn report_json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

/// One row per scalar: `item, provenance, tolerance, key, value`.
pub fn report_csv(report: &RunReport) -> Vec<u8> {
    let mut rows = Vec::new();
    for item in &report.results {
        let mut leaves = Vec::new();
        flatten(&item.value, "", &mut leaves);
        for (key, value) in leaves {
            rows.push(vec![
                item.name.clone(),
                item.provenance.as_str().to_string(),
                number(item.tolerance),
                key,
                value,
            ]);
        }
    }
    let diag = serde_json::to_value(&report.diagnostics).expect("diagnostics serialize");
    let mut leaves = Vec::new();
    flatten(&diag, "", &mut leaves);
    for (key, value) in leaves {
        rows.push(vec![
            "diagnostics".to_string(),
            String::new(),
            String::new(),
            key,
            value,
        ]);
    }
    csv_bytes(&["item", "provenance", "tolerance", "key", "value"], rows)
}

pub fn plot_csv(table: &PlotTable) -> Vec<u8> {
    csv_bytes(
        &table.header,
        table
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| number(x)).collect::<Vec<_>>()),
    )
}

/// Writes the scenario echo, the report and any plot tables into `out_dir`.
/// Returns the written paths in order.
pub fn emit(report: &RunReport, format: Format, out_dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    let mut written = Vec::new();
    let scenario = out_dir.join("scenario.json");
    write(&scenario, report.scenario.to_json().as_bytes())?;
    written.push(scenario);
    let path = match format {
        Format::Json => {
            let p = out_dir.join("report.json");
            write(&p, report_json(report).as_bytes())?;
            p
        }
        Format::Csv => {
            let p = out_dir.join("report.csv");
            write(&p, &report_csv(report))?;
            p
        }
    };
    written.push(path);
    for t in &report.plots {
        let p = out_dir.join(t.file);
        write(&p, &plot_csv(t))?;
        written.push(p);
    }
    Ok(written)
}
