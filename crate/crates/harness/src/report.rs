use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::HarnessError;
use crate::run::ScenarioResult;

pub const CSV_HEADER: &str = "scenario_id,N,epsilon,t_final,norm_name,value,drift_trace,drift_energy";

/// One emitted line: a norm value of one `(scenario, N)` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub scenario_id: String,
    #[serde(rename = "N")]
    pub n: f64,
    pub epsilon: f64,
    pub t_final: f64,
    pub norm_name: String,
    pub value: f64,
    pub drift_trace: f64,
    pub drift_energy: f64,
}

pub fn rows(results: &[ScenarioResult]) -> Vec<Row> {
    results
        .iter()
        .flat_map(|r| {
            r.report.entries.iter().map(move |(name, &value)| Row {
                scenario_id: r.report.scenario_id.clone(),
                n: r.report.n_particles,
                epsilon: r.report.epsilon,
                t_final: r.report.t_final,
                norm_name: name.clone(),
                value,
                drift_trace: r.drift_trace,
                drift_energy: r.drift_energy,
            })
        })
        .collect()
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [
            quote(&r.scenario_id),
            real(r.n),
            real(r.epsilon),
            real(r.t_final),
            quote(&r.norm_name),
            real(r.value),
            real(r.drift_trace),
            real(r.drift_energy),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn write(path: &Path, contents: &str) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

/// Writes the CSV and JSON forms of the rows.
pub fn emit_report(rows: &[Row], csv: &Path, json: &Path) -> Result<(), HarnessError> {
    write(csv, &to_csv(rows))?;
    write(json, &to_json(rows))
}
