//! JSON and CSV rendering of run and comparison reports.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compare::ComparisonReport;
use crate::report::{CloudletRecord, SimulationReport};

pub const CSV_HEADER: [&str; 6] = [
    "cloudlet_id",
    "attempts",
    "retransmissions",
    "delivered_at",
    "completion_time",
    "turnaround",
];

pub const COMPARISON_CSV_HEADER: [&str; 8] = [
    "policy",
    "cloudlet_id",
    "attempts",
    "retransmissions",
    "delivered_at",
    "completion_time",
    "turnaround",
    "execution_cost",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("csv encoding failed: {0}")]
    Csv(#[from] csv::Error),
}

/// Anything that can be emitted as a report.
pub trait Emit {
    fn to_json(&self) -> String;
    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>);
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn cloudlet_row(c: &CloudletRecord) -> Vec<String> {
    vec![
        c.cloudlet_id.to_string(),
        c.attempts.to_string(),
        c.retransmissions.to_string(),
        opt(c.delivered_at),
        opt(c.completion_time),
        opt(c.turnaround),
    ]
}

// Totals row: summed counters, last delivery, makespan, mean turnaround.
fn totals_row(r: &SimulationReport) -> Vec<String> {
    vec![
        "total".to_owned(),
        r.totals.total_attempts.to_string(),
        r.totals.total_retransmissions.to_string(),
        r.totals.transfer_completion.to_string(),
        r.totals.makespan.to_string(),
        r.totals.mean_turnaround.to_string(),
    ]
}

impl Emit for SimulationReport {
    fn to_json(&self) -> String {
        SimulationReport::to_json(self)
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let mut rows: Vec<Vec<String>> = self.cloudlets.iter().map(cloudlet_row).collect();
        rows.push(totals_row(self));
        (CSV_HEADER.to_vec(), rows)
    }
}

impl Emit for ComparisonReport {
    fn to_json(&self) -> String {
        ComparisonReport::to_json(self)
    }

    fn csv_rows(&self) -> (Vec<&'static str>, Vec<Vec<String>>) {
        let mut rows = Vec::new();
        for side in self.sides() {
            let policy = side.config.scheduler.policy.name();
            for c in &side.cloudlets {
                let mut row = vec![policy.to_owned()];
                row.extend(cloudlet_row(c));
                row.push(c.execution_cost.to_string());
                rows.push(row);
            }
            let mut row = vec![policy.to_owned()];
            row.extend(totals_row(side));
            row.push(side.totals.total_execution_cost.to_string());
            rows.push(row);
        }
        (COMPARISON_CSV_HEADER.to_vec(), rows)
    }
}

pub fn render<R: Emit + ?Sized>(report: &R, format: Format) -> Result<String, OutputError> {
    match format {
        Format::Json => {
            let mut s = report.to_json();
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let (header, rows) = report.csv_rows();
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header)?;
            for row in rows {
                w.write_record(&row)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| OutputError::Csv(e.into_error().into()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

/// Writes `report` to `path`, or to stdout when `path` is `None`.
pub fn emit_report<R: Emit + ?Sized>(
    report: &R,
    format: Format,
    path: Option<&Path>,
) -> Result<(), OutputError> {
    let text = render(report, format)?;
    match path {
        Some(p) => fs::write(p, text).map_err(|source| OutputError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| OutputError::Io {
                    path: "<stdout>".to_owned(),
                    source,
                })
        }
    }
}
