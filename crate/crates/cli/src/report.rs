use std::fmt::Write as _;
use std::time::Duration;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use piradical::search::SearchBudget;

use crate::error::CliError;

/// One flat result row. Field order is kept so JSON objects, CSV columns and
/// text output agree.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record(pub Vec<(String, Value)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(k, _)| k.as_str())
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// CSV and text rendering of a JSON scalar.
pub fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub tool_version: &'static str,
    pub seed: u64,
    pub budgets: SearchBudget,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub inputs: Record,
    pub summary: Record,
    pub results: Vec<Record>,
    pub provenance: Provenance,
}

impl ExperimentReport {
    pub fn new(experiment: &str, inputs: Record, budget: &SearchBudget) -> Self {
        Self {
            experiment: experiment.to_string(),
            inputs,
            summary: Record::new(),
            results: Vec::new(),
            provenance: Provenance {
                tool_version: env!("CARGO_PKG_VERSION"),
                seed: budget.seed,
                budgets: *budget,
                wall_time_ms: 0,
            },
        }
    }

    pub fn set_wall_time(&mut self, elapsed: Duration) {
        self.provenance.wall_time_ms = elapsed.as_millis();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Only the result records; the header is the key list of the first row.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        if let Some(first) = self.results.first() {
            writer.write_record(first.keys()).map_err(CliError::output)?;
        }
        for record in &self.results {
            writer
                .write_record(record.0.iter().map(|(_, v)| cell(v)))
                .map_err(CliError::output)?;
        }
        let bytes = writer.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(CliError::output)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.experiment);
        let line = |r: &Record| {
            r.0.iter()
                .map(|(k, v)| format!("{k}={}", cell(v)))
                .collect::<Vec<_>>()
                .join("  ")
        };
        if !self.inputs.0.is_empty() {
            let _ = writeln!(out, "  inputs: {}", line(&self.inputs));
        }
        for (k, v) in &self.summary.0 {
            let _ = writeln!(out, "  {k}: {}", cell(v));
        }
        for r in &self.results {
            let _ = writeln!(out, "  - {}", line(r));
        }
        let _ = writeln!(
            out,
            "  ({} ms, seed {})",
            self.provenance.wall_time_ms, self.provenance.seed
        );
        out
    }
}
