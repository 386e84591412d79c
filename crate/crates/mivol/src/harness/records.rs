//! Experiment records and deterministic CSV/JSON rendering.
//!
//! Every check emits one row per measured quantity.  Rows carry the seed
//! that generated their instance, a three-valued outcome, and render in a
//! fixed column order sorted by instance then quantity, so a rerun with the
//! same seed produces byte-identical output.

use crate::error::{Error, Result};
use serde_json::{json, Value};
use std::fmt;
use std::path::Path;

/// Three-valued check outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Satisfied {
    /// The measured quantity respects the bound.
    Yes,
    /// The measured quantity violates the bound.
    No,
    /// The bound's hypothesis does not hold for this instance.
    NotApplicable,
}

impl fmt::Display for Satisfied {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Satisfied::Yes => "yes",
            Satisfied::No => "no",
            Satisfied::NotApplicable => "not-applicable",
        };
        f.write_str(s)
    }
}

impl Satisfied {
    /// True for a comparison that held, from a plain boolean.
    pub fn from_bool(b: bool) -> Self {
        if b {
            Satisfied::Yes
        } else {
            Satisfied::No
        }
    }
}

/// One measured quantity on one instance, compared against one bound.
#[derive(Debug, Clone)]
pub struct ExperimentRecord {
    /// Canonical instance identifier.
    pub instance_id: String,
    /// Number of integer coordinates.
    pub n: usize,
    /// Number of continuous coordinates.
    pub d: usize,
    /// Scale parameter: fiber count, ball radius, or lattice width.
    pub k_or_width: String,
    /// Name of the measured quantity.
    pub quantity_name: String,
    /// Measured value.
    pub measured: f64,
    /// Reference bound the measurement is compared against.
    pub paper_bound: f64,
    /// Outcome of the comparison.
    pub satisfied: Satisfied,
    /// Seed that generated the instance.
    pub seed: u64,
    /// Wall-clock runtime of the producing check, zero when untimed.
    pub runtime_ms: u128,
}

/// Output format for rendered reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::BadParams(format!("unknown format {other:?}, want csv or json"))),
        }
    }
}

/// Fixed CSV header.
pub const CSV_HEADER: &str =
    "instance_id,n,d,k_or_width,quantity_name,measured,paper_bound,satisfied,seed,runtime_ms";

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Stable ordering: by instance, then quantity name.
pub fn sort_records(records: &mut [ExperimentRecord]) {
    records.sort_by(|a, b| {
        (a.instance_id.as_str(), a.quantity_name.as_str())
            .cmp(&(b.instance_id.as_str(), b.quantity_name.as_str()))
    });
}

/// Render records as CSV, header always present.
pub fn render_csv(records: &[ExperimentRecord]) -> String {
    let mut sorted: Vec<ExperimentRecord> = records.to_vec();
    sort_records(&mut sorted);
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in &sorted {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            csv_field(&r.instance_id),
            r.n,
            r.d,
            csv_field(&r.k_or_width),
            csv_field(&r.quantity_name),
            r.measured,
            r.paper_bound,
            r.satisfied,
            r.seed,
            r.runtime_ms,
        ));
    }
    out
}

/// Render records as a JSON array in the same stable order.
pub fn render_json(records: &[ExperimentRecord]) -> Value {
    let mut sorted: Vec<ExperimentRecord> = records.to_vec();
    sort_records(&mut sorted);
    Value::Array(
        sorted
            .iter()
            .map(|r| {
                json!({
                    "instance_id": r.instance_id,
                    "n": r.n,
                    "d": r.d,
                    "k_or_width": r.k_or_width,
                    "quantity_name": r.quantity_name,
                    "measured": r.measured,
                    "paper_bound": r.paper_bound,
                    "satisfied": r.satisfied.to_string(),
                    "seed": r.seed,
                    "runtime_ms": r.runtime_ms as u64,
                })
            })
            .collect(),
    )
}

/// Write records to a file in the requested format.
pub fn write_report(records: &[ExperimentRecord], path: &Path, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => render_csv(records),
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&render_json(records))?;
            s.push('\n');
            s
        }
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// Parse a JSON report back into records, for re-rendering.
pub fn records_from_json(v: &Value) -> Result<Vec<ExperimentRecord>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::DegenerateInput(format!("expected a record array, got {v}")))?;
    let mut out = Vec::with_capacity(arr.len());
    for item in arr {
        let obj = item
            .as_object()
            .ok_or_else(|| Error::DegenerateInput(format!("expected a record object, got {item}")))?;
        let get_str = |key: &str| -> Result<String> {
            obj.get(key)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| Error::DegenerateInput(format!("record missing string {key}")))
        };
        let get_u64 = |key: &str| -> Result<u64> {
            obj.get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::DegenerateInput(format!("record missing integer {key}")))
        };
        let get_f64 = |key: &str| -> Result<f64> {
            obj.get(key)
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::DegenerateInput(format!("record missing number {key}")))
        };
        let satisfied = match get_str("satisfied")?.as_str() {
            "yes" => Satisfied::Yes,
            "no" => Satisfied::No,
            "not-applicable" => Satisfied::NotApplicable,
            other => {
                return Err(Error::DegenerateInput(format!("bad satisfied value {other:?}")));
            }
        };
        out.push(ExperimentRecord {
            instance_id: get_str("instance_id")?,
            n: get_u64("n")? as usize,
            d: get_u64("d")? as usize,
            k_or_width: get_str("k_or_width")?,
            quantity_name: get_str("quantity_name")?,
            measured: get_f64("measured")?,
            paper_bound: get_f64("paper_bound")?,
            satisfied,
            seed: get_u64("seed")?,
            runtime_ms: get_u64("runtime_ms")? as u128,
        });
    }
    Ok(out)
}
