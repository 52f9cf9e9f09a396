//! Cost reports and their JSON, CSV and text forms.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rounds after enabling one more pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PassDelta {
    pub pass: String,
    pub rounds: u64,
    /// Change against the previous prefix (the baseline for the first pass).
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub circuit: String,
    pub qubits: usize,
    pub gates: usize,
    pub passes: Vec<String>,
    pub push_policy: String,
    pub workers: usize,
    pub ancilla_count: usize,
    pub code_distance: u64,
    pub baseline_rounds: u64,
    pub total_rounds: u64,
    pub speedup: f64,
    pub baseline_cycles: u64,
    pub total_cycles: u64,
    pub rotation_count: usize,
    pub baseline_rotation_count: usize,
    pub stall_rounds: u64,
    pub executed_ops: usize,
    pub baseline_ops: usize,
    pub frame_ops: usize,
    pub kept_cliffords: usize,
    pub pass_deltas: Vec<PassDelta>,
}

/// `baseline / optimized`, or 1 when the optimized run is empty.
pub fn speedup(baseline: u64, optimized: u64) -> f64 {
    if optimized == 0 {
        1.0
    } else {
        baseline as f64 / optimized as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            other => Err(Error::UnknownFormat(other.to_owned())),
        }
    }
}

pub const CSV_HEADER: [&str; 6] = ["circuit", "qubits", "gates", "baseline_rounds", "tqc_rounds", "speedup"];

/// Serializes one report.
pub fn report_emit(r: &CostReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r)?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => reports_csv(std::slice::from_ref(r)),
        ReportFormat::Text => Ok(report_text(r)),
    }
}

/// Parses the output of [`report_emit`] with [`ReportFormat::Json`].
pub fn report_from_json(s: &str) -> Result<CostReport> {
    Ok(serde_json::from_str(s)?)
}

pub fn reports_csv(rows: &[CostReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.circuit.clone(),
            r.qubits.to_string(),
            r.gates.to_string(),
            r.baseline_rounds.to_string(),
            r.total_rounds.to_string(),
            format!("{:.2}", r.speedup),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn report_text(r: &CostReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "circuit        {}", r.circuit);
    let _ = writeln!(s, "qubits         {}", r.qubits);
    let _ = writeln!(s, "gates          {}", r.gates);
    let _ = writeln!(s, "passes         {}", r.passes.join(","));
    let _ = writeln!(s, "push policy    {}", r.push_policy);
    let _ = writeln!(s, "baseline       {} rounds, {} rotations", r.baseline_rounds, r.baseline_rotation_count);
    let _ = writeln!(s, "optimized      {} rounds, {} rotations", r.total_rounds, r.rotation_count);
    let _ = writeln!(s, "speedup        {:.2}", r.speedup);
    let _ = writeln!(s, "stall rounds   {}", r.stall_rounds);
    for d in &r.pass_deltas {
        let _ = writeln!(s, "  +{:<8} {:>8} rounds ({:+})", d.pass, d.rounds, d.delta);
    }
    s
}

/// Geometric mean; `None` for an empty input or a non-positive value.
pub fn geomean(values: &[f64]) -> Option<f64> {
    if values.is_empty() || values.iter().any(|&v| v <= 0.0 || !v.is_finite()) {
        return None;
    }
    Some((values.iter().map(|v| v.ln()).sum::<f64>() / values.len() as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample() -> CostReport {
        CostReport {
            circuit: "adder_4".into(),
            qubits: 4,
            gates: 30,
            passes: vec!["layer".into(), "fuse".into()],
            push_policy: "always".into(),
            workers: 1,
            ancilla_count: 2,
            code_distance: 3,
            baseline_rounds: 40,
            total_rounds: 17,
            speedup: speedup(40, 17),
            baseline_cycles: 120,
            total_cycles: 51,
            rotation_count: 3,
            baseline_rotation_count: 9,
            stall_rounds: 0,
            executed_ops: 20,
            baseline_ops: 21,
            frame_ops: 1,
            kept_cliffords: 0,
            pass_deltas: vec![PassDelta {
                pass: "layer".into(),
                rounds: 20,
                delta: -20,
            }],
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let s = report_emit(&r, ReportFormat::Json).unwrap();
        assert_eq!(report_from_json(&s).unwrap(), r);
    }

    #[test]
    fn csv_schema() {
        let s = report_emit(&sample(), ReportFormat::Csv).unwrap();
        assert_eq!(s, "circuit,qubits,gates,baseline_rounds,tqc_rounds,speedup\nadder_4,4,30,40,17,2.35\n");
    }

    #[test]
    fn formats() {
        assert!(matches!("xml".parse::<ReportFormat>(), Err(Error::UnknownFormat(_))));
        assert!(report_emit(&sample(), ReportFormat::Text).unwrap().contains("speedup        2.35"));
    }

    #[test]
    fn geomean_cases() {
        assert!((geomean(&[2.0, 8.0]).unwrap() - 4.0).abs() < 1e-12);
        assert_eq!(geomean(&[]), None);
        assert_eq!(speedup(0, 0), 1.0);
    }
}
