//! Serialization of theorem reports as JSON lines or CSV.
//!
//! Ratios are written as exact `num/den` strings with a separate six-digit
//! decimal approximation. Field order is fixed; wall time is only written when
//! it was recorded.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::{TheoremReport, Verdict, Witness};
use crate::ratio::ExactRatio;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "jsonl" | "json" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::InvalidArgument(format!(
                "unknown report format '{s}'"
            ))),
        }
    }
}

#[derive(Serialize)]
struct WitnessRecord<'a> {
    subject: &'a str,
    value: ExactRatio,
    approx: String,
    relation: &'static str,
    bound: ExactRatio,
    bound_approx: String,
    holds: bool,
    counts: Option<String>,
    oracle_confirmed: Option<bool>,
}

impl<'a> From<&'a Witness> for WitnessRecord<'a> {
    fn from(w: &'a Witness) -> Self {
        WitnessRecord {
            subject: &w.subject,
            value: w.value,
            approx: w.value.approx_string(),
            relation: w.relation.symbol(),
            bound: w.bound,
            bound_approx: w.bound.approx_string(),
            holds: w.holds,
            counts: w.counts.map(|(n, d)| format!("{n}/{d}")),
            oracle_confirmed: w.oracle_confirmed,
        }
    }
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    theorem: &'static str,
    group: &'a str,
    order: u64,
    pi: String,
    verdict: &'static str,
    skip_reason: Option<&'static str>,
    skip_detail: Option<&'a str>,
    flags: &'a [String],
    witnesses: Vec<WitnessRecord<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<u64>,
}

fn skip_parts(v: &Verdict) -> (Option<&'static str>, Option<&str>) {
    match v {
        Verdict::Skipped(r) => (Some(r.code()), r.detail()),
        _ => (None, None),
    }
}

impl<'a> From<&'a TheoremReport> for ReportRecord<'a> {
    fn from(r: &'a TheoremReport) -> Self {
        let (skip_reason, skip_detail) = skip_parts(&r.verdict);
        ReportRecord {
            theorem: r.theorem.code(),
            group: &r.group_id,
            order: r.group_order,
            pi: r.pi.to_string(),
            verdict: r.verdict.code(),
            skip_reason,
            skip_detail,
            flags: &r.flags,
            witnesses: r.witnesses.iter().map(WitnessRecord::from).collect(),
            timing_ms: r.timing_ms,
        }
    }
}

/// One report as a JSON object on a single line.
pub fn report_json_line(report: &TheoremReport) -> String {
    serde_json::to_string(&ReportRecord::from(report)).expect("report serializes")
}

pub const CSV_HEADER: [&str; 16] = [
    "theorem",
    "group",
    "order",
    "pi",
    "verdict",
    "skip_reason",
    "witnesses",
    "violations",
    "subject",
    "value",
    "value_approx",
    "relation",
    "bound",
    "bound_approx",
    "flags",
    "timing_ms",
];

/// CSV row; the witness columns describe the first witness (a violation when
/// there is one).
fn csv_row(r: &TheoremReport) -> Vec<String> {
    let (reason, _) = skip_parts(&r.verdict);
    let w = r.witnesses.first();
    let ratio = |f: fn(&Witness) -> ExactRatio| w.map(|w| f(w).to_string()).unwrap_or_default();
    let approx =
        |f: fn(&Witness) -> ExactRatio| w.map(|w| f(w).approx_string()).unwrap_or_default();
    vec![
        r.theorem.code().to_string(),
        r.group_id.clone(),
        r.group_order.to_string(),
        r.pi.to_string(),
        r.verdict.code().to_string(),
        reason.unwrap_or_default().to_string(),
        r.witnesses.len().to_string(),
        r.witnesses.iter().filter(|w| !w.holds).count().to_string(),
        w.map(|w| w.subject.clone()).unwrap_or_default(),
        ratio(|w| w.value),
        approx(|w| w.value),
        w.map(|w| w.relation.symbol().to_string())
            .unwrap_or_default(),
        ratio(|w| w.bound),
        approx(|w| w.bound),
        r.flags.join(";"),
        r.timing_ms.map(|t| t.to_string()).unwrap_or_default(),
    ]
}

pub fn write_reports_to(
    reports: &[TheoremReport],
    format: ReportFormat,
    out: impl Write,
) -> Result<()> {
    match format {
        ReportFormat::Jsonl => {
            let mut out = out;
            for r in reports {
                writeln!(out, "{}", report_json_line(r))?;
            }
            out.flush()?;
        }
        ReportFormat::Csv => {
            let io = |e: csv::Error| Error::Io(e.to_string());
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER).map_err(io)?;
            for r in reports {
                w.write_record(csv_row(r)).map_err(io)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn write_reports(
    reports: &[TheoremReport],
    format: ReportFormat,
    path: impl AsRef<Path>,
) -> Result<()> {
    let file = File::create(path)?;
    write_reports_to(reports, format, BufWriter::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_psl2;
    use crate::harness::{verify_theorem_c, TheoremId};
    use crate::primes::PrimeSet;

    fn psl25_forward() -> TheoremReport {
        let g = make_psl2(5).unwrap().build().unwrap();
        let pi = PrimeSet::new([5]).unwrap();
        verify_theorem_c("psl2:5", &g, &pi).remove(0)
    }

    #[test]
    fn jsonl_has_exact_and_approx() {
        let r = psl25_forward();
        assert_eq!(r.theorem, TheoremId::CForward);
        let line = report_json_line(&r);
        assert!(line.contains("\"verdict\":\"pass\""), "{line}");
        assert!(line.contains("\"value\":\"29/125\""), "{line}");
        assert!(line.contains("\"approx\":\"0.232000\""), "{line}");
        assert!(!line.contains("timing_ms"));
        let mut buf = Vec::new();
        write_reports_to(&[r], ReportFormat::Jsonl, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }

    #[test]
    fn empty_outputs() {
        let mut buf = Vec::new();
        write_reports_to(&[], ReportFormat::Jsonl, &mut buf).unwrap();
        assert!(buf.is_empty());
        let mut buf = Vec::new();
        write_reports_to(&[], ReportFormat::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), CSV_HEADER.join(",") + "\n");
    }

    #[test]
    fn csv_row_carries_ratio() {
        let mut buf = Vec::new();
        write_reports_to(&[psl25_forward()], ReportFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(row.starts_with("C-forward,psl2:5,60,{5},pass,"), "{row}");
        assert!(
            row.contains(",29/125,0.232000,<=,29/125,0.232000,"),
            "{row}"
        );
    }
}
