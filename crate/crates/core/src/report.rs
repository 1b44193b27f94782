//! ATDI per smell and per project, and report emission.
//!
//! ```
//! use atdi::report::{atdi_smell, density};
//!
//! assert_eq!(atdi_smell(5.0, 13.0).unwrap(), 65.0);
//! assert_eq!(density(500.0, 10_000), 50.0);
//! ```
//!
//! Emitted numbers carry 6 significant digits, keys keep a fixed order and
//! every artefact ends with a newline, so equal reports are equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::value::RawValue;
use thiserror::Error;

use crate::depgraph::{DependencyGraph, Level};
use crate::detection::{SmellId, SmellInstance, SmellType};

pub const SCHEMA: &str = "atdi/1";

/// Records above this are flagged for review.
pub const OUTLIER_ATDI: f64 = 10_000.0;

#[derive(Debug, Error, PartialEq)]
pub enum ReportError {
    #[error("severity {0} outside [1, 10]")]
    SeverityOutOfRange(f64),
    #[error("extent {0} below 1")]
    ExtentOutOfRange(f64),
    #[error("{smells} smells, {severities} severities, {extents} extents")]
    LengthMismatch {
        smells: usize,
        severities: usize,
        extents: usize,
    },
    #[error("project LOC must be positive")]
    NonPositiveLoc,
}

/// `severity * extent`, with severity in `[1, 10]` and extent at least 1.
pub fn atdi_smell(severity: f64, extent: f64) -> Result<f64, ReportError> {
    if !(1.0..=10.0).contains(&severity) {
        return Err(ReportError::SeverityOutOfRange(severity));
    }
    if !(extent >= 1.0 && extent.is_finite()) {
        return Err(ReportError::ExtentOutOfRange(extent));
    }
    Ok(severity * extent)
}

/// ATDI per 1000 lines of code.
pub fn density(total: f64, loc: u64) -> f64 {
    if loc == 0 {
        0.0
    } else {
        total / loc as f64 * 1000.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordEdge {
    pub from: String,
    pub to: String,
    pub weight: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtdiRecord {
    pub smell_id: SmellId,
    pub smell_type: SmellType,
    pub level: Level,
    pub severity: f64,
    pub extent: f64,
    pub atdi: f64,
    pub affected: Vec<String>,
    pub center: Option<String>,
    /// Edges creating the smell, by entity name.
    pub edges: Vec<RecordEdge>,
}

impl AtdiRecord {
    pub fn new(smell: &SmellInstance, graph: &DependencyGraph, severity: f64, extent: f64) -> Result<Self, ReportError> {
        Ok(AtdiRecord {
            smell_id: smell.id.clone(),
            smell_type: smell.smell_type,
            level: smell.level,
            severity,
            extent,
            atdi: atdi_smell(severity, extent)?,
            affected: smell.affected.iter().map(|&e| graph.name(e).to_string()).collect(),
            center: smell.center.map(|c| graph.name(c).to_string()),
            edges: smell
                .induced_edges
                .iter()
                .map(|e| RecordEdge {
                    from: graph.name(e.from).to_string(),
                    to: graph.name(e.to).to_string(),
                    weight: e.weight,
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtdiReport {
    pub project: String,
    /// Sorted by ATDI, largest first.
    pub records: Vec<AtdiRecord>,
    pub total: f64,
    pub loc: u64,
    pub density: f64,
    pub warnings: Vec<String>,
}

impl AtdiReport {
    /// Builds a report from finished records, sorting them and deriving the
    /// totals.
    pub fn from_records(project: impl Into<String>, mut records: Vec<AtdiRecord>, loc: u64) -> Result<Self, ReportError> {
        if loc == 0 {
            return Err(ReportError::NonPositiveLoc);
        }
        records.sort_by(|a, b| b.atdi.total_cmp(&a.atdi).then_with(|| a.smell_id.cmp(&b.smell_id)));
        let total: f64 = records.iter().fold(0.0, |acc, r| acc + r.atdi);
        let warnings = records
            .iter()
            .filter(|r| r.atdi > OUTLIER_ATDI)
            .map(|r| format!("{}: atdi {} above {}", r.smell_id, sig6(r.atdi), sig6(OUTLIER_ATDI)))
            .collect();
        Ok(AtdiReport {
            project: project.into(),
            records,
            total,
            loc,
            density: density(total, loc),
            warnings,
        })
    }

    /// Totals recomputed from the records.
    pub fn recomputed(&self) -> (f64, f64) {
        let total: f64 = self.records.iter().fold(0.0, |acc, r| acc + r.atdi);
        (total, density(total, self.loc))
    }
}

pub fn project_report(
    project: &str,
    smells: &[SmellInstance],
    graph: &DependencyGraph,
    severities: &[f64],
    extents: &[f64],
    loc: u64,
) -> Result<AtdiReport, ReportError> {
    if smells.len() != severities.len() || smells.len() != extents.len() {
        return Err(ReportError::LengthMismatch {
            smells: smells.len(),
            severities: severities.len(),
            extents: extents.len(),
        });
    }
    let records = smells
        .iter()
        .zip(severities.iter().zip(extents))
        .map(|(s, (&sev, &ext))| AtdiRecord::new(s, graph, sev, ext))
        .collect::<Result<Vec<_>, _>>()?;
    AtdiReport::from_records(project, records, loc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ReportFormat {
    Json,
    Csv,
    Dot,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Dot => "dot",
        }
    }
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "dot" => Ok(ReportFormat::Dot),
            other => Err(format!("unknown report format `{other}`")),
        }
    }
}

/// Formats `x` with 6 significant digits, without trailing zeros. Plain
/// notation between 1e-5 and 1e15, exponent notation outside.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() { "NaN".into() } else if x == 0.0 { "0".into() } else { format!("{x}") };
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (5 - exp).max(0) as usize;
        let rounded: f64 = sci.parse().expect("round trip");
        trim_zeros(format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn num(x: f64) -> Box<RawValue> {
    RawValue::from_string(sig6(x)).expect("finite numbers are valid JSON")
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    id: &'a str,
    #[serde(rename = "type")]
    smell_type: &'a str,
    level: &'a str,
    severity: Box<RawValue>,
    extent: Box<RawValue>,
    atdi: Box<RawValue>,
    center: Option<&'a str>,
    affected: &'a [String],
    edges: &'a [RecordEdge],
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: &'static str,
    project: &'a str,
    loc: u64,
    total: Box<RawValue>,
    density: Box<RawValue>,
    smells: usize,
    by_type: BTreeMap<&'static str, Box<RawValue>>,
    warnings: &'a [String],
    records: Vec<JsonRecord<'a>>,
}

pub fn emit(report: &AtdiReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => emit_json(report).into_bytes(),
        ReportFormat::Csv => emit_csv(report).into_bytes(),
        ReportFormat::Dot => emit_dot(report).into_bytes(),
    }
}

pub fn emit_json(report: &AtdiReport) -> String {
    let mut by_type: BTreeMap<&'static str, f64> = BTreeMap::new();
    for r in &report.records {
        *by_type.entry(r.smell_type.code()).or_default() += r.atdi;
    }
    let doc = JsonReport {
        schema: SCHEMA,
        project: &report.project,
        loc: report.loc,
        total: num(report.total),
        density: num(report.density),
        smells: report.records.len(),
        by_type: by_type.into_iter().map(|(k, v)| (k, num(v))).collect(),
        warnings: &report.warnings,
        records: report
            .records
            .iter()
            .map(|r| JsonRecord {
                id: r.smell_id.as_str(),
                smell_type: r.smell_type.code(),
                level: r.level.as_str(),
                severity: num(r.severity),
                extent: num(r.extent),
                atdi: num(r.atdi),
                center: r.center.as_deref(),
                affected: &r.affected,
                edges: &r.edges,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serialises");
    s.push('\n');
    s
}

pub const CSV_HEADER: [&str; 8] = ["smell_id", "smell_type", "level", "severity", "extent", "atdi", "center", "affected"];

/// One row per record; affected names are joined by `;`.
pub fn emit_csv(report: &AtdiReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for r in &report.records {
        w.write_record([
            r.smell_id.as_str(),
            r.smell_type.code(),
            r.level.as_str(),
            &sig6(r.severity),
            &sig6(r.extent),
            &sig6(r.atdi),
            r.center.as_deref().unwrap_or(""),
            &r.affected.join(";"),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

const DOT_COLOURS: [&str; 3] = ["#fee8c8", "#fdbb84", "#e34a33"];

/// Weighted degree bucket relative to the heaviest node of the smell.
fn colour_bucket(degree: u64, max: u64) -> usize {
    if max == 0 || degree * 3 <= max {
        0
    } else if degree * 3 <= max * 2 {
        1
    } else {
        2
    }
}

/// One digraph per record.
pub fn emit_dot(report: &AtdiReport) -> String {
    let mut out = String::new();
    for r in &report.records {
        let mut degree: BTreeMap<&str, u64> = r.affected.iter().map(|a| (a.as_str(), 0)).collect();
        for e in &r.edges {
            *degree.entry(&e.from).or_default() += e.weight;
            *degree.entry(&e.to).or_default() += e.weight;
        }
        let max = degree.values().copied().max().unwrap_or(0);
        let _ = writeln!(out, "digraph {} {{", quote(r.smell_id.as_str()));
        let _ = writeln!(
            out,
            "  label={};",
            quote(&format!("{} {} atdi={}", r.smell_id, r.smell_type, sig6(r.atdi)))
        );
        let _ = writeln!(out, "  node [shape=box, style=filled];");
        for (name, d) in &degree {
            let _ = writeln!(out, "  {} [fillcolor={}];", quote(name), quote(DOT_COLOURS[colour_bucket(*d, max)]));
        }
        for e in &r.edges {
            let _ = writeln!(out, "  {} -> {} [label={}];", quote(&e.from), quote(&e.to), quote(&e.weight.to_string()));
        }
        out.push_str("}\n");
    }
    out
}
