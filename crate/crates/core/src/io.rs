//! CSV datasets and the versioned JSON documents the CLI reads and writes.
//!
//! Subscripts in every document are one-based.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bootstrap::EdgeInterval;
use crate::dataset::Dataset;
use crate::direct::{FittedModel, StepScores};
use crate::error::{LingamError, Result};
use crate::eval::EvaluationReport;
use crate::ica::BaselineModel;
use crate::model::CausalOrder;
use crate::synth::{GroundTruthModel, SynthConfig};

pub const SCHEMA_VERSION: &str = "1.0";
pub const SCHEMA_MAJOR: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvOptions {
    pub header: bool,
    /// Each CSV row holds one variable instead of one observation. With a
    /// header, the first cell of each row is the variable's label.
    pub variables_as_rows: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions { header: true, variables_as_rows: false }
    }
}

fn parse_cell(cell: &str, line: u64, column: usize) -> Result<f64> {
    cell.trim().parse::<f64>().map_err(|_| LingamError::NonNumericCell {
        line,
        column,
        value: cell.to_string(),
    })
}

/// Parses CSV text into a centered dataset.
pub fn parse_csv(text: &str, options: CsvOptions) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(options.header && !options.variables_as_rows)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header: Option<Vec<String>> = if options.header && !options.variables_as_rows {
        let h = reader.headers().map_err(csv_error)?;
        Some(h.iter().map(|s| s.trim().to_string()).collect())
    } else {
        None
    };

    let skip = usize::from(options.header && options.variables_as_rows);
    let mut expected = header.as_ref().map(|h| h.len());
    let mut labels = Vec::new();
    let mut table: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        let width = *expected.get_or_insert(record.len());
        if record.len() != width {
            return Err(LingamError::RaggedRows { line, expected: width, found: record.len() });
        }
        if skip == 1 {
            labels.push(record[0].trim().to_string());
        }
        let row = record
            .iter()
            .enumerate()
            .skip(skip)
            .map(|(c, cell)| parse_cell(cell, line, c + 1))
            .collect::<Result<Vec<f64>>>()?;
        table.push(row);
    }
    if table.is_empty() {
        return Err(LingamError::DimensionError("CSV has no data rows".into()));
    }

    let (rows, labels) = if options.variables_as_rows {
        (table, options.header.then_some(labels))
    } else {
        let p = table[0].len();
        let rows = (0..p).map(|v| table.iter().map(|obs| obs[v]).collect()).collect();
        (rows, header)
    };
    Ok(Dataset::from_rows(rows, labels)?.centered())
}

fn csv_error(e: csv::Error) -> LingamError {
    let line = e.position().map_or(0, |p| p.line());
    LingamError::ParseError { line, column: 0, message: e.to_string() }
}

/// Reads a CSV file into a centered dataset.
pub fn load_csv(path: &Path, options: CsvOptions) -> Result<Dataset> {
    parse_csv(&fs::read_to_string(path)?, options)
}

/// Observations as rows with a header of labels; floats are written in
/// shortest round-trip form.
pub fn dataset_to_csv(data: &Dataset) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(data.labels()).map_err(csv_error)?;
    let mut cells = vec![String::new(); data.p()];
    for t in 0..data.n() {
        for (i, cell) in cells.iter_mut().enumerate() {
            *cell = data.row(i)[t].to_string();
        }
        w.write_record(&cells).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| LingamError::Io(e.into_error()))
}

pub fn write_csv(data: &Dataset, path: &Path) -> Result<()> {
    write_atomic(path, &dataset_to_csv(data)?)
}

/// Writes through a temporary sibling file and a rename, so readers never
/// see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().ok_or_else(|| {
        LingamError::InvalidConfig(format!("not a file path: {}", path.display()))
    })?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp: PathBuf = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

fn check_schema(found: &str) -> Result<()> {
    let major = found.split('.').next().and_then(|m| m.parse::<u32>().ok());
    if major != Some(SCHEMA_MAJOR) {
        return Err(LingamError::SchemaVersion { found: found.to_string(), supported: SCHEMA_MAJOR });
    }
    Ok(())
}

/// Parses a JSON document after checking its `schema_version`.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let version = value.get("schema_version").and_then(|v| v.as_str()).unwrap_or("missing");
    check_schema(version)?;
    Ok(serde_json::from_value(value)?)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    from_json(&fs::read_to_string(path)?)
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn write_json<T: Serialize>(doc: &T, path: &Path) -> Result<()> {
    write_atomic(path, &to_json(doc)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateScore {
    pub variable: usize,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub estimator: String,
    pub seed: Option<u64>,
    pub labels: Vec<String>,
    pub order: Vec<usize>,
    pub strengths: Vec<Vec<f64>>,
    #[serde(default)]
    pub diagnostics: Vec<Vec<CandidateScore>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pruned: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
}

fn one_based_scores(steps: &[StepScores]) -> Vec<Vec<CandidateScore>> {
    steps
        .iter()
        .map(|s| s.iter().map(|&(v, t)| CandidateScore { variable: v + 1, t }).collect())
        .collect()
}

impl ModelDocument {
    pub fn from_direct(fit: &FittedModel, labels: &[String]) -> Self {
        ModelDocument {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            estimator: "direct".into(),
            seed: None,
            labels: labels.to_vec(),
            order: fit.order.to_one_based(),
            strengths: fit.strengths.to_rows(),
            diagnostics: one_based_scores(&fit.diagnostics),
            pruned: None,
            converged: None,
        }
    }

    pub fn from_ica(fit: &BaselineModel, labels: &[String], seed: u64) -> Self {
        ModelDocument {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            estimator: "ica".into(),
            seed: Some(seed),
            labels: labels.to_vec(),
            order: fit.order.to_one_based(),
            strengths: fit.strengths.to_rows(),
            diagnostics: Vec::new(),
            pruned: Some(fit.pruned.to_rows()),
            converged: Some(fit.converged),
        }
    }

    pub fn causal_order(&self) -> Result<CausalOrder> {
        CausalOrder::from_one_based(&self.order)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub config: SynthConfig,
    pub labels: Vec<String>,
    /// Connection matrix of the emitted variables.
    pub strengths: Vec<Vec<f64>>,
    pub order: Vec<usize>,
    pub noise_stds: Vec<f64>,
    pub exponents: Vec<f64>,
}

impl TruthDocument {
    pub fn new(config: &SynthConfig, model: &GroundTruthModel, labels: &[String]) -> Self {
        let emitted = |v: &[f64]| model.shuffle.as_slice().iter().map(|&k| v[k]).collect();
        TruthDocument {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            config: config.clone(),
            labels: labels.to_vec(),
            strengths: model.observed_b().to_rows(),
            order: model.true_order().to_one_based(),
            noise_stds: emitted(&model.noise_stds),
            exponents: emitted(&model.exponents),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    /// Effect.
    pub i: usize,
    /// Cause.
    pub j: usize,
    pub point: f64,
    pub lower: f64,
    pub upper: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgesDocument {
    pub schema_version: String,
    pub tool_version: String,
    pub labels: Vec<String>,
    pub order: Vec<usize>,
    pub level: f64,
    pub resamples: usize,
    pub seed: u64,
    pub edges: Vec<EdgeRecord>,
}

impl EdgesDocument {
    pub fn new(
        edges: &[EdgeInterval],
        labels: &[String],
        order: &CausalOrder,
        level: f64,
        resamples: usize,
        seed: u64,
    ) -> Self {
        EdgesDocument {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            labels: labels.to_vec(),
            order: order.to_one_based(),
            level,
            resamples,
            seed,
            edges: edges
                .iter()
                .map(|e| EdgeRecord {
                    i: e.i + 1,
                    j: e.j + 1,
                    point: e.point,
                    lower: e.lower,
                    upper: e.upper,
                    significant: e.significant,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub tool_version: String,
    #[serde(flatten)]
    pub report: EvaluationReport,
}

impl ReportDocument {
    pub fn new(report: EvaluationReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            report,
        }
    }
}

/// One row of the flat per-trial report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub p: usize,
    pub n: usize,
    pub estimator: String,
    pub trial: usize,
    pub order_errors: Option<usize>,
    pub frobenius: Option<f64>,
    pub wall_time_secs: Option<f64>,
    pub converged: Option<bool>,
    pub error: Option<String>,
}

pub fn report_rows(report: &EvaluationReport) -> Vec<TrialRow> {
    let mut rows = Vec::new();
    for cell in &report.cells {
        for r in &cell.results {
            for t in &r.trials {
                rows.push(TrialRow {
                    p: cell.p,
                    n: cell.n,
                    estimator: r.estimator.name().into(),
                    trial: t.trial,
                    order_errors: t.order_errors,
                    frobenius: t.frobenius,
                    wall_time_secs: t.wall_time_secs,
                    converged: t.converged,
                    error: t.error.clone(),
                });
            }
        }
    }
    rows
}

pub fn report_to_csv(report: &EvaluationReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in report_rows(report) {
        w.serialize(row).map_err(csv_error)?;
    }
    w.into_inner().map_err(|e| LingamError::Io(e.into_error()))
}

pub fn parse_report_csv(text: &str) -> Result<Vec<TrialRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(csv_error)
}
