//! CSV and JSON artifacts. These formats are the contract consumed by the
//! plotting tools.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{RemGrid, ThroughputSummary};
use crate::config::ScenarioConfig;
use crate::engine::KpiRecord;
use crate::error::{ConfigError, Error, Result};

pub const KPI_HEADER: [&str; 7] = ["t_s", "gu_id", "direction", "gain_db", "sinr_db", "rate_bps", "served"];
pub const REM_HEADER: [&str; 3] = ["x_m", "y_m", "sinr_db"];
pub const THROUGHPUT_HEADER: [&str; 3] = ["gu_id", "direction", "throughput_bps"];
pub const SWEEP_HEADER: [&str; 6] = [
    "parameter",
    "value",
    "gu_id",
    "direction",
    "mean_sinr_db",
    "throughput_bps",
];

/// Shortest round-trip decimal; infinities as `inf` / `-inf`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| Error::io(path, e)
}

fn create(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    Ok(csv::Writer::from_writer(BufWriter::new(file)))
}

pub fn write_kpi<W: Write>(out: W, records: &[KpiRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(KPI_HEADER)?;
    for r in records {
        w.write_record([
            fmt_f64(r.t),
            r.gu_id.clone(),
            r.direction.as_str().to_string(),
            fmt_f64(r.gain_db()),
            fmt_f64(r.sinr_db),
            fmt_f64(r.rate_bps),
            r.served.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_kpi_csv(path: &Path, records: &[KpiRecord]) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_kpi(BufWriter::new(file), records).map_err(csv_err(path))
}

pub fn write_rem<W: Write>(out: W, grid: &RemGrid) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REM_HEADER)?;
    for j in 0..grid.ny {
        let y = fmt_f64(grid.y(j));
        for i in 0..grid.nx {
            w.write_record([fmt_f64(grid.x(i)), y.clone(), fmt_f64(grid.at(i, j))])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_rem_csv(path: &Path, grid: &RemGrid) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_rem(BufWriter::new(file), grid).map_err(csv_err(path))
}

pub fn write_throughput_csv(path: &Path, summary: &ThroughputSummary) -> Result<()> {
    let mut w = create(path)?;
    let err = csv_err(path);
    w.write_record(THROUGHPUT_HEADER).map_err(&err)?;
    for ((gu, dir), v) in &summary.per_gu {
        w.write_record([gu.as_str(), dir.as_str(), &fmt_f64(*v)])
            .map_err(&err)?;
    }
    for (dir, v) in &summary.overall {
        w.write_record(["ALL", dir.as_str(), &fmt_f64(*v)]).map_err(&err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// One row of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: String,
    pub gu_id: String,
    pub direction: String,
    pub mean_sinr_db: f64,
    pub throughput_bps: f64,
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let mut w = create(path)?;
    let err = csv_err(path);
    w.write_record(SWEEP_HEADER).map_err(&err)?;
    for r in rows {
        w.write_record([
            r.parameter.clone(),
            r.value.clone(),
            r.gu_id.clone(),
            r.direction.clone(),
            fmt_f64(r.mean_sinr_db),
            fmt_f64(r.throughput_bps),
        ])
        .map_err(&err)?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Everything needed to reproduce a command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub command: String,
    pub seed: u64,
    pub config: ScenarioConfig,
    pub outputs: Vec<String>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub parameters: serde_json::Value,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::io(path, e))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

fn invalid(message: impl std::fmt::Display) -> Error {
    Error::Config(vec![ConfigError::new("", message.to_string())])
}

pub fn read_manifest(path: &Path) -> Result<Manifest> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(invalid)
}

/// Load a scenario file, or the resolved config embedded in a manifest.
pub fn load_scenario(path: &Path) -> Result<(ScenarioConfig, Option<Manifest>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let is_manifest = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .and_then(|v| {
            v.as_object()
                .map(|o| o.contains_key("command") && o.contains_key("config"))
        })
        .unwrap_or(false);
    if !is_manifest {
        return Ok((crate::config::parse(&text)?, None));
    }
    let manifest: Manifest = serde_json::from_str(&text).map_err(invalid)?;
    manifest.config.validate()?;
    Ok((manifest.config.clone(), Some(manifest)))
}
