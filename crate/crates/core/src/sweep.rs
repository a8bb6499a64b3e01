//! One-parameter sweeps over a base scenario.

use serde_json::Value;

use crate::config::ScenarioConfig;
use crate::engine::Simulator;
use crate::error::{ConfigError, Error, Result};
use crate::kpi::aggregate_throughput;
use crate::kpi::output::SweepRow;

/// Sets `Rows` and `Columns` of every surface and rescales its patches.
pub const IRS_SIZE: &str = "IrsSize";

fn scale_range(start: usize, end: usize, old: usize, new: usize) -> (usize, usize) {
    (
        start * new / old,
        ((end + 1) * new / old).max(start * new / old + 1) - 1,
    )
}

/// Square every surface to `n × n`, keeping each patch's relative footprint.
pub fn resize_surfaces(config: &mut ScenarioConfig, n: usize) {
    for drone in &mut config.drones {
        let irs = &mut drone.irs;
        let (cols, rows) = (irs.columns, irs.rows);
        for c in &mut irs.patch_configurator.configurations {
            for p in &mut c.patches {
                let (xs, xe) = scale_range(p.size[0], p.size[1], cols, n);
                let (ys, ye) = scale_range(p.size[2], p.size[3], rows, n);
                p.size = [xs, xe, ys, ye];
            }
        }
        irs.rows = n;
        irs.columns = n;
    }
}

fn label(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Apply one sweep value to `base`.
pub fn apply(base: &ScenarioConfig, parameter: &str, value: &Value) -> Result<ScenarioConfig> {
    if parameter == IRS_SIZE {
        let n = value.as_u64().filter(|&n| n > 0).ok_or_else(|| {
            Error::Config(vec![ConfigError::new(
                "",
                format!("{IRS_SIZE} value {value} is not a positive integer"),
            )])
        })?;
        let mut cfg = base.clone();
        resize_surfaces(&mut cfg, n as usize);
        cfg.validate()?;
        return Ok(cfg);
    }
    base.with_overrides(&[format!("{parameter}={value}")])
}

/// Run `base` once per value; one row per (value, GU, direction).
pub fn sweep(base: &ScenarioConfig, parameter: &str, values: &[Value]) -> Result<Vec<SweepRow>> {
    if values.is_empty() {
        return Err(Error::InvalidRange(format!("sweep over `{parameter}` has no values")));
    }
    let mut rows = Vec::new();
    for value in values {
        let sim = Simulator::new(apply(base, parameter, value)?)?;
        let records = sim.run()?;
        let summary = aggregate_throughput(&records, sim.config.sim.duration);
        for ((gu, dir), throughput) in &summary.per_gu {
            let sinr: Vec<f64> = records
                .iter()
                .filter(|r| &r.gu_id == gu && r.direction == *dir)
                .map(|r| r.sinr_db)
                .collect();
            rows.push(SweepRow {
                parameter: parameter.to_string(),
                value: label(value),
                gu_id: gu.clone(),
                direction: dir.as_str().to_string(),
                mean_sinr_db: sinr.iter().sum::<f64>() / sinr.len() as f64,
                throughput_bps: *throughput,
            });
        }
    }
    Ok(rows)
}
