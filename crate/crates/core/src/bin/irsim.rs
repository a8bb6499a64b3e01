use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use irs_sim::config::{GainMode, ScenarioConfig};
use irs_sim::engine::Simulator;
use irs_sim::kpi::output::{self, Manifest};
use irs_sim::kpi::{aggregate_throughput, generate_rem};
use irs_sim::{sweep, validation, Error, Result};

#[derive(Parser)]
#[command(name = "irsim", version, about = "Multi-UAV IRS-assisted link simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario JSON, or a manifest written by a previous command.
    scenario: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Dotted-path override, e.g. `channel.OutageProbability=0.1`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check a scenario.
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Simulate the full horizon and write KPI traces.
    Run {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        output: Output,
    },
    /// Downlink radio environment map.
    Rem {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        time: Option<f64>,
        #[arg(long)]
        z: Option<f64>,
        /// Samples per square meter.
        #[arg(long)]
        resolution: Option<f64>,
        /// Use fast-fading draws instead of the outage bound.
        #[arg(long)]
        realized: bool,
    },
    /// Compare the element-level channel against its Rician fit.
    Montecarlo {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        time: Option<f64>,
        #[arg(long)]
        gu: Option<String>,
    },
    /// Rerun the scenario once per parameter value.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        output: Output,
        /// Dotted config path, or `IrsSize`.
        #[arg(long)]
        param: Option<String>,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
    },
}

struct Loaded {
    config: ScenarioConfig,
    parameters: Value,
}

impl Loaded {
    fn param<T: serde::de::DeserializeOwned>(&self, key: &str) -> Option<T> {
        self.parameters
            .get(key)
            .and_then(|v| serde_json::from_value(v.clone()).ok())
    }
}

fn load(common: &Common) -> Result<Loaded> {
    let (config, manifest) = output::load_scenario(&common.scenario)?;
    let mut overrides = common.overrides.clone();
    if let Some(seed) = common.seed {
        overrides.push(format!("sim.seed={seed}"));
    }
    Ok(Loaded {
        config: config.with_overrides(&overrides)?,
        parameters: manifest.map_or(Value::Null, |m| m.parameters),
    })
}

fn prepare(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|e| Error::Io {
        path: out.to_path_buf(),
        message: e.to_string(),
    })
}

fn finish(
    out: &Path,
    command: &str,
    config: ScenarioConfig,
    mut outputs: Vec<String>,
    parameters: Value,
) -> Result<()> {
    outputs.push("manifest.json".into());
    let manifest = Manifest {
        command: command.into(),
        seed: config.sim.seed,
        config,
        outputs,
        parameters,
    };
    output::write_json(&out.join("manifest.json"), &manifest)
}

fn parse_value(raw: &str) -> Value {
    serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Validate { common } => {
            let loaded = load(&common)?;
            println!(
                "{}: ok ({} nodes, {} drones)",
                common.scenario.display(),
                loaded.config.nodes.len(),
                loaded.config.drones.len()
            );
            Ok(())
        }
        Command::Run { common, output: o } => {
            let loaded = load(&common)?;
            let sim = Simulator::new(loaded.config)?;
            let records = sim.run()?;
            prepare(&o.out)?;
            let mut outputs = vec!["kpi.csv".to_string(), "throughput.csv".to_string()];
            output::write_kpi_csv(&o.out.join("kpi.csv"), &records)?;
            let summary = aggregate_throughput(&records, sim.config.sim.duration);
            output::write_throughput_csv(&o.out.join("throughput.csv"), &summary)?;
            for gu in sim.config.ground_users() {
                let name = format!("traces/{}.csv", gu.id);
                let path = o.out.join(&name);
                std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| Error::Io {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                let own: Vec<_> = records.iter().filter(|r| r.gu_id == gu.id).cloned().collect();
                output::write_kpi_csv(&path, &own)?;
                outputs.push(name);
            }
            for ((gu, dir), v) in &summary.per_gu {
                println!("{gu} {} {:.3} Mbps", dir.as_str(), v / 1e6);
            }
            finish(&o.out, "run", sim.config, outputs, Value::Null)
        }
        Command::Rem {
            common,
            output: o,
            time,
            z,
            resolution,
            realized,
        } => {
            let loaded = load(&common)?;
            let rem = &loaded.config.rem;
            let t = time.or(loaded.param("time")).unwrap_or(rem.time);
            let z = z.or(loaded.param("z")).unwrap_or(rem.z);
            let resolution = resolution.or(loaded.param("resolution")).unwrap_or(rem.resolution);
            let mode = if realized {
                GainMode::Realized
            } else {
                loaded.param("mode").unwrap_or(rem.mode)
            };
            if resolution.is_nan() || resolution <= 0.0 {
                return Err(Error::InvalidRange(format!("resolution {resolution} must be positive")));
            }
            let sim = Simulator::new(loaded.config)?;
            let grid = generate_rem(&sim, t, z, resolution, mode)?;
            prepare(&o.out)?;
            output::write_rem_csv(&o.out.join("rem.csv"), &grid)?;
            let (peak, i, j) = grid.peak();
            println!(
                "{}x{} samples, peak {peak:.2} dB at ({}, {})",
                grid.nx,
                grid.ny,
                grid.x(i),
                grid.y(j)
            );
            let parameters = json!({"time": t, "z": z, "resolution": resolution, "mode": mode});
            finish(&o.out, "rem", sim.config, vec!["rem.csv".into()], parameters)
        }
        Command::Montecarlo {
            common,
            output: o,
            samples,
            time,
            gu,
        } => {
            let loaded = load(&common)?;
            let samples = samples.or(loaded.param("samples")).unwrap_or(100_000);
            let t = time.or(loaded.param("time")).unwrap_or(0.0);
            let gu = gu.or(loaded.param("gu"));
            let sim = Simulator::new(loaded.config)?;
            let report = validation::monte_carlo(&sim, gu.as_deref(), t, samples, sim.config.sim.seed)?;
            prepare(&o.out)?;
            output::write_json(&o.out.join("montecarlo.json"), &report)?;
            println!(
                "Omega {:.4e}  mean {:.4e}  K {:.3}  KS {}  outage {:.4} (eps {})",
                report.omega,
                report.empirical_mean,
                report.kappa,
                report.ks_distance.map_or("n/a".into(), |k| format!("{k:.4}")),
                report.empirical_outage,
                report.eps
            );
            let parameters = json!({"samples": samples, "time": t, "gu": report.gu_id});
            finish(
                &o.out,
                "montecarlo",
                sim.config,
                vec!["montecarlo.json".into()],
                parameters,
            )
        }
        Command::Sweep {
            common,
            output: o,
            param,
            values,
        } => {
            let loaded = load(&common)?;
            let param = param
                .or(loaded.param("param"))
                .ok_or_else(|| Error::InvalidRange("sweep needs --param".into()))?;
            let values: Vec<Value> = if values.is_empty() {
                loaded.param("values").unwrap_or_default()
            } else {
                values.iter().map(|v| parse_value(v)).collect()
            };
            let rows = sweep::sweep(&loaded.config, &param, &values)?;
            prepare(&o.out)?;
            output::write_sweep_csv(&o.out.join("sweep.csv"), &rows)?;
            for r in &rows {
                println!(
                    "{}={} {} {} {:.2} dB {:.3} Mbps",
                    r.parameter,
                    r.value,
                    r.gu_id,
                    r.direction,
                    r.mean_sinr_db,
                    r.throughput_bps / 1e6
                );
            }
            let parameters = json!({"param": param, "values": values});
            finish(&o.out, "sweep", loaded.config, vec!["sweep.csv".into()], parameters)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
