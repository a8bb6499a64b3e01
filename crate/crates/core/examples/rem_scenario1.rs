//! Ground-level REMs of Scenario 1 for three surface sizes, written as CSV.
//!
//! cargo run --release --example rem_scenario1 -- [out_dir]

use std::path::PathBuf;

use irs_sim::config::GainMode;
use irs_sim::engine::Simulator;
use irs_sim::kpi::{generate_rem, output};
use irs_sim::presets;

fn main() -> irs_sim::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out/rem_scenario1".into()));
    std::fs::create_dir_all(&out).map_err(|e| irs_sim::Error::Io {
        path: out.clone(),
        message: e.to_string(),
    })?;
    for n in [20, 40, 80] {
        let mut cfg = presets::scenario1(n);
        cfg.channel.no_direct_link = true;
        let sim = Simulator::new(cfg)?;
        let grid = generate_rem(&sim, 0.0, 0.0, 1.0, GainMode::Bound)?;
        let path = out.join(format!("rem_n{n}.csv"));
        output::write_rem_csv(&path, &grid)?;
        let (peak, i, j) = grid.peak();
        println!(
            "N={n:>3}: peak {peak:.2} dB at ({}, {}) -> {}",
            grid.x(i),
            grid.y(j),
            path.display()
        );
    }
    Ok(())
}
