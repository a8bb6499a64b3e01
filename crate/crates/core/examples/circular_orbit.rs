//! Downlink SINR of every Scenario 2 UE along the orbit.
//!
//! cargo run --release --example circular_orbit

use std::collections::BTreeMap;

use irs_sim::config::Direction;
use irs_sim::engine::Simulator;
use irs_sim::presets;

fn main() -> irs_sim::Result<()> {
    let sim = Simulator::new(presets::scenario2())?;
    let records = sim.run()?;
    let mut peaks: BTreeMap<&str, (f64, f64)> = BTreeMap::new();
    for r in records.iter().filter(|r| r.direction == Direction::Downlink) {
        let e = peaks.entry(&r.gu_id).or_insert((f64::NEG_INFINITY, 0.0));
        if r.sinr_db > e.0 {
            *e = (r.sinr_db, r.t);
        }
    }
    for (ue, (sinr, t)) in peaks {
        let p = sim.step(t)?.drones[0].position;
        println!(
            "{ue}: peak {sinr:.2} dB at t={t:.1} s, drone at ({:.1}, {:.1})",
            p.x, p.y
        );
    }
    Ok(())
}
