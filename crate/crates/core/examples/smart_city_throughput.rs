//! Scenario 3: mean uplink throughput per serving configurator and drone count.
//!
//! cargo run --release --example smart_city_throughput

use irs_sim::config::{Direction, ScenarioConfig};
use irs_sim::engine::Simulator;
use irs_sim::kpi::aggregate_throughput;
use irs_sim::presets::{self, DroneAssignment, Scenario3Policy};

fn mean_mbps(cfg: ScenarioConfig) -> irs_sim::Result<f64> {
    let sim = Simulator::new(cfg)?;
    let summary = aggregate_throughput(&sim.run()?, sim.config.sim.duration);
    Ok(summary.overall[&Direction::Uplink] / 1e6)
}

fn main() -> irs_sim::Result<()> {
    let baseline = presets::scenario3_baseline();
    println!("below threshold: {:?}", presets::below_threshold_ues(&baseline)?);
    println!("no drones: {:.3} Mbps", mean_mbps(baseline)?);
    for policy in [
        Scenario3Policy::Defined,
        Scenario3Policy::Periodic,
        Scenario3Policy::Random,
    ] {
        for assignment in [DroneAssignment::SameUes, DroneAssignment::DifferentUes] {
            let row: Vec<String> = (1..=4)
                .map(|k| {
                    let drones = if k == 1 {
                        &presets::SCENARIO3_ONE_DRONE[..]
                    } else {
                        &presets::SCENARIO3_FOUR_DRONES[..k]
                    };
                    presets::scenario3(drones, policy, assignment)
                        .and_then(mean_mbps)
                        .map(|v| format!("{v:.3}"))
                })
                .collect::<irs_sim::Result<_>>()?;
            println!("{policy:?}/{assignment:?}: {} Mbps for 1..4 drones", row.join(" "));
        }
    }
    Ok(())
}
