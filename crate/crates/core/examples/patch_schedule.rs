//! Walk the Scenario 2 patch schedule and print who each patch serves.
//!
//! cargo run --example patch_schedule

use irs_sim::engine::Simulator;
use irs_sim::presets;

fn main() -> irs_sim::Result<()> {
    let sim = Simulator::new(presets::scenario2())?;
    let arc = presets::SCENARIO2_ARC_S;
    for t in [0.0, arc - 0.05, arc, 1.5 * arc, 2.0 * arc, 2.9 * arc] {
        let state = sim.step(t)?;
        let drone = &state.drones[0];
        let served: Vec<String> = drone
            .assignments
            .iter()
            .map(|a| format!("{:?}->{}", a.patch.size(), a.pair.gu))
            .collect();
        println!("t={t:7.3} cfg={} {}", drone.configuration_index, served.join(" "));
    }
    Ok(())
}
