//! Closed-form link statistics for the Scenario 1 geometry as the surface grows.
//!
//! cargo run --release --example link_budget

use irs_sim::config::{Direction, GainMode};
use irs_sim::engine::Simulator;
use irs_sim::presets;

fn main() -> irs_sim::Result<()> {
    println!(
        "{:>5} {:>12} {:>12} {:>9} {:>10} {:>10}",
        "N", "nu^2", "2sigma^2", "K", "SINR_dl", "SINR_ul"
    );
    for n in [10, 20, 50, 100, 200, 400] {
        let sim = Simulator::new(presets::scenario1(n))?;
        let state = sim.step(0.0)?;
        let gu = state.gu("ue")?.1.position;
        let stats = sim.link_snapshot(&state, gu, Some("ue")).evaluate(&sim.params)?.stats;
        let dl = sim.evaluate_gu(&state, "ue", Direction::Downlink, GainMode::Bound)?;
        let ul = sim.evaluate_gu(&state, "ue", Direction::Uplink, GainMode::Bound)?;
        println!(
            "{:>5} {:>12.4e} {:>12.4e} {:>9.2} {:>10.2} {:>10.2}",
            n, stats.nu_sq, stats.two_sigma_sq, stats.kappa, dl.sinr_db, ul.sinr_db
        );
    }
    Ok(())
}
