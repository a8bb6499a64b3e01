use std::path::{Path, PathBuf};

use irs_sim::config::{Direction, ScenarioConfig};
use irs_sim::engine::Simulator;
use irs_sim::kpi::aggregate_throughput;
use irs_sim::presets::{self, DroneAssignment, Scenario3Policy};

fn dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

#[test]
fn shipped_files_match_presets() {
    for (name, preset) in presets::shipped().unwrap() {
        let loaded = ScenarioConfig::load(&dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(loaded, preset, "{name} is stale; rerun the export_scenarios example");
    }
}

#[test]
fn scenario2_switches_every_arc() {
    let sim = Simulator::new(presets::scenario2()).unwrap();
    let arc = presets::SCENARIO2_ARC_S;
    let index = |t: f64| sim.step(t).unwrap().drones[0].configuration_index;
    assert_eq!(index(arc - 1e-9), 0);
    assert_eq!(index(arc), 1);
    assert_eq!(index(2.0 * arc), 2);
    let served: Vec<_> = sim.step(2.0 * arc + 1.0).unwrap().drones[0]
        .assignments
        .iter()
        .map(|a| a.pair.gu.clone())
        .collect();
    assert_eq!(served, ["ue4", "ue5", "ue6", "ue7"]);
}

#[test]
fn scenario2_traces_cover_every_step() {
    let sim = Simulator::new(presets::scenario2()).unwrap();
    let records = sim.run().unwrap();
    let steps = sim.times().len();
    assert_eq!(records.len(), steps * 7 * 2);
    let ue1_first_arc = records
        .iter()
        .filter(|r| r.gu_id == "ue1" && r.direction == Direction::Downlink && r.t < presets::SCENARIO2_ARC_S)
        .all(|r| r.served);
    assert!(ue1_first_arc);
}

fn below_threshold_mean(cfg: ScenarioConfig, below: &[String]) -> f64 {
    let sim = Simulator::new(cfg).unwrap();
    let summary = aggregate_throughput(&sim.run().unwrap(), sim.config.sim.duration);
    below
        .iter()
        .map(|ue| summary.per_gu[&(ue.clone(), Direction::Uplink)])
        .sum::<f64>()
        / below.len() as f64
}

#[test]
fn defined_beats_periodic_on_struggling_ues() {
    let below = presets::below_threshold_ues(&presets::scenario3_baseline()).unwrap();
    let build = |p| presets::scenario3(&presets::SCENARIO3_ONE_DRONE, p, DroneAssignment::DifferentUes).unwrap();
    let defined = below_threshold_mean(build(Scenario3Policy::Defined), &below);
    let periodic = below_threshold_mean(build(Scenario3Policy::Periodic), &below);
    let random = below_threshold_mean(build(Scenario3Policy::Random), &below);
    let baseline = below_threshold_mean(presets::scenario3_baseline(), &below);
    assert_eq!(baseline, 0.0);
    assert!(defined >= periodic, "{defined} vs {periodic}");
    assert!(periodic > baseline && random > baseline);
}

#[test]
fn more_drones_serving_the_same_ues_never_hurt() {
    let run = |k: usize| {
        let cfg = presets::scenario3(
            &presets::SCENARIO3_FOUR_DRONES[..k],
            Scenario3Policy::Defined,
            DroneAssignment::SameUes,
        )
        .unwrap();
        let sim = Simulator::new(cfg).unwrap();
        aggregate_throughput(&sim.run().unwrap(), sim.config.sim.duration).overall[&Direction::Uplink]
    };
    let by_count: Vec<f64> = (1..=4).map(run).collect();
    assert!(by_count.windows(2).all(|w| w[1] >= w[0]), "{by_count:?}");
}

#[test]
fn full_resolution_rem() {
    let sim = Simulator::new(presets::scenario1(100)).unwrap();
    let grid = irs_sim::kpi::generate_rem(&sim, 0.0, 0.0, 16.0, irs_sim::config::GainMode::Bound).unwrap();
    assert_eq!((grid.nx, grid.ny), (1600, 1600));
    assert_eq!(grid.values.len(), 1600 * 1600);
    assert!(grid.values.iter().all(|v| v.is_finite()));
}
