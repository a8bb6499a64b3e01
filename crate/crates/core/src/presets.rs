//! Builders for the three reference scenarios. The JSON files under
//! `scenarios/` are serialized from these.

use std::f64::consts::PI;

use crate::config::{
    BuildingConfig, ChannelConfig, ConfigurationConfig, Direction, DroneConfig, GainMode, IrsConfig, NodeConfig,
    PatchConfig, PatchConfiguratorConfig, RateConfig, RemConfig, Role, ScenarioConfig, ServingConfiguratorConfig,
    SimConfig, SlotConfig, WorldConfig,
};
use crate::engine::Simulator;
use crate::error::{Error, Result};
use crate::geometry::{Axis, Vec3};
use crate::mobility::MobilityModel;

/// Time the scenario-2 drone spends on each third of its orbit.
pub const SCENARIO2_ARC_S: f64 = 10.0 * PI;

pub fn node(id: &str, role: Role, position: Vec3) -> NodeConfig {
    NodeConfig {
        id: id.to_string(),
        role,
        position,
        tx_power: None,
        mobility: None,
    }
}

fn ids(bs: &str, gu: &str) -> [String; 2] {
    [bs.to_string(), gu.to_string()]
}

pub fn defined(slots: &[(&str, &str, f64)]) -> ServingConfiguratorConfig {
    ServingConfiguratorConfig::DefinedServingConfigurator {
        slots: slots
            .iter()
            .map(|&(bs, gu, duration)| SlotConfig {
                nodes: ids(bs, gu),
                duration,
            })
            .collect(),
    }
}

pub fn periodic(pairs: &[(&str, &str)], interval: f64) -> ServingConfiguratorConfig {
    ServingConfiguratorConfig::PeriodicServingConfigurator {
        pairs: pairs.iter().map(|&(b, g)| ids(b, g)).collect(),
        interval,
    }
}

pub fn random(pairs: &[(&str, &str)], interval: f64) -> ServingConfiguratorConfig {
    ServingConfiguratorConfig::RandomServingConfigurator {
        pairs: pairs.iter().map(|&(b, g)| ids(b, g)).collect(),
        interval,
        seed: None,
    }
}

pub fn patch(size: [usize; 4], serving: ServingConfiguratorConfig) -> PatchConfig {
    PatchConfig {
        size,
        serving_configurator: serving,
    }
}

/// Downward-facing surface with the given configurations and periods.
pub fn surface(rows: usize, columns: usize, configurations: Vec<Vec<PatchConfig>>, periods: Vec<f64>) -> IrsConfig {
    IrsConfig {
        rows,
        columns,
        pru_x: 0.01,
        pru_y: 0.01,
        roto_axis: vec![Axis::X],
        roto_angles: vec![180.0],
        patch_configurator: PatchConfiguratorConfig {
            configurations: configurations
                .into_iter()
                .map(|patches| ConfigurationConfig { patches })
                .collect(),
            periods,
        },
    }
}

pub fn hovering(id: &str, position: Vec3, irs: IrsConfig) -> DroneConfig {
    DroneConfig {
        id: id.to_string(),
        mobility: MobilityModel::Static { position },
        irs,
    }
}

fn base(channel: ChannelConfig, nodes: Vec<NodeConfig>, drones: Vec<DroneConfig>, sim: SimConfig) -> ScenarioConfig {
    ScenarioConfig {
        world: WorldConfig::default(),
        channel,
        nodes,
        drones,
        sim,
        rem: RemConfig::default(),
        rate: RateConfig::default(),
    }
}

/// One eNB, one UE behind a building, and an `n`×`n` surface hovering
/// 50 m above the roof.
pub fn scenario1(n: usize) -> ScenarioConfig {
    let duration = 10.0;
    let mut cfg = base(
        ChannelConfig {
            alpha_loss: 3.0,
            ..ChannelConfig::default()
        },
        vec![
            node("enb", Role::Bs, Vec3::new(100.0, 200.0, 30.0)),
            node("ue", Role::Gu, Vec3::new(300.0, 200.0, 0.0)),
        ],
        vec![hovering(
            "uav",
            Vec3::new(200.0, 200.0, 75.0),
            surface(
                n,
                n,
                vec![vec![patch([0, n - 1, 0, n - 1], defined(&[("enb", "ue", duration)]))]],
                vec![duration],
            ),
        )],
        SimConfig {
            duration,
            ..SimConfig::default()
        },
    );
    cfg.world.buildings.push(BuildingConfig {
        center: Vec3::new(200.0, 200.0, 0.0),
        size: Vec3::new(20.0, 20.0, 25.0),
    });
    cfg
}

/// Three clusters served in turn by a surface on a clockwise orbit around
/// the eNB.
pub fn scenario2() -> ScenarioConfig {
    let arc = SCENARIO2_ARC_S;
    let one = |gu: &str| defined(&[("enb", gu, arc)]);
    let mut nodes = vec![node("enb", Role::Bs, Vec3::new(200.0, 200.0, 30.0))];
    let ues = [
        (50.0, 200.0),
        (260.0, 303.923),
        (290.0, 355.885),
        (282.765, 99.074),
        (303.978, 62.331),
        (267.235, 41.118),
        (246.022, 77.86),
    ];
    for (k, &(x, y)) in ues.iter().enumerate() {
        nodes.push(node(&format!("ue{}", k + 1), Role::Gu, Vec3::new(x, y, 0.0)));
    }
    let irs = surface(
        100,
        100,
        vec![
            vec![patch([0, 99, 0, 99], one("ue1"))],
            vec![patch([0, 49, 0, 99], one("ue2")), patch([50, 99, 0, 99], one("ue3"))],
            vec![
                patch([0, 49, 0, 49], one("ue4")),
                patch([50, 99, 0, 49], one("ue5")),
                patch([0, 49, 50, 99], one("ue6")),
                patch([50, 99, 50, 99], one("ue7")),
            ],
        ],
        vec![arc; 3],
    );
    let drone = DroneConfig {
        id: "uav".into(),
        mobility: MobilityModel::Circular {
            center: Vec3::new(200.0, 200.0, 50.0),
            radius: 150.0,
            speed: 10.0,
            start_angle_deg: 240.0,
            direction: -1.0,
        },
        irs,
    };
    base(
        ChannelConfig {
            alpha_loss: 4.0,
            ..ChannelConfig::default()
        },
        nodes,
        vec![drone],
        SimConfig {
            duration: 3.0 * arc,
            ..SimConfig::default()
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario3Policy {
    Defined,
    Periodic,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DroneAssignment {
    /// Every drone serves the same UE in each slot.
    SameUes,
    /// Drones serve distinct UEs in each slot.
    DifferentUes,
}

pub const SCENARIO3_SLOT_S: f64 = 3.0;
pub const SCENARIO3_DURATION_S: f64 = 75.0;
pub const SCENARIO3_GRID: [f64; 5] = [40.0, 120.0, 200.0, 280.0, 360.0];
pub const SCENARIO3_ONE_DRONE: [Vec3; 1] = [Vec3::new(200.0, 200.0, 50.0)];
pub const SCENARIO3_FOUR_DRONES: [Vec3; 4] = [
    Vec3::new(100.0, 200.0, 50.0),
    Vec3::new(200.0, 300.0, 50.0),
    Vec3::new(300.0, 200.0, 50.0),
    Vec3::new(200.0, 100.0, 50.0),
];

/// Smart city without drones: a 4×4 block grid, 25 UEs on the streets and
/// an eNB 30 m up on the bottom-left roof.
pub fn scenario3_baseline() -> ScenarioConfig {
    let heights = [
        [20.0, 35.0, 25.0, 30.0],
        [30.0, 40.0, 22.0, 35.0],
        [25.0, 38.0, 45.0, 20.0],
        [35.0, 24.0, 30.0, 40.0],
    ];
    let blocks = [80.0, 160.0, 240.0, 320.0];
    let mut nodes = vec![node("enb", Role::Bs, Vec3::new(80.0, 80.0, 30.0))];
    for (r, &y) in SCENARIO3_GRID.iter().enumerate() {
        for (c, &x) in SCENARIO3_GRID.iter().enumerate() {
            nodes.push(node(&format!("ue{:02}", r * 5 + c), Role::Gu, Vec3::new(x, y, 0.0)));
        }
    }
    let mut cfg = base(
        ChannelConfig {
            alpha_loss: 4.0,
            ..ChannelConfig::default()
        },
        nodes,
        Vec::new(),
        SimConfig {
            duration: SCENARIO3_DURATION_S,
            directions: vec![Direction::Uplink],
            ..SimConfig::default()
        },
    );
    for (r, &y) in blocks.iter().enumerate() {
        for (c, &x) in blocks.iter().enumerate() {
            cfg.world.buildings.push(BuildingConfig {
                center: Vec3::new(x, y, 0.0),
                size: Vec3::new(40.0, 40.0, heights[r][c]),
            });
        }
    }
    cfg
}

/// UEs whose uplink rate is zero with the direct link alone.
pub fn below_threshold_ues(cfg: &ScenarioConfig) -> Result<Vec<String>> {
    let mut bare = cfg.clone();
    bare.drones.clear();
    bare.sim.mode = GainMode::Bound;
    let sim = Simulator::new(bare)?;
    let state = sim.step(0.0)?;
    let mut out = Vec::new();
    for gu in &state.gus {
        if sim
            .evaluate_gu(&state, &gu.id, Direction::Uplink, GainMode::Bound)?
            .rate_bps
            == 0.0
        {
            out.push(gu.id.clone());
        }
    }
    Ok(out)
}

/// `list` rotated by `offset`, repeated until it covers `horizon` in slots
/// of `slot`.
fn defined_cycle(bs: &str, list: &[String], offset: usize, slot: f64, horizon: f64) -> ServingConfiguratorConfig {
    let count = (horizon / slot).ceil().max(1.0) as usize;
    let slots: Vec<(&str, &str, f64)> = (0..count)
        .map(|k| (bs, list[(k + offset) % list.len()].as_str(), slot))
        .collect();
    defined(&slots)
}

/// Scenario 3 with drones at `positions`, serving per `policy`.
pub fn scenario3(positions: &[Vec3], policy: Scenario3Policy, assignment: DroneAssignment) -> Result<ScenarioConfig> {
    let mut cfg = scenario3_baseline();
    let all: Vec<String> = cfg.ground_users().map(|n| n.id.clone()).collect();
    let targets = match policy {
        Scenario3Policy::Defined => below_threshold_ues(&cfg)?,
        _ => all,
    };
    if targets.is_empty() {
        return Err(Error::InvalidRange("no UEs to serve".into()));
    }
    let n_drones = positions.len();
    for (k, &position) in positions.iter().enumerate() {
        let offset = match assignment {
            DroneAssignment::SameUes => 0,
            DroneAssignment::DifferentUes => k * targets.len() / n_drones.max(1),
        };
        let pairs: Vec<(&str, &str)> = targets
            .iter()
            .cycle()
            .skip(offset)
            .take(targets.len())
            .map(|g| ("enb", g.as_str()))
            .collect();
        let serving = match policy {
            Scenario3Policy::Defined => defined_cycle("enb", &targets, offset, SCENARIO3_SLOT_S, SCENARIO3_DURATION_S),
            Scenario3Policy::Periodic => periodic(&pairs, SCENARIO3_SLOT_S),
            Scenario3Policy::Random => random(&pairs, SCENARIO3_SLOT_S),
        };
        let irs = surface(
            100,
            100,
            vec![vec![patch([0, 99, 0, 99], serving)]],
            vec![SCENARIO3_DURATION_S],
        );
        cfg.drones.push(hovering(&format!("uav{k}"), position, irs));
    }
    Ok(cfg)
}

/// The scenario files shipped under `scenarios/`, by file name.
pub fn shipped() -> Result<Vec<(&'static str, ScenarioConfig)>> {
    use DroneAssignment::DifferentUes;
    use Scenario3Policy::*;
    Ok(vec![
        ("scenario1.json", scenario1(100)),
        ("scenario2.json", scenario2()),
        ("scenario3_baseline.json", scenario3_baseline()),
        (
            "scenario3_defined_1uav.json",
            scenario3(&SCENARIO3_ONE_DRONE, Defined, DifferentUes)?,
        ),
        (
            "scenario3_defined_4uav.json",
            scenario3(&SCENARIO3_FOUR_DRONES, Defined, DifferentUes)?,
        ),
        (
            "scenario3_periodic_1uav.json",
            scenario3(&SCENARIO3_ONE_DRONE, Periodic, DifferentUes)?,
        ),
        (
            "scenario3_random_1uav.json",
            scenario3(&SCENARIO3_ONE_DRONE, Random, DifferentUes)?,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for n in [20, 100, 400] {
            scenario1(n).validate().unwrap();
        }
        scenario2().validate().unwrap();
        scenario3_baseline().validate().unwrap();
        for policy in [
            Scenario3Policy::Defined,
            Scenario3Policy::Periodic,
            Scenario3Policy::Random,
        ] {
            for assignment in [DroneAssignment::SameUes, DroneAssignment::DifferentUes] {
                scenario3(&SCENARIO3_FOUR_DRONES, policy, assignment)
                    .unwrap()
                    .validate()
                    .unwrap();
            }
        }
    }

    #[test]
    fn scenario3_has_users_below_threshold() {
        let below = below_threshold_ues(&scenario3_baseline()).unwrap();
        assert!(below.len() >= 4 && below.len() < 25, "{below:?}");
    }

    #[test]
    fn scenario1_building_blocks_direct_link() {
        let sim = Simulator::new(scenario1(100)).unwrap();
        let s = sim.step(0.0).unwrap();
        assert!(!s.gus[0].direct_los);
    }
}
