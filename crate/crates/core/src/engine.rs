//! Time-stepped simulation: mobility, patch schedules, serving assignments
//! and per-user link evaluation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::exact::ExactChannel;
use crate::channel::{linear_to_db, ChannelParams, LinkSnapshot, OutageModel, Reflector};
use crate::config::{Direction, GainMode, Role, ScenarioConfig};
use crate::error::{Error, Result};
use crate::geometry::{los_blocked, BuildingBox, SurfaceFrame, Vec3};
use crate::irs::{configuration_at, optimal_phases, IrsSpec, PatchConfiguration};
use crate::kpi::rate::RateMapper;
use crate::serving::{assignments_at, PatchAssignment, ServingPolicy};

/// Thermal noise density in dBm/Hz.
pub const THERMAL_NOISE_DBM_HZ: f64 = -174.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DroneState {
    pub id: String,
    pub position: Vec3,
    pub frame: SurfaceFrame,
    pub configuration_index: usize,
    pub assignments: Vec<PatchAssignment>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GuState {
    pub id: String,
    pub position: Vec3,
    pub tx_power_dbm: f64,
    /// Unobstructed BS–GU segment.
    pub direct_los: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotState {
    pub t: f64,
    /// Step counter used to derive fading seeds.
    pub step_index: u64,
    pub bs_id: String,
    pub bs_position: Vec3,
    pub bs_tx_power_dbm: f64,
    pub drones: Vec<DroneState>,
    pub gus: Vec<GuState>,
}

impl SnapshotState {
    pub fn gu(&self, id: &str) -> Result<(usize, &GuState)> {
        self.gus
            .iter()
            .enumerate()
            .find(|(_, g)| g.id == id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KpiRecord {
    pub t: f64,
    pub gu_id: String,
    pub direction: Direction,
    pub gain_linear: f64,
    pub sinr_db: f64,
    pub rate_bps: f64,
    pub served: bool,
}

impl KpiRecord {
    pub fn gain_db(&self) -> f64 {
        linear_to_db(self.gain_linear)
    }
}

struct DroneRuntime {
    spec: IrsSpec,
    schedule: Vec<PatchConfiguration>,
    /// Policies per configuration, per patch.
    policies: Vec<Vec<ServingPolicy>>,
}

/// A validated scenario prepared for evaluation.
pub struct Simulator {
    pub config: ScenarioConfig,
    pub params: ChannelParams,
    pub outage: OutageModel,
    pub rate: RateMapper,
    buildings: Vec<BuildingBox>,
    drones: Vec<DroneRuntime>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream identifier for a tuple of counters.
pub fn stream_key(parts: &[u64]) -> u64 {
    parts.iter().fold(0x5EED, |acc, &p| splitmix(acc ^ splitmix(p)))
}

impl Simulator {
    pub fn new(config: ScenarioConfig) -> Result<Self> {
        config.validate()?;
        let params = config.channel.params();
        let outage = params.outage_model()?;
        let rate = RateMapper::from_config(&config.rate);
        let buildings = config.buildings();
        let drones = config
            .drones
            .iter()
            .enumerate()
            .map(|(d, drone)| {
                let pc = &drone.irs.patch_configurator;
                let policies = pc
                    .configurations
                    .iter()
                    .enumerate()
                    .map(|(c, conf)| {
                        conf.patches
                            .iter()
                            .enumerate()
                            .map(|(p, patch)| {
                                let stream = stream_key(&[d as u64, c as u64, p as u64]);
                                patch.serving_configurator.policy(config.sim.seed, stream)
                            })
                            .collect()
                    })
                    .collect();
                DroneRuntime {
                    spec: drone.irs.spec(),
                    schedule: drone.irs.schedule(),
                    policies,
                }
            })
            .collect();
        Ok(Self {
            config,
            params,
            outage,
            rate,
            buildings,
            drones,
        })
    }

    pub fn buildings(&self) -> &[BuildingBox] {
        &self.buildings
    }

    /// Sample instants `0, step, …` up to and including the duration.
    pub fn times(&self) -> Vec<f64> {
        let sim = &self.config.sim;
        let n = (sim.duration / sim.step + 1e-9).floor() as u64;
        (0..=n).map(|k| ((k as f64 * sim.step) * 1e9).round() / 1e9).collect()
    }

    pub fn step(&self, t: f64) -> Result<SnapshotState> {
        let step_index = (t / self.config.sim.step + 1e-9).floor().max(0.0) as u64;
        self.step_indexed(t, step_index)
    }

    fn step_indexed(&self, t: f64, step_index: u64) -> Result<SnapshotState> {
        let cfg = &self.config;
        let bs = cfg.base_station()?;
        let bs_position = bs.position_at(t);
        let position_of = |id: &str| -> Result<Vec3> { Ok(cfg.node(id)?.position_at(t)) };

        let mut drones = Vec::with_capacity(self.drones.len());
        for (rt, drone) in self.drones.iter().zip(&cfg.drones) {
            let position = drone.mobility.position_at(t);
            let frame = SurfaceFrame::new(position, &rt.spec.rotation)?;
            let active = configuration_at(&rt.schedule, t)?;
            let assignments = assignments_at(
                active.configuration,
                &rt.policies[active.index],
                t - active.window_start,
                |pair| {
                    optimal_phases(
                        frame.to_local(position_of(&pair.bs)?),
                        frame.to_local(position_of(&pair.gu)?),
                    )
                },
            )?;
            drones.push(DroneState {
                id: drone.id.clone(),
                position,
                frame,
                configuration_index: active.index,
                assignments,
            });
        }

        let gus = cfg
            .nodes
            .iter()
            .filter(|n| n.role == Role::Gu)
            .map(|n| {
                let position = n.position_at(t);
                GuState {
                    id: n.id.clone(),
                    position,
                    tx_power_dbm: n.tx_power_dbm(),
                    direct_los: !los_blocked(bs_position, position, &self.buildings),
                }
            })
            .collect();

        Ok(SnapshotState {
            t,
            step_index,
            bs_id: bs.id.clone(),
            bs_position,
            bs_tx_power_dbm: bs.tx_power_dbm(),
            drones,
            gus,
        })
    }

    /// Link from the BS to a receiver at `rx`, through every patch assigned
    /// to `serving` (or every active patch when `None`).
    pub fn link_snapshot(&self, state: &SnapshotState, rx: Vec3, serving: Option<&str>) -> LinkSnapshot {
        let bs = state.bs_position;
        let mut reflectors = Vec::new();
        for (drone, rt) in state.drones.iter().zip(&self.drones) {
            let los_bu = !los_blocked(bs, drone.position, &self.buildings);
            let los_ug = !los_blocked(drone.position, rx, &self.buildings);
            for a in &drone.assignments {
                if serving.is_some_and(|id| id != a.pair.gu) {
                    continue;
                }
                reflectors.push(Reflector {
                    frame: drone.frame,
                    rows: rt.spec.rows,
                    columns: rt.spec.columns,
                    pru: rt.spec.pru_side(),
                    patch: a.patch,
                    phases: a.phases,
                    los_bu,
                    los_ug,
                });
            }
        }
        LinkSnapshot {
            bs,
            gu: rx,
            direct_los: !los_blocked(bs, rx, &self.buildings),
            reflectors,
        }
    }

    /// Power gain of a link: the outage bound, or one fading draw keyed by
    /// `stream`. Zero when every contribution is suppressed.
    pub fn link_gain(&self, snapshot: &LinkSnapshot, mode: GainMode, stream: u64) -> Result<f64> {
        let stats = match snapshot.evaluate(&self.params) {
            Ok(e) => e.stats,
            Err(Error::AllLinksSuppressed) => return Ok(0.0),
            Err(e) => return Err(e),
        };
        match mode {
            GainMode::Bound => Ok(self.outage.gain(&stats).gamma_eps),
            GainMode::Realized => {
                let model = ExactChannel::new(snapshot, &self.params)?;
                let mut rng = ChaCha8Rng::seed_from_u64(self.config.sim.seed);
                rng.set_stream(stream);
                Ok(model.sample(&mut rng).norm_sqr())
            }
        }
    }

    pub fn noise_dbm(&self, direction: Direction) -> f64 {
        let ch = &self.config.channel;
        let nf = match direction {
            Direction::Downlink => ch.ue_noise_figure,
            Direction::Uplink => ch.enb_noise_figure,
        };
        THERMAL_NOISE_DBM_HZ + 10.0 * ch.bandwidth.log10() + nf
    }

    pub fn sinr_db(&self, tx_power_dbm: f64, gain: f64, direction: Direction) -> f64 {
        if gain <= 0.0 {
            return f64::NEG_INFINITY;
        }
        tx_power_dbm + linear_to_db(gain) - self.noise_dbm(direction)
    }

    pub fn evaluate_gu(
        &self,
        state: &SnapshotState,
        gu_id: &str,
        direction: Direction,
        mode: GainMode,
    ) -> Result<KpiRecord> {
        let (index, gu) = state.gu(gu_id)?;
        let snapshot = self.link_snapshot(state, gu.position, Some(gu_id));
        let served = !self.params.no_irs_link && !snapshot.reflectors.is_empty();
        let dir_bit = matches!(direction, Direction::Uplink) as u64;
        let gain = self.link_gain(&snapshot, mode, stream_key(&[state.step_index, index as u64, dir_bit]))?;
        let tx = match direction {
            Direction::Downlink => state.bs_tx_power_dbm,
            Direction::Uplink => gu.tx_power_dbm,
        };
        let sinr_db = self.sinr_db(tx, gain, direction);
        Ok(KpiRecord {
            t: state.t,
            gu_id: gu.id.clone(),
            direction,
            gain_linear: gain,
            sinr_db,
            rate_bps: self.rate.rate(sinr_db, self.config.channel.bandwidth),
            served,
        })
    }

    /// All records for one instant, GUs in config order, directions in
    /// config order.
    pub fn evaluate_step(&self, state: &SnapshotState) -> Result<Vec<KpiRecord>> {
        let dirs = &self.config.sim.directions;
        let jobs: Vec<(&str, Direction)> = state
            .gus
            .iter()
            .flat_map(|g| dirs.iter().map(move |&d| (g.id.as_str(), d)))
            .collect();
        jobs.par_iter()
            .map(|&(id, d)| self.evaluate_gu(state, id, d, self.config.sim.mode))
            .collect()
    }

    pub fn run(&self) -> Result<Vec<KpiRecord>> {
        let mut records = Vec::new();
        for (k, t) in self.times().into_iter().enumerate() {
            let state = self.step_indexed(t, k as u64)?;
            records.extend(self.evaluate_step(&state)?);
        }
        Ok(records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::rician::Rician;
    use crate::channel::RicianStats;
    use crate::config::parse;
    use crate::presets;

    #[test]
    fn initial_state() {
        let sim = Simulator::new(presets::scenario2()).unwrap();
        let s = sim.step(0.0).unwrap();
        assert_eq!(s.drones[0].configuration_index, 0);
        assert_eq!(s.drones[0].assignments.len(), 1);
        let p = s.drones[0].position;
        assert!((p.x - 125.0).abs() < 1e-9 && (p.y - (200.0 - 150.0 * 3f64.sqrt() / 2.0)).abs() < 1e-9);
    }

    #[test]
    fn scenario2_switches_configuration() {
        let sim = Simulator::new(presets::scenario2()).unwrap();
        assert_eq!(sim.step(31.4).unwrap().drones[0].configuration_index, 0);
        let s = sim.step(31.5).unwrap();
        assert_eq!(s.drones[0].configuration_index, 1);
        assert_eq!(s.drones[0].assignments.len(), 2);
        assert_eq!(sim.step(500.0).unwrap().drones[0].configuration_index, 2);
    }

    #[test]
    fn unserved_without_direct_link_is_zero() {
        let mut cfg = presets::scenario2();
        cfg.channel.no_direct_link = true;
        let sim = Simulator::new(cfg).unwrap();
        let s = sim.step(0.0).unwrap();
        let r = sim.evaluate_gu(&s, "ue2", Direction::Uplink, GainMode::Bound).unwrap();
        assert!(!r.served);
        assert_eq!(r.rate_bps, 0.0);
        assert_eq!(r.sinr_db, f64::NEG_INFINITY);
        let r = sim.evaluate_gu(&s, "ue1", Direction::Uplink, GainMode::Bound).unwrap();
        assert!(r.served && r.rate_bps > 0.0);
        assert!(matches!(
            sim.evaluate_gu(&s, "nobody", Direction::Uplink, GainMode::Bound),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn direct_only_matches_hand_link_budget() {
        let cfg = parse(
            r#"{"nodes": [
                {"id": "enb", "role": "BS", "position": [0, 0, 30]},
                {"id": "ue", "role": "GU", "position": [400, 0, 0]}],
                "channel": {"KMin": 6, "KMax": 6, "OutageProbability": 0.5}}"#,
        )
        .unwrap();
        let sim = Simulator::new(cfg).unwrap();
        let s = sim.step(0.0).unwrap();
        let r = sim.evaluate_gu(&s, "ue", Direction::Downlink, GainMode::Bound).unwrap();
        // hand budget: free-space β at 2.12 GHz, d^-3, κ = 6 dB
        let c = 299_792_458.0;
        let f = 2.12e9;
        let d = (400.0f64 * 400.0 + 900.0).sqrt();
        let beta = (c / (4.0 * std::f64::consts::PI * f)).powi(2);
        let omega = beta * d.powi(-3);
        let kappa = 10f64.powf(0.6);
        let zeta = sim.outage.zeta(kappa);
        let gain = zeta * zeta * omega / (2.0 * (kappa + 1.0));
        let noise = -174.0 + 10.0 * 5e6f64.log10() + 9.0;
        let expected = 49.0 + 10.0 * gain.log10() - noise;
        assert!((r.sinr_db - expected).abs() < 1e-9, "{} vs {expected}", r.sinr_db);
        // ε = 0.5: the bound sits at the Rician median power
        let law = Rician::from_stats(&RicianStats::from_parts(
            omega * kappa / (kappa + 1.0),
            omega / (kappa + 1.0),
        ));
        let (mut lo, mut hi) = (0.0, 3.0 * omega.sqrt());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if law.cdf(mid) < 0.5 {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!((r.gain_linear / (lo * lo) - 1.0).abs() < 0.01);
        assert!(!r.served);
    }

    #[test]
    fn other_users_do_not_change_bound_gain() {
        let base = presets::scenario2();
        let sim = Simulator::new(base.clone()).unwrap();
        let g = |sim: &Simulator| {
            let s = sim.step(40.0).unwrap();
            sim.evaluate_gu(&s, "ue2", Direction::Downlink, GainMode::Bound)
                .unwrap()
                .gain_linear
        };
        let before = g(&sim);
        let mut moved = base;
        let n = moved.nodes.iter_mut().find(|n| n.id == "ue1").unwrap();
        n.position = Vec3::new(10.0, 390.0, 0.0);
        assert_eq!(before, g(&Simulator::new(moved).unwrap()));
    }

    #[test]
    fn times_cover_duration() {
        let mut cfg = presets::scenario1(100);
        cfg.sim.duration = 0.0;
        assert_eq!(Simulator::new(cfg.clone()).unwrap().times(), vec![0.0]);
        cfg.sim.duration = 1.0;
        let t = Simulator::new(cfg).unwrap().times();
        assert_eq!(t.len(), 11);
        assert_eq!(t[3], 0.3);
        assert_eq!(t[10], 1.0);
    }
}
