//! Declarative JSON scenario: schema, defaults, validation and overrides.
//!
//! Structural keys are camelCase. Surface and channel attributes keep the
//! PascalCase attribute names of the reference simulator (`Rows`, `PruX`,
//! `RotoAxis`, `KMin`, `OutageProbability`, ...). Every omitted field is
//! filled with its default so that a serialized config is complete.

use std::collections::{HashMap, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::channel::{db_to_linear, free_space_reference_gain, ChannelParams, MultipathMode};
use crate::error::{ConfigError, Error, Result};
use crate::geometry::{Axis, BuildingBox, RotationSequence, Vec3};
use crate::irs::{validate_layout, IrsSpec, PatchConfiguration, PatchSpec};
use crate::mobility::MobilityModel;
use crate::serving::{ServingPair, ServingPolicy};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ScenarioConfig {
    #[serde(default)]
    pub world: WorldConfig,
    #[serde(default)]
    pub channel: ChannelConfig,
    pub nodes: Vec<NodeConfig>,
    #[serde(default)]
    pub drones: Vec<DroneConfig>,
    #[serde(default)]
    pub sim: SimConfig,
    #[serde(default)]
    pub rem: RemConfig,
    #[serde(default)]
    pub rate: RateConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct WorldConfig {
    pub area: [f64; 2],
    #[serde(default)]
    pub buildings: Vec<BuildingConfig>,
}

impl Default for WorldConfig {
    fn default() -> Self {
        Self {
            area: [400.0, 400.0],
            buildings: Vec::new(),
        }
    }
}

/// Building given by its footprint center and extent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildingConfig {
    pub center: Vec3,
    pub size: Vec3,
}

impl BuildingConfig {
    pub fn to_box(&self) -> BuildingBox {
        BuildingBox::from_footprint_center(self.center, self.size)
    }
}

/// Channel attributes. Gains, K-factors and noise figures are in dB.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "PascalCase", default)]
pub struct ChannelConfig {
    pub carrier_frequency: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub k_nlos: f64,
    pub alpha_loss: f64,
    pub outage_probability: f64,
    pub no_direct_link: bool,
    pub no_irs_link: bool,
    pub multipath_interference: MultipathMode,
    pub bandwidth: f64,
    pub ue_noise_figure: f64,
    pub enb_noise_figure: f64,
    pub element_pattern_exponent: f64,
    /// Power gains at 1 m in dB; free space at the carrier when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_bg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_bu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_ug: Option<f64>,
    pub pattern_bg: f64,
    pub pattern_bug: f64,
}

impl Default for ChannelConfig {
    fn default() -> Self {
        Self {
            carrier_frequency: 2.12e9,
            k_min: 6.0,
            k_max: 10.0,
            k_nlos: 0.0,
            alpha_loss: 3.0,
            outage_probability: 0.01,
            no_direct_link: false,
            no_irs_link: false,
            multipath_interference: MultipathMode::Simulated,
            bandwidth: 5e6,
            ue_noise_figure: 9.0,
            enb_noise_figure: 5.0,
            element_pattern_exponent: 0.0,
            beta_bg: None,
            beta_bu: None,
            beta_ug: None,
            pattern_bg: 0.0,
            pattern_bug: 0.0,
        }
    }
}

impl ChannelConfig {
    /// Linear-scale parameters for the channel math.
    pub fn params(&self) -> ChannelParams {
        let fs = free_space_reference_gain(self.carrier_frequency);
        let beta = |db: Option<f64>| db.map_or(fs, db_to_linear);
        ChannelParams {
            k_min: db_to_linear(self.k_min),
            k_max: db_to_linear(self.k_max),
            k_nlos: db_to_linear(self.k_nlos),
            alpha_direct: self.alpha_loss,
            outage_eps: self.outage_probability,
            carrier_hz: self.carrier_frequency,
            no_direct_link: self.no_direct_link,
            no_irs_link: self.no_irs_link,
            multipath_mode: self.multipath_interference,
            beta_bg: beta(self.beta_bg),
            beta_bu: beta(self.beta_bu),
            beta_ug: beta(self.beta_ug),
            pattern_bg: db_to_linear(self.pattern_bg),
            pattern_bug: db_to_linear(self.pattern_bug),
            element_pattern_exponent: self.element_pattern_exponent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "BS")]
    Bs,
    #[serde(rename = "GU")]
    Gu,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct NodeConfig {
    pub id: String,
    pub role: Role,
    pub position: Vec3,
    /// dBm; 49 for a BS and 24 for a GU when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tx_power: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mobility: Option<MobilityModel>,
}

impl NodeConfig {
    pub fn tx_power_dbm(&self) -> f64 {
        self.tx_power.unwrap_or(match self.role {
            Role::Bs => 49.0,
            Role::Gu => 24.0,
        })
    }

    pub fn position_at(&self, t: f64) -> Vec3 {
        self.mobility.as_ref().map_or(self.position, |m| m.position_at(t))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct DroneConfig {
    pub id: String,
    pub mobility: MobilityModel,
    pub irs: IrsConfig,
}

fn default_pru() -> f64 {
    0.01
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "PascalCase")]
pub struct IrsConfig {
    pub rows: usize,
    pub columns: usize,
    #[serde(default = "default_pru")]
    pub pru_x: f64,
    #[serde(default = "default_pru")]
    pub pru_y: f64,
    #[serde(default)]
    pub roto_axis: Vec<Axis>,
    #[serde(default)]
    pub roto_angles: Vec<f64>,
    pub patch_configurator: PatchConfiguratorConfig,
}

impl IrsConfig {
    pub fn spec(&self) -> IrsSpec {
        IrsSpec {
            rows: self.rows,
            columns: self.columns,
            pru_x: self.pru_x,
            pru_y: self.pru_y,
            rotation: RotationSequence::new(self.roto_axis.clone(), self.roto_angles.clone()),
        }
    }

    /// Patch layouts paired with their periods.
    pub fn schedule(&self) -> Vec<PatchConfiguration> {
        let pc = &self.patch_configurator;
        pc.configurations
            .iter()
            .zip(&pc.periods)
            .map(|(c, &period_s)| PatchConfiguration {
                patches: c.patches.iter().map(|p| PatchSpec::from_size(p.size)).collect(),
                period_s,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "PascalCase")]
pub struct PatchConfiguratorConfig {
    pub configurations: Vec<ConfigurationConfig>,
    pub periods: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "PascalCase")]
pub struct ConfigurationConfig {
    pub patches: Vec<PatchConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "PascalCase")]
pub struct PatchConfig {
    /// `[x_start, x_end, y_start, y_end]`, inclusive.
    pub size: [usize; 4],
    pub serving_configurator: ServingConfiguratorConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "PascalCase")]
pub struct SlotConfig {
    /// `[bs, gu]` node ids.
    pub nodes: [String; 2],
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields, rename_all_fields = "PascalCase")]
pub enum ServingConfiguratorConfig {
    DefinedServingConfigurator {
        slots: Vec<SlotConfig>,
    },
    PeriodicServingConfigurator {
        pairs: Vec<[String; 2]>,
        interval: f64,
    },
    RandomServingConfigurator {
        pairs: Vec<[String; 2]>,
        interval: f64,
        /// Falls back to the simulation seed.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

fn pair(ids: &[String; 2]) -> ServingPair {
    ServingPair::new(ids[0].clone(), ids[1].clone())
}

impl ServingConfiguratorConfig {
    /// Runtime policy; `stream` keeps random patches independent.
    pub fn policy(&self, sim_seed: u64, stream: u64) -> ServingPolicy {
        match self {
            Self::DefinedServingConfigurator { slots } => ServingPolicy::Defined {
                slots: slots.iter().map(|s| (pair(&s.nodes), s.duration)).collect(),
            },
            Self::PeriodicServingConfigurator { pairs, interval } => ServingPolicy::Periodic {
                pairs: pairs.iter().map(pair).collect(),
                slot_s: *interval,
            },
            Self::RandomServingConfigurator { pairs, interval, seed } => ServingPolicy::Random {
                pairs: pairs.iter().map(pair).collect(),
                slot_s: *interval,
                seed: seed.unwrap_or(sim_seed),
                stream,
            },
        }
    }

    fn node_refs(&self) -> Vec<(String, &[String; 2])> {
        match self {
            Self::DefinedServingConfigurator { slots } => slots
                .iter()
                .enumerate()
                .map(|(k, s)| (format!("Slots/{k}/Nodes"), &s.nodes))
                .collect(),
            Self::PeriodicServingConfigurator { pairs, .. } | Self::RandomServingConfigurator { pairs, .. } => pairs
                .iter()
                .enumerate()
                .map(|(k, p)| (format!("Pairs/{k}"), p))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GainMode {
    /// Outage-constrained lower bound.
    #[default]
    Bound,
    /// One fading draw from the element-level model.
    Realized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Direction {
    Downlink,
    Uplink,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Downlink => "DOWNLINK",
            Direction::Uplink => "UPLINK",
        }
    }
}

fn default_directions() -> Vec<Direction> {
    vec![Direction::Downlink, Direction::Uplink]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase", default)]
pub struct SimConfig {
    pub duration: f64,
    pub step: f64,
    pub seed: u64,
    pub mode: GainMode,
    #[serde(default = "default_directions")]
    pub directions: Vec<Direction>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            duration: 10.0,
            step: 0.1,
            seed: 1,
            mode: GainMode::Bound,
            directions: default_directions(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase", default)]
pub struct RemConfig {
    pub origin: [f64; 2],
    /// Defaults to the world area.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extent: Option<[f64; 2]>,
    pub z: f64,
    /// Samples per square meter.
    pub resolution: f64,
    pub time: f64,
    pub mode: GainMode,
}

impl Default for RemConfig {
    fn default() -> Self {
        Self {
            origin: [0.0, 0.0],
            extent: None,
            z: 0.0,
            resolution: 16.0,
            time: 0.0,
            mode: GainMode::Bound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RateMode {
    #[default]
    CqiTable,
    TruncatedShannon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase", default)]
pub struct RateConfig {
    pub mode: RateMode,
    /// Throughput cap in bit/s at 5 MHz, scaled with bandwidth.
    pub cap: f64,
}

impl Default for RateConfig {
    fn default() -> Self {
        Self {
            mode: RateMode::CqiTable,
            cap: 18.336e6,
        }
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { .. } | Segment::Unknown => {}
        }
    }
    out
}

impl ScenarioConfig {
    /// Deserialize without cross-field checks.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let pointer = pointer_of(e.path());
            Error::Config(vec![ConfigError::new(pointer, e.into_inner().to_string())])
        })
    }

    fn from_value(value: Value) -> Result<Self> {
        serde_path_to_error::deserialize(value).map_err(|e| {
            let pointer = pointer_of(e.path());
            Error::Config(vec![ConfigError::new(pointer, e.into_inner().to_string())])
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        parse(&text)
    }

    pub fn node(&self, id: &str) -> Result<&NodeConfig> {
        self.nodes
            .iter()
            .find(|n| n.id == id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn base_station(&self) -> Result<&NodeConfig> {
        self.nodes
            .iter()
            .find(|n| n.role == Role::Bs)
            .ok_or_else(|| Error::UnknownNode("<base station>".into()))
    }

    pub fn ground_users(&self) -> impl Iterator<Item = &NodeConfig> {
        self.nodes.iter().filter(|n| n.role == Role::Gu)
    }

    pub fn buildings(&self) -> Vec<BuildingBox> {
        self.world.buildings.iter().map(BuildingConfig::to_box).collect()
    }

    pub fn rem_extent(&self) -> [f64; 2] {
        self.rem.extent.unwrap_or(self.world.area)
    }

    /// Apply `key=value` overrides, e.g. `channel.OutageProbability=0.1`.
    /// Values parse as JSON, falling back to a plain string.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        let mut value = self.to_value();
        for item in overrides {
            let item = item.as_ref();
            let (key, raw) = item.split_once('=').ok_or_else(|| {
                Error::Config(vec![ConfigError::new(
                    "",
                    format!("override `{item}` is not key=value"),
                )])
            })?;
            let new: Value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
            set_path(&mut value, key, new)?;
        }
        let config = Self::from_value(value)?;
        config.validate()?;
        Ok(config)
    }

    /// Cross-field checks; all problems are reported together.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        let mut push = |p: String, m: String| errs.push(ConfigError::new(p, m));

        let ch = &self.channel;
        if !(ch.outage_probability > 0.0 && ch.outage_probability < 1.0) {
            push("/channel/OutageProbability".into(), "must lie in (0, 1)".into());
        }
        if ch.k_max < ch.k_min {
            push(
                "/channel/KMax".into(),
                format!("{} dB is below KMin {} dB", ch.k_max, ch.k_min),
            );
        }
        if !(ch.alpha_loss >= 2.0) {
            push(
                "/channel/AlphaLoss".into(),
                "path-loss exponent must be at least 2".into(),
            );
        }
        for (key, v) in [("CarrierFrequency", ch.carrier_frequency), ("Bandwidth", ch.bandwidth)] {
            if !(v > 0.0 && v.is_finite()) {
                push(format!("/channel/{key}"), "must be positive".into());
            }
        }
        if !(ch.element_pattern_exponent >= 0.0) {
            push("/channel/ElementPatternExponent".into(), "must be non-negative".into());
        }

        let [ax, ay] = self.world.area;
        if !(ax > 0.0 && ay > 0.0) {
            push("/world/area".into(), "area must be positive".into());
        }
        for (k, b) in self.world.buildings.iter().enumerate() {
            let bx = b.to_box();
            let (lo, hi) = (bx.min_corner, bx.max_corner());
            if !(b.size.x > 0.0 && b.size.y > 0.0 && b.size.z > 0.0) {
                push(format!("/world/buildings/{k}/size"), "sizes must be positive".into());
            } else if lo.x < 0.0 || lo.y < 0.0 || hi.x > ax || hi.y > ay {
                push(format!("/world/buildings/{k}"), "building lies outside the area".into());
            }
        }

        let mut roles = HashMap::new();
        let mut seen = HashSet::new();
        for (k, n) in self.nodes.iter().enumerate() {
            if !seen.insert(n.id.as_str()) {
                push(format!("/nodes/{k}/id"), format!("duplicate node id `{}`", n.id));
            }
            roles.insert(n.id.as_str(), n.role);
            if !n.position.is_finite() {
                push(format!("/nodes/{k}/position"), "must be finite".into());
            }
            if let Some(Err(e)) = n.mobility.as_ref().map(MobilityModel::validate) {
                push(format!("/nodes/{k}/mobility"), e.to_string());
            }
        }
        let bs_count = self.nodes.iter().filter(|n| n.role == Role::Bs).count();
        if bs_count != 1 {
            push(
                "/nodes".into(),
                format!("exactly one BS node required, found {bs_count}"),
            );
        }

        for (d, drone) in self.drones.iter().enumerate() {
            let base = format!("/drones/{d}");
            if !seen.insert(drone.id.as_str()) {
                push(format!("{base}/id"), format!("duplicate id `{}`", drone.id));
            }
            if let Err(e) = drone.mobility.validate() {
                push(format!("{base}/mobility"), e.to_string());
            }
            let irs = &drone.irs;
            let ib = format!("{base}/irs");
            if irs.rows == 0 || irs.columns == 0 {
                push(format!("{ib}/Rows"), "surface needs at least one row and column".into());
            }
            if !(irs.pru_x > 0.0) {
                push(format!("{ib}/PruX"), "must be positive".into());
            }
            if irs.pru_x != irs.pru_y {
                push(format!("{ib}/PruY"), "elements must be square (PruX == PruY)".into());
            }
            if irs.roto_axis.len() != irs.roto_angles.len() {
                push(
                    format!("{ib}/RotoAngles"),
                    format!("{} angles for {} axes", irs.roto_angles.len(), irs.roto_axis.len()),
                );
            }
            let pc = &irs.patch_configurator;
            let pb = format!("{ib}/PatchConfigurator");
            if pc.configurations.is_empty() {
                push(
                    format!("{pb}/Configurations"),
                    "at least one configuration required".into(),
                );
            }
            if pc.periods.len() != pc.configurations.len() {
                push(
                    format!("{pb}/Periods"),
                    format!(
                        "{} periods for {} configurations",
                        pc.periods.len(),
                        pc.configurations.len()
                    ),
                );
                continue;
            }
            let spec = irs.spec();
            for (c, (layout, conf)) in irs.schedule().iter().zip(&pc.configurations).enumerate() {
                if let Err(list) = validate_layout(&spec, layout) {
                    for e in list {
                        let p = match e {
                            crate::irs::LayoutError::NonPositivePeriod => format!("{pb}/Periods/{c}"),
                            crate::irs::LayoutError::EmptyPatch { patch }
                            | crate::irs::LayoutError::OutOfBounds { patch, .. } => {
                                format!("{pb}/Configurations/{c}/Patches/{patch}/Size")
                            }
                            crate::irs::LayoutError::Overlap { second, .. } => {
                                format!("{pb}/Configurations/{c}/Patches/{second}/Size")
                            }
                        };
                        push(p, e.to_string());
                    }
                }
                for (p, patch) in conf.patches.iter().enumerate() {
                    let sb = format!("{pb}/Configurations/{c}/Patches/{p}/ServingConfigurator");
                    let sc = &patch.serving_configurator;
                    let (empty, bad_len) = match sc {
                        ServingConfiguratorConfig::DefinedServingConfigurator { slots } => {
                            (slots.is_empty(), slots.iter().any(|s| !(s.duration > 0.0)))
                        }
                        ServingConfiguratorConfig::PeriodicServingConfigurator { pairs, interval }
                        | ServingConfiguratorConfig::RandomServingConfigurator { pairs, interval, .. } => {
                            (pairs.is_empty(), !(*interval > 0.0))
                        }
                    };
                    if empty {
                        push(sb.clone(), "no node pairs given".into());
                    }
                    if bad_len {
                        push(sb.clone(), "durations must be positive".into());
                    }
                    for (rel, ids) in sc.node_refs() {
                        for (slot, want) in [(0, Role::Bs), (1, Role::Gu)] {
                            match roles.get(ids[slot].as_str()) {
                                None => push(format!("{sb}/{rel}/{slot}"), format!("unknown node `{}`", ids[slot])),
                                Some(&r) if r != want => push(
                                    format!("{sb}/{rel}/{slot}"),
                                    format!("node `{}` has the wrong role", ids[slot]),
                                ),
                                _ => {}
                            }
                        }
                    }
                }
            }
        }

        let sim = &self.sim;
        if !(sim.duration >= 0.0 && sim.duration.is_finite()) {
            push("/sim/duration".into(), "must be non-negative".into());
        }
        if !(sim.step > 0.0) {
            push("/sim/step".into(), "must be positive".into());
        }
        if sim.directions.is_empty() {
            push("/sim/directions".into(), "at least one direction required".into());
        }
        if !(self.rem.resolution > 0.0) {
            push("/rem/resolution".into(), "must be positive".into());
        }
        if let Some([ex, ey]) = self.rem.extent {
            if !(ex > 0.0 && ey > 0.0) {
                push("/rem/extent".into(), "must be positive".into());
            }
        }
        if !(self.rate.cap > 0.0) {
            push("/rate/cap".into(), "must be positive".into());
        }

        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(errs))
        }
    }
}

fn set_path(root: &mut Value, key: &str, new: Value) -> Result<()> {
    let bad = |m: String| Error::Config(vec![ConfigError::new(format!("/{}", key.replace('.', "/")), m)]);
    let mut cur = root;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        let last = i + 1 == parts.len();
        cur = match cur {
            Value::Object(map) => {
                if last {
                    map.insert(part.to_string(), new);
                    return Ok(());
                }
                map.entry(part.to_string())
                    .or_insert_with(|| Value::Object(Default::default()))
            }
            Value::Array(items) => {
                let idx: usize = part.parse().map_err(|_| bad(format!("`{part}` is not an index")))?;
                let len = items.len();
                let slot = items
                    .get_mut(idx)
                    .ok_or_else(|| bad(format!("index {idx} out of range ({len})")))?;
                if last {
                    *slot = new;
                    return Ok(());
                }
                slot
            }
            _ => return Err(bad(format!("`{part}` does not address an object or array"))),
        };
    }
    Err(bad("empty override key".into()))
}

/// Parse and validate a scenario document.
pub fn parse(text: &str) -> Result<ScenarioConfig> {
    let config = ScenarioConfig::from_json_str(text)?;
    config.validate()?;
    Ok(config)
}
