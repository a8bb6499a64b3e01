//! Serving configurators: which (BS, GU) pair each patch assists over time.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::irs::{PatchConfiguration, PatchSpec, PhaseParams};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ServingPair {
    pub bs: String,
    pub gu: String,
}

impl ServingPair {
    pub fn new(bs: impl Into<String>, gu: impl Into<String>) -> Self {
        Self {
            bs: bs.into(),
            gu: gu.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ServingPolicy {
    /// Each pair for its own duration; the last slot persists.
    Defined { slots: Vec<(ServingPair, f64)> },
    /// Round-robin with a fixed slot.
    Periodic { pairs: Vec<ServingPair>, slot_s: f64 },
    /// Uniform draw per slot from a counter-based stream. `stream` separates
    /// patches sharing one seed.
    Random {
        pairs: Vec<ServingPair>,
        slot_s: f64,
        seed: u64,
        stream: u64,
    },
}

impl ServingPolicy {
    pub fn pairs(&self) -> Vec<&ServingPair> {
        match self {
            ServingPolicy::Defined { slots } => slots.iter().map(|(p, _)| p).collect(),
            ServingPolicy::Periodic { pairs, .. } | ServingPolicy::Random { pairs, .. } => pairs.iter().collect(),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            ServingPolicy::Defined { slots } => slots.is_empty(),
            ServingPolicy::Periodic { pairs, .. } | ServingPolicy::Random { pairs, .. } => pairs.is_empty(),
        }
    }
}

fn window(t: f64, slot_s: f64) -> u64 {
    (t / slot_s).floor().max(0.0) as u64
}

/// Index drawn by a random policy for slot `w`.
pub fn random_index(seed: u64, stream: u64, w: u64, n: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng.set_word_pos(w as u128 * 16);
    rng.random_range(0..n)
}

/// The pair served at `t`, measured from the start of the policy.
pub fn pair_at(policy: &ServingPolicy, t: f64) -> Result<&ServingPair> {
    if policy.is_empty() {
        return Err(Error::EmptyPolicy);
    }
    match policy {
        ServingPolicy::Defined { slots } => {
            let mut end = 0.0;
            for (pair, duration) in slots {
                end += duration;
                if t < end {
                    return Ok(pair);
                }
            }
            Ok(&slots[slots.len() - 1].0)
        }
        ServingPolicy::Periodic { pairs, slot_s } => {
            let idx = (window(t, *slot_s) % pairs.len() as u64) as usize;
            Ok(&pairs[idx])
        }
        ServingPolicy::Random {
            pairs,
            slot_s,
            seed,
            stream,
        } => Ok(&pairs[random_index(*seed, *stream, window(t, *slot_s), pairs.len())]),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatchAssignment {
    pub patch_index: usize,
    pub patch: PatchSpec,
    pub pair: ServingPair,
    pub phases: PhaseParams,
}

/// Join the active layout with its policies. `phases` points a patch at a
/// pair given the current geometry.
pub fn assignments_at<F>(
    configuration: &PatchConfiguration,
    policies: &[ServingPolicy],
    t: f64,
    mut phases: F,
) -> Result<Vec<PatchAssignment>>
where
    F: FnMut(&ServingPair) -> Result<PhaseParams>,
{
    if configuration.patches.len() != policies.len() {
        return Err(Error::PolicyCountMismatch {
            patches: configuration.patches.len(),
            policies: policies.len(),
        });
    }
    configuration
        .patches
        .iter()
        .zip(policies)
        .enumerate()
        .map(|(patch_index, (patch, policy))| {
            let pair = pair_at(policy, t)?.clone();
            Ok(PatchAssignment {
                patch_index,
                patch: *patch,
                phases: phases(&pair)?,
                pair,
            })
        })
        .collect()
}
