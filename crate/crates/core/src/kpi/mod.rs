//! KPI production: rate mapping, radio environment maps, throughput
//! aggregation and file outputs.

pub mod output;
pub mod rate;
pub mod rem;

use std::collections::BTreeMap;

use crate::config::Direction;
use crate::engine::KpiRecord;

pub use rate::RateMapper;
pub use rem::{generate_rem, generate_rem_serial, RemGrid};

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ThroughputSummary {
    /// Time-averaged rate per (GU, direction), bit/s.
    pub per_gu: BTreeMap<(String, Direction), f64>,
    /// Mean of `per_gu` over GUs, per direction.
    pub overall: BTreeMap<Direction, f64>,
}

/// Time-weighted mean rate: each record holds until the next instant of the
/// same GU and direction, the last one until `horizon`. With a zero horizon
/// the records are averaged plainly.
pub fn aggregate_throughput(records: &[KpiRecord], horizon: f64) -> ThroughputSummary {
    let mut groups: BTreeMap<(String, Direction), Vec<(f64, f64)>> = BTreeMap::new();
    for r in records {
        groups
            .entry((r.gu_id.clone(), r.direction))
            .or_default()
            .push((r.t, r.rate_bps));
    }
    let mut summary = ThroughputSummary::default();
    let mut sums: BTreeMap<Direction, (f64, usize)> = BTreeMap::new();
    for (key, mut series) in groups {
        series.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut weighted = 0.0;
        let mut total = 0.0;
        for (k, &(t, rate)) in series.iter().enumerate() {
            let end = series.get(k + 1).map_or(horizon, |n| n.0.min(horizon));
            let w = (end - t).max(0.0);
            weighted += w * rate;
            total += w;
        }
        let mean = if total > 0.0 {
            weighted / total
        } else {
            series.iter().map(|s| s.1).sum::<f64>() / series.len() as f64
        };
        let e = sums.entry(key.1).or_insert((0.0, 0));
        e.0 += mean;
        e.1 += 1;
        summary.per_gu.insert(key, mean);
    }
    summary.overall = sums.into_iter().map(|(d, (s, n))| (d, s / n as f64)).collect();
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(t: f64, gu: &str, rate: f64) -> KpiRecord {
        KpiRecord {
            t,
            gu_id: gu.into(),
            direction: Direction::Uplink,
            gain_linear: 1.0,
            sinr_db: 0.0,
            rate_bps: rate,
            served: true,
        }
    }

    #[test]
    fn constant_rate() {
        let r: Vec<_> = (0..=10).map(|k| rec(k as f64, "a", 5.0)).collect();
        let s = aggregate_throughput(&r, 10.0);
        assert_eq!(s.per_gu[&("a".to_string(), Direction::Uplink)], 5.0);
        assert_eq!(s.overall[&Direction::Uplink], 5.0);
    }

    #[test]
    fn half_time_served() {
        let r: Vec<_> = (0..10)
            .map(|k| rec(k as f64, "a", if k < 5 { 8.0 } else { 0.0 }))
            .collect();
        assert_eq!(aggregate_throughput(&r, 10.0).overall[&Direction::Uplink], 4.0);
    }

    #[test]
    fn overall_averages_users() {
        let r = vec![rec(0.0, "a", 2.0), rec(0.0, "b", 6.0)];
        let s = aggregate_throughput(&r, 1.0);
        assert_eq!(s.overall[&Direction::Uplink], 4.0);
        assert_eq!(aggregate_throughput(&r, 0.0).overall[&Direction::Uplink], 4.0);
    }

    proptest! {
        #[test]
        fn order_invariant(rates in proptest::collection::vec(0.0f64..1e7, 1..40), seed in any::<u64>()) {
            let mut r: Vec<_> = rates.iter().enumerate()
                .map(|(k, &x)| rec(k as f64 * 0.5, if k % 2 == 0 { "a" } else { "b" }, x))
                .collect();
            let before = aggregate_throughput(&r, rates.len() as f64 * 0.5);
            let mut s = seed;
            for i in (1..r.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                r.swap(i, (s >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(before, aggregate_throughput(&r, rates.len() as f64 * 0.5));
        }
    }
}
