//! SINR to achievable-rate mapping.

use crate::config::{RateConfig, RateMode};

/// Bandwidth the rate cap refers to.
pub const REFERENCE_BANDWIDTH_HZ: f64 = 5e6;

/// 4-bit CQI ladder: (minimum SINR dB, spectral efficiency bit/s/Hz).
pub const LTE_CQI_TABLE: [(f64, f64); 15] = [
    (-6.7, 0.1523),
    (-4.7, 0.2344),
    (-2.3, 0.3770),
    (0.2, 0.6016),
    (2.4, 0.8770),
    (4.3, 1.1758),
    (5.9, 1.4766),
    (8.1, 1.9141),
    (10.3, 2.4063),
    (11.7, 2.7305),
    (14.1, 3.3223),
    (16.3, 3.9023),
    (18.7, 4.5234),
    (21.0, 5.1152),
    (22.7, 5.5547),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RateMapper {
    pub mode: RateMode,
    pub table: Vec<(f64, f64)>,
    /// Saturation rate at [`REFERENCE_BANDWIDTH_HZ`].
    pub cap_bps: f64,
}

impl RateMapper {
    /// CQI ladder rescaled so the top entry lands exactly on `cap_bps`.
    pub fn cqi(cap_bps: f64) -> Self {
        let top = LTE_CQI_TABLE[LTE_CQI_TABLE.len() - 1].1;
        let scale = cap_bps / (top * REFERENCE_BANDWIDTH_HZ);
        Self {
            mode: RateMode::CqiTable,
            table: LTE_CQI_TABLE.iter().map(|&(s, e)| (s, e * scale)).collect(),
            cap_bps,
        }
    }

    pub fn truncated_shannon(cap_bps: f64) -> Self {
        Self {
            mode: RateMode::TruncatedShannon,
            ..Self::cqi(cap_bps)
        }
    }

    pub fn from_config(cfg: &RateConfig) -> Self {
        match cfg.mode {
            RateMode::CqiTable => Self::cqi(cfg.cap),
            RateMode::TruncatedShannon => Self::truncated_shannon(cfg.cap),
        }
    }

    pub fn lowest_threshold_db(&self) -> f64 {
        self.table[0].0
    }

    pub fn cap_at(&self, bandwidth_hz: f64) -> f64 {
        self.cap_bps * bandwidth_hz / REFERENCE_BANDWIDTH_HZ
    }

    pub fn rate(&self, sinr_db: f64, bandwidth_hz: f64) -> f64 {
        if sinr_db.is_nan() {
            return 0.0;
        }
        let cap = self.cap_at(bandwidth_hz);
        match self.mode {
            RateMode::CqiTable => {
                let idx = self.table.partition_point(|&(s, _)| s <= sinr_db);
                if idx == 0 {
                    0.0
                } else {
                    (self.table[idx - 1].1 * bandwidth_hz).min(cap)
                }
            }
            RateMode::TruncatedShannon => {
                let lin = 10f64.powf(sinr_db / 10.0);
                (bandwidth_hz * lin.ln_1p() / std::f64::consts::LN_2).min(cap)
            }
        }
    }
}

impl Default for RateMapper {
    fn default() -> Self {
        Self::cqi(18.336e6)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn saturates_at_cap() {
        let m = RateMapper::default();
        assert_eq!(m.rate(40.0, 5e6), 18.336e6);
        assert_eq!(m.rate(f64::INFINITY, 5e6), 18.336e6);
        assert_eq!(RateMapper::truncated_shannon(18.336e6).rate(80.0, 5e6), 18.336e6);
    }

    #[test]
    fn zero_below_lowest_threshold() {
        let m = RateMapper::default();
        assert_eq!(m.rate(-6.71, 5e6), 0.0);
        assert_eq!(m.rate(f64::NEG_INFINITY, 5e6), 0.0);
        assert!(m.rate(-6.7, 5e6) > 0.0);
    }

    #[test]
    fn plateau_inside_bin() {
        let m = RateMapper::default();
        // bin [10.3, 11.7): efficiency 2.4063 scaled to the cap
        let expected = 2.4063 / 5.5547 * 18.336e6;
        for s in [10.4, 11.0, 11.1, 11.6] {
            assert!((m.rate(s, 5e6) - expected).abs() < 1e-6);
            assert_eq!(m.rate(s - 0.1, 5e6), m.rate(s, 5e6));
        }
    }

    proptest! {
        #[test]
        fn monotone(a in -30.0f64..60.0, b in -30.0f64..60.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            for m in [RateMapper::default(), RateMapper::truncated_shannon(18.336e6)] {
                prop_assert!(m.rate(lo, 5e6) <= m.rate(hi, 5e6));
                prop_assert!(m.rate(lo, 5e6) >= 0.0);
            }
        }
    }
}
