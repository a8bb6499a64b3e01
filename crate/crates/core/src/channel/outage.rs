//! Outage-constrained lower bound on the channel power gain.
//!
//! For a Rician envelope with K-factor κ and power Ω, the gain exceeded with
//! probability `1 - ε` is bounded below by `ζ² Ω / (2(κ + 1))`, where ζ is a
//! two-branch approximation of the normalized ε-quantile: a Rayleigh-like
//! branch for small κ and a Gaussian-like branch for large κ, joined at the
//! crossover `K₀` (expressed in units of `√(2κ)`).

use statrs::function::erf::erfc;

use super::RicianStats;
use crate::error::{Error, Result};

/// Standard normal tail probability.
pub fn q_function(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

// Acklam's rational approximation of the normal quantile.
const A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.38357751867269e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];

fn tail_quantile(p: f64) -> f64 {
    let q = (-2.0 * p.ln()).sqrt();
    (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
        / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
}

/// Normal quantile Φ⁻¹(p), initial guess only (relative error ~1e-9).
fn acklam(p: f64) -> f64 {
    const P_LOW: f64 = 0.02425;
    if p < P_LOW {
        tail_quantile(p)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        -tail_quantile(1.0 - p)
    }
}

/// Inverse of [`q_function`]: the `z` with `Q(z) = p`.
pub fn inverse_q(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::OutOfDomain(p));
    }
    if p == 0.5 {
        return Ok(0.0);
    }
    let mut z = -acklam(p);
    // Halley steps on Q(z) - p.
    for _ in 0..3 {
        let pdf = normal_pdf(z);
        if pdf == 0.0 {
            break;
        }
        let step = (q_function(z) - p) / pdf;
        z += step / (1.0 - 0.5 * z * step);
    }
    Ok(z)
}

/// Crossover and branch evaluation for a fixed ε.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageModel {
    pub eps: f64,
    pub q_inv: f64,
    /// `K₀`, on the `√(2κ)` axis.
    pub k0: f64,
    rayleigh_quantile: f64,
}

const BRACKET_WIDTH: f64 = 50.0;

impl OutageModel {
    pub fn new(eps: f64) -> Result<Self> {
        let q_inv = inverse_q(eps)?;
        let rayleigh_quantile = (-2.0 * (-eps).ln_1p()).sqrt();
        let mut model = Self {
            eps,
            q_inv,
            k0: f64::INFINITY,
            rayleigh_quantile,
        };
        model.k0 = model.crossover()?;
        Ok(model)
    }

    fn small_branch(&self, x: f64) -> f64 {
        self.rayleigh_quantile * (x * x / 4.0).exp()
    }

    fn large_branch(&self, x: f64) -> f64 {
        let q = self.q_inv;
        if q.abs() < 1e-9 {
            // limit as Q⁻¹ → 0
            return x + 0.5 / x;
        }
        x + (x / (x - q)).ln() / (2.0 * q) - q
    }

    fn crossover(&self) -> Result<f64> {
        let diff = |x: f64| self.small_branch(x) - self.large_branch(x);
        let start = self.q_inv.max(0.0);
        let mut lo = start + 1e-9 * start.max(1.0);
        let mut hi = self.q_inv + BRACKET_WIDTH;
        let (f_lo, f_hi) = (diff(lo), diff(hi));
        if !(f_lo < 0.0 && f_hi > 0.0) {
            return Err(Error::NoCrossover(self.eps));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if diff(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Normalized quantile ζ for K-factor `kappa`.
    pub fn zeta(&self, kappa: f64) -> f64 {
        let x = (2.0 * kappa).sqrt();
        if kappa <= self.k0 * self.k0 / 2.0 {
            self.small_branch(x)
        } else {
            self.large_branch(x)
        }
    }

    pub fn gain(&self, stats: &RicianStats) -> OutageGain {
        let kappa = stats.kappa;
        if !(2.0 * kappa).is_finite() {
            // deterministic envelope: no fading margin
            return OutageGain {
                zeta: f64::INFINITY,
                k0: self.k0,
                gamma_eps: stats.omega_pow,
            };
        }
        let zeta = self.zeta(kappa);
        OutageGain {
            zeta,
            k0: self.k0,
            gamma_eps: zeta * zeta * stats.omega_pow / (2.0 * (kappa + 1.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutageGain {
    pub zeta: f64,
    pub k0: f64,
    pub gamma_eps: f64,
}

/// `(ζ, K₀)` for a single evaluation; prefer [`OutageModel`] in loops.
pub fn zeta(kappa: f64, eps: f64) -> Result<(f64, f64)> {
    let model = OutageModel::new(eps)?;
    Ok((model.zeta(kappa), model.k0))
}

pub fn gain_lowerbound(stats: &RicianStats, eps: f64) -> Result<OutageGain> {
    Ok(OutageModel::new(eps)?.gain(stats))
}
