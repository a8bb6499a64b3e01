//! Rician envelope distribution: density, CDF and goodness-of-fit.

use std::f64::consts::PI;

use super::RicianStats;

/// Exponentially scaled modified Bessel function `e^{-x} I₀(x)`, `x ≥ 0`.
pub fn bessel_i0e(x: f64) -> f64 {
    let x = x.abs();
    if x < 30.0 {
        let half_sq = 0.25 * x * x;
        let (mut term, mut sum) = (1.0, 1.0);
        for k in 1..500 {
            term *= half_sq / (k as f64 * k as f64);
            sum += term;
            if term < sum * 1e-17 {
                break;
            }
        }
        sum * (-x).exp()
    } else {
        // Asymptotic series with coefficients ((2k-1)!!)² / (k! 8^k).
        let (mut term, mut sum) = (1.0, 1.0);
        for k in 1..60 {
            let odd = (2 * k - 1) as f64;
            let next = term * odd * odd / (k as f64 * 8.0 * x);
            if next > term {
                break;
            }
            term = next;
            sum += term;
            if term < sum * 1e-17 {
                break;
            }
        }
        sum / (2.0 * PI * x).sqrt()
    }
}

/// Envelope law with line-of-sight amplitude `nu` and per-dimension
/// scattered variance `sigma_sq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rician {
    pub nu: f64,
    pub sigma_sq: f64,
}

const GL_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

impl Rician {
    pub fn from_stats(stats: &RicianStats) -> Self {
        Self {
            nu: stats.nu_sq.sqrt(),
            sigma_sq: stats.two_sigma_sq / 2.0,
        }
    }

    pub fn pdf(&self, r: f64) -> f64 {
        if r < 0.0 {
            return 0.0;
        }
        let s2 = self.sigma_sq;
        let dev = r - self.nu;
        (r / s2) * (-(dev * dev) / (2.0 * s2)).exp() * bessel_i0e(r * self.nu / s2)
    }

    /// Probability mass in `[a, b]` by composite Gauss–Legendre quadrature
    /// on sub-intervals no wider than σ/4.
    pub fn mass(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let pitch = self.sigma_sq.sqrt() / 4.0;
        let n = ((b - a) / pitch).ceil().clamp(1.0, 1e7) as usize;
        let h = (b - a) / n as f64;
        (0..n)
            .map(|k| {
                let mid = a + (k as f64 + 0.5) * h;
                GL_NODES
                    .iter()
                    .zip(GL_WEIGHTS)
                    .map(|(t, w)| w * self.pdf(mid + 0.5 * h * t))
                    .sum::<f64>()
                    * 0.5
                    * h
            })
            .sum()
    }

    pub fn cdf(&self, r: f64) -> f64 {
        if r <= 0.0 {
            return 0.0;
        }
        if self.nu == 0.0 {
            return -(-r * r / (2.0 * self.sigma_sq)).exp_m1();
        }
        // Integrate from where the density is non-negligible.
        let lo = (self.nu - 40.0 * self.sigma_sq.sqrt()).max(0.0);
        self.mass(lo.min(r), r).min(1.0)
    }

    /// Kolmogorov–Smirnov distance between `samples` and this law. Sorts
    /// the slice in place.
    pub fn ks_distance(&self, samples: &mut [f64]) -> f64 {
        samples.sort_by(f64::total_cmp);
        let n = samples.len() as f64;
        let mut cdf = 0.0;
        let mut prev = (self.nu - 40.0 * self.sigma_sq.sqrt()).max(0.0);
        let mut worst = 0.0_f64;
        for (i, &x) in samples.iter().enumerate() {
            if x > prev {
                cdf = if self.nu == 0.0 {
                    self.cdf(x)
                } else {
                    (cdf + self.mass(prev, x)).min(1.0)
                };
                prev = x;
            }
            let below = i as f64 / n;
            let above = (i + 1) as f64 / n;
            worst = worst.max((cdf - below).abs()).max((above - cdf).abs());
        }
        worst
    }
}
