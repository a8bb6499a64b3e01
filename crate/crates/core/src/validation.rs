//! Monte-Carlo check of the Rician approximation against the element-level
//! channel for one scenario link.

use serde::Serialize;

use crate::channel::exact::ExactChannel;
use crate::channel::rician::Rician;
use crate::engine::Simulator;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub gu_id: String,
    pub t_s: f64,
    pub samples: usize,
    pub seed: u64,
    pub eps: f64,
    pub nu_sq: f64,
    pub two_sigma_sq: f64,
    pub kappa: f64,
    pub omega: f64,
    pub zeta: f64,
    pub gamma_eps: f64,
    pub empirical_mean: f64,
    pub mean_relative_error: f64,
    /// `None` when the fitted law is degenerate (no scattering).
    pub ks_distance: Option<f64>,
    /// Largest `| |Γ| - ν | / ν` over the samples.
    pub max_los_deviation: f64,
    pub empirical_outage: f64,
}

/// Sample the link from the base station to `gu_id` (first GU by default)
/// at time `t`.
pub fn monte_carlo(
    sim: &Simulator,
    gu_id: Option<&str>,
    t: f64,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    let state = sim.step(t)?;
    let gu = match gu_id {
        Some(id) => state.gu(id)?.1,
        None => state
            .gus
            .first()
            .ok_or_else(|| crate::Error::UnknownNode("<any GU>".into()))?,
    };
    let snapshot = sim.link_snapshot(&state, gu.position, Some(&gu.id));
    let stats = snapshot.evaluate(&sim.params)?.stats;
    let bound = sim.outage.gain(&stats);
    let model = ExactChannel::new(&snapshot, &sim.params)?;
    let power = model.sample_power_parallel(seed, samples);

    let n = power.len().max(1) as f64;
    let empirical_mean = power.iter().sum::<f64>() / n;
    let empirical_outage = power.iter().filter(|&&p| p < bound.gamma_eps).count() as f64 / n;
    let nu = stats.nu_sq.sqrt();
    let mut envelope: Vec<f64> = power.iter().map(|p| p.sqrt()).collect();
    let max_los_deviation = if nu > 0.0 {
        envelope.iter().map(|r| (r - nu).abs() / nu).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let ks_distance = (stats.two_sigma_sq > 0.0).then(|| Rician::from_stats(&stats).ks_distance(&mut envelope));

    Ok(MonteCarloReport {
        gu_id: gu.id.clone(),
        t_s: t,
        samples,
        seed,
        eps: sim.outage.eps,
        nu_sq: stats.nu_sq,
        two_sigma_sq: stats.two_sigma_sq,
        kappa: stats.kappa,
        omega: stats.omega_pow,
        zeta: bound.zeta,
        gamma_eps: bound.gamma_eps,
        empirical_mean,
        mean_relative_error: (empirical_mean - stats.omega_pow).abs() / stats.omega_pow,
        ks_distance,
        max_los_deviation,
        empirical_outage,
    })
}
