//! The outage-constrained gain factor against sampled Rician quantiles.
//!
//! cargo run --release --example outage_bound

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use irs_sim::channel::outage::OutageModel;

fn main() -> irs_sim::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for eps in [0.01, 0.05, 0.1] {
        let model = OutageModel::new(eps)?;
        println!(
            "eps={eps}: crossover K0={:.4} (kappa={:.3})",
            model.k0,
            model.k0 * model.k0 / 2.0
        );
        for kappa in [0.1_f64, 1.0, 3.0, 10.0, 20.0, 100.0] {
            let nu = (kappa / (kappa + 1.0)).sqrt();
            let sigma = (0.5 / (kappa + 1.0)).sqrt();
            let mut r: Vec<f64> = (0..200_000)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    (nu + sigma * re).hypot(sigma * im)
                })
                .collect();
            r.sort_by(f64::total_cmp);
            let sampled = r[(eps * r.len() as f64) as usize] * (2.0 * (kappa + 1.0)).sqrt();
            let zeta = model.zeta(kappa);
            println!(
                "  kappa={kappa:>6}: zeta {zeta:.4}  sampled {sampled:.4}  ({:+.2}%)",
                (zeta / sampled - 1.0) * 100.0
            );
        }
    }
    Ok(())
}
