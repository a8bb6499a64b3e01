//! Element-level Monte-Carlo against the Rician fit, for a few surface sizes.
//!
//! cargo run --release --example monte_carlo_validation -- [samples]

use irs_sim::engine::Simulator;
use irs_sim::presets;
use irs_sim::validation::monte_carlo;

fn main() -> irs_sim::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(50_000);
    println!("{:>4} {:>10} {:>9} {:>8} {:>9}", "N", "mean err", "K", "KS", "outage");
    for n in [4, 8, 16, 32] {
        let sim = Simulator::new(presets::scenario1(n))?;
        let r = monte_carlo(&sim, None, 0.0, samples, 1)?;
        println!(
            "{:>4} {:>9.3}% {:>9.2} {:>8.4} {:>9.4}",
            n,
            r.mean_relative_error * 100.0,
            r.kappa,
            r.ks_distance.unwrap_or(0.0),
            r.empirical_outage
        );
    }
    Ok(())
}
