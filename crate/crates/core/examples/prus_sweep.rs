//! Uplink SINR and rate versus surface size under three direct-link conditions.
//!
//! cargo run --release --example prus_sweep

use irs_sim::config::{Direction, ScenarioConfig};
use irs_sim::presets;
use irs_sim::sweep::{sweep, IRS_SIZE};

type Tweak = fn(&mut ScenarioConfig);

fn main() -> irs_sim::Result<()> {
    let values: Vec<_> = [10, 20, 50, 100, 200, 400]
        .into_iter()
        .map(serde_json::Value::from)
        .collect();
    let cases: [(&str, Tweak); 3] = [
        ("LoS direct", |c| c.world.buildings.clear()),
        ("NLoS direct", |_| {}),
        ("no direct", |c| c.channel.no_direct_link = true),
    ];
    for (label, tweak) in cases {
        let mut base = presets::scenario1(10);
        base.sim.duration = 0.0;
        base.sim.directions = vec![Direction::Uplink];
        tweak(&mut base);
        println!("{label}");
        for row in sweep(&base, IRS_SIZE, &values)? {
            println!(
                "  N={:>3}  {:7.2} dB  {:6.3} Mbps",
                row.value,
                row.mean_sinr_db,
                row.throughput_bps / 1e6
            );
        }
    }
    Ok(())
}
