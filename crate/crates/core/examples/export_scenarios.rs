//! Regenerate the JSON files under `scenarios/` from the built-in presets.
//!
//! cargo run --example export_scenarios -- [dir]

use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios"));
    std::fs::create_dir_all(&dir)?;
    for (name, cfg) in irs_sim::presets::shipped()? {
        let path = dir.join(name);
        std::fs::write(&path, cfg.to_json() + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
