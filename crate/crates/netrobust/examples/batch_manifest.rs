//! Manifest-driven batch processing: load every bundled network, sweep each
//! one, and aggregate per interaction type — what the `netrobust sweep`
//! command does, as library calls.
//!
//! Run with: cargo run --example batch_manifest

use std::path::Path;

use netrobust::{aggregate, load_manifest, load_network, sweep, Result, SweepConfig};

fn main() -> Result<()> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join("manifest.csv");
    let (entries, warnings) = load_manifest(&manifest)?;
    for w in warnings {
        eprintln!("warning: {w}");
    }

    let config = SweepConfig {
        base_seed: 7,
        replicates: 5,
        ..SweepConfig::default()
    };
    let mut all_records = Vec::new();
    for entry in &entries {
        let network = load_network(entry)?;
        let records = sweep(&network, &config)?;
        println!(
            "{:<22} {:>2}x{:<2} nodes m={:<3} -> {} records",
            entry.network_id,
            network.rows(),
            network.cols(),
            network.edge_count(),
            records.len()
        );
        all_records.extend(records);
    }

    let curves = aggregate(&all_records, 10)?;
    println!("\n{} aggregate curves (interaction type x metric), e.g.:", curves.len());
    for curve in curves.iter().take(3) {
        let last = curve.bins.last().unwrap();
        println!(
            "  {} / {}: mean normalized value {:.3} at fraction {:.2} ({} samples)",
            curve.interaction_type, curve.metric, last.mean_normalized_value,
            last.fraction_bin_center, last.n_samples
        );
    }
    Ok(())
}
