//! Full robustness protocol on one network: candidate ground-truth graphs
//! with 1..m/2 added edges, 10 replicates each, aggregated into curves and
//! written as CSV.
//!
//! Run with: cargo run --example robustness_sweep [out_dir]

use std::fs;
use std::path::Path;

use netrobust::io::{write_aggregate_csv, write_records_csv};
use netrobust::{aggregate, parse_incidence_csv_auto, sweep, MetricId, Result, SweepConfig};

fn main() -> Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let text = fs::read_to_string(data.join("pollination_sample.csv"))?;
    let network = parse_incidence_csv_auto(&text)?;

    let config = SweepConfig {
        base_seed: 42,
        ..SweepConfig::default()
    };
    let records = sweep(&network, &config)?;
    println!(
        "swept {} (m = {}): {} records across k = 1..{}",
        network.network_id(),
        network.edge_count(),
        records.len(),
        network.edge_count() / 2
    );

    // how each metric at the largest k compares to the observed baseline
    println!("\n{:<22} {:>10} {:>14}", "metric", "baseline", "mean at k=max");
    let k_max = records.iter().map(|r| r.k_added).max().unwrap();
    for metric in MetricId::ALL {
        let baseline = records
            .iter()
            .find(|r| r.metric == metric && r.k_added == 0)
            .map(|r| r.value);
        let at_max: Vec<f64> = records
            .iter()
            .filter(|r| r.metric == metric && r.k_added == k_max)
            .map(|r| r.value)
            .collect();
        if let (Some(baseline), false) = (baseline, at_max.is_empty()) {
            let mean = at_max.iter().sum::<f64>() / at_max.len() as f64;
            println!("{:<22} {:>10.4} {:>14.4}", metric.to_string(), baseline, mean);
        }
    }

    let out_dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "sweep_output".to_string());
    fs::create_dir_all(&out_dir)?;
    let curves = aggregate(&records, 25)?;
    write_records_csv(&Path::new(&out_dir).join("records.csv"), &records)?;
    write_aggregate_csv(&Path::new(&out_dir).join("aggregate.csv"), &curves)?;
    println!("\nwrote {out_dir}/records.csv and {out_dir}/aggregate.csv");
    Ok(())
}
