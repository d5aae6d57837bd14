//! The four community-detection algorithms side by side on one network.
//!
//! Run with: cargo run --example communities

use std::fs;
use std::path::Path;

use netrobust::{cnm, girvan_newman, label_propagation, louvain, parse_incidence_csv_auto, Result};

fn main() -> Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let text = fs::read_to_string(data.join("demo_modular.csv"))?;
    let network = parse_incidence_csv_auto(&text)?;
    let graph = network.to_undirected();
    println!(
        "demo_modular.csv: two dense blocks joined by one bridge ({} nodes, {} edges)\n",
        graph.node_count(),
        graph.edge_count()
    );

    let results = [
        cnm(&graph)?,
        louvain(&graph, 7)?,
        girvan_newman(&graph)?,
        label_propagation(&graph, 7, 100),
    ];
    println!("{:<20} {:>12} {:>12}", "algorithm", "communities", "modularity");
    for r in &results {
        println!(
            "{:<20} {:>12} {:>12.6}",
            r.algorithm.to_string(),
            r.community_count(),
            r.modularity.unwrap()
        );
    }

    let best = &results[0];
    println!("\nmembers per community ({}):", best.algorithm);
    for community in 0..best.partition.community_count() {
        let members: Vec<&str> = (0..graph.node_count())
            .filter(|&v| best.partition.community_of(v) == community)
            .map(|v| graph.node_labels()[v].as_str())
            .collect();
        println!("  {community}: {}", members.join(", "));
    }
    Ok(())
}
