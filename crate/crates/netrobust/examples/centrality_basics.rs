//! Betweenness and PageRank on a bundled network, plus the variance
//! summaries the robustness sweep tracks.
//!
//! Run with: cargo run --example centrality_basics

use std::fs;
use std::path::Path;

use netrobust::{betweenness, pagerank, parse_incidence_csv_auto, variance, Result};

fn main() -> Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let text = fs::read_to_string(data.join("pollination_sample.csv"))?;
    let network = parse_incidence_csv_auto(&text)?;
    let graph = network.to_undirected();

    let bc = betweenness(&graph);
    let pr = pagerank(&graph, 0.85, 1e-10, 1000)?;
    println!(
        "pagerank converged after {} iterations (sum = {:.12})",
        pr.iterations,
        pr.values.iter().sum::<f64>()
    );

    println!("\n{:<22} {:>12} {:>12}", "species", "betweenness", "pagerank");
    let mut order: Vec<usize> = (0..graph.node_count()).collect();
    order.sort_by(|&a, &b| pr.values[b].total_cmp(&pr.values[a]));
    for v in order.into_iter().take(6) {
        println!(
            "{:<22} {:>12.4} {:>12.4}",
            graph.node_labels()[v],
            bc[v],
            pr.values[v]
        );
    }

    println!("\nbetweenness variance: {:.6}", variance(&bc)?);
    println!("pagerank variance:    {:.8}", variance(&pr.values)?);
    Ok(())
}
