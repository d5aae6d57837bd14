//! Parse the two supported network formats and print basic structure.
//!
//! Run with: cargo run --example parse_formats

use std::fs;
use std::path::Path;

use netrobust::{parse_edge_list, parse_incidence_csv_auto, Result};

fn main() -> Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");

    let text = fs::read_to_string(data.join("pollination_sample.csv"))?;
    let incidence = parse_incidence_csv_auto(&text)?;
    println!("incidence CSV: pollination_sample.csv");
    println!(
        "  {} plants x {} pollinators, {} interactions, connectance {:.3}",
        incidence.rows(),
        incidence.cols(),
        incidence.edge_count(),
        incidence.connectance()
    );
    println!("  row labels: {:?}", &incidence.row_labels()[..3]);

    let text = fs::read_to_string(data.join("seed_dispersal_sample.txt"))?;
    let edge_list = parse_edge_list(&text)?;
    let undirected = edge_list.to_undirected();
    let (components, _) = undirected.connected_components();
    println!("\nedge list: seed_dispersal_sample.txt");
    println!(
        "  {} plants x {} dispersers, {} interactions, {} connected component(s)",
        edge_list.rows(),
        edge_list.cols(),
        edge_list.edge_count(),
        components
    );

    // weights are dropped at parse time; re-serializing is weightless
    let round_trip = parse_edge_list(&edge_list.to_edge_list_text())?;
    assert_eq!(round_trip.edge_count(), edge_list.edge_count());
    println!("  round-trips through the edge-list text format");
    Ok(())
}
