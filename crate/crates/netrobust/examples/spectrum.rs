//! Laplacian spectrum of a bundled network: component count from the zero
//! eigenvalues, cross-checked against BFS.
//!
//! Run with: cargo run --example spectrum

use std::fs;
use std::path::Path;

use netrobust::spectral::DEFAULT_ZERO_TOLERANCE;
use netrobust::{laplacian_spectrum, parse_incidence_csv_auto, Result};

fn main() -> Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let text = fs::read_to_string(data.join("plant_ant_sample.csv"))?;
    let network = parse_incidence_csv_auto(&text)?;
    let graph = network.to_undirected();

    let spectrum = laplacian_spectrum(&graph.laplacian(), DEFAULT_ZERO_TOLERANCE)?;
    println!(
        "plant_ant_sample.csv: {} nodes, {} edges",
        graph.node_count(),
        graph.edge_count()
    );
    println!("eigenvalues: {:?}", spectrum.eigenvalues());
    println!("zero eigenvalues:     {}", spectrum.zero_count());
    println!("non-zero eigenvalues: {}", spectrum.nonzero_count());
    println!("largest eigenvalue:   {:.6}", spectrum.largest());

    let (bfs_components, _) = graph.connected_components();
    assert_eq!(spectrum.component_count(), bfs_components);
    println!(
        "component count {} agrees with BFS ({} components)",
        spectrum.component_count(),
        bfs_components
    );
    println!(
        "spectrum sum {:.9} equals 2m = {}",
        spectrum.sum(),
        2 * graph.edge_count()
    );
    Ok(())
}
