//! Command-line interface: `metrics`, `sweep`, `aggregate` and
//! `demo-communities`. Exit codes: 0 success (including partial batch
//! success when failures are allowed), 1 when a batch produced zero
//! successes or failures are disallowed, 2 for usage and I/O errors.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;

use clap::{ArgAction, Parser, Subcommand, ValueEnum};

use crate::error::Result;
use crate::graph::BipartiteGraph;
use crate::io::{
    load_manifest, load_network, metrics_rows, write_aggregate_csv, write_records_csv,
    write_report_json, ConfigEcho, FailureEntry, RunReport,
};
use crate::parse::{parse_edge_list, parse_incidence_csv, parse_incidence_csv_auto};
use crate::robustness::{
    add_random_edges, aggregate, child_seed, edge_stream_seed, evaluate_metrics, sweep, MetricId,
    SweepConfig,
};

const DEFAULT_BIN_COUNT: usize = 25;

#[derive(Parser)]
#[command(
    name = "netrobust",
    version,
    about = "Structural metrics of bipartite interaction networks and their robustness to missing data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print all structural metrics of one network
    Metrics(MetricsArgs),
    /// Run the robustness sweep over every network in a manifest
    Sweep(SweepArgs),
    /// Recompute aggregate curves from an existing records CSV
    Aggregate(AggregateArgs),
    /// Compare community counts on a network before and after adding k random edges
    DemoCommunities(DemoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    /// Incidence matrix CSV (headers auto-detected unless flags are given)
    Incidence,
    /// One row,col[,weight] interaction per line
    EdgeList,
}

#[derive(Parser)]
struct InputArgs {
    /// Network file to read
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Incidence)]
    format: FormatArg,
    /// Treat the first incidence line as column labels (disables auto-detection)
    #[arg(long)]
    header_row: bool,
    /// Treat the first incidence field of each row as the row label (disables auto-detection)
    #[arg(long)]
    label_column: bool,
    /// Remove species with no interactions instead of keeping them as isolated nodes
    #[arg(long)]
    drop_isolated: bool,
}

impl InputArgs {
    fn load(&self) -> Result<BipartiteGraph> {
        let text = fs::read_to_string(&self.file)?;
        let graph = match self.format {
            FormatArg::EdgeList => parse_edge_list(&text)?,
            FormatArg::Incidence => {
                if self.header_row || self.label_column {
                    parse_incidence_csv(&text, self.header_row, self.label_column)?
                } else {
                    parse_incidence_csv_auto(&text)?
                }
            }
        };
        let id = self
            .file
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "network".to_string());
        let interaction_type = graph.interaction_type();
        let graph = graph.with_metadata(id, interaction_type);
        if self.drop_isolated {
            graph.drop_isolated()
        } else {
            Ok(graph)
        }
    }
}

#[derive(Parser)]
struct MetricsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit one JSON object instead of a table
    #[arg(long)]
    json: bool,
    #[arg(long, env = "NETROBUST_SEED", default_value_t = 0)]
    seed: u64,
    /// PageRank damping factor
    #[arg(long, default_value_t = crate::centrality::DEFAULT_DAMPING)]
    damping: f64,
}

#[derive(Parser)]
struct SweepArgs {
    /// Manifest CSV: path,network_id,interaction_type,format
    manifest: PathBuf,
    /// Directory for records.csv, aggregate.csv and report.json
    #[arg(long)]
    out: PathBuf,
    #[arg(long, env = "NETROBUST_SEED", default_value_t = 0)]
    seed: u64,
    /// Candidate graphs per added-edge count
    #[arg(long, default_value_t = 10)]
    replicates: usize,
    /// Largest added fraction k/m to simulate
    #[arg(long, default_value_t = 0.5)]
    max_added_fraction: f64,
    /// Evaluate only every Nth k value
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// PageRank damping factor
    #[arg(long, default_value_t = crate::centrality::DEFAULT_DAMPING)]
    damping: f64,
    /// Comma-separated metric subset (default: all nine)
    #[arg(long, value_delimiter = ',')]
    metrics: Option<Vec<MetricId>>,
    /// Worker threads (default: machine parallelism)
    #[arg(long)]
    threads: Option<usize>,
    /// Keep going when individual networks fail
    #[arg(long, default_value_t = true, action = ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    allow_failures: bool,
    /// Number of added-fraction bins in aggregate.csv
    #[arg(long, default_value_t = DEFAULT_BIN_COUNT)]
    bins: usize,
    /// Remove isolated species from every network before sweeping
    #[arg(long)]
    drop_isolated: bool,
}

#[derive(Parser)]
struct AggregateArgs {
    /// records.csv produced by the sweep command
    records: PathBuf,
    /// Output aggregate CSV path
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BIN_COUNT)]
    bins: usize,
}

#[derive(Parser)]
struct DemoArgs {
    #[command(flatten)]
    input: InputArgs,
    /// How many random edges to add to the candidate graph
    k: usize,
    #[arg(long, env = "NETROBUST_SEED", default_value_t = 0)]
    seed: u64,
}

/// Parses std::env args and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Metrics(args) => cmd_metrics(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Aggregate(args) => cmd_aggregate(args),
        Command::DemoCommunities(args) => cmd_demo_communities(args),
    }
}

fn fail(err: impl std::fmt::Display) -> i32 {
    eprintln!("error: {err}");
    2
}

fn cmd_metrics(args: MetricsArgs) -> i32 {
    let graph = match args.input.load() {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let config = SweepConfig {
        base_seed: args.seed,
        pagerank_damping: args.damping,
        ..SweepConfig::default()
    };
    if let Err(e) = config.validate() {
        return fail(e);
    }
    let cell_seed = child_seed(args.seed, graph.network_id(), 0, 0);
    let values = match evaluate_metrics(&graph, &config, cell_seed) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };

    if args.json {
        let mut object = serde_json::Map::new();
        object.insert("network_id".into(), graph.network_id().into());
        object.insert("nodes".into(), graph.node_count().into());
        object.insert("edges".into(), graph.edge_count().into());
        object.insert("connectance".into(), graph.connectance().into());
        for metric in MetricId::ALL {
            let value = match values.get(&metric) {
                Some(&v) => serde_json::Value::from(v),
                None => serde_json::Value::Null,
            };
            object.insert(metric.name().into(), value);
        }
        println!("{}", serde_json::Value::Object(object));
    } else {
        println!("network: {}", graph.network_id());
        for (label, value) in metrics_rows(&graph, &values) {
            println!("{label:<22} {value}");
        }
    }
    0
}

fn cmd_sweep(args: SweepArgs) -> i32 {
    let config = SweepConfig {
        max_added_fraction: args.max_added_fraction,
        grid_stride: args.stride,
        replicates: args.replicates,
        base_seed: args.seed,
        metrics: args
            .metrics
            .clone()
            .map(|m| m.into_iter().collect::<BTreeSet<_>>())
            .unwrap_or_else(MetricId::all_set),
        pagerank_damping: args.damping,
    };
    if let Err(e) = config.validate() {
        return fail(e);
    }
    if args.bins == 0 {
        return fail("bin count must be at least 1");
    }

    let (entries, warnings) = match load_manifest(&args.manifest) {
        Ok(x) => x,
        Err(e) => return fail(e),
    };
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if let Err(e) = fs::create_dir_all(&args.out) {
        return fail(format!("cannot create {}: {e}", args.out.display()));
    }

    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return fail(e),
    };

    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut successes = 0usize;
    for entry in &entries {
        let result = pool.install(|| -> Result<_> {
            let graph = load_network(entry)?;
            let graph = if args.drop_isolated {
                graph.drop_isolated()?
            } else {
                graph
            };
            sweep(&graph, &config)
        });
        match result {
            Ok(mut network_records) => {
                successes += 1;
                records.append(&mut network_records);
            }
            Err(e) => failures.push(FailureEntry {
                network_id: entry.network_id.clone(),
                error: e.to_string(),
            }),
        }
    }

    if let Err(e) = write_records_csv(&args.out.join("records.csv"), &records) {
        return fail(e);
    }
    if !records.is_empty() {
        let curves = match aggregate(&records, args.bins) {
            Ok(c) => c,
            Err(e) => return fail(e),
        };
        if let Err(e) = write_aggregate_csv(&args.out.join("aggregate.csv"), &curves) {
            return fail(e);
        }
    }
    let report = RunReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        networks_processed: entries.len(),
        records_emitted: records.len(),
        failures: failures.clone(),
        warnings,
        config: ConfigEcho {
            manifest: args.manifest.display().to_string(),
            out_dir: args.out.display().to_string(),
            sweep: config,
            bin_count: args.bins,
            threads: args.threads.unwrap_or(0),
            allow_failures: args.allow_failures,
            drop_isolated: args.drop_isolated,
        },
    };
    if let Err(e) = write_report_json(&args.out.join("report.json"), &report) {
        return fail(e);
    }

    for failure in &failures {
        eprintln!("failed: {}: {}", failure.network_id, failure.error);
    }
    if !entries.is_empty() && successes == 0 {
        1
    } else if !failures.is_empty() && !args.allow_failures {
        1
    } else {
        0
    }
}

fn cmd_aggregate(args: AggregateArgs) -> i32 {
    let records = match crate::io::read_records_csv(&args.records) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let curves = match aggregate(&records, args.bins) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    if let Err(e) = write_aggregate_csv(&args.out, &curves) {
        return fail(e);
    }
    0
}

fn cmd_demo_communities(args: DemoArgs) -> i32 {
    let graph = match args.input.load() {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let community_metrics: BTreeSet<MetricId> = [
        MetricId::CommunitiesCnm,
        MetricId::CommunitiesLouvain,
        MetricId::CommunitiesGn,
        MetricId::CommunitiesLp,
    ]
    .into_iter()
    .collect();
    let config = SweepConfig {
        base_seed: args.seed,
        metrics: community_metrics.clone(),
        ..SweepConfig::default()
    };

    let observed_seed = child_seed(args.seed, graph.network_id(), 0, 0);
    let observed = match evaluate_metrics(&graph, &config, observed_seed) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };

    let candidate_seed = child_seed(args.seed, graph.network_id(), args.k, 1);
    let candidate_graph =
        match add_random_edges(&graph, args.k, edge_stream_seed(candidate_seed)) {
            Ok(g) => g,
            Err(e) => return fail(e),
        };
    let candidate = match evaluate_metrics(&candidate_graph, &config, candidate_seed) {
        Ok(v) => v,
        Err(e) => return fail(e),
    };

    println!(
        "network: {} ({} + {} nodes, {} edges)",
        graph.network_id(),
        graph.rows(),
        graph.cols(),
        graph.edge_count()
    );
    println!("{:<20} {:>10} {:>16}", "algorithm", "observed", format!("k={}", args.k));
    for metric in community_metrics {
        let name = match metric {
            MetricId::CommunitiesCnm => "cnm",
            MetricId::CommunitiesLouvain => "louvain",
            MetricId::CommunitiesGn => "girvan-newman",
            MetricId::CommunitiesLp => "label-propagation",
            _ => unreachable!(),
        };
        let show = |m: &std::collections::BTreeMap<MetricId, f64>| {
            m.get(&metric)
                .map(|v| format!("{v}"))
                .unwrap_or_else(|| "NA".to_string())
        };
        println!("{:<20} {:>10} {:>16}", name, show(&observed), show(&candidate));
    }
    0
}
