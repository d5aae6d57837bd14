//! Missing-data sensitivity protocol: simulate candidate ground-truth
//! networks by adding k random absent cross-partition edges to an observed
//! network, evaluate every metric on each candidate, and aggregate the
//! results into per-interaction-type curves.
//!
//! Reproducibility: every stochastic choice derives from a child seed
//! computed by [`child_seed`], a documented splitmix64-based mix of
//! `(base_seed, network_id, k, replicate)`. Records therefore do not depend
//! on execution order, and sweeps may run cells in parallel.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{self, betweenness, pagerank, variance};
use crate::community::{self, cnm, girvan_newman, label_propagation, louvain};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, InteractionType};
use crate::spectral::{laplacian_spectrum, DEFAULT_ZERO_TOLERANCE};

/// The nine metric series tracked by the sweep: the six metric families,
/// with community detection expanded into its four algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetricId {
    ComponentCount,
    NonzeroEigenvalues,
    LargestEigenvalue,
    BetweennessVariance,
    PageRankVariance,
    CommunitiesCnm,
    CommunitiesLouvain,
    CommunitiesGn,
    CommunitiesLp,
}

impl MetricId {
    pub const ALL: [MetricId; 9] = [
        MetricId::ComponentCount,
        MetricId::NonzeroEigenvalues,
        MetricId::LargestEigenvalue,
        MetricId::BetweennessVariance,
        MetricId::PageRankVariance,
        MetricId::CommunitiesCnm,
        MetricId::CommunitiesLouvain,
        MetricId::CommunitiesGn,
        MetricId::CommunitiesLp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricId::ComponentCount => "component_count",
            MetricId::NonzeroEigenvalues => "nonzero_eigenvalues",
            MetricId::LargestEigenvalue => "largest_eigenvalue",
            MetricId::BetweennessVariance => "betweenness_variance",
            MetricId::PageRankVariance => "pagerank_variance",
            MetricId::CommunitiesCnm => "communities_cnm",
            MetricId::CommunitiesLouvain => "communities_louvain",
            MetricId::CommunitiesGn => "communities_gn",
            MetricId::CommunitiesLp => "communities_lp",
        }
    }

    pub fn all_set() -> BTreeSet<MetricId> {
        MetricId::ALL.iter().copied().collect()
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<MetricId> {
        let key = s.trim().to_lowercase().replace('-', "_");
        MetricId::ALL
            .iter()
            .copied()
            .find(|m| m.name() == key)
            .ok_or_else(|| Error::Config(format!("unknown metric {s:?}")))
    }
}

impl Serialize for MetricId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for MetricId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<MetricId, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters of one sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    /// Largest added-edge fraction k/m to reach, in (0, 0.5].
    pub max_added_fraction: f64,
    /// Step between successive k values (1 = the full grid).
    pub grid_stride: usize,
    /// Candidate graphs per k value.
    pub replicates: usize,
    /// Root of the per-cell seed derivation.
    pub base_seed: u64,
    /// Which metric series to evaluate.
    pub metrics: BTreeSet<MetricId>,
    /// Damping factor handed to PageRank.
    pub pagerank_damping: f64,
}

impl Default for SweepConfig {
    fn default() -> SweepConfig {
        SweepConfig {
            max_added_fraction: 0.5,
            grid_stride: 1,
            replicates: 10,
            base_seed: 0,
            metrics: MetricId::all_set(),
            pagerank_damping: centrality::DEFAULT_DAMPING,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.max_added_fraction > 0.0 && self.max_added_fraction <= 0.5) {
            return Err(Error::Config(format!(
                "max added fraction must be in (0, 0.5], got {}",
                self.max_added_fraction
            )));
        }
        if self.grid_stride == 0 {
            return Err(Error::Config("grid stride must be at least 1".into()));
        }
        if self.replicates == 0 {
            return Err(Error::Config("need at least one replicate".into()));
        }
        if self.metrics.is_empty() {
            return Err(Error::Config("no metrics requested".into()));
        }
        if !(self.pagerank_damping > 0.0 && self.pagerank_damping <= 1.0) {
            return Err(Error::Config(format!(
                "pagerank damping must be in (0, 1], got {}",
                self.pagerank_damping
            )));
        }
        Ok(())
    }
}

/// One (network, k, replicate, metric) observation.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessRecord {
    pub network_id: String,
    pub interaction_type: InteractionType,
    pub k_added: usize,
    /// Exactly `k_added / m` for the observed edge count m.
    pub added_fraction: f64,
    /// 0 for the baseline evaluation of the observed graph.
    pub replicate: usize,
    /// Child seed the cell was evaluated under.
    pub seed: u64,
    pub metric: MetricId,
    pub value: f64,
}

/// One bin of an aggregated robustness curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveBin {
    pub fraction_bin_center: f64,
    pub mean_normalized_value: f64,
    pub std: f64,
    pub n_samples: usize,
}

/// Mean/std of baseline-normalized metric values, binned by added fraction,
/// for one (interaction type, metric) group.
#[derive(Debug, Clone, Serialize)]
pub struct AggregateCurve {
    pub interaction_type: InteractionType,
    pub metric: MetricId,
    pub bins: Vec<CurveBin>,
    /// Networks whose baseline value was zero (or missing); their samples
    /// enter the curve unnormalized.
    pub unnormalized_networks: Vec<String>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// Deterministic per-cell seed: FNV-1a over the network id, then a chain of
/// splitmix64 finalizers absorbing the base seed, k, and the replicate.
/// Stable across platforms and executions.
pub fn child_seed(base_seed: u64, network_id: &str, k: usize, replicate: usize) -> u64 {
    let mut s = splitmix64(base_seed ^ fnv1a(network_id.as_bytes()));
    s = splitmix64(s ^ k as u64);
    splitmix64(s ^ replicate as u64)
}

// Distinct per-purpose streams derived from one cell seed.
const STREAM_EDGES: u64 = 0x4544_4745;
const STREAM_LOUVAIN: u64 = 0x4C4F_5556;
const STREAM_LABELS: u64 = 0x4C41_424C;

fn stream_seed(cell_seed: u64, tag: u64) -> u64 {
    splitmix64(cell_seed ^ tag)
}

/// Seed of the edge-sampling stream for one cell; lets callers rebuild the
/// exact candidate graph a record was measured on.
pub fn edge_stream_seed(cell_seed: u64) -> u64 {
    stream_seed(cell_seed, STREAM_EDGES)
}

/// Returns a copy of `g` with exactly `k` extra edges drawn uniformly
/// without replacement from the absent cross-partition pairs. The input is
/// untouched; the same seed always selects the same edges.
pub fn add_random_edges(g: &BipartiteGraph, k: usize, rng_seed: u64) -> Result<BipartiteGraph> {
    let mut absent = absent_pairs(g);
    if k > absent.len() {
        return Err(Error::Capacity {
            requested: k,
            available: absent.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    partial_shuffle(&mut absent, k, &mut rng);
    let edges: Vec<(usize, usize)> = g.edges().chain(absent[..k].iter().copied()).collect();
    BipartiteGraph::new(
        g.network_id(),
        g.interaction_type(),
        g.row_labels().to_vec(),
        g.col_labels().to_vec(),
        edges,
    )
}

fn absent_pairs(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    let mut present = vec![false; g.rows() * g.cols()];
    for (r, c) in g.edges() {
        present[r * g.cols() + c] = true;
    }
    let mut absent = Vec::with_capacity(g.rows() * g.cols() - g.edge_count());
    for r in 0..g.rows() {
        for c in 0..g.cols() {
            if !present[r * g.cols() + c] {
                absent.push((r, c));
            }
        }
    }
    absent
}

/// First `k` positions of a Fisher-Yates shuffle: a uniform k-subset in
/// uniform random order.
fn partial_shuffle<T>(items: &mut [T], k: usize, rng: &mut ChaCha8Rng) {
    let n = items.len();
    for i in 0..k.min(n) {
        let j = i + rng.random_range(0..n - i);
        items.swap(i, j);
    }
}

/// Evaluates the requested metrics on one network. Community metrics are
/// omitted from the map when the graph has no edges (modularity undefined);
/// everything else is always present.
///
/// The component count is read from the Laplacian zero-eigenvalue count and
/// cross-checked against BFS in debug builds.
pub fn evaluate_metrics(
    g: &BipartiteGraph,
    config: &SweepConfig,
    cell_seed: u64,
) -> Result<BTreeMap<MetricId, f64>> {
    let metrics = &config.metrics;
    let undirected = g.to_undirected();
    let mut values = BTreeMap::new();

    let wants = |m: MetricId| metrics.contains(&m);

    if wants(MetricId::ComponentCount)
        || wants(MetricId::NonzeroEigenvalues)
        || wants(MetricId::LargestEigenvalue)
    {
        let spectrum = laplacian_spectrum(&undirected.laplacian(), DEFAULT_ZERO_TOLERANCE)?;
        debug_assert_eq!(
            spectrum.component_count(),
            undirected.connected_components().0,
            "spectral and BFS component counts disagree"
        );
        if wants(MetricId::ComponentCount) {
            values.insert(MetricId::ComponentCount, spectrum.component_count() as f64);
        }
        if wants(MetricId::NonzeroEigenvalues) {
            values.insert(MetricId::NonzeroEigenvalues, spectrum.nonzero_count() as f64);
        }
        if wants(MetricId::LargestEigenvalue) {
            values.insert(MetricId::LargestEigenvalue, spectrum.largest());
        }
    }

    if wants(MetricId::BetweennessVariance) {
        values.insert(
            MetricId::BetweennessVariance,
            variance(&betweenness(&undirected))?,
        );
    }
    if wants(MetricId::PageRankVariance) {
        let pr = pagerank(
            &undirected,
            config.pagerank_damping,
            centrality::DEFAULT_TOLERANCE,
            centrality::DEFAULT_MAX_ITERATIONS,
        )?;
        values.insert(MetricId::PageRankVariance, variance(&pr.values)?);
    }

    if undirected.edge_count() > 0 {
        if wants(MetricId::CommunitiesCnm) {
            values.insert(
                MetricId::CommunitiesCnm,
                cnm(&undirected)?.community_count() as f64,
            );
        }
        if wants(MetricId::CommunitiesLouvain) {
            let seed = stream_seed(cell_seed, STREAM_LOUVAIN);
            values.insert(
                MetricId::CommunitiesLouvain,
                louvain(&undirected, seed)?.community_count() as f64,
            );
        }
        if wants(MetricId::CommunitiesGn) {
            values.insert(
                MetricId::CommunitiesGn,
                girvan_newman(&undirected)?.community_count() as f64,
            );
        }
        if wants(MetricId::CommunitiesLp) {
            let seed = stream_seed(cell_seed, STREAM_LABELS);
            values.insert(
                MetricId::CommunitiesLp,
                label_propagation(&undirected, seed, community::DEFAULT_MAX_ROUNDS)
                    .community_count() as f64,
            );
        }
    }

    Ok(values)
}

/// The k grid for a network: multiples of the stride up to
/// `floor(m * max_added_fraction)`, additionally capped at the number of
/// absent cross-partition pairs so near-complete networks stay feasible.
pub fn sweep_grid(g: &BipartiteGraph, config: &SweepConfig) -> Result<Vec<usize>> {
    let m = g.edge_count();
    let capacity = g.rows() * g.cols() - m;
    let by_fraction = (m as f64 * config.max_added_fraction).floor() as usize;
    let k_max = by_fraction.min(capacity);
    let ks: Vec<usize> = (1..=k_max / config.grid_stride)
        .map(|i| i * config.grid_stride)
        .collect();
    if ks.is_empty() {
        return Err(Error::EmptyGrid(format!(
            "network {:?} with m = {m}, capacity = {capacity}, stride = {} yields no k values",
            g.network_id(),
            config.grid_stride
        )));
    }
    Ok(ks)
}

/// Runs the full protocol on one network: a baseline evaluation of the
/// observed graph (k = 0, replicate 0), then `replicates` independent
/// candidate graphs for every k in the grid. Cells run in parallel and the
/// record list is order-normalized by (k, replicate, metric).
pub fn sweep(g: &BipartiteGraph, config: &SweepConfig) -> Result<Vec<RobustnessRecord>> {
    config.validate()?;
    let ks = sweep_grid(g, config)?;
    let m = g.edge_count();

    let mut records = baseline_records(g, config)?;

    let cells: Vec<(usize, usize)> = ks
        .iter()
        .flat_map(|&k| (1..=config.replicates).map(move |r| (k, r)))
        .collect();
    let mut evaluated: Vec<(usize, usize, u64, BTreeMap<MetricId, f64>)> = cells
        .into_par_iter()
        .map(|(k, replicate)| {
            let seed = child_seed(config.base_seed, g.network_id(), k, replicate);
            let candidate = add_random_edges(g, k, stream_seed(seed, STREAM_EDGES))?;
            let values = evaluate_metrics(&candidate, config, seed)?;
            Ok((k, replicate, seed, values))
        })
        .collect::<Result<_>>()?;
    evaluated.sort_by_key(|&(k, r, _, _)| (k, r));

    for (k, replicate, seed, values) in evaluated {
        push_records(&mut records, g, k, m, replicate, seed, &values);
    }
    Ok(records)
}

/// Cumulative-mode sweep: each replicate draws one random ordered sequence
/// of absent pairs and the k-th grid point evaluates the observed graph
/// plus the first k edges of that sequence. Prefix nesting makes
/// trajectories suitable for monotonicity analysis.
pub fn sweep_cumulative(g: &BipartiteGraph, config: &SweepConfig) -> Result<Vec<RobustnessRecord>> {
    config.validate()?;
    let ks = sweep_grid(g, config)?;
    let m = g.edge_count();
    let k_max = *ks.last().unwrap();

    let mut records = baseline_records(g, config)?;

    let mut evaluated: Vec<(usize, usize, u64, BTreeMap<MetricId, f64>)> = (1..=config
        .replicates)
        .into_par_iter()
        .map(|replicate| {
            let sequence_seed = stream_seed(
                child_seed(config.base_seed, g.network_id(), 0, replicate),
                STREAM_EDGES,
            );
            let mut absent = absent_pairs(g);
            let mut rng = ChaCha8Rng::seed_from_u64(sequence_seed);
            partial_shuffle(&mut absent, k_max, &mut rng);

            let mut out = Vec::new();
            for &k in &ks {
                let seed = child_seed(config.base_seed, g.network_id(), k, replicate);
                let edges: Vec<(usize, usize)> =
                    g.edges().chain(absent[..k].iter().copied()).collect();
                let candidate = BipartiteGraph::new(
                    g.network_id(),
                    g.interaction_type(),
                    g.row_labels().to_vec(),
                    g.col_labels().to_vec(),
                    edges,
                )?;
                let values = evaluate_metrics(&candidate, config, seed)?;
                out.push((k, replicate, seed, values));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    evaluated.sort_by_key(|&(k, r, _, _)| (k, r));

    for (k, replicate, seed, values) in evaluated {
        push_records(&mut records, g, k, m, replicate, seed, &values);
    }
    Ok(records)
}

fn baseline_records(g: &BipartiteGraph, config: &SweepConfig) -> Result<Vec<RobustnessRecord>> {
    let seed = child_seed(config.base_seed, g.network_id(), 0, 0);
    let values = evaluate_metrics(g, config, seed)?;
    let mut records = Vec::new();
    push_records(&mut records, g, 0, g.edge_count(), 0, seed, &values);
    Ok(records)
}

fn push_records(
    records: &mut Vec<RobustnessRecord>,
    g: &BipartiteGraph,
    k: usize,
    m: usize,
    replicate: usize,
    seed: u64,
    values: &BTreeMap<MetricId, f64>,
) {
    for metric in MetricId::ALL {
        if let Some(&value) = values.get(&metric) {
            records.push(RobustnessRecord {
                network_id: g.network_id().to_string(),
                interaction_type: g.interaction_type(),
                k_added: k,
                added_fraction: k as f64 / m as f64,
                replicate,
                seed,
                metric,
                value,
            });
        }
    }
}

/// Aggregates records into per-(interaction type, metric) curves.
///
/// Each network's values are divided by that network's own k = 0 baseline
/// so differently sized networks average on a common scale. Networks whose
/// baseline is zero (or absent from the records) cannot be normalized;
/// their samples pass through raw and the network id is flagged on the
/// curve. Added fractions are binned into `bin_count` equal-width bins over
/// [0, 0.5]; only non-empty bins are emitted.
pub fn aggregate(records: &[RobustnessRecord], bin_count: usize) -> Result<Vec<AggregateCurve>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("no records to aggregate"));
    }
    if bin_count == 0 {
        return Err(Error::Config("bin count must be at least 1".into()));
    }

    let mut baselines: BTreeMap<(&str, MetricId), f64> = BTreeMap::new();
    for r in records {
        if r.k_added == 0 && r.replicate == 0 {
            baselines.insert((r.network_id.as_str(), r.metric), r.value);
        }
    }

    let width = 0.5 / bin_count as f64;
    let mut groups: BTreeMap<(InteractionType, MetricId), (Vec<Vec<f64>>, BTreeSet<String>)> =
        BTreeMap::new();
    for r in records {
        let (bins, unnormalized) = groups
            .entry((r.interaction_type, r.metric))
            .or_insert_with(|| (vec![Vec::new(); bin_count], BTreeSet::new()));
        let value = match baselines.get(&(r.network_id.as_str(), r.metric)) {
            Some(&b) if b != 0.0 => r.value / b,
            _ => {
                unnormalized.insert(r.network_id.clone());
                r.value
            }
        };
        let bin = ((r.added_fraction / width) as usize).min(bin_count - 1);
        bins[bin].push(value);
    }

    let mut curves = Vec::new();
    for ((interaction_type, metric), (bins, unnormalized)) in groups {
        let mut out_bins = Vec::new();
        for (i, samples) in bins.iter().enumerate() {
            if samples.is_empty() {
                continue;
            }
            let n = samples.len() as f64;
            let mean = samples.iter().sum::<f64>() / n;
            let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
            out_bins.push(CurveBin {
                fraction_bin_center: (i as f64 + 0.5) * width,
                mean_normalized_value: mean,
                std: var.sqrt(),
                n_samples: samples.len(),
            });
        }
        curves.push(AggregateCurve {
            interaction_type,
            metric,
            bins: out_bins,
            unnormalized_networks: unnormalized.into_iter().collect(),
        });
    }
    Ok(curves)
}
