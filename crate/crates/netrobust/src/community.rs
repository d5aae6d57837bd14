//! Community detection: modularity and the four detection algorithms
//! (greedy merge, Louvain, Girvan-Newman, label propagation).
//!
//! Determinism contracts:
//!
//! * The greedy merge and Girvan-Newman are fully deterministic; ties are
//!   broken toward the lexicographically smallest community/edge pair.
//! * Louvain and label propagation draw every random choice from a
//!   ChaCha8 stream seeded with the caller's seed, so identical seeds give
//!   identical partitions on every platform.
//! * Merge/move gain comparisons in the greedy merge and Louvain are done
//!   in exact integer arithmetic (all inputs are unweighted, so gains are
//!   rationals over a common denominator), which keeps tie handling free
//!   of floating-point dust.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default round cap for label propagation.
pub const DEFAULT_MAX_ROUNDS: usize = 100;

/// A community assignment: one id per node, ids contiguous from 0 in order
/// of first appearance by node index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    community_count: usize,
}

impl Partition {
    /// Normalizes arbitrary labels into contiguous community ids.
    pub fn from_assignment(raw: &[usize]) -> Partition {
        let mut renumber: HashMap<usize, usize> = HashMap::new();
        let mut assignment = Vec::with_capacity(raw.len());
        for &label in raw {
            let next = renumber.len();
            let id = *renumber.entry(label).or_insert(next);
            assignment.push(id);
        }
        Partition {
            assignment,
            community_count: renumber.len(),
        }
    }

    /// Each node in its own community.
    pub fn singletons(n: usize) -> Partition {
        Partition {
            assignment: (0..n).collect(),
            community_count: n,
        }
    }

    /// All nodes in one community.
    pub fn all_in_one(n: usize) -> Partition {
        Partition {
            assignment: vec![0; n],
            community_count: if n == 0 { 0 } else { 1 },
        }
    }

    pub fn community_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Which detection algorithm produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Cnm,
    Louvain,
    GirvanNewman,
    LabelPropagation,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cnm => "cnm",
            Algorithm::Louvain => "louvain",
            Algorithm::GirvanNewman => "girvan-newman",
            Algorithm::LabelPropagation => "label-propagation",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Output of one detection run. `modularity` is `None` when the graph has
/// no edges (modularity is undefined there); the partition is then the
/// singleton partition.
#[derive(Debug, Clone)]
pub struct DetectionResult {
    pub partition: Partition,
    pub modularity: Option<f64>,
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
}

impl DetectionResult {
    pub fn community_count(&self) -> usize {
        self.partition.community_count()
    }
}

/// Newman modularity Q of a partition: the fraction of edges inside
/// communities minus its expectation under the degree-preserving null
/// model. Q lies in [-1/2, 1].
pub fn modularity(g: &Graph, partition: &Partition) -> Result<f64> {
    let m = g.edge_count();
    if m == 0 {
        return Err(Error::UndefinedModularity);
    }
    assert_eq!(
        partition.len(),
        g.node_count(),
        "partition must cover every node"
    );
    let count = partition.community_count();
    let mut internal = vec![0u64; count];
    let mut degree_sum = vec![0u64; count];
    for (u, v) in g.edges() {
        if partition.community_of(u) == partition.community_of(v) {
            internal[partition.community_of(u)] += 1;
        }
    }
    for v in 0..g.node_count() {
        degree_sum[partition.community_of(v)] += g.degree(v) as u64;
    }
    let mf = m as f64;
    let two_m = 2.0 * mf;
    let mut q = 0.0;
    for c in 0..count {
        let frac = degree_sum[c] as f64 / two_m;
        q += internal[c] as f64 / mf - frac * frac;
    }
    Ok(q)
}

fn edgeless_result(n: usize, algorithm: Algorithm, seed: Option<u64>) -> DetectionResult {
    DetectionResult {
        partition: Partition::singletons(n),
        modularity: None,
        algorithm,
        seed,
    }
}

/// Greedy modularity maximization: start from singletons and repeatedly
/// merge the community pair with the largest strictly positive modularity
/// gain, stopping when no merge improves Q. Equal gains resolve to the
/// lexicographically smallest (id_a, id_b) pair, ids being the lowest
/// original node index ever merged into the community.
pub fn cnm(g: &Graph) -> Result<DetectionResult> {
    let n = g.node_count();
    let m = g.edge_count();
    if m == 0 {
        return Ok(edgeless_result(n, Algorithm::Cnm, None));
    }
    let two_m = 2 * m as i64;

    // Gain of merging i and j, scaled by 2m^2 to stay integral:
    //   gain = 2m * e_ij - L_i * L_j
    let mut degree_sum: Vec<i64> = (0..n).map(|v| g.degree(v) as i64).collect();
    let mut pair_edges: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (u, v) in g.edges() {
        pair_edges.insert((u, v), 1);
    }
    let mut neighbors: Vec<BTreeSet<usize>> = (0..n).map(|_| BTreeSet::new()).collect();
    for (u, v) in g.edges() {
        neighbors[u].insert(v);
        neighbors[v].insert(u);
    }
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();

    loop {
        let mut best: Option<((usize, usize), i64)> = None;
        for (&pair, &count) in &pair_edges {
            let gain = two_m * count - degree_sum[pair.0] * degree_sum[pair.1];
            if gain > 0 && best.map_or(true, |(_, bg)| gain > bg) {
                best = Some((pair, gain));
            }
        }
        let Some(((a, b), _)) = best else { break };

        // Merge community b into a (a < b by key construction).
        degree_sum[a] += degree_sum[b];
        degree_sum[b] = 0;
        let moved = std::mem::take(&mut members[b]);
        members[a].extend(moved);
        pair_edges.remove(&(a, b));
        neighbors[a].remove(&b);
        let b_neighbors = std::mem::take(&mut neighbors[b]);
        for x in b_neighbors {
            if x == a {
                continue;
            }
            let old_key = (b.min(x), b.max(x));
            let weight = pair_edges.remove(&old_key).expect("tracked neighbor pair");
            let new_key = (a.min(x), a.max(x));
            *pair_edges.entry(new_key).or_insert(0) += weight;
            neighbors[x].remove(&b);
            neighbors[x].insert(a);
            neighbors[a].insert(x);
        }
    }

    let mut raw = vec![0usize; n];
    for (id, group) in members.iter().enumerate() {
        for &v in group {
            raw[v] = id;
        }
    }
    let partition = Partition::from_assignment(&raw);
    let q = modularity(g, &partition)?;
    Ok(DetectionResult {
        partition,
        modularity: Some(q),
        algorithm: Algorithm::Cnm,
        seed: None,
    })
}

/// A coarse multigraph used between Louvain levels. Edge weights are edge
/// multiplicities of the original graph; the self-loop entry at `adj[v][v]`
/// stores twice the internal edge count, so node weights match the original
/// degree sums and modularity is preserved level to level.
struct CoarseGraph {
    adj: Vec<BTreeMap<usize, i64>>,
    node_weight: Vec<i64>,
}

impl CoarseGraph {
    fn from_graph(g: &Graph) -> CoarseGraph {
        let n = g.node_count();
        let mut adj = vec![BTreeMap::new(); n];
        for (u, v) in g.edges() {
            adj[u].insert(v, 1);
            adj[v].insert(u, 1);
        }
        let node_weight = (0..n).map(|v| g.degree(v) as i64).collect();
        CoarseGraph { adj, node_weight }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }
}

/// One Louvain local phase. Returns the per-node community assignment and
/// whether any move happened. Gains are compared as exact integers scaled
/// by 4m^2: `gain(C) = 2W * k_in(C) - k_v * sigma_tot(C)`.
fn louvain_local_phase(
    coarse: &CoarseGraph,
    two_w: i64,
    rng: &mut ChaCha8Rng,
) -> (bool, Vec<usize>) {
    let cn = coarse.len();
    let mut community: Vec<usize> = (0..cn).collect();
    let mut sigma_tot: Vec<i64> = coarse.node_weight.clone();
    let mut order: Vec<usize> = (0..cn).collect();
    order.shuffle(rng);

    let mut improved = false;
    loop {
        let mut moves = 0usize;
        for &v in &order {
            let old = community[v];
            let k_v = coarse.node_weight[v];
            sigma_tot[old] -= k_v;

            let mut weight_to: BTreeMap<usize, i64> = BTreeMap::new();
            for (&u, &w) in &coarse.adj[v] {
                if u != v {
                    *weight_to.entry(community[u]).or_insert(0) += w;
                }
            }
            let gain =
                |comm: usize, k_in: i64| two_w * k_in - k_v * sigma_tot[comm];

            let mut best_comm = old;
            let mut best_gain = gain(old, weight_to.get(&old).copied().unwrap_or(0));
            for (&comm, &k_in) in &weight_to {
                if comm == old {
                    continue;
                }
                let this_gain = gain(comm, k_in);
                if this_gain > best_gain {
                    best_gain = this_gain;
                    best_comm = comm;
                }
            }

            community[v] = best_comm;
            sigma_tot[best_comm] += k_v;
            if best_comm != old {
                moves += 1;
                improved = true;
            }
        }
        if moves == 0 {
            break;
        }
    }
    (improved, community)
}

/// Coarsens by community: returns the new graph plus the community-id ->
/// new-node renumbering (first appearance by node index).
fn louvain_aggregate(coarse: &CoarseGraph, community: &[usize]) -> (CoarseGraph, Vec<usize>) {
    let cn = coarse.len();
    let mut renumber: HashMap<usize, usize> = HashMap::new();
    for v in 0..cn {
        let next = renumber.len();
        renumber.entry(community[v]).or_insert(next);
    }
    let new_n = renumber.len();
    let mut adj = vec![BTreeMap::new(); new_n];
    for u in 0..cn {
        let cu = renumber[&community[u]];
        for (&v, &w) in &coarse.adj[u] {
            if v == u {
                *adj[cu].entry(cu).or_insert(0) += w;
            } else if v > u {
                let cv = renumber[&community[v]];
                if cu == cv {
                    *adj[cu].entry(cu).or_insert(0) += 2 * w;
                } else {
                    *adj[cu].entry(cv).or_insert(0) += w;
                    *adj[cv].entry(cu).or_insert(0) += w;
                }
            }
        }
    }
    let node_weight = adj
        .iter()
        .map(|nbrs| nbrs.values().sum::<i64>())
        .collect();
    let mut mapping = vec![0usize; cn];
    for v in 0..cn {
        mapping[v] = renumber[&community[v]];
    }
    (CoarseGraph { adj, node_weight }, mapping)
}

/// Louvain community detection: repeated local move phases followed by
/// graph coarsening, until no move increases modularity. Node visiting
/// order is one seeded shuffle per level.
pub fn louvain(g: &Graph, seed: u64) -> Result<DetectionResult> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Ok(edgeless_result(n, Algorithm::Louvain, Some(seed)));
    }
    let two_w = 2 * g.edge_count() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut coarse = CoarseGraph::from_graph(g);
    let mut node_to_coarse: Vec<usize> = (0..n).collect();
    loop {
        let (improved, community) = louvain_local_phase(&coarse, two_w, &mut rng);
        if !improved {
            break;
        }
        let (next, mapping) = louvain_aggregate(&coarse, &community);
        for slot in &mut node_to_coarse {
            *slot = mapping[*slot];
        }
        coarse = next;
        if coarse.len() == 1 {
            break;
        }
    }

    let partition = Partition::from_assignment(&node_to_coarse);
    let q = modularity(g, &partition)?;
    Ok(DetectionResult {
        partition,
        modularity: Some(q),
        algorithm: Algorithm::Louvain,
        seed: Some(seed),
    })
}

/// Edge betweenness: for each edge, the sum over unordered node pairs of
/// the fraction of shortest paths between them that traverse the edge.
/// Returned in the graph's canonical edge order.
pub fn edge_betweenness(g: &Graph) -> Vec<((usize, usize), f64)> {
    let n = g.node_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    // CSR-style edge index over the canonical (u < v) ordering: offsets[u]
    // counts edges with smaller first endpoint, the rank of v among u's
    // larger neighbors disambiguates within u.
    let mut offsets = vec![0usize; n + 1];
    for &(u, _) in &edges {
        offsets[u + 1] += 1;
    }
    for u in 0..n {
        offsets[u + 1] += offsets[u];
    }
    let edge_id = |a: usize, b: usize| {
        let (u, v) = (a.min(b), a.max(b));
        let nbrs = g.neighbors(u);
        let first_larger = nbrs.partition_point(|&x| x <= u);
        let rank = nbrs[first_larger..]
            .binary_search(&v)
            .expect("endpoint pair must be an edge");
        offsets[u] + rank
    };

    let mut scores = vec![0.0f64; edges.len()];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut delta = vec![0.0f64; n];
    let mut stack = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::new();

    for s in 0..n {
        sigma.fill(0.0);
        dist.fill(-1);
        delta.fill(0.0);
        for p in &mut preds {
            p.clear();
        }
        stack.clear();

        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in g.neighbors(v) {
                if dist[w] < 0 {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }

        while let Some(w) = stack.pop() {
            let coeff = (1.0 + delta[w]) / sigma[w];
            for &v in &preds[w] {
                let contribution = sigma[v] * coeff;
                scores[edge_id(v, w)] += contribution;
                delta[v] += contribution;
            }
        }
    }

    // Ordered pairs were counted twice each; halve for unordered.
    edges
        .into_iter()
        .zip(scores)
        .map(|(e, s)| (e, s * 0.5))
        .collect()
}

/// Girvan-Newman with a modularity stopping criterion: repeatedly remove
/// the edge of highest betweenness (ties to the lowest (u, v) pair),
/// score the connected-component partition of each intermediate graph
/// against the *original* graph's modularity, and return the best
/// partition seen, including the initial components partition.
pub fn girvan_newman(g: &Graph) -> Result<DetectionResult> {
    girvan_newman_trace(g).map(|(result, _)| result)
}

/// Like [`girvan_newman`] but also returns the sequence of evaluated
/// modularity values, one per intermediate partition (initial one first).
pub fn girvan_newman_trace(g: &Graph) -> Result<(DetectionResult, Vec<f64>)> {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return Ok((edgeless_result(n, Algorithm::GirvanNewman, None), Vec::new()));
    }

    let mut work = g.clone();
    let (_, labels) = work.connected_components();
    let mut best_partition = Partition::from_assignment(&labels);
    let mut best_q = modularity(g, &best_partition)?;
    let mut trace = vec![best_q];

    while work.edge_count() > 0 {
        let eb = edge_betweenness(&work);
        let mut best_edge = eb[0].0;
        let mut best_score = eb[0].1;
        for &(edge, score) in &eb[1..] {
            if score > best_score {
                best_score = score;
                best_edge = edge;
            }
        }
        work.remove_edge(best_edge.0, best_edge.1);

        let (_, labels) = work.connected_components();
        let partition = Partition::from_assignment(&labels);
        let q = modularity(g, &partition)?;
        trace.push(q);
        if q > best_q {
            best_q = q;
            best_partition = partition;
        }
    }

    Ok((
        DetectionResult {
            partition: best_partition,
            modularity: Some(best_q),
            algorithm: Algorithm::GirvanNewman,
            seed: None,
        },
        trace,
    ))
}

/// Asynchronous label propagation. Every round visits all nodes in a fresh
/// seeded shuffle; each node adopts the label most frequent among its
/// neighbors, breaking ties uniformly at random (the node's current label
/// survives only if it is among the maxima and drawn). Converges when every
/// node's label is already maximal, or after `max_rounds`. Isolated nodes
/// keep their own labels.
pub fn label_propagation(g: &Graph, seed: u64, max_rounds: usize) -> DetectionResult {
    let n = g.node_count();
    let m = g.edge_count();
    let mut labels: Vec<usize> = (0..n).collect();
    if m > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..n).collect();
        let mut counts: Vec<usize> = vec![0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut candidates: Vec<usize> = Vec::new();

        for _ in 0..max_rounds {
            order.shuffle(&mut rng);
            for &v in &order {
                if g.degree(v) == 0 {
                    continue;
                }
                touched.clear();
                let mut max_count = 0;
                for &w in g.neighbors(v) {
                    let label = labels[w];
                    if counts[label] == 0 {
                        touched.push(label);
                    }
                    counts[label] += 1;
                    max_count = max_count.max(counts[label]);
                }
                candidates.clear();
                candidates.extend(touched.iter().copied().filter(|&l| counts[l] == max_count));
                candidates.sort_unstable();
                for &l in &touched {
                    counts[l] = 0;
                }
                let winner = if candidates.len() == 1 {
                    candidates[0]
                } else {
                    candidates[rng.random_range(0..candidates.len())]
                };
                labels[v] = winner;
            }
            if all_labels_maximal(g, &labels, &mut counts, &mut touched) {
                break;
            }
        }
    }
    let partition = Partition::from_assignment(&labels);
    let q = if m > 0 {
        Some(modularity(g, &partition).expect("m > 0"))
    } else {
        None
    };
    DetectionResult {
        partition,
        modularity: q,
        algorithm: Algorithm::LabelPropagation,
        seed: Some(seed),
    }
}

fn all_labels_maximal(
    g: &Graph,
    labels: &[usize],
    counts: &mut [usize],
    touched: &mut Vec<usize>,
) -> bool {
    for v in 0..g.node_count() {
        if g.degree(v) == 0 {
            continue;
        }
        touched.clear();
        let mut max_count = 0;
        for &w in g.neighbors(v) {
            let label = labels[w];
            if counts[label] == 0 {
                touched.push(label);
            }
            counts[label] += 1;
            max_count = max_count.max(counts[label]);
        }
        let own = counts[labels[v]];
        for &l in touched.iter() {
            counts[l] = 0;
        }
        if own != max_count {
            return false;
        }
    }
    true
}
