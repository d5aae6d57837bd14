//! Shared test oracles and graph generators. Everything here is independent
//! of the library's computation paths: betweenness is literal path
//! enumeration, modularity is the literal double sum, optima come from
//! exhaustive partition search.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use netrobust::graph::{BipartiteGraph, Graph, InteractionType};

/// Betweenness by explicit enumeration of every shortest path.
pub fn brute_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut scores = vec![0.0f64; n];
    for s in 0..n {
        let dist = bfs_distances(g, s);
        for t in (s + 1)..n {
            if dist[t] < 0 {
                continue;
            }
            let mut paths = Vec::new();
            let mut current = vec![t];
            enumerate_paths(g, &dist, s, &mut current, &mut paths);
            let sigma = paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    scores[v] += 1.0 / sigma;
                }
            }
        }
    }
    scores
}

fn bfs_distances(g: &Graph, s: usize) -> Vec<i64> {
    let mut dist = vec![-1i64; g.node_count()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] < 0 {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Walks backwards from the path tail toward `s` along distance-decreasing
/// edges, collecting complete shortest paths.
fn enumerate_paths(g: &Graph, dist: &[i64], s: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let tail = *current.last().unwrap();
    if tail == s {
        let mut path = current.clone();
        path.reverse();
        out.push(path);
        return;
    }
    for &w in g.neighbors(tail) {
        if dist[w] == dist[tail] - 1 {
            current.push(w);
            enumerate_paths(g, dist, s, current, out);
            current.pop();
        }
    }
}

/// Modularity as the literal double sum over ordered node pairs,
/// including the diagonal terms.
pub fn brute_modularity(g: &Graph, assignment: &[usize]) -> f64 {
    let n = g.node_count();
    let m = g.edge_count() as f64;
    let two_m = 2.0 * m;
    let mut q = 0.0;
    for v in 0..n {
        for w in 0..n {
            if assignment[v] != assignment[w] {
                continue;
            }
            let a = if v != w && g.has_edge(v, w) { 1.0 } else { 0.0 };
            q += a - (g.degree(v) as f64) * (g.degree(w) as f64) / two_m;
        }
    }
    q / two_m
}

/// All set partitions of {0..n} as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut assignment = vec![0usize; n];
    fn recurse(i: usize, max_used: usize, assignment: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == assignment.len() {
            out.push(assignment.clone());
            return;
        }
        for value in 0..=max_used + 1 {
            assignment[i] = value;
            recurse(i + 1, max_used.max(value), assignment, out);
        }
    }
    recurse(1, 0, &mut assignment, &mut out);
    out
}

/// Highest modularity over every partition (exhaustive; keep n small).
pub fn exhaustive_best_modularity(g: &Graph) -> f64 {
    set_partitions(g.node_count())
        .iter()
        .map(|p| brute_modularity(g, p))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Every simple graph on n nodes (one per edge-subset bitmask).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
        .collect()
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.push((n - 1, 0));
    Graph::new(n, &edges).unwrap()
}

/// Star with the hub at index 0 and `leaves` leaves.
pub fn star_graph(leaves: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::new(leaves + 1, &edges).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    Graph::new(n, &edges).unwrap()
}

/// Complete bipartite graph with rows-first node order.
pub fn complete_bipartite_graph(a: usize, b: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..a)
        .flat_map(|r| (0..b).map(move |c| (r, a + c)))
        .collect();
    Graph::new(a + b, &edges).unwrap()
}

/// Random graph: each pair kept independently with probability p.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    Graph::new(n, &edges).unwrap()
}

/// Random connected graph: rejection-samples until connected.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut attempt = 0;
    loop {
        let g = random_graph(n, p, seed.wrapping_mul(1000).wrapping_add(attempt));
        if g.connected_components().0 == 1 {
            return g;
        }
        attempt += 1;
    }
}

/// Random bipartite network with r x c nodes and edge probability p.
pub fn random_bipartite(r: usize, c: usize, p: f64, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    BipartiteGraph::new(
        format!("rand_{r}x{c}_{seed}"),
        InteractionType::Other,
        (0..r).map(|i| format!("r{i}")).collect(),
        (0..c).map(|j| format!("c{j}")).collect(),
        edges,
    )
    .unwrap()
}

/// Applies a node relabeling: new index of node v is perm[v].
pub fn permute_graph(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::new(g.node_count(), &edges).unwrap()
}

/// Deterministic pseudo-random permutation of 0..n.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}
