//! Node centrality: betweenness via per-source shortest-path dependency
//! accumulation, PageRank via damped power iteration, and the population
//! variance used to summarize either vector.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default PageRank damping factor.
pub const DEFAULT_DAMPING: f64 = 0.85;
/// Default PageRank convergence tolerance (L1 change between iterations).
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Default PageRank iteration cap.
pub const DEFAULT_MAX_ITERATIONS: usize = 1000;

/// Betweenness centrality of every node.
///
/// For node `v`, sums over unordered pairs `{s, t}` (with `v` distinct from
/// both) the fraction of shortest s-t paths passing through `v`. Pairs in
/// different components contribute nothing, and no normalization is applied.
/// Sources are processed in index order, so the floating-point result is
/// reproducible run to run.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut scores = vec![0.0f64; n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![-1i64; n];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut delta = vec![0.0f64; n];
    let mut stack = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

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
                delta[v] += sigma[v] * coeff;
            }
            if w != s {
                scores[w] += delta[w];
            }
        }
    }

    // The accumulation counts ordered (s, t) pairs; halve for unordered.
    for x in &mut scores {
        *x *= 0.5;
    }
    scores
}

/// Result of the PageRank power iteration.
#[derive(Debug, Clone)]
pub struct PageRankResult {
    /// Per-node rank, indexed as in the input graph; sums to 1.
    pub values: Vec<f64>,
    /// Iterations actually performed.
    pub iterations: usize,
    /// False when the iteration cap was hit before the L1 change dropped
    /// below tolerance; `values` then holds the last iterate.
    pub converged: bool,
}

/// Damped PageRank over the undirected graph (each edge walked both ways).
///
/// Starts uniform at 1/n and iterates
/// `PR(x) <- (1 - d)/n + d * (sum over neighbors y of PR(y)/deg(y) + dangling/n)`
/// where `dangling` is the pooled rank of degree-zero nodes, redistributed
/// uniformly so the vector keeps summing to 1. Stops once the L1 change is
/// at most `tolerance`.
pub fn pagerank(
    g: &Graph,
    damping: f64,
    tolerance: f64,
    max_iterations: usize,
) -> Result<PageRankResult> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyNetwork("pagerank needs at least one node".into()));
    }
    if !(damping > 0.0 && damping <= 1.0) {
        return Err(Error::Config(format!(
            "pagerank damping must be in (0, 1], got {damping}"
        )));
    }
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::Config(format!(
            "pagerank tolerance must be positive, got {tolerance}"
        )));
    }
    if max_iterations == 0 {
        return Err(Error::Config("pagerank needs at least one iteration".into()));
    }

    let nf = n as f64;
    let dangling: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 0).collect();
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0f64; n];

    for iteration in 1..=max_iterations {
        let dangling_mass: f64 = dangling.iter().map(|&v| rank[v]).sum();
        let base = (1.0 - damping) / nf + damping * dangling_mass / nf;
        for (x, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = g
                .neighbors(x)
                .iter()
                .map(|&y| rank[y] / g.degree(y) as f64)
                .sum();
            *slot = base + damping * inflow;
        }
        let change: f64 = rank
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .sum();
        std::mem::swap(&mut rank, &mut next);
        if change <= tolerance {
            return Ok(PageRankResult {
                values: rank,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(PageRankResult {
        values: rank,
        iterations: max_iterations,
        converged: false,
    })
}

/// Population variance, `sum((x - mean)^2) / n`.
pub fn variance(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("variance of an empty list"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    Ok(values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_center_carries_one_pair() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let b = betweenness(&g);
        assert_eq!(b, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn triangle_has_no_interior_paths() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(betweenness(&g), vec![0.0; 3]);
    }

    #[test]
    fn star_center_counts_leaf_pairs() {
        let g = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let b = betweenness(&g);
        assert_eq!(b[0], 6.0); // C(4, 2) leaf pairs
        assert!(b[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn disconnected_pairs_contribute_nothing() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(betweenness(&g), vec![0.0; 4]);
    }

    #[test]
    fn pagerank_uniform_start_and_cycle_fixed_point() {
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pr = pagerank(&c4, 0.85, 1e-12, 100).unwrap();
        assert!(pr.converged);
        for v in pr.values {
            assert!((v - 0.25).abs() < 1e-9);
        }
    }

    #[test]
    fn pagerank_path_matches_stationary_solution() {
        // Exact stationary values for a path on 3 nodes at damping 0.85:
        // endpoints 19/74, center 18/37 (from solving the 3x3 linear system).
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let pr = pagerank(&g, 0.85, 1e-14, 10_000).unwrap();
        assert!(pr.converged);
        assert!((pr.values[0] - 19.0 / 74.0).abs() < 1e-9);
        assert!((pr.values[1] - 18.0 / 37.0).abs() < 1e-9);
        assert!((pr.values[2] - 19.0 / 74.0).abs() < 1e-9);
    }

    #[test]
    fn pagerank_sums_to_one_with_isolated_nodes() {
        let g = Graph::new(5, &[(0, 1)]).unwrap();
        let pr = pagerank(&g, 0.85, 1e-12, 1000).unwrap();
        let sum: f64 = pr.values.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
        assert!(pr.values.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn pagerank_rejects_empty_graph_and_bad_damping() {
        let empty = Graph::new(0, &[]).unwrap();
        assert!(matches!(
            pagerank(&empty, 0.85, 1e-10, 10),
            Err(Error::EmptyNetwork(_))
        ));
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert!(matches!(pagerank(&g, 0.0, 1e-10, 10), Err(Error::Config(_))));
        assert!(matches!(pagerank(&g, 1.5, 1e-10, 10), Err(Error::Config(_))));
    }

    #[test]
    fn pagerank_reports_non_convergence() {
        // K2 is regular, so the uniform start is already the fixed point.
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let pr = pagerank(&g, 1.0, 1e-12, 3).unwrap();
        assert!(pr.converged);
        assert_eq!(pr.iterations, 1);
        // Undamped iteration oscillates with period 2 on non-regular
        // bipartite graphs such as a star.
        let star = Graph::new(3, &[(0, 1), (0, 2)]).unwrap();
        let pr = pagerank(&star, 1.0, 1e-12, 4).unwrap();
        assert!(!pr.converged);
        let sum: f64 = pr.values.iter().sum();
        assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn variance_examples() {
        assert_eq!(variance(&[0.3, 0.3, 0.3]).unwrap(), 0.0);
        assert_eq!(variance(&[0.0, 1.0]).unwrap(), 0.25);
        assert!((variance(&[6.0, 0.0, 0.0, 0.0, 0.0]).unwrap() - 5.76).abs() < 1e-12);
        assert!(matches!(variance(&[]), Err(Error::EmptyInput(_))));
    }
}
