//! Graph data model: bipartite networks, the unified undirected view used by
//! all algorithms, and the dense symmetric matrices built from them.
//!
//! A [`BipartiteGraph`] keeps its two partitions (rows and columns) separate;
//! [`BipartiteGraph::to_undirected`] flattens it into a [`Graph`] with row
//! nodes first, then column nodes. All metric code operates on [`Graph`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The kind of species interaction a network records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InteractionType {
    Pollination,
    HostParasite,
    PlantAnt,
    SeedDispersal,
    Other,
}

impl InteractionType {
    /// Canonical lowercase name, as emitted in CSV output.
    pub fn name(self) -> &'static str {
        match self {
            InteractionType::Pollination => "pollination",
            InteractionType::HostParasite => "host-parasite",
            InteractionType::PlantAnt => "plant-ant",
            InteractionType::SeedDispersal => "seed-dispersal",
            InteractionType::Other => "other",
        }
    }

    /// Lenient lookup: case-insensitive, ignoring `-`, `_` and spaces.
    /// Returns `None` for names outside the four known types plus "other".
    pub fn parse_lenient(s: &str) -> Option<InteractionType> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(|c| c.to_lowercase())
            .collect();
        match key.as_str() {
            "pollination" => Some(InteractionType::Pollination),
            "hostparasite" => Some(InteractionType::HostParasite),
            "plantant" => Some(InteractionType::PlantAnt),
            "seeddispersal" => Some(InteractionType::SeedDispersal),
            "other" => Some(InteractionType::Other),
            _ => None,
        }
    }
}

impl fmt::Display for InteractionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An observed bipartite interaction network.
///
/// Edges connect a row-partition node (by index into `row_labels`) to a
/// column-partition node (by index into `col_labels`); the pair type makes
/// within-partition edges unrepresentable. Edges are stored in a sorted set,
/// so iteration order is deterministic and duplicates collapse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    network_id: String,
    interaction_type: InteractionType,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    /// Builds a network, validating that every edge index is in range.
    /// Both partitions must be non-empty.
    pub fn new(
        network_id: impl Into<String>,
        interaction_type: InteractionType,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<BipartiteGraph> {
        if row_labels.is_empty() || col_labels.is_empty() {
            return Err(Error::EmptyNetwork(
                "both partitions must contain at least one node".into(),
            ));
        }
        let mut set = BTreeSet::new();
        for (r, c) in edges {
            if r >= row_labels.len() || c >= col_labels.len() {
                return Err(Error::InvalidGraph(format!(
                    "edge ({r}, {c}) out of range for {}x{} network",
                    row_labels.len(),
                    col_labels.len()
                )));
            }
            set.insert((r, c));
        }
        Ok(BipartiteGraph {
            network_id: network_id.into(),
            interaction_type,
            row_labels,
            col_labels,
            edges: set,
        })
    }

    pub fn network_id(&self) -> &str {
        &self.network_id
    }

    pub fn interaction_type(&self) -> InteractionType {
        self.interaction_type
    }

    /// Replaces the identifying metadata, e.g. when loading through a manifest.
    pub fn with_metadata(
        mut self,
        network_id: impl Into<String>,
        interaction_type: InteractionType,
    ) -> BipartiteGraph {
        self.network_id = network_id.into();
        self.interaction_type = interaction_type;
        self
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// Number of row-partition nodes.
    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    /// Number of column-partition nodes.
    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    /// Total node count across both partitions.
    pub fn node_count(&self) -> usize {
        self.rows() + self.cols()
    }

    /// Number of interactions, `m`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains_edge(&self, row: usize, col: usize) -> bool {
        self.edges.contains(&(row, col))
    }

    /// Fraction of possible cross-partition edges that are present,
    /// `m / (rows * cols)`.
    pub fn connectance(&self) -> f64 {
        self.edge_count() as f64 / (self.rows() * self.cols()) as f64
    }

    /// Flattens into a simple undirected graph: row node `r` keeps index `r`,
    /// column node `c` becomes index `rows + c`.
    pub fn to_undirected(&self) -> Graph {
        let rows = self.rows();
        let n = self.node_count();
        let mut labels = Vec::with_capacity(n);
        labels.extend(self.row_labels.iter().cloned());
        labels.extend(self.col_labels.iter().cloned());
        let edges: Vec<(usize, usize)> =
            self.edges.iter().map(|&(r, c)| (r, rows + c)).collect();
        Graph::with_labels(labels, &edges)
            .expect("bipartite edges are structurally valid in the flattened graph")
    }

    /// Serializes to the edge-list text format (one `row,col` line per edge,
    /// sorted). Labels containing separators are not escaped, so round-trips
    /// are only guaranteed for labels free of commas, tabs and leading `#`.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        for &(r, c) in &self.edges {
            out.push_str(&self.row_labels[r]);
            out.push(',');
            out.push_str(&self.col_labels[c]);
            out.push('\n');
        }
        out
    }

    /// Copy of this network with all degree-zero nodes removed from both
    /// partitions. Errors if either partition would become empty.
    pub fn drop_isolated(&self) -> Result<BipartiteGraph> {
        let mut row_used = vec![false; self.rows()];
        let mut col_used = vec![false; self.cols()];
        for &(r, c) in &self.edges {
            row_used[r] = true;
            col_used[c] = true;
        }
        let row_map = index_map(&row_used);
        let col_map = index_map(&col_used);
        let row_labels: Vec<String> = self
            .row_labels
            .iter()
            .zip(&row_used)
            .filter(|(_, used)| **used)
            .map(|(l, _)| l.clone())
            .collect();
        let col_labels: Vec<String> = self
            .col_labels
            .iter()
            .zip(&col_used)
            .filter(|(_, used)| **used)
            .map(|(l, _)| l.clone())
            .collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(r, c)| (row_map[r], col_map[c]))
            .collect();
        BipartiteGraph::new(
            self.network_id.clone(),
            self.interaction_type,
            row_labels,
            col_labels,
            edges,
        )
    }
}

fn index_map(used: &[bool]) -> Vec<usize> {
    let mut map = vec![usize::MAX; used.len()];
    let mut next = 0;
    for (i, &u) in used.iter().enumerate() {
        if u {
            map[i] = next;
            next += 1;
        }
    }
    map
}

/// A simple undirected graph: no self-loops, no parallel edges.
///
/// Neighbors are kept sorted, so edge iteration and every algorithm that
/// walks adjacency lists is deterministic in node-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    node_labels: Vec<String>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes with auto-generated labels `v0..v{n-1}`.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let labels = (0..n).map(|i| format!("v{i}")).collect();
        Graph::with_labels(labels, edges)
    }

    /// Builds a graph with explicit node labels. Rejects self-loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn with_labels(node_labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = node_labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {u}")));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({}, {})",
                    key.0, key.1
                )));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            adjacency,
            node_labels,
            edge_count: seen.len(),
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn node_labels(&self) -> &[String] {
        &self.node_labels
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Removes an undirected edge; no-op if absent. Used by edge-removal
    /// algorithms working on a scratch copy.
    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        if let Ok(i) = self.adjacency[u].binary_search(&v) {
            self.adjacency[u].remove(i);
            let j = self.adjacency[v]
                .binary_search(&u)
                .expect("adjacency must be symmetric");
            self.adjacency[v].remove(j);
            self.edge_count -= 1;
        }
    }

    /// Number of connected components and a per-node component label.
    /// Labels are contiguous `0..count`, assigned in BFS discovery order
    /// starting from the lowest-index unvisited node.
    pub fn connected_components(&self) -> (usize, Vec<usize>) {
        let n = self.node_count();
        let mut labels = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if labels[w] == usize::MAX {
                        labels[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count, labels)
    }

    /// Dense adjacency matrix A.
    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        let mut a = SymmetricMatrix::zeros(self.node_count());
        for (u, v) in self.edges() {
            a.set(u, v, 1.0);
        }
        a
    }

    /// Dense degree matrix D (diagonal).
    pub fn degree_matrix(&self) -> SymmetricMatrix {
        let mut d = SymmetricMatrix::zeros(self.node_count());
        for v in 0..self.node_count() {
            d.set(v, v, self.degree(v) as f64);
        }
        d
    }

    /// Graph Laplacian L = D - A: degrees on the diagonal, -1 for each edge.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let mut l = SymmetricMatrix::zeros(self.node_count());
        for v in 0..self.node_count() {
            l.set(v, v, self.degree(v) as f64);
        }
        for (u, v) in self.edges() {
            l.set(u, v, -1.0);
        }
        l
    }
}

/// Dense symmetric matrix with row-major storage. `set` writes both
/// `(i, j)` and `(j, i)`, so instances stay symmetric by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> SymmetricMatrix {
        SymmetricMatrix {
            n,
            entries: vec![0.0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.n + j] = value;
        self.entries[j * self.n + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Row-major view of all entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_bipartite(rows: usize, cols: usize, edges: &[(usize, usize)]) -> BipartiteGraph {
        BipartiteGraph::new(
            "test",
            InteractionType::Other,
            (0..rows).map(|i| format!("r{i}")).collect(),
            (0..cols).map(|j| format!("c{j}")).collect(),
            edges.iter().copied(),
        )
        .unwrap()
    }

    #[test]
    fn to_undirected_identity_incidence() {
        let g = tiny_bipartite(2, 2, &[(0, 0), (1, 1)]);
        let u = g.to_undirected();
        assert_eq!(u.node_count(), 4);
        assert_eq!(u.edge_count(), 2);
        assert!(u.has_edge(0, 2));
        assert!(u.has_edge(1, 3));
    }

    #[test]
    fn to_undirected_empty_edge_set() {
        let g = tiny_bipartite(3, 2, &[]);
        let u = g.to_undirected();
        assert_eq!(u.node_count(), 5);
        assert_eq!(u.edge_count(), 0);
    }

    #[test]
    fn to_undirected_complete_k23() {
        let g = tiny_bipartite(2, 3, &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
        let u = g.to_undirected();
        assert_eq!(u.node_count(), 5);
        assert_eq!(u.edge_count(), 6);
    }

    #[test]
    fn connectance_values() {
        let full = tiny_bipartite(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(full.connectance(), 1.0);
        let half = tiny_bipartite(2, 3, &[(0, 0), (0, 1), (1, 2)]);
        assert_eq!(half.connectance(), 0.5);
    }

    #[test]
    fn components_path_and_isolated() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.connected_components().0, 1);
        let isolated = Graph::new(5, &[]).unwrap();
        let (count, labels) = isolated.connected_components();
        assert_eq!(count, 5);
        assert_eq!(labels, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn components_example_graph() {
        // a-b, a-d, b-c, b-e, c-d, c-e on nodes a..e
        let g = Graph::new(5, &[(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4)]).unwrap();
        assert_eq!(g.connected_components().0, 1);
    }

    #[test]
    fn laplacian_single_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let l = g.laplacian();
        assert_eq!(l.get(0, 0), 1.0);
        assert_eq!(l.get(1, 1), 1.0);
        assert_eq!(l.get(0, 1), -1.0);
        assert_eq!(l.get(1, 0), -1.0);
    }

    #[test]
    fn laplacian_degrees_on_diagonal() {
        let g = Graph::new(5, &[(0, 1), (0, 3), (1, 2), (1, 4), (2, 3), (2, 4)]).unwrap();
        let l = g.laplacian();
        let diag: Vec<f64> = (0..5).map(|i| l.get(i, i)).collect();
        assert_eq!(diag, vec![2.0, 3.0, 3.0, 2.0, 2.0]);
        // every row sums to zero
        for i in 0..5 {
            let sum: f64 = l.row(i).iter().sum();
            assert_eq!(sum, 0.0);
        }
    }

    #[test]
    fn laplacian_isolated_node_row_is_zero() {
        let g = Graph::new(3, &[(0, 1)]).unwrap();
        let l = g.laplacian();
        assert!(l.row(2).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn graph_rejects_self_loop_and_duplicate() {
        assert!(Graph::new(3, &[(0, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 5)]).is_err());
    }

    #[test]
    fn degree_sum_is_twice_edge_count() {
        let g = Graph::new(6, &[(0, 1), (0, 2), (3, 4), (2, 5), (1, 2)]).unwrap();
        let total: usize = (0..6).map(|v| g.degree(v)).sum();
        assert_eq!(total, 2 * g.edge_count());
    }

    #[test]
    fn drop_isolated_removes_empty_rows_and_cols() {
        let g = tiny_bipartite(3, 3, &[(0, 0), (2, 0)]);
        let d = g.drop_isolated().unwrap();
        assert_eq!(d.rows(), 2);
        assert_eq!(d.cols(), 1);
        assert_eq!(d.edge_count(), 2);
        assert_eq!(d.row_labels(), &["r0".to_string(), "r2".to_string()]);
    }

    #[test]
    fn empty_partition_rejected() {
        let err = BipartiteGraph::new("x", InteractionType::Other, vec![], vec!["c".into()], []);
        assert!(matches!(err, Err(Error::EmptyNetwork(_))));
    }

    #[test]
    fn interaction_type_lenient_parse() {
        assert_eq!(
            InteractionType::parse_lenient("Host-Parasite"),
            Some(InteractionType::HostParasite)
        );
        assert_eq!(
            InteractionType::parse_lenient("seed_dispersal"),
            Some(InteractionType::SeedDispersal)
        );
        assert_eq!(InteractionType::parse_lenient("mutualism"), None);
    }
}
