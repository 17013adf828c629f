use std::collections::VecDeque;

use serde::Serialize;

use super::{distance, NodeId, Topology};

/// Undirected radio-range graph over the alive nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncounterGraph {
    vertices: Vec<NodeId>,
    // sorted neighbour indices into `vertices`
    adjacency: Vec<Vec<usize>>,
}

impl EncounterGraph {
    pub fn from_topology(t: &Topology) -> Self {
        let alive: Vec<_> = t.alive().collect();
        let mut adjacency = vec![Vec::new(); alive.len()];
        for i in 0..alive.len() {
            for j in (i + 1)..alive.len() {
                if distance(alive[i].pos, alive[j].pos) <= t.radio_range() {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        Self {
            vertices: alive.iter().map(|n| n.id).collect(),
            adjacency,
        }
    }

    /// Graph on vertices `0..n` from an edge list. Self-loops and repeated
    /// edges are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range");
            if a != b {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
            adj.dedup();
        }
        Self {
            vertices: (0..n as u32).map(NodeId).collect(),
            adjacency,
        }
    }

    pub fn vertices(&self) -> &[NodeId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as `(smaller id, larger id)` pairs, sorted.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut edges: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, adj)| {
                adj.iter()
                    .filter(move |&&b| b > a)
                    .map(move |&b| (self.vertices[a], self.vertices[b]))
            })
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or_default();
            for &w in &self.adjacency[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn metrics(&self) -> EncounterMetrics {
        let n = self.vertex_count();
        EncounterMetrics {
            cc: clustering_coefficient(self),
            pl: average_path_length(self),
            dr: disconnected_ratio(self),
            node_count: n,
            avg_degree: if n == 0 {
                0.0
            } else {
                2.0 * self.edge_count() as f64 / n as f64
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EncounterMetrics {
    pub cc: f64,
    /// `None` when no two vertices are connected.
    pub pl: Option<f64>,
    pub dr: f64,
    pub node_count: usize,
    pub avg_degree: f64,
}

/// Mean over vertices of the fraction of neighbour pairs that are adjacent.
/// Vertices with fewer than two neighbours count as zero.
pub fn clustering_coefficient(g: &EncounterGraph) -> f64 {
    let n = g.vertex_count();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n)
        .map(|v| {
            let adj = g.neighbors(v);
            let k = adj.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &a) in adj.iter().enumerate() {
                for &b in &adj[i + 1..] {
                    if g.has_edge(a, b) {
                        links += 1;
                    }
                }
            }
            links as f64 / (k * (k - 1) / 2) as f64
        })
        .sum();
    total / n as f64
}

/// Mean shortest-path hop count over connected ordered pairs.
pub fn average_path_length(g: &EncounterGraph) -> Option<f64> {
    let mut sum = 0usize;
    let mut pairs = 0usize;
    for v in 0..g.vertex_count() {
        for d in g.bfs(v).into_iter().flatten().filter(|&d| d > 0) {
            sum += d;
            pairs += 1;
        }
    }
    (pairs > 0).then(|| sum as f64 / pairs as f64)
}

/// Fraction of unordered vertex pairs with no connecting path.
pub fn disconnected_ratio(g: &EncounterGraph) -> f64 {
    let n = g.vertex_count();
    if n < 2 {
        return 0.0;
    }
    let mut seen = vec![false; n];
    let mut connected_pairs = 0usize;
    for v in 0..n {
        if seen[v] {
            continue;
        }
        let reach = g.bfs(v);
        let mut size = 0usize;
        for (w, d) in reach.iter().enumerate() {
            if d.is_some() {
                seen[w] = true;
                size += 1;
            }
        }
        connected_pairs += size * (size - 1) / 2;
    }
    let pairs = n * (n - 1) / 2;
    (pairs - connected_pairs) as f64 / pairs as f64
}
