//! Graph representation, ball queries, growth profiles, power graphs on the
//! edge set, bounded-growth generators, and the iterated logarithm.

use std::collections::HashMap;

use crate::error::GraphError;

/// Read-only adjacency structure. Everything the round simulator and the
/// coloring algorithms need from a topology: vertex count and sorted
/// neighbor lists.
pub trait Topology {
    fn vertex_count(&self) -> usize;

    /// Neighbors of `v`, sorted ascending.
    fn neighbors(&self, v: usize) -> &[u32];

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }
}

/// A finite simple graph with an edge index. Immutable after construction;
/// colorings live in separate overlay structures.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
    /// Edge index incident to vertex v, parallel to `adjacency[v]`.
    incident: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    edge_lookup: HashMap<(u32, u32), u32>,
    max_degree: usize,
}

impl Topology for Graph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }
}

impl Graph {
    /// Build a graph on `n` vertices from an unordered edge list.
    /// Rejects self-loops, parallel edges, and out-of-range endpoints.
    pub fn from_edges(n: usize, edge_list: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut edge_lookup = HashMap::with_capacity(edge_list.len());
        for &(a, b) in edge_list {
            if a >= n {
                return Err(GraphError::InvalidVertex { index: a, count: n });
            }
            if b >= n {
                return Err(GraphError::InvalidVertex { index: b, count: n });
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let key = (a.min(b) as u32, a.max(b) as u32);
            let idx = edges.len() as u32;
            if edge_lookup.insert(key, idx).is_some() {
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
            edges.push(key);
            adjacency[a].push(b as u32);
            incident[a].push(idx);
            adjacency[b].push(a as u32);
            incident[b].push(idx);
        }
        // Keep neighbor lists sorted; incident edge lists follow the same order.
        for v in 0..n {
            let mut pairs: Vec<(u32, u32)> = adjacency[v]
                .iter()
                .copied()
                .zip(incident[v].iter().copied())
                .collect();
            pairs.sort_unstable();
            adjacency[v] = pairs.iter().map(|p| p.0).collect();
            incident[v] = pairs.iter().map(|p| p.1).collect();
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph {
            adjacency,
            incident,
            edges,
            edge_lookup,
            max_degree,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e`, with the smaller vertex first.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e];
        (a as usize, b as usize)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.edge_lookup.get(&key).map(|&i| i as usize)
    }

    /// Edge indices incident to `v`, ordered by the neighbor they lead to.
    pub fn incident_edges(&self, v: usize) -> &[u32] {
        &self.incident[v]
    }

    // ---- generators ----------------------------------------------------

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidDimensions("path needs n >= 1".into()));
        }
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidDimensions("cycle needs n >= 3".into()));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn grid(rows: usize, cols: usize) -> Result<Graph, GraphError> {
        if rows == 0 || cols == 0 {
            return Err(GraphError::InvalidDimensions(
                "grid needs positive dimensions".into(),
            ));
        }
        let idx = |i: usize, j: usize| i * cols + j;
        let mut edges = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                if j + 1 < cols {
                    edges.push((idx(i, j), idx(i, j + 1)));
                }
                if i + 1 < rows {
                    edges.push((idx(i, j), idx(i + 1, j)));
                }
            }
        }
        Graph::from_edges(rows * cols, &edges)
    }

    /// 4-regular torus; both dimensions must be at least 3 so the wrap-around
    /// edges stay simple.
    pub fn torus(rows: usize, cols: usize) -> Result<Graph, GraphError> {
        if rows < 3 || cols < 3 {
            return Err(GraphError::InvalidDimensions(
                "torus needs both dimensions >= 3".into(),
            ));
        }
        let idx = |i: usize, j: usize| i * cols + j;
        let mut edges = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                edges.push((idx(i, j), idx(i, (j + 1) % cols)));
                edges.push((idx(i, j), idx((i + 1) % rows, j)));
            }
        }
        Graph::from_edges(rows * cols, &edges)
    }
}

/// Adjacency-list topology for derived graphs (line graphs, induced
/// sub-topologies of a power graph).
#[derive(Debug, Clone)]
pub struct AdjacencyList {
    adj: Vec<Vec<u32>>,
    max_degree: usize,
}

impl AdjacencyList {
    /// Rows must be sorted, loop-free and symmetric; callers are internal and
    /// construct them that way.
    pub fn new(adj: Vec<Vec<u32>>) -> AdjacencyList {
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        AdjacencyList { adj, max_degree }
    }
}

impl Topology for AdjacencyList {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }
}

// ---- balls and growth --------------------------------------------------

/// Closed ball N^R[v]: all vertices reachable from `v` by a path of at most
/// `radius` edges, as a sorted list. Always contains `v`.
pub fn closed_ball<T: Topology>(
    topo: &T,
    v: usize,
    radius: usize,
) -> Result<Vec<usize>, GraphError> {
    if v >= topo.vertex_count() {
        return Err(GraphError::InvalidVertex {
            index: v,
            count: topo.vertex_count(),
        });
    }
    let mut ball = multi_source_ball(topo, &[v], radius);
    ball.sort_unstable();
    Ok(ball)
}

/// BFS truncated at `radius` from several sources at depth 0. Unsorted.
pub(crate) fn multi_source_ball<T: Topology>(
    topo: &T,
    sources: &[usize],
    radius: usize,
) -> Vec<usize> {
    let mut dist: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &s in sources {
        if dist.insert(s, 0).is_none() {
            queue.push_back(s);
        }
    }
    let mut out: Vec<usize> = dist.keys().copied().collect();
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == radius {
            continue;
        }
        for &w in topo.neighbors(v) {
            let w = w as usize;
            if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(w) {
                slot.insert(d + 1);
                queue.push_back(w);
                out.push(w);
            }
        }
    }
    out
}

/// Empirical growth function of a graph: for each radius R <= r_max the
/// maximum closed-ball size over all vertices.
#[derive(Debug, Clone, serde::Serialize)]
pub struct GrowthProfile {
    /// `max_ball_size[R]` = max over v of |N^R[v]|.
    pub max_ball_size: Vec<usize>,
    pub vertex_count: usize,
    pub max_degree: usize,
}

impl GrowthProfile {
    pub fn get(&self, radius: usize) -> usize {
        self.max_ball_size[radius]
    }

    pub fn radius_max(&self) -> usize {
        self.max_ball_size.len() - 1
    }
}

pub fn growth_profile<T: Topology>(topo: &T, r_max: usize) -> GrowthProfile {
    let n = topo.vertex_count();
    let mut max_ball_size = vec![if n > 0 { 1 } else { 0 }; r_max + 1];
    let mut dist: Vec<u32> = vec![u32::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    let mut visited: Vec<usize> = Vec::new();
    for v in 0..n {
        // One truncated BFS per vertex, recording the cumulative count per depth.
        let mut count_at = vec![0usize; r_max + 1];
        dist[v] = 0;
        count_at[0] = 1;
        visited.push(v);
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            let d = dist[u] as usize;
            if d == r_max {
                continue;
            }
            for &w in topo.neighbors(u) {
                let w = w as usize;
                if dist[w] == u32::MAX {
                    dist[w] = (d + 1) as u32;
                    count_at[d + 1] += 1;
                    visited.push(w);
                    queue.push_back(w);
                }
            }
        }
        let mut total = 0;
        for r in 0..=r_max {
            total += count_at[r];
            max_ball_size[r] = max_ball_size[r].max(total);
        }
        for &w in &visited {
            dist[w] = u32::MAX;
        }
        visited.clear();
    }
    GrowthProfile {
        max_ball_size,
        vertex_count: n,
        max_degree: topo.max_degree(),
    }
}

// ---- power graph on the edge set ----------------------------------------

/// The derived graph G* on E(G): two distinct base edges are adjacent when
/// the minimum distance between their endpoint sets is at most
/// `distance_bound`. Stored as CSR over edge indices.
#[derive(Debug, Clone)]
pub struct PowerGraph {
    pub distance_bound: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    max_degree: usize,
}

impl Topology for PowerGraph {
    fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    fn max_degree(&self) -> usize {
        self.max_degree
    }
}

pub fn power_graph_on_edges(g: &Graph, k: usize) -> PowerGraph {
    let m = g.edge_count();
    let mut offsets = Vec::with_capacity(m + 1);
    let mut targets: Vec<u32> = Vec::new();
    offsets.push(0);
    let mut scratch = PowerScratch::new(g);
    let mut row: Vec<u32> = Vec::new();
    for e in 0..m {
        scratch.edge_neighbors(g, e, k, None, &mut row);
        row.sort_unstable();
        targets.extend_from_slice(&row);
        offsets.push(targets.len());
    }
    let max_degree = (0..m)
        .map(|e| offsets[e + 1] - offsets[e])
        .max()
        .unwrap_or(0);
    PowerGraph {
        distance_bound: k,
        offsets,
        targets,
        max_degree,
    }
}

/// Power-graph adjacency restricted to a subset of edges (used when
/// re-classing deferred edges at an escalated radius). `subset` is a sorted
/// list of base-edge indices; rows are indexed by position in `subset`.
pub(crate) fn power_adjacency_for_subset(g: &Graph, k: usize, subset: &[usize]) -> Vec<Vec<u32>> {
    let mut position = HashMap::with_capacity(subset.len());
    for (pos, &e) in subset.iter().enumerate() {
        position.insert(e, pos as u32);
    }
    let mut scratch = PowerScratch::new(g);
    let mut row: Vec<u32> = Vec::new();
    let mut adj = Vec::with_capacity(subset.len());
    for &e in subset {
        scratch.edge_neighbors(g, e, k, Some(&position), &mut row);
        row.sort_unstable();
        adj.push(row.clone());
    }
    adj
}

/// Reusable stamp buffers for the per-edge truncated BFS.
struct PowerScratch {
    vertex_stamp: Vec<u32>,
    edge_stamp: Vec<u32>,
    stamp: u32,
    queue: std::collections::VecDeque<(u32, u32)>,
}

impl PowerScratch {
    fn new(g: &Graph) -> PowerScratch {
        PowerScratch {
            vertex_stamp: vec![0; g.vertex_count()],
            edge_stamp: vec![0; g.edge_count()],
            stamp: 0,
            queue: std::collections::VecDeque::new(),
        }
    }

    /// Fills `row` with the power-graph neighbors of `e` (mapped through
    /// `remap` when present: edges outside the map are dropped).
    fn edge_neighbors(
        &mut self,
        g: &Graph,
        e: usize,
        k: usize,
        remap: Option<&HashMap<usize, u32>>,
        row: &mut Vec<u32>,
    ) {
        row.clear();
        self.stamp += 1;
        let stamp = self.stamp;
        self.queue.clear();
        let (x, y) = g.endpoints(e);
        for s in [x, y] {
            if self.vertex_stamp[s] != stamp {
                self.vertex_stamp[s] = stamp;
                self.queue.push_back((s as u32, 0));
            }
        }
        self.edge_stamp[e] = stamp; // never report e itself
        while let Some((v, d)) = self.queue.pop_front() {
            for &f in g.incident_edges(v as usize) {
                let f = f as usize;
                if self.edge_stamp[f] != stamp {
                    self.edge_stamp[f] = stamp;
                    match remap {
                        None => row.push(f as u32),
                        Some(map) => {
                            if let Some(&pos) = map.get(&f) {
                                row.push(pos);
                            }
                        }
                    }
                }
            }
            if (d as usize) == k {
                continue;
            }
            for &w in g.neighbors(v as usize) {
                if self.vertex_stamp[w as usize] != stamp {
                    self.vertex_stamp[w as usize] = stamp;
                    self.queue.push_back((w, d + 1));
                }
            }
        }
    }
}

// ---- iterated logarithm --------------------------------------------------

/// log* n to base 2: the number of times log2 must be applied before the
/// value drops to at most 1.
pub fn log_star(n: u64) -> Result<u32, GraphError> {
    if n == 0 {
        return Err(GraphError::LogStarOfZero);
    }
    let mut x = n as f64;
    let mut count = 0;
    while x > 1.0 {
        x = x.log2();
        count += 1;
    }
    Ok(count)
}
