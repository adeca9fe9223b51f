//! Helpers shared by the integration suites: independent brute-force oracles
//! and small random-graph generation.

use rand::rngs::StdRng;
use rand::Rng;

use locol::{Graph, Topology};

/// BFS distances from `src`; `usize::MAX` for unreachable vertices.
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[src] = 0;
    let mut queue = std::collections::VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            let w = w as usize;
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Minimum distance between the endpoint sets of two edges.
pub fn edge_distance(dist_a: &[usize], dist_b: &[usize], f: (usize, usize)) -> usize {
    [dist_a[f.0], dist_a[f.1], dist_b[f.0], dist_b[f.1]]
        .into_iter()
        .min()
        .unwrap()
}

/// Brute-force power-graph adjacency: for every ordered pair of distinct
/// edges, adjacency iff min endpoint distance <= k. Quadratic on purpose —
/// an oracle independent of the CSR construction.
pub fn brute_force_power_adjacency(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let m = g.edge_count();
    let dists: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| bfs_distances(g, v)).collect();
    let mut adj = vec![Vec::new(); m];
    for e in 0..m {
        let (a, b) = g.endpoints(e);
        for f in 0..m {
            if e == f {
                continue;
            }
            if edge_distance(&dists[a], &dists[b], g.endpoints(f)) <= k {
                adj[e].push(f);
            }
        }
    }
    adj
}

/// Random simple graph with at most `max_n` vertices and `max_m` edges.
pub fn random_graph(rng: &mut StdRng, max_n: usize, max_m: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if n >= 2 {
        let want = rng.gen_range(0..=max_m);
        let mut seen = std::collections::HashSet::new();
        for _ in 0..want * 3 {
            if edges.len() >= want {
                break;
            }
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && seen.insert((u.min(v), u.max(v))) {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("random graph is simple")
}
