//! Deterministic distributed vertex coloring: Linial-style color reduction
//! through polynomial cover-free families, Goldberg–Plotkin–Shannon style
//! (Delta+1)-coloring, and the distance-2R edge-class coloring of the power
//! graph.
//!
//! Round accounting constants (referenced by the documented contract of
//! [`gps_vertex_coloring`]): the coloring finishes within
//! `A * Delta^2 + log*(n) + B` rounds with `A = 16`, `B = 2`. The `A`
//! term comes from the color-elimination schedule, which always runs from
//! `p^2 - 1` down to `Delta + 1` where `p` is the smallest prime above
//! `2 * Delta` (so `p^2 <= 16 * Delta^2 + O(Delta)` by Bertrand's
//! postulate). The schedule length depends only on `Delta`, never on `n`:
//! a vertex cannot locally detect that a color class is globally empty, so
//! empty classes are charged like any other.

use crate::error::ColoringError;
use crate::graph::{power_adjacency_for_subset, power_graph_on_edges, AdjacencyList, Graph, Topology};
use crate::runtime::{radius_one_step, AccountingMode, NodeIdentifiers, RoundTranscript};

/// A proper total vertex coloring with colors below `palette_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexViolation {
    AdjacentSameColor { u: usize, v: usize, color: usize },
    OutOfPalette { v: usize, color: usize },
}

pub fn verify_vertex_coloring<T: Topology>(
    topo: &T,
    coloring: &VertexColoring,
) -> Vec<VertexViolation> {
    let mut violations = Vec::new();
    for v in 0..topo.vertex_count() {
        let c = coloring.colors[v];
        if c >= coloring.palette_size {
            violations.push(VertexViolation::OutOfPalette { v, color: c });
        }
        for &w in topo.neighbors(v) {
            let w = w as usize;
            if v < w && coloring.colors[w] == c {
                violations.push(VertexViolation::AdjacentSameColor { u: v, v: w, color: c });
            }
        }
    }
    violations
}

// ---- primes and the Linial step ----------------------------------------

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn next_prime_geq(mut x: u64) -> u64 {
    if x < 2 {
        return 2;
    }
    while !is_prime(x) {
        x += 1;
    }
    x
}

/// Target palette for the reduction stage: the square of the smallest prime
/// above 2 * Delta. This is the fixpoint of the one-step reduction and is a
/// function of Delta alone.
pub fn linial_palette_target(max_degree: usize) -> usize {
    let p = next_prime_geq(2 * max_degree as u64 + 1) as usize;
    p * p
}

/// Smallest r with r^e >= q.
fn ceil_root(q: u128, e: u32) -> u64 {
    let mut lo = 1u64;
    let mut hi = 2u64;
    while (hi as u128).pow(e) < q {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if (mid as u128).pow(e) >= q {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Parameters of one cover-free reduction step from palette `q`: a degree
/// bound `d` and a prime `p > d * Delta` with `p^(d+1) >= q`, minimizing the
/// new palette `p^2`. Returns `None` when no choice shrinks the palette.
fn linial_step_params(q: usize, max_degree: usize) -> Option<(usize, u64)> {
    let mut best: Option<(usize, u64)> = None;
    for d in 1..=64usize {
        let floor = (d as u64) * (max_degree as u64) + 1;
        // A prime of at least this size already fails to shrink the palette.
        if let Some((_, p)) = best {
            if floor >= p {
                break;
            }
        }
        let root = ceil_root(q as u128, d as u32 + 1);
        let p = next_prime_geq(floor.max(root).max(2));
        if (p as u128) * (p as u128) >= q as u128 {
            continue;
        }
        match best {
            Some((_, bp)) if bp <= p => {}
            _ => best = Some((d, p)),
        }
    }
    best
}

/// Computes one vertex's new color under the (d, p) reduction step, reading
/// only its own color and its neighbors' colors.
fn linial_new_color(own: usize, neighbor_colors: &[usize], d: usize, p: u64) -> usize {
    let digits = |c: usize| -> Vec<u64> {
        let mut c = c as u64;
        let mut out = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            out.push(c % p);
            c /= p;
        }
        out
    };
    let eval = |coeffs: &[u64], a: u64| -> u64 {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = (acc * a + c) % p;
        }
        acc
    };
    let own_digits = digits(own);
    let nbr_digits: Vec<Vec<u64>> = neighbor_colors.iter().map(|&c| digits(c)).collect();
    for a in 0..p {
        let val = eval(&own_digits, a);
        if nbr_digits.iter().all(|g| eval(g, a) != val) {
            return (a * p + val) as usize;
        }
    }
    // p > d * Delta guarantees a good evaluation point exists.
    unreachable!("no collision-free evaluation point found")
}

/// One radius-1 color-reduction phase: maps a proper q-coloring to a proper
/// coloring with palette p^2 = O(Delta^2 log^2 q). Returns the input
/// unchanged when no parameter choice shrinks the palette.
pub fn linial_reduce<T: Topology>(
    topo: &T,
    current: &VertexColoring,
) -> Result<VertexColoring, ColoringError> {
    let violations = verify_vertex_coloring(topo, current);
    if !violations.is_empty() {
        return Err(ColoringError::ImproperColoring(format!(
            "{} violations in linial_reduce input",
            violations.len()
        )));
    }
    let delta = topo.max_degree();
    let Some((d, p)) = linial_step_params(current.palette_size, delta) else {
        return Ok(current.clone());
    };
    let mut colors = current.colors.clone();
    let ids = identity_ids(topo.vertex_count());
    let active: Vec<usize> = (0..topo.vertex_count()).collect();
    radius_one_step(topo, &ids, &mut colors, &active, |view| {
        let nbr: Vec<usize> = view
            .neighbors(view.center())
            .map(|w| *view.state(w))
            .collect();
        linial_new_color(*view.state(view.center()), &nbr, d, p)
    });
    Ok(VertexColoring {
        colors,
        palette_size: (p * p) as usize,
    })
}

fn identity_ids(n: usize) -> NodeIdentifiers {
    NodeIdentifiers::from_values((1..=n).collect()).expect("identity is a bijection")
}

// ---- GPS (Delta+1)-coloring ---------------------------------------------

/// Proper (Delta+1)-vertex-coloring: identifiers as an n-coloring, iterated
/// Linial reduction down to the Delta-determined target palette, then one
/// color-elimination phase per surplus color index (descending).
pub fn gps_vertex_coloring<T: Topology>(
    topo: &T,
    ids: &NodeIdentifiers,
) -> (VertexColoring, RoundTranscript) {
    let n = topo.vertex_count();
    let delta = topo.max_degree();
    let palette_out = delta + 1;
    let mut transcript = RoundTranscript::new(AccountingMode::Optimistic);
    let mut colors: Vec<usize> = (0..n).map(|v| ids.of(v) - 1).collect();
    let mut palette = n;
    if palette <= palette_out {
        return (
            VertexColoring {
                colors,
                palette_size: palette_out,
            },
            transcript,
        );
    }
    let target = linial_palette_target(delta);
    while palette > target {
        let Some((d, p)) = linial_step_params(palette, delta) else {
            break;
        };
        let active: Vec<usize> = (0..n).collect();
        radius_one_step(topo, ids, &mut colors, &active, |view| {
            let nbr: Vec<usize> = view
                .neighbors(view.center())
                .map(|w| *view.state(w))
                .collect();
            linial_new_color(*view.state(view.center()), &nbr, d, p)
        });
        palette = (p * p) as usize;
        transcript.push_phase("linial-reduce", 1, 1);
    }
    // Elimination schedule: from the Delta-only bound down to Delta + 1, one
    // radius-1 phase per color index whether or not the class is occupied.
    let schedule_top = palette.max(target);
    if schedule_top > palette_out {
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); schedule_top];
        for (v, &c) in colors.iter().enumerate() {
            if c >= palette_out {
                buckets[c].push(v);
            }
        }
        for c in (palette_out..schedule_top).rev() {
            let active = std::mem::take(&mut buckets[c]);
            if active.is_empty() {
                continue;
            }
            radius_one_step(topo, ids, &mut colors, &active, |view| {
                let mut used = vec![false; palette_out];
                for w in view.neighbors(view.center()) {
                    let c = *view.state(w);
                    if c < palette_out {
                        used[c] = true;
                    }
                }
                used.iter().position(|&u| !u).expect("free color exists")
            });
        }
        transcript.push_phase(
            "color-elimination",
            1,
            (schedule_top - palette_out) as u64,
        );
    }
    (
        VertexColoring {
            colors,
            palette_size: palette_out,
        },
        transcript,
    )
}

// ---- distance-2R edge classes -------------------------------------------

/// Partition of E(G) into classes such that two edges in the same class have
/// minimum endpoint distance greater than `distance_bound`.
#[derive(Debug, Clone)]
pub struct EdgeClassColoring {
    pub classes: Vec<usize>,
    pub class_count: usize,
    pub distance_bound: usize,
}

/// Identifiers for edges (vertices of G*): the lexicographic rank of the
/// (max endpoint ID, min endpoint ID) pair. Computable from one round of
/// ID exchange; distinct because the pairs are.
pub(crate) fn edge_rank_ids(
    g: &Graph,
    ids: &NodeIdentifiers,
    subset: Option<&[usize]>,
) -> NodeIdentifiers {
    let edges: Vec<usize> = match subset {
        Some(s) => s.to_vec(),
        None => (0..g.edge_count()).collect(),
    };
    let mut keyed: Vec<((usize, usize), usize)> = edges
        .iter()
        .enumerate()
        .map(|(pos, &e)| {
            let (u, v) = g.endpoints(e);
            let (a, b) = (ids.of(u), ids.of(v));
            ((a.max(b), a.min(b)), pos)
        })
        .collect();
    keyed.sort_unstable();
    let mut out = vec![0usize; edges.len()];
    for (rank, &(_, pos)) in keyed.iter().enumerate() {
        out[pos] = rank + 1;
    }
    NodeIdentifiers::from_values(out).expect("edge ranks form a bijection")
}

/// Colors the power graph G* = PowerGraph(G, 2R) with GPS and charges the
/// rounds through the k+1 simulation factor.
pub fn distance_edge_classes(
    g: &Graph,
    r: usize,
    ids: &NodeIdentifiers,
) -> (EdgeClassColoring, RoundTranscript) {
    assert!(r >= 1, "distance_edge_classes needs R >= 1");
    let k = 2 * r;
    let pg = power_graph_on_edges(g, k);
    let star_ids = edge_rank_ids(g, ids, None);
    let mut transcript = RoundTranscript::new(AccountingMode::Optimistic);
    transcript.push_phase("edge-id-exchange", 1, 1);
    let (vc, pg_transcript) = gps_vertex_coloring(&pg, &star_ids);
    transcript.absorb_scaled(&pg_transcript, k);
    (
        EdgeClassColoring {
            classes: vc.colors,
            class_count: vc.palette_size,
            distance_bound: k,
        },
        transcript,
    )
}

/// Same as [`distance_edge_classes`] but restricted to a sorted subset of
/// edges (re-classing deferred edges at an escalated radius). Classes are
/// returned parallel to `subset`.
pub(crate) fn distance_edge_classes_for_subset(
    g: &Graph,
    r: usize,
    ids: &NodeIdentifiers,
    subset: &[usize],
) -> (Vec<usize>, usize, RoundTranscript) {
    let k = 2 * r;
    let adj = AdjacencyList::new(power_adjacency_for_subset(g, k, subset));
    let star_ids = edge_rank_ids(g, ids, Some(subset));
    let mut transcript = RoundTranscript::new(AccountingMode::Optimistic);
    transcript.push_phase("edge-id-exchange", 1, 1);
    let (vc, sub_transcript) = gps_vertex_coloring(&adj, &star_ids);
    transcript.absorb_scaled(&sub_transcript, k);
    (vc.colors, vc.palette_size, transcript)
}

/// Groups edge indices by class, ascending class index, members ascending.
pub fn classes_by_index(classes: &[usize], class_count: usize) -> Vec<Vec<usize>> {
    let mut groups = vec![Vec::new(); class_count];
    for (e, &c) in classes.iter().enumerate() {
        groups[c].push(e);
    }
    groups
}
