//! Constructive sequential augmentation: partial edge-colorings, missing
//! colors, Vizing fans with alternating-path flips, in-ball augmentation with
//! a confinement check, and an exhaustive augmenting-subgraph oracle.

use std::collections::{HashMap, HashSet};

use serde::ser::SerializeMap;
use serde::Serialize;

use crate::error::ColoringError;
use crate::graph::{Graph, Topology};

/// A partial map from edge indices to colors in {0..Delta}, proper on its
/// domain. The palette always has Delta + 1 colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEdgeColoring {
    assignment: Vec<Option<u32>>,
    palette_size: usize,
}

impl PartialEdgeColoring {
    pub fn empty(edge_count: usize, palette_size: usize) -> PartialEdgeColoring {
        PartialEdgeColoring {
            assignment: vec![None; edge_count],
            palette_size,
        }
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn edge_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn color_of(&self, e: usize) -> Option<usize> {
        self.assignment[e].map(|c| c as usize)
    }

    pub fn set(&mut self, e: usize, color: usize) {
        debug_assert!(color < self.palette_size);
        self.assignment[e] = Some(color as u32);
    }

    pub fn clear(&mut self, e: usize) {
        self.assignment[e] = None;
    }

    pub fn domain_size(&self) -> usize {
        self.assignment.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_total(&self) -> bool {
        self.assignment.iter().all(|c| c.is_some())
    }

    /// Colors actually appearing in the assignment.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.palette_size];
        for c in self.assignment.iter().flatten() {
            if (*c as usize) < self.palette_size {
                seen[*c as usize] = true;
            }
        }
        seen.iter().filter(|&&s| s).count()
    }

    pub(crate) fn check_proper(&self, g: &Graph) -> Result<(), ColoringError> {
        for v in 0..g.vertex_count() {
            let mut seen: HashSet<u32> = HashSet::new();
            for &e in g.incident_edges(v) {
                if let Some(c) = self.assignment[e as usize] {
                    if !seen.insert(c) {
                        return Err(ColoringError::ImproperColoring(format!(
                            "color {c} repeated at vertex {v}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Serializes as a JSON map {edge_index: color}, omitting uncolored edges.
impl Serialize for PartialEdgeColoring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.assignment.iter().filter(|c| c.is_some()).count();
        let mut map = serializer.serialize_map(Some(n))?;
        for (e, c) in self.assignment.iter().enumerate() {
            if let Some(c) = c {
                map.serialize_entry(&e.to_string(), c)?;
            }
        }
        map.end()
    }
}

/// Outcome of a successful augmentation: the edge set whose colors changed,
/// the newly colored edge, and whether the in-ball confinement check held.
#[derive(Debug, Clone)]
pub struct AugmentationResult {
    /// Edges whose color changed, including `newly_colored`. Sorted.
    pub modified_edges: Vec<usize>,
    pub newly_colored: usize,
    pub confinement_ok: bool,
}

/// Palette colors absent from `v`'s incident colored edges. Nonempty as long
/// as deg(v) <= Delta < palette.
pub fn missing_colors(g: &Graph, phi: &PartialEdgeColoring, v: usize) -> Vec<usize> {
    let mut used = vec![false; phi.palette_size()];
    for &e in g.incident_edges(v) {
        if let Some(c) = phi.color_of(e as usize) {
            used[c] = true;
        }
    }
    (0..phi.palette_size()).filter(|&c| !used[c]).collect()
}

/// Fast path: if the endpoints of `e` share a missing color, color `e` with
/// the smallest such color. Returns `None` when no common color exists.
pub fn extend_greedy(
    g: &Graph,
    phi: &mut PartialEdgeColoring,
    e: usize,
) -> Option<AugmentationResult> {
    debug_assert!(phi.color_of(e).is_none());
    let (x, y) = g.endpoints(e);
    let at_x = missing_colors(g, phi, x);
    let at_y: HashSet<usize> = missing_colors(g, phi, y).into_iter().collect();
    let color = at_x.into_iter().find(|c| at_y.contains(c))?;
    phi.set(e, color);
    Some(AugmentationResult {
        modified_edges: vec![e],
        newly_colored: e,
        confinement_ok: true,
    })
}

// ---- Vizing chain -------------------------------------------------------

/// Per-vertex color table: which edge carries each color at each vertex.
struct ColorTable {
    slots: Vec<Option<u32>>, // vertex * palette + color -> edge
    palette: usize,
}

impl ColorTable {
    fn build(g: &Graph, phi: &PartialEdgeColoring) -> ColorTable {
        let palette = phi.palette_size();
        let mut slots = vec![None; g.vertex_count() * palette];
        for e in 0..g.edge_count() {
            if let Some(c) = phi.color_of(e) {
                let (a, b) = g.endpoints(e);
                slots[a * palette + c] = Some(e as u32);
                slots[b * palette + c] = Some(e as u32);
            }
        }
        ColorTable { slots, palette }
    }

    fn edge_at(&self, v: usize, c: usize) -> Option<usize> {
        self.slots[v * self.palette + c].map(|e| e as usize)
    }

    fn is_free(&self, v: usize, c: usize) -> bool {
        self.slots[v * self.palette + c].is_none()
    }

    fn smallest_free(&self, v: usize) -> usize {
        (0..self.palette)
            .find(|&c| self.is_free(v, c))
            .expect("palette larger than degree")
    }

    fn clear_edge(&mut self, g: &Graph, e: usize, c: usize) {
        let (a, b) = g.endpoints(e);
        self.slots[a * self.palette + c] = None;
        self.slots[b * self.palette + c] = None;
    }

    fn set_edge(&mut self, g: &Graph, e: usize, c: usize) {
        let (a, b) = g.endpoints(e);
        self.slots[a * self.palette + c] = Some(e as u32);
        self.slots[b * self.palette + c] = Some(e as u32);
    }

    fn assign(&mut self, g: &Graph, phi: &mut PartialEdgeColoring, e: usize, c: usize) {
        let (a, b) = g.endpoints(e);
        if let Some(old) = phi.color_of(e) {
            self.slots[a * self.palette + old] = None;
            self.slots[b * self.palette + old] = None;
        }
        phi.set(e, c);
        self.slots[a * self.palette + c] = Some(e as u32);
        self.slots[b * self.palette + c] = Some(e as u32);
    }
}

/// Extends `psi` to the uncolored edge `e` of `h` with the classical Vizing
/// fan construction, flipping an alternating path and rotating a fan prefix
/// in the closed-fan case. Mutates `psi` in place and reports the modified
/// edge set.
///
/// Tie-breaking is smallest-first everywhere, so results are reproducible.
pub fn vizing_chain_augment(
    h: &Graph,
    psi: &mut PartialEdgeColoring,
    e: usize,
) -> Result<AugmentationResult, ColoringError> {
    if psi.color_of(e).is_some() {
        return Err(ColoringError::AlreadyColored(e));
    }
    psi.check_proper(h)?;
    if let Some(result) = extend_greedy(h, psi, e) {
        return Ok(result);
    }

    let snapshot = psi.clone();
    let mut table = ColorTable::build(h, psi);
    let (u, v) = h.endpoints(e);
    let pivot = u.min(v);
    let first = u.max(v);

    // Fan at the pivot: fan[i+1] is the endpoint of the pivot edge whose color
    // is the smallest color missing at fan[i].
    let mut fan: Vec<usize> = vec![first];
    let mut pos: HashMap<usize, usize> = HashMap::from([(first, 0)]);
    let closing; // (repeated color d, fan position j holding it)
    loop {
        let last = *fan.last().unwrap();
        let d = table.smallest_free(last);
        match table.edge_at(pivot, d) {
            None => {
                // Open fan: rotate fully and finish with d.
                rotate_fan(h, psi, &mut table, pivot, &fan, d);
                return finish(h, snapshot, psi, e);
            }
            Some(f) => {
                let (a, b) = h.endpoints(f);
                let w = if a == pivot { b } else { a };
                if let Some(&j) = pos.get(&w) {
                    closing = (d, j);
                    break;
                }
                pos.insert(w, fan.len());
                fan.push(w);
            }
        }
    }

    let (d, _j) = closing;
    let c = table.smallest_free(pivot);
    debug_assert_ne!(c, d);
    // Invert the maximal c/d-alternating path starting at the pivot (its
    // first edge carries d; c is missing at the pivot, so the pivot is a
    // path endpoint).
    let mut path: Vec<usize> = Vec::new();
    let mut cur = pivot;
    let mut want = d;
    while let Some(f) = table.edge_at(cur, want) {
        path.push(f);
        let (a, b) = h.endpoints(f);
        cur = if a == cur { b } else { a };
        want = if want == d { c } else { d };
    }
    // Two-pass flip so the table never holds a transient duplicate.
    let old_colors: Vec<usize> = path
        .iter()
        .map(|&f| psi.color_of(f).expect("path edges are colored"))
        .collect();
    for (&f, &old) in path.iter().zip(&old_colors) {
        table.clear_edge(h, f, old);
    }
    for (&f, &old) in path.iter().zip(&old_colors) {
        let new = if old == d { c } else { d };
        psi.set(f, new);
        table.set_edge(h, f, new);
    }
    debug_assert!(table.is_free(pivot, d));

    // Shortest fan prefix that is still a fan after the inversion and whose
    // tip has d free; such a prefix exists by the Vizing/Misra-Gries lemma.
    let mut chosen: Option<usize> = None;
    for idx in 0..fan.len() {
        if idx > 0 {
            let f = h
                .edge_between(pivot, fan[idx])
                .expect("fan edges exist");
            let color = match psi.color_of(f) {
                Some(color) => color,
                None => break, // inversion uncolored nothing; defensive
            };
            if !table.is_free(fan[idx - 1], color) {
                break; // fan property broken beyond this prefix
            }
        }
        if table.is_free(fan[idx], d) {
            chosen = Some(idx);
            break;
        }
    }
    let Some(tip) = chosen else {
        return Err(ColoringError::Internal(
            "no rotatable fan prefix after path inversion".into(),
        ));
    };
    rotate_fan(h, psi, &mut table, pivot, &fan[..=tip], d);
    finish(h, snapshot, psi, e)
}

/// Shifts colors down the fan (edge to fan[i] takes the color of the edge to
/// fan[i+1]) and colors the last fan edge with `final_color`.
fn rotate_fan(
    h: &Graph,
    psi: &mut PartialEdgeColoring,
    table: &mut ColorTable,
    pivot: usize,
    fan: &[usize],
    final_color: usize,
) {
    for i in 0..fan.len() {
        let f = h.edge_between(pivot, fan[i]).expect("fan edge exists");
        let color = if i + 1 < fan.len() {
            let next = h.edge_between(pivot, fan[i + 1]).expect("fan edge exists");
            psi.color_of(next).expect("interior fan edges are colored")
        } else {
            final_color
        };
        table.assign(h, psi, f, color);
    }
}

fn finish(
    h: &Graph,
    snapshot: PartialEdgeColoring,
    psi: &PartialEdgeColoring,
    e: usize,
) -> Result<AugmentationResult, ColoringError> {
    let mut modified: Vec<usize> = (0..h.edge_count())
        .filter(|&f| snapshot.color_of(f) != psi.color_of(f))
        .collect();
    modified.sort_unstable();
    if psi.color_of(e).is_none() {
        return Err(ColoringError::Internal("edge left uncolored".into()));
    }
    psi.check_proper(h).map_err(|err| {
        ColoringError::Internal(format!("chain produced improper coloring: {err}"))
    })?;
    Ok(AugmentationResult {
        modified_edges: modified,
        newly_colored: e,
        confinement_ok: true,
    })
}

// ---- in-ball augmentation -----------------------------------------------

/// Outcome of [`augment_in_ball`]: either the coloring was extended or the
/// Vizing chain escaped the confinement region and the caller should retry
/// with a larger radius.
#[derive(Debug)]
pub enum BallAugmentOutcome {
    Augmented(AugmentationResult),
    ConfinementFailure,
}

/// Augments `phi` at the uncolored edge `e = xy` inside the induced subgraph
/// on N^R[x] union N^R[y]. The merge is accepted only when every endpoint of
/// every modified edge lies within distance R - 1 of x or of y, which makes
/// the merged coloring proper on all of G; otherwise `phi` is left untouched
/// and a confinement failure is signalled.
pub fn augment_in_ball(
    g: &Graph,
    phi: &mut PartialEdgeColoring,
    e: usize,
    radius: usize,
) -> Result<BallAugmentOutcome, ColoringError> {
    assert!(radius >= 1, "augment_in_ball needs R >= 1");
    if phi.color_of(e).is_some() {
        return Err(ColoringError::AlreadyColored(e));
    }
    let (x, y) = g.endpoints(e);
    let dist_x = bounded_distances(g, x, radius);
    let dist_y = bounded_distances(g, y, radius);

    // Induced subgraph H on the union of the two balls.
    let mut ball: Vec<usize> = dist_x.keys().chain(dist_y.keys()).copied().collect();
    ball.sort_unstable();
    ball.dedup();
    let mut to_h: HashMap<usize, usize> = HashMap::with_capacity(ball.len());
    for (i, &v) in ball.iter().enumerate() {
        to_h.insert(v, i);
    }
    let mut h_edges: Vec<(usize, usize)> = Vec::new();
    let mut h_to_g: Vec<usize> = Vec::new();
    for &v in &ball {
        for (&w, &f) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
            let w = w as usize;
            if v < w {
                if let Some(&hw) = to_h.get(&w) {
                    h_edges.push((to_h[&v], hw));
                    h_to_g.push(f as usize);
                }
            }
        }
    }
    let h = Graph::from_edges(ball.len(), &h_edges).expect("induced subgraph is simple");
    let e_h = h_to_g
        .iter()
        .position(|&f| f == e)
        .expect("e lies inside its own ball");

    let mut psi = PartialEdgeColoring::empty(h.edge_count(), phi.palette_size());
    for (he, &ge) in h_to_g.iter().enumerate() {
        if let Some(c) = phi.color_of(ge) {
            psi.set(he, c);
        }
    }

    let result = vizing_chain_augment(&h, &mut psi, e_h)?;

    // Confinement: all endpoints of modified edges within distance R - 1 of
    // x or y. Then every G-edge incident to such a vertex lies inside H and
    // the case-split merge stays proper on G.
    let confined = result.modified_edges.iter().all(|&he| {
        let (a, b) = h.endpoints(he);
        [ball[a], ball[b]].iter().all(|v| {
            dist_x.get(v).is_some_and(|&d| d + 1 <= radius)
                || dist_y.get(v).is_some_and(|&d| d + 1 <= radius)
        })
    });
    if !confined {
        return Ok(BallAugmentOutcome::ConfinementFailure);
    }

    let mut modified_g: Vec<usize> = result
        .modified_edges
        .iter()
        .map(|&he| h_to_g[he])
        .collect();
    modified_g.sort_unstable();
    for &he in &result.modified_edges {
        phi.set(h_to_g[he], psi.color_of(he).expect("modified edges are colored"));
    }
    Ok(BallAugmentOutcome::Augmented(AugmentationResult {
        modified_edges: modified_g,
        newly_colored: e,
        confinement_ok: true,
    }))
}

/// Distances from `source` out to `radius`, as a map.
fn bounded_distances(g: &Graph, source: usize, radius: usize) -> HashMap<usize, usize> {
    let mut dist = HashMap::from([(source, 0usize)]);
    let mut queue = std::collections::VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == radius {
            continue;
        }
        for &w in g.neighbors(v) {
            let w = w as usize;
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                d + 1
            });
        }
    }
    dist
}

// ---- exhaustive oracle ---------------------------------------------------

pub const ORACLE_EDGE_LIMIT: usize = 8;

/// Decides whether `h_edges` spans an `e`-augmenting subgraph for `phi` by
/// exhaustive enumeration of all palette colorings of the colored edges of H
/// plus `e`, checked against the fixed colors outside H. Deliberately
/// independent of the chain machinery; usable only at desk scale.
pub fn is_augmenting(
    g: &Graph,
    phi: &PartialEdgeColoring,
    h_edges: &[usize],
    e: usize,
) -> Result<bool, ColoringError> {
    if !h_edges.contains(&e) {
        return Err(ColoringError::EdgeNotInSubgraph(e));
    }
    if phi.color_of(e).is_some() {
        return Err(ColoringError::AlreadyColored(e));
    }
    let mut variables: Vec<usize> = h_edges
        .iter()
        .copied()
        .filter(|&f| phi.color_of(f).is_some())
        .collect();
    variables.push(e);
    if variables.len() > ORACLE_EDGE_LIMIT {
        return Err(ColoringError::OracleScale {
            got: variables.len(),
            limit: ORACLE_EDGE_LIMIT,
        });
    }
    let var_set: HashSet<usize> = variables.iter().copied().collect();
    let palette = phi.palette_size();

    // Fixed colors seen at each variable edge's endpoints.
    let fixed_at: Vec<Vec<bool>> = variables
        .iter()
        .map(|&f| {
            let (a, b) = g.endpoints(f);
            let mut blocked = vec![false; palette];
            for v in [a, b] {
                for &inc in g.incident_edges(v) {
                    let inc = inc as usize;
                    if inc != f && !var_set.contains(&inc) {
                        if let Some(c) = phi.color_of(inc) {
                            blocked[c] = true;
                        }
                    }
                }
            }
            blocked
        })
        .collect();

    // Variable pairs sharing an endpoint.
    let mut conflicts: Vec<(usize, usize)> = Vec::new();
    for i in 0..variables.len() {
        for j in i + 1..variables.len() {
            let (a, b) = g.endpoints(variables[i]);
            let (c, d) = g.endpoints(variables[j]);
            if a == c || a == d || b == c || b == d {
                conflicts.push((i, j));
            }
        }
    }

    let k = variables.len();
    let mut assignment = vec![0usize; k];
    'outer: loop {
        let ok = (0..k).all(|i| !fixed_at[i][assignment[i]])
            && conflicts
                .iter()
                .all(|&(i, j)| assignment[i] != assignment[j]);
        if ok {
            return Ok(true);
        }
        for slot in 0..k {
            assignment[slot] += 1;
            if assignment[slot] < palette {
                continue 'outer;
            }
            assignment[slot] = 0;
        }
        return Ok(false);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_colors_examples() {
        // Isolated vertex in a triangle-plus-vertex graph: full palette.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut phi = PartialEdgeColoring::empty(3, 3);
        assert_eq!(missing_colors(&g, &phi, 3), vec![0, 1, 2]);
        // Triangle vertex with incident edges colored 0 and 1.
        phi.set(g.edge_between(0, 1).unwrap(), 0);
        phi.set(g.edge_between(0, 2).unwrap(), 1);
        assert_eq!(missing_colors(&g, &phi, 0), vec![2]);
        // Star center with edges 0, 1, 2 and palette 4.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut phi = PartialEdgeColoring::empty(3, 4);
        for (e, c) in [(0, 0), (1, 1), (2, 2)] {
            phi.set(e, c);
        }
        assert_eq!(missing_colors(&star, &phi, 0), vec![3]);
    }

    #[test]
    fn extend_greedy_examples() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut phi = PartialEdgeColoring::empty(1, 2);
        let r = extend_greedy(&g, &mut phi, 0).unwrap();
        assert_eq!(phi.color_of(0), Some(0));
        assert_eq!(r.modified_edges, vec![0]);

        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut phi = PartialEdgeColoring::empty(3, 3);
        phi.set(k3.edge_between(0, 1).unwrap(), 0);
        phi.set(k3.edge_between(1, 2).unwrap(), 1);
        let third = k3.edge_between(0, 2).unwrap();
        extend_greedy(&k3, &mut phi, third).unwrap();
        assert_eq!(phi.color_of(third), Some(2));

        // Star with palette 4, two edges colored 0 and 1: smallest common
        // missing color is 2.
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let mut phi = PartialEdgeColoring::empty(3, 4);
        phi.set(0, 0);
        phi.set(1, 1);
        extend_greedy(&star, &mut phi, 2).unwrap();
        assert_eq!(phi.color_of(2), Some(2));
    }

    #[test]
    fn greedy_none_when_no_common_color() {
        // Path of 3 edges: outer edges colored so the middle endpoints have
        // disjoint missing sets.
        let g = Graph::path(4).unwrap();
        let mut phi = PartialEdgeColoring::empty(3, 3);
        phi.set(0, 0);
        phi.set(2, 1);
        // Middle edge: missing at vertex 1 = {1,2}, at vertex 2 = {0,2}; common {2}.
        assert!(extend_greedy(&g, &mut phi, 1).is_some());
    }

    #[test]
    fn chain_on_k4_minus_edge() {
        // K4 minus one edge, Delta = 3, palette 4; color edges so that the
        // last edge has no common missing color and a real fan is needed.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let mut phi = PartialEdgeColoring::empty(5, 4);
        // Force distinct missing sets at 0 and 1 for edge (0,1).
        phi.set(g.edge_between(0, 2).unwrap(), 0);
        phi.set(g.edge_between(0, 3).unwrap(), 1);
        phi.set(g.edge_between(1, 2).unwrap(), 2);
        phi.set(g.edge_between(1, 3).unwrap(), 3);
        let e = g.edge_between(0, 1).unwrap();
        let before = phi.clone();
        let result = vizing_chain_augment(&g, &mut phi, e).unwrap();
        phi.check_proper(&g).unwrap();
        assert_eq!(phi.domain_size(), before.domain_size() + 1);
        assert!(result.modified_edges.contains(&e));
        assert!(is_augmenting(&g, &before, &result.modified_edges, e).unwrap());
    }

    #[test]
    fn chain_grows_domain_by_one_on_seeded_grid_colorings() {
        use rand::Rng;
        use rand::SeedableRng;
        let g = Graph::grid(3, 3).unwrap();
        let palette = g.max_degree() + 1;
        for seed in 0..100u64 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut phi = PartialEdgeColoring::empty(g.edge_count(), palette);
            // Random proper partial coloring by greedy insertion.
            for e in 0..g.edge_count() {
                if rng.gen_bool(0.6) {
                    let (a, b) = g.endpoints(e);
                    let free: Vec<usize> = (0..palette)
                        .filter(|&c| {
                            missing_colors(&g, &phi, a).contains(&c)
                                && missing_colors(&g, &phi, b).contains(&c)
                        })
                        .collect();
                    if let Some(&c) = free.first() {
                        phi.set(e, c);
                    }
                }
            }
            let uncolored: Vec<usize> =
                (0..g.edge_count()).filter(|&e| phi.color_of(e).is_none()).collect();
            for &e in &uncolored {
                if phi.color_of(e).is_some() {
                    continue;
                }
                let before = phi.domain_size();
                vizing_chain_augment(&g, &mut phi, e).unwrap();
                phi.check_proper(&g).unwrap();
                assert_eq!(phi.domain_size(), before + 1);
            }
            assert!(phi.is_total());
        }
    }

    #[test]
    fn oracle_examples() {
        // C5, Delta = 2, palette 3: edges colored 0,1,0,1 around the cycle,
        // H = {remaining edge}: common missing color 2 exists.
        let g = Graph::cycle(5).unwrap();
        let mut phi = PartialEdgeColoring::empty(5, 3);
        for (e, c) in [(0usize, 0usize), (1, 1), (2, 0), (3, 1)] {
            phi.set(e, c);
        }
        assert!(is_augmenting(&g, &phi, &[4], 4).unwrap());

        // P3 with the other edge colored 0: H = {e} is augmenting.
        let p3 = Graph::path(3).unwrap();
        let mut phi = PartialEdgeColoring::empty(2, 3);
        phi.set(0, 0);
        assert!(is_augmenting(&p3, &phi, &[1], 1).unwrap());
    }

    #[test]
    fn oracle_negative_case() {
        // Star K_{1,2} with palette 2 restricted artificially: color one edge
        // 0, the other edge can only take color 1 -> H = {e} augmenting. But
        // if both colors are blocked from outside, not augmenting.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        let mut phi = PartialEdgeColoring::empty(3, 2);
        phi.set(g.edge_between(0, 2).unwrap(), 0);
        phi.set(g.edge_between(1, 3).unwrap(), 1);
        let e = g.edge_between(0, 1).unwrap();
        // e sees 0 at vertex 0 and 1 at vertex 1; palette 2 leaves nothing.
        assert!(!is_augmenting(&g, &phi, &[e], e).unwrap());
        // Growing H to include a flippable neighbor makes it augmenting.
        let all: Vec<usize> = (0..3).collect();
        assert!(is_augmenting(&g, &phi, &all, e).unwrap());
    }

    #[test]
    fn oracle_scale_guard() {
        let g = Graph::grid(4, 4).unwrap();
        let palette = 5;
        let mut phi = PartialEdgeColoring::empty(g.edge_count(), palette);
        for e in 1..g.edge_count() {
            let (a, b) = g.endpoints(e);
            if let Some(&c) = missing_colors(&g, &phi, a)
                .iter()
                .find(|c| missing_colors(&g, &phi, b).contains(c))
            {
                phi.set(e, c);
            }
        }
        let h: Vec<usize> = (0..g.edge_count()).collect();
        assert!(matches!(
            is_augmenting(&g, &phi, &h, 0),
            Err(ColoringError::OracleScale { .. })
        ));
    }

    #[test]
    fn augment_in_ball_interior_of_path() {
        let g = Graph::path(20).unwrap();
        let mut phi = PartialEdgeColoring::empty(19, 3);
        let e = 9;
        match augment_in_ball(&g, &mut phi, e, 2).unwrap() {
            BallAugmentOutcome::Augmented(r) => {
                assert_eq!(r.modified_edges, vec![e]);
                assert!(r.confinement_ok);
            }
            BallAugmentOutcome::ConfinementFailure => panic!("greedy case must succeed"),
        }
        phi.check_proper(&g).unwrap();
    }

    #[test]
    fn augment_in_ball_whole_component_never_fails() {
        // R at least the component size: confinement is vacuous.
        let g = Graph::cycle(7).unwrap();
        let mut phi = PartialEdgeColoring::empty(7, 3);
        for e in 0..7 {
            match augment_in_ball(&g, &mut phi, e, 7).unwrap() {
                BallAugmentOutcome::Augmented(_) => {}
                BallAugmentOutcome::ConfinementFailure => {
                    panic!("confinement must be vacuous at R = |V|")
                }
            }
        }
        assert!(phi.is_total());
        phi.check_proper(&g).unwrap();
    }

    #[test]
    fn augment_in_ball_agrees_outside_modified_edges() {
        let g = Graph::grid(4, 4).unwrap();
        let palette = 5;
        let mut phi = PartialEdgeColoring::empty(g.edge_count(), palette);
        for e in 0..g.edge_count() {
            let before = phi.clone();
            match augment_in_ball(&g, &mut phi, e, 3).unwrap() {
                BallAugmentOutcome::Augmented(r) => {
                    for f in 0..g.edge_count() {
                        if !r.modified_edges.contains(&f) {
                            assert_eq!(before.color_of(f), phi.color_of(f));
                        }
                    }
                    assert_connected_with(&g, &r.modified_edges);
                }
                BallAugmentOutcome::ConfinementFailure => {
                    assert_eq!(before, phi);
                }
            }
            phi.check_proper(&g).unwrap();
        }
    }

    /// The modified edge set spans a connected subgraph.
    fn assert_connected_with(g: &Graph, edges: &[usize]) {
        if edges.len() <= 1 {
            return;
        }
        let mut vertices: HashSet<usize> = HashSet::new();
        for &e in edges {
            let (a, b) = g.endpoints(e);
            vertices.insert(a);
            vertices.insert(b);
        }
        let start = *vertices.iter().min().unwrap();
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for (&w, &f) in g.neighbors(v).iter().zip(g.incident_edges(v)) {
                let w = w as usize;
                if edges.contains(&(f as usize)) && vertices.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        assert_eq!(seen.len(), vertices.len(), "modified edges disconnected");
    }
}
