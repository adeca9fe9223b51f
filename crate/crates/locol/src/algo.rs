//! The main distributed edge-coloring pipeline: distance-2R edge classes,
//! simultaneous in-ball Vizing augmentation with escalation-by-doubling for
//! confinement failures, the (2Δ-1) line-graph baseline, and the edge-coloring
//! verifier.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::RunError;
use crate::graph::{AdjacencyList, Graph, GrowthProfile, Topology};
use crate::runtime::{AccountingMode, NodeIdentifiers, RoundTranscript};
use crate::symmetry::{
    classes_by_index, distance_edge_classes, distance_edge_classes_for_subset, edge_rank_ids,
    gps_vertex_coloring,
};
use crate::vizing::{augment_in_ball, BallAugmentOutcome, PartialEdgeColoring};

// ---- configuration -------------------------------------------------------

/// Run parameters for [`parallel_vizing_edge_coloring`].
///
/// The default radius is 3 rather than the formula value of [`select_radius`]:
/// the formula's constant makes its output astronomically large, while
/// escalation-by-doubling already guarantees correctness at any starting
/// radius (confinement is vacuous once the ball covers the component).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgorithmConfig {
    pub radius: usize,
    pub escalation_factor: usize,
    pub max_escalations: usize,
    pub accounting: AccountingMode,
}

impl Default for AlgorithmConfig {
    fn default() -> AlgorithmConfig {
        AlgorithmConfig {
            radius: 3,
            escalation_factor: 2,
            max_escalations: 16,
            accounting: AccountingMode::Optimistic,
        }
    }
}

impl AlgorithmConfig {
    fn validate(&self) {
        assert!(self.radius >= 1, "radius must be at least 1");
        assert!(
            self.escalation_factor >= 2,
            "escalation factor must be at least 2"
        );
    }
}

/// Result of evaluating the radius-selection formula against a growth
/// profile. `warning` is set when no recorded radius certifies the
/// subexponential-growth bound, i.e. the graph may not satisfy the growth
/// hypothesis at the profiled scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SelectedRadius {
    pub radius: usize,
    pub epsilon: f64,
    pub warning: bool,
}

/// Evaluates the radius formula R = max{R(ε), ⌈1/ε⌉, 3} with
/// ε = 1 / (3 · C · f(1)^7), where f is the profiled ball-size function and
/// R(ε) is the least recorded radius from which f(R) < exp(εR) holds for all
/// larger recorded radii. When no recorded radius satisfies the bound the
/// profile's maximum radius stands in for R(ε) and `warning` is raised.
pub fn select_radius(profile: &GrowthProfile, assumed_c: f64) -> SelectedRadius {
    assert!(assumed_c >= 1.0, "assumed constant must be at least 1");
    assert!(profile.radius_max() >= 1, "profile must record some radius");
    let f1 = profile.get(1) as f64;
    let epsilon = 1.0 / (3.0 * assumed_c * f1.powi(7));
    let r_max = profile.radius_max();
    // Least r0 such that f(r) < exp(epsilon * r) for all recorded r >= r0.
    let mut r0 = None;
    for r in (1..=r_max).rev() {
        if (profile.get(r) as f64) < (epsilon * r as f64).exp() {
            r0 = Some(r);
        } else {
            break;
        }
    }
    let warning = r0.is_none();
    let empirical = r0.unwrap_or(r_max);
    let inv = (1.0 / epsilon).ceil() as usize;
    SelectedRadius {
        radius: empirical.max(inv).max(3),
        epsilon,
        warning,
    }
}

// ---- verification --------------------------------------------------------

/// A defect found by [`verify_edge_coloring`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum EdgeViolation {
    IncidentSameColor {
        e: usize,
        f: usize,
        vertex: usize,
        color: usize,
    },
    OutOfPalette {
        e: usize,
        color: usize,
    },
    Uncolored {
        e: usize,
    },
}

/// Checks a (partial) edge coloring against palette `q`: reports every
/// incident same-color pair, every out-of-palette color, and — when
/// `require_total` — every uncolored edge. Violations are data, not errors.
pub fn verify_edge_coloring(
    g: &Graph,
    coloring: &PartialEdgeColoring,
    palette: usize,
    require_total: bool,
) -> Vec<EdgeViolation> {
    let mut violations = Vec::new();
    for e in 0..g.edge_count() {
        match coloring.color_of(e) {
            Some(c) if c >= palette => violations.push(EdgeViolation::OutOfPalette { e, color: c }),
            None if require_total => violations.push(EdgeViolation::Uncolored { e }),
            _ => {}
        }
    }
    for v in 0..g.vertex_count() {
        let mut by_color: HashMap<usize, usize> = HashMap::new();
        for &e in g.incident_edges(v) {
            let e = e as usize;
            if let Some(c) = coloring.color_of(e) {
                match by_color.get(&c) {
                    Some(&f) => violations.push(EdgeViolation::IncidentSameColor {
                        e: f.min(e),
                        f: f.max(e),
                        vertex: v,
                        color: c,
                    }),
                    None => {
                        by_color.insert(c, e);
                    }
                }
            }
        }
    }
    violations
}

// ---- main algorithm ------------------------------------------------------

/// Full report of one [`parallel_vizing_edge_coloring`] run.
#[derive(Debug, Clone, Serialize)]
pub struct ColoringRunReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub palette_size: usize,
    pub colors_used: usize,
    pub initial_radius: usize,
    pub final_radius: usize,
    pub escalations: usize,
    /// Sizes of the nonempty classes actually swept, in phase order.
    pub class_sizes: Vec<usize>,
    /// Modified-set size -> number of augmentations with that size.
    pub chain_histogram: BTreeMap<usize, u64>,
    pub total_rounds_optimistic: u64,
    pub total_rounds_faithful: u64,
    /// Phase-by-phase transcript in the configured accounting mode.
    pub transcript: RoundTranscript,
    pub coloring: PartialEdgeColoring,
}

impl ColoringRunReport {
    pub fn max_chain_size(&self) -> usize {
        self.chain_histogram.keys().max().copied().unwrap_or(0)
    }
}

/// Number of classes the faithful accounting charges for one sweep at
/// radius r: the analysis bound (2Δ)^{2r}, saturating.
fn faithful_class_count(delta: usize, radius: usize) -> u64 {
    let base = 2u64.saturating_mul(delta as u64);
    let exp = u32::try_from(2 * radius).unwrap_or(u32::MAX);
    base.saturating_pow(exp)
}

/// Computes a total proper (Δ+1)-edge-coloring by sweeping the distance-2R
/// edge classes in ascending order and augmenting every edge of a class
/// simultaneously inside its radius-R ball. Edges whose Vizing chain escapes
/// the confinement region are deferred; deferred edges are re-classed at
/// doubled radius until none remain or the escalation cap is hit.
///
/// Within each class phase the modified edge sets of distinct augmentations
/// are checked to be pairwise vertex-disjoint — a violation is a hard error,
/// never silently merged.
pub fn parallel_vizing_edge_coloring(
    g: &Graph,
    ids: &NodeIdentifiers,
    config: &AlgorithmConfig,
) -> Result<ColoringRunReport, RunError> {
    config.validate();
    assert_eq!(ids.len(), g.vertex_count(), "one identifier per vertex");
    let delta = g.max_degree();
    let palette = delta + 1;
    let m = g.edge_count();

    let mut phi = PartialEdgeColoring::empty(m, palette);
    let mut optimistic = RoundTranscript::new(AccountingMode::Optimistic);
    let mut faithful = RoundTranscript::new(AccountingMode::Faithful);
    let mut class_sizes = Vec::new();
    let mut chain_histogram: BTreeMap<usize, u64> = BTreeMap::new();
    let mut escalations = 0usize;
    let mut radius = config.radius;

    if m > 0 {
        let (classes, setup) = distance_edge_classes(g, radius, ids);
        optimistic.extend(&setup);
        faithful.extend(&setup);
        let mut groups = classes_by_index(&classes.classes, classes.class_count);
        let mut class_count = classes.class_count;

        loop {
            let mut deferred = Vec::new();
            let mut nonempty = 0u64;
            // Vertex -> index of the augmentation that touched it this phase.
            let mut owner: HashMap<usize, usize> = HashMap::new();
            for (ci, members) in groups.iter().enumerate() {
                if members.is_empty() {
                    continue;
                }
                nonempty += 1;
                class_sizes.push(members.len());
                owner.clear();
                for (ai, &e) in members.iter().enumerate() {
                    match augment_in_ball(g, &mut phi, e, radius).map_err(RunError::Coloring)? {
                        BallAugmentOutcome::Augmented(res) => {
                            for &me in &res.modified_edges {
                                let (a, b) = g.endpoints(me);
                                for v in [a, b] {
                                    match owner.get(&v) {
                                        Some(&prev) if prev != ai => {
                                            return Err(RunError::ParallelSafetyViolation {
                                                vertex: v,
                                                class: ci,
                                            });
                                        }
                                        _ => {
                                            owner.insert(v, ai);
                                        }
                                    }
                                }
                            }
                            *chain_histogram.entry(res.modified_edges.len()).or_insert(0) += 1;
                        }
                        BallAugmentOutcome::ConfinementFailure => deferred.push(e),
                    }
                }
            }
            let label = format!("class-sweep-r{radius}");
            optimistic.push_phase(&label, radius, nonempty.saturating_mul(radius as u64));
            faithful.push_phase(
                &label,
                radius,
                faithful_class_count(delta, radius)
                    .max(class_count as u64)
                    .saturating_mul(radius as u64),
            );
            if deferred.is_empty() {
                break;
            }
            if escalations >= config.max_escalations {
                return Err(RunError::EscalationCapExceeded {
                    uncolored: deferred.len(),
                    radius,
                });
            }
            escalations += 1;
            radius = radius.saturating_mul(config.escalation_factor);
            let (sub_classes, sub_count, sub_setup) =
                distance_edge_classes_for_subset(g, radius, ids, &deferred);
            optimistic.extend(&sub_setup);
            faithful.extend(&sub_setup);
            groups = classes_by_index(&sub_classes, sub_count)
                .into_iter()
                .map(|group| group.into_iter().map(|pos| deferred[pos]).collect())
                .collect();
            class_count = sub_count;
        }
    }

    let violations = verify_edge_coloring(g, &phi, palette, true);
    if !violations.is_empty() {
        return Err(RunError::VerificationFailed(violations.len()));
    }

    let total_rounds_optimistic = optimistic.total_rounds();
    let total_rounds_faithful = faithful.total_rounds();
    let transcript = match config.accounting {
        AccountingMode::Optimistic => optimistic,
        AccountingMode::Faithful => faithful,
    };
    Ok(ColoringRunReport {
        vertex_count: g.vertex_count(),
        edge_count: m,
        max_degree: delta,
        palette_size: palette,
        colors_used: phi.colors_used(),
        initial_radius: config.radius,
        final_radius: radius,
        escalations,
        class_sizes,
        chain_histogram,
        total_rounds_optimistic,
        total_rounds_faithful,
        transcript,
        coloring: phi,
    })
}

// ---- (2Δ-1) baseline -----------------------------------------------------

/// Edge coloring by (Δ_L+1)-vertex-coloring the line graph, where
/// Δ_L ≤ 2Δ-2, giving at most 2Δ-1 colors. Rounds on the line graph are
/// charged back to G with simulation factor 2.
pub fn pr_baseline_edge_coloring(
    g: &Graph,
    ids: &NodeIdentifiers,
) -> (PartialEdgeColoring, RoundTranscript) {
    let m = g.edge_count();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); m];
    for v in 0..g.vertex_count() {
        let incident = g.incident_edges(v);
        for (i, &e) in incident.iter().enumerate() {
            for &f in &incident[i + 1..] {
                adj[e as usize].push(f);
                adj[f as usize].push(e);
            }
        }
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    let line = AdjacencyList::new(adj);
    let edge_ids = edge_rank_ids(g, ids, None);
    let (vc, line_transcript) = gps_vertex_coloring(&line, &edge_ids);
    let mut transcript = RoundTranscript::new(AccountingMode::Optimistic);
    if m > 0 {
        transcript.push_phase("edge-id-exchange", 1, 1);
    }
    transcript.absorb_scaled(&line_transcript, 1);
    let mut coloring = PartialEdgeColoring::empty(m, vc.palette_size);
    for (e, &c) in vc.colors.iter().enumerate() {
        coloring.set(e, c);
    }
    (coloring, transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::growth_profile;
    use crate::runtime::{assign_ids, IdScheme};

    fn run_default(g: &Graph, scheme: IdScheme) -> ColoringRunReport {
        let ids = assign_ids(g, scheme);
        parallel_vizing_edge_coloring(g, &ids, &AlgorithmConfig::default())
            .expect("run succeeds")
    }

    #[test]
    fn perfect_matching_colors_in_one_sweep() {
        let edges: Vec<(usize, usize)> = (0..6).map(|i| (2 * i, 2 * i + 1)).collect();
        let g = Graph::from_edges(12, &edges).unwrap();
        let report = run_default(&g, IdScheme::Sequential);
        assert_eq!(report.palette_size, 2);
        assert_eq!(report.escalations, 0);
        for e in 0..g.edge_count() {
            assert_eq!(report.coloring.color_of(e), Some(0));
        }
    }

    #[test]
    fn odd_cycle_uses_all_three_colors() {
        let g = Graph::cycle(7).unwrap();
        let report = run_default(&g, IdScheme::Sequential);
        assert_eq!(report.palette_size, 3);
        assert_eq!(report.colors_used, 3);
        assert!(verify_edge_coloring(&g, &report.coloring, 3, true).is_empty());
    }

    #[test]
    fn grid_coloring_is_total_proper_with_five_colors() {
        let g = Graph::grid(12, 12).unwrap();
        for scheme in [
            IdScheme::Sequential,
            IdScheme::Permuted { seed: 7 },
            IdScheme::AdversarialPattern,
        ] {
            let report = run_default(&g, scheme);
            assert_eq!(report.palette_size, 5);
            assert!(verify_edge_coloring(&g, &report.coloring, 5, true).is_empty());
            assert_eq!(report.escalations, 0);
        }
    }

    #[test]
    fn edgeless_graph_yields_empty_total_coloring() {
        let g = Graph::from_edges(5, &[]).unwrap();
        let report = run_default(&g, IdScheme::Sequential);
        assert_eq!(report.edge_count, 0);
        assert!(report.coloring.is_total());
        assert_eq!(report.total_rounds_optimistic, 0);
    }

    #[test]
    fn deterministic_reports_for_identical_inputs() {
        let g = Graph::torus(5, 6).unwrap();
        let ids = assign_ids(&g, IdScheme::Permuted { seed: 11 });
        let config = AlgorithmConfig::default();
        let a = parallel_vizing_edge_coloring(&g, &ids, &config).unwrap();
        let b = parallel_vizing_edge_coloring(&g, &ids, &config).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn monotone_progress_accounted_in_histogram() {
        let g = Graph::grid(8, 8).unwrap();
        let report = run_default(&g, IdScheme::Sequential);
        let augmentations: u64 = report.chain_histogram.values().sum();
        assert_eq!(augmentations, g.edge_count() as u64);
        assert_eq!(report.class_sizes.iter().sum::<usize>(), g.edge_count());
    }

    #[test]
    fn faithful_total_dominates_optimistic() {
        let g = Graph::grid(9, 9).unwrap();
        let report = run_default(&g, IdScheme::Sequential);
        assert!(report.total_rounds_faithful >= report.total_rounds_optimistic);
    }

    #[test]
    fn baseline_matching_uses_one_color() {
        let g = Graph::from_edges(8, &[(0, 1), (2, 3), (4, 5), (6, 7)]).unwrap();
        let ids = assign_ids(&g, IdScheme::Sequential);
        let (coloring, _) = pr_baseline_edge_coloring(&g, &ids);
        assert_eq!(coloring.colors_used(), 1);
    }

    #[test]
    fn baseline_star_uses_exactly_delta_colors() {
        let delta = 6;
        let edges: Vec<(usize, usize)> = (1..=delta).map(|v| (0, v)).collect();
        let g = Graph::from_edges(delta + 1, &edges).unwrap();
        let ids = assign_ids(&g, IdScheme::Sequential);
        let (coloring, _) = pr_baseline_edge_coloring(&g, &ids);
        assert_eq!(coloring.colors_used(), delta);
        assert!(coloring.colors_used() <= 2 * delta - 1);
        assert!(verify_edge_coloring(&g, &coloring, 2 * delta - 1, true).is_empty());
    }

    #[test]
    fn baseline_grid_within_palette_bound() {
        let g = Graph::grid(20, 20).unwrap();
        let ids = assign_ids(&g, IdScheme::Permuted { seed: 3 });
        let (coloring, transcript) = pr_baseline_edge_coloring(&g, &ids);
        assert!(verify_edge_coloring(&g, &coloring, 7, true).is_empty());
        assert!(transcript.total_rounds() > 0);
    }

    #[test]
    fn verifier_reports_shared_endpoint() {
        let g = Graph::path(3).unwrap();
        let mut coloring = PartialEdgeColoring::empty(2, 3);
        coloring.set(0, 0);
        coloring.set(1, 0);
        let violations = verify_edge_coloring(&g, &coloring, 3, true);
        assert_eq!(
            violations,
            vec![EdgeViolation::IncidentSameColor {
                e: 0,
                f: 1,
                vertex: 1,
                color: 0
            }]
        );
    }

    #[test]
    fn verifier_accepts_empty_partial_and_flags_totality() {
        let g = Graph::path(4).unwrap();
        let coloring = PartialEdgeColoring::empty(3, 4);
        assert!(verify_edge_coloring(&g, &coloring, 4, false).is_empty());
        let violations = verify_edge_coloring(&g, &coloring, 4, true);
        assert_eq!(violations.len(), 3);
        assert!(matches!(violations[0], EdgeViolation::Uncolored { e: 0 }));
    }

    #[test]
    fn verifier_reports_out_of_palette() {
        let g = Graph::path(2).unwrap();
        let mut coloring = PartialEdgeColoring::empty(1, 9);
        coloring.set(0, 8);
        let violations = verify_edge_coloring(&g, &coloring, 2, false);
        assert_eq!(
            violations,
            vec![EdgeViolation::OutOfPalette { e: 0, color: 8 }]
        );
    }

    #[test]
    fn select_radius_constant_growth_hits_floor() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let profile = growth_profile(&g, 8);
        let selected = select_radius(&profile, 1.0);
        assert_eq!(selected.radius, 3);
        assert!(!selected.warning);
        assert!((selected.epsilon - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn select_radius_quadratic_growth_dominated_by_inverse_epsilon() {
        let g = Graph::grid(30, 30).unwrap();
        let profile = growth_profile(&g, 6);
        let selected = select_radius(&profile, 1.0);
        // f(1) = 5, so 1/eps = 3 * 5^7 = 234375 dwarfs every recorded radius.
        assert_eq!(selected.radius, 234_375);
        assert!(selected.warning);
    }

    #[test]
    fn escalation_cap_is_an_explicit_failure() {
        let g = Graph::cycle(64).unwrap();
        let ids = assign_ids(&g, IdScheme::Sequential);
        let config = AlgorithmConfig {
            radius: 1,
            escalation_factor: 2,
            max_escalations: 0,
            accounting: AccountingMode::Optimistic,
        };
        match parallel_vizing_edge_coloring(&g, &ids, &config) {
            Ok(report) => {
                // Radius 1 may still succeed outright; then the coloring must
                // be total and proper.
                assert!(verify_edge_coloring(&g, &report.coloring, 3, true).is_empty());
            }
            Err(RunError::EscalationCapExceeded { uncolored, radius }) => {
                assert!(uncolored > 0);
                assert_eq!(radius, 1);
            }
            Err(other) => panic!("unexpected error: {other}"),
        }
    }
}
