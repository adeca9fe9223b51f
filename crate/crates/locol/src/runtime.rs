//! Deterministic round-synchronous simulator of the LOCAL model: identifier
//! assignment, ball views, phased execution, and round accounting.
//!
//! The simulator uses the ball-view formulation: a radius-T phase hands every
//! vertex exactly its closed T-neighborhood (induced topology, identifiers,
//! and the per-vertex state computed by earlier phases) and nothing else.
//! Accessing anything outside the ball is a locality-contract violation and
//! panics.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{closed_ball, Topology};

/// How identifiers are assigned to vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdScheme {
    /// Vertex i gets identifier i + 1.
    Sequential,
    /// Deterministic pseudorandom permutation of {1..n}.
    Permuted { seed: u64 },
    /// Structured worst-case-style assignment: identifiers increase along the
    /// generator's natural order, ties between degrees broken by index.
    /// On a cycle this is the sorted-along-the-cycle pattern.
    AdversarialPattern,
}

/// A bijection from vertices to {1, ..., n}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeIdentifiers {
    ids: Vec<usize>,
}

impl NodeIdentifiers {
    /// Wraps an explicit assignment, checking it is a bijection onto {1..n}.
    pub fn from_values(ids: Vec<usize>) -> Result<NodeIdentifiers, GraphError> {
        let n = ids.len();
        let mut seen = vec![false; n + 1];
        for &id in &ids {
            if id == 0 || id > n || seen[id] {
                return Err(GraphError::InvalidDimensions(format!(
                    "identifier assignment is not a bijection onto 1..={n}"
                )));
            }
            seen[id] = true;
        }
        Ok(NodeIdentifiers { ids })
    }

    pub fn of(&self, v: usize) -> usize {
        self.ids[v]
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

pub fn assign_ids<T: Topology>(topo: &T, scheme: IdScheme) -> NodeIdentifiers {
    let n = topo.vertex_count();
    let ids = match scheme {
        IdScheme::Sequential => (1..=n).collect(),
        IdScheme::Permuted { seed } => {
            let mut ids: Vec<usize> = (1..=n).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ids.shuffle(&mut rng);
            ids
        }
        IdScheme::AdversarialPattern => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&v| (topo.degree(v), v));
            let mut ids = vec![0; n];
            for (rank, &v) in order.iter().enumerate() {
                ids[v] = rank + 1;
            }
            ids
        }
    };
    NodeIdentifiers { ids }
}

// ---- ball views ---------------------------------------------------------

/// Everything a vertex may see in a radius-T phase: the induced topology on
/// N^T[center] together with identifiers and phase state restricted to it.
pub struct BallView<'a, T: Topology, S> {
    topo: &'a T,
    ids: &'a NodeIdentifiers,
    state: &'a [S],
    center: usize,
    radius: usize,
    /// Sorted ball membership.
    members: Vec<u32>,
}

impl<'a, T: Topology, S> BallView<'a, T, S> {
    pub(crate) fn new(
        topo: &'a T,
        ids: &'a NodeIdentifiers,
        state: &'a [S],
        center: usize,
        radius: usize,
    ) -> Self {
        let members: Vec<u32> = if radius == 1 {
            // Hot path: neighbors are already sorted, merge the center in.
            let nbrs = topo.neighbors(center);
            let mut m = Vec::with_capacity(nbrs.len() + 1);
            let c = center as u32;
            let split = nbrs.partition_point(|&x| x < c);
            m.extend_from_slice(&nbrs[..split]);
            m.push(c);
            m.extend_from_slice(&nbrs[split..]);
            m
        } else {
            closed_ball(topo, center, radius)
                .expect("ball view center in range")
                .into_iter()
                .map(|v| v as u32)
                .collect()
        };
        BallView {
            topo,
            ids,
            state,
            center,
            radius,
            members,
        }
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Vertices of the ball, sorted.
    pub fn vertices(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&(v as u32)).is_ok()
    }

    fn check(&self, v: usize) {
        assert!(
            self.contains(v),
            "locality contract violation: vertex {v} is outside the radius-{} ball of {}",
            self.radius,
            self.center
        );
    }

    pub fn id(&self, v: usize) -> usize {
        self.check(v);
        self.ids.of(v)
    }

    pub fn state(&self, v: usize) -> &S {
        self.check(v);
        &self.state[v]
    }

    /// Neighbors of `v` inside the ball (the induced subgraph).
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.check(v);
        self.topo
            .neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| self.contains(w))
    }

    /// The center's degree in the full graph. A vertex knows how many
    /// communication links it has even in a radius-0 phase.
    pub fn center_degree(&self) -> usize {
        self.topo.degree(self.center)
    }
}

// ---- transcripts --------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AccountingMode {
    /// Empty color classes of the edge-class coloring are not charged.
    Optimistic,
    /// The full (2*Delta)^{2R} class budget of the analysis is charged.
    Faithful,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub phase: String,
    pub radius: usize,
    pub rounds: u64,
}

/// Per-phase round accounting for a LOCAL execution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTranscript {
    pub phases: Vec<PhaseRecord>,
    pub accounting_mode: AccountingMode,
}

impl RoundTranscript {
    pub fn new(accounting_mode: AccountingMode) -> RoundTranscript {
        RoundTranscript {
            phases: Vec::new(),
            accounting_mode,
        }
    }

    pub fn push_phase(&mut self, phase: impl Into<String>, radius: usize, rounds: u64) {
        self.phases.push(PhaseRecord {
            phase: phase.into(),
            radius,
            rounds,
        });
    }

    pub fn total_rounds(&self) -> u64 {
        self.phases
            .iter()
            .fold(0u64, |acc, p| acc.saturating_add(p.rounds))
    }

    /// Charges `rounds_on_power_graph` simulated G*-rounds: one round on the
    /// distance-k power graph costs k + 1 rounds on G.
    pub fn charge_power_graph_phase(
        &mut self,
        phase: impl Into<String>,
        k: usize,
        rounds_on_power_graph: u64,
    ) {
        assert!(k >= 1, "power-graph simulation needs k >= 1");
        let factor = (k + 1) as u64;
        self.push_phase(
            phase,
            k + 1,
            factor.saturating_mul(rounds_on_power_graph),
        );
    }

    /// Appends all phases of `other`, rescaled through the power-graph
    /// simulation factor.
    pub fn absorb_scaled(&mut self, other: &RoundTranscript, k: usize) {
        for p in &other.phases {
            self.charge_power_graph_phase(format!("{}@G*", p.phase), k, p.rounds);
        }
    }

    pub fn extend(&mut self, other: &RoundTranscript) {
        self.phases.extend(other.phases.iter().cloned());
    }
}

// ---- phased execution ---------------------------------------------------

/// One ball-view-driven step: every vertex reads its radius-`radius` ball and
/// produces its next state.
pub struct PhaseSpec<'a, T: Topology, S> {
    pub label: &'a str,
    pub radius: usize,
    pub step: &'a dyn Fn(&BallView<'_, T, S>) -> S,
}

/// Executes phases in order, charging `radius` rounds per phase. Output is
/// deterministic given (topology, ids, phases) and independent of the order
/// in which vertices are evaluated inside a phase: every step reads the state
/// snapshot from the previous phase boundary.
pub fn run_phased_algorithm<T: Topology, S: Clone>(
    topo: &T,
    ids: &NodeIdentifiers,
    initial: Vec<S>,
    phases: &[PhaseSpec<'_, T, S>],
    mode: AccountingMode,
) -> (Vec<S>, RoundTranscript) {
    assert_eq!(initial.len(), topo.vertex_count());
    let mut transcript = RoundTranscript::new(mode);
    let mut state = initial;
    for phase in phases {
        let next: Vec<S> = (0..topo.vertex_count())
            .map(|v| {
                let view = BallView::new(topo, ids, &state, v, phase.radius);
                (phase.step)(&view)
            })
            .collect();
        state = next;
        transcript.push_phase(phase.label, phase.radius, phase.radius as u64);
    }
    (state, transcript)
}

/// Synchronous radius-1 step over an explicit active set: outputs are
/// computed for every active vertex against the old state, then merged.
/// Used by the coloring algorithms, where most phases touch one color class.
pub(crate) fn radius_one_step<T: Topology, S: Clone>(
    topo: &T,
    ids: &NodeIdentifiers,
    state: &mut [S],
    active: &[usize],
    step: impl Fn(&BallView<'_, T, S>) -> S,
) {
    let updates: Vec<(usize, S)> = active
        .iter()
        .map(|&v| {
            let view = BallView::new(topo, ids, state, v, 1);
            (v, step(&view))
        })
        .collect();
    for (v, s) in updates {
        state[v] = s;
    }
}
