//! Deterministic distributed (Δ+1)-edge-coloring on graphs of slow growth,
//! built on a round-synchronous LOCAL-model simulator.
//!
//! The pipeline: color the distance-2R power graph of the edge set with a
//! Linial/GPS (Δ*+1)-vertex-coloring, then sweep the resulting far-apart edge
//! classes, extending a partial Vizing coloring simultaneously inside
//! radius-R balls; confinement failures escalate the radius by doubling.
//! Round transcripts account every phase in both optimistic (nonempty classes
//! only) and faithful (analysis-shaped) modes.

pub mod algo;
pub mod error;
pub mod graph;
pub mod io;
pub mod runtime;
pub mod symmetry;
pub mod vizing;

pub use algo::{
    parallel_vizing_edge_coloring, pr_baseline_edge_coloring, select_radius, verify_edge_coloring,
    AlgorithmConfig, ColoringRunReport, EdgeViolation, SelectedRadius,
};
pub use error::{ColoringError, GraphError, ParseError, RunError};
pub use graph::{
    closed_ball, growth_profile, log_star, power_graph_on_edges, Graph, GrowthProfile, PowerGraph,
    Topology,
};
pub use io::{read_graph, write_graph};
pub use runtime::{
    assign_ids, run_phased_algorithm, AccountingMode, BallView, IdScheme, NodeIdentifiers,
    PhaseSpec, RoundTranscript,
};
pub use symmetry::{
    classes_by_index, distance_edge_classes, gps_vertex_coloring, linial_palette_target,
    linial_reduce, verify_vertex_coloring, EdgeClassColoring, VertexColoring, VertexViolation,
};
pub use vizing::{
    augment_in_ball, extend_greedy, is_augmenting, missing_colors, vizing_chain_augment,
    AugmentationResult, BallAugmentOutcome, PartialEdgeColoring,
};
