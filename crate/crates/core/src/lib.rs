//! Graph-state rewrite calculus for two-QLAN networks.
//!
//! * [`graph`]: labeled simple graphs with local complementation and deletion.
//! * [`topology`]: constructors for the standard shapes.
//! * [`measurement`]: Pauli-measurement rewrite rules on graphs.
//! * [`network`]: QLAN star states, the remote-CZ merge and EPR accounting.
//! * [`recipes`]: named measurement sequences producing inter-QLAN topologies.
//! * [`oracle`]: stabilizer simulation used to certify the rewrite engine.

pub mod graph;
pub mod measurement;
pub mod network;
pub mod oracle;
pub mod recipes;
pub mod topology;

pub use graph::{graph_equal, Bipartition, Graph, GraphError, QlanVertexLabel, Role, VertexId};
pub use measurement::{
    default_k0, measure, measure_sequence, measure_with_limit, MeasurementError, MeasurementSpec, MeasurementTrace,
    PauliBasis, TraceEntry,
};
pub use network::{build_qlan, NetworkError, Qlan, QlanNetwork, ResourceLedger};
pub use recipes::{apply, base_graph, expected_graph, plan, restrict_to_subset, RecipeError, RecipeKind, RecipeParams, RecipeReport, Side};
pub use topology::{make_topology, make_topology_labeled, Topology};
