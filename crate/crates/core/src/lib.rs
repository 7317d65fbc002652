//! Uniformly 4-connected graphs: exact connectivity, the `Δ₁⁺`/`Δ₂⁺`
//! expansion operations, removable-edge reduction, quasi-4-compatibility,
//! and construction traces from `C₅²` and `C₆²`.

pub mod canon;
pub mod chording;
pub mod connectivity;
pub mod construct;
pub mod graph;
pub mod io;
pub mod transform;

pub use canon::{are_isomorphic, canonical_cert, canonical_form, CanonicalCert};
pub use connectivity::{
    connectivity_report, is_uniformly_4_connected, local_connectivity, vertex_connectivity,
    ConnectivityReport, Witness,
};
pub use chording::{ChordRule, SearchBudget, Semantics};
pub use construct::{
    brute_force_uniform, decompose, generate_all, replay, verify_theorem, ConstructError,
    ConstructionTrace,
};
pub use graph::{fixtures, square_of_cycle, Edge, Graph, GraphError, IdMap, Vertex};
pub use transform::{
    apply_delta1, apply_delta2, is_quasi_4_compatible, is_removable, reduce_edge, CompatReport,
    Delta1Spec, Delta2Spec, OperationSpec, TransformError,
};
