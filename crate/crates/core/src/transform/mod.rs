//! Graph transforms: removable-edge reduction `G ⊖ e`, the `Δ₁⁺` and `Δ₂⁺`
//! expansions with their side conditions, and quasi-4-compatibility of the
//! sets they act on.

mod compat;
mod delta;
mod reduce;

use thiserror::Error;

use crate::chording::ChordError;
use crate::connectivity::{ConnectivityError, Fragment};
use crate::graph::{Edge, GraphError, Vertex};

pub use compat::{
    compat_conditions, compat_conditions_with, is_quasi_4_compatible, is_quasi_4_compatible_with, CompatReport, Condition,
    Predicate, Violation, ViolationWitness,
};
pub use delta::{
    apply_delta1, apply_delta2, apply_operation, delta1_candidates, delta2_candidates, validate_delta1, validate_delta2,
    validate_operation, CompatSet, Delta1Spec, Delta2Spec, FourConnected, OperationSpec,
    SpecViolation, TripleLabel,
};
pub use reduce::{
    is_removable, is_removable_structural, reduce_edge, reduce_edge_ordered, removable_edges,
    EndpointOrder, Reduction,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("edge {0} is not in the graph")]
    EdgeAbsent(Edge),
    #[error("host graph is not 4-connected (κ = {kappa})")]
    NotFourConnected { kappa: usize },
    #[error("graph has {n} vertices, this test needs at least {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("invalid operation spec: {}", list_violations(.0))]
    SpecInvalid(Vec<SpecViolation>),
    #[error("connectivity of the reduced graph is {actual}, at least {required} required")]
    ConnectivityTooLow { required: usize, actual: usize },
    #[error("end {:?} (cut {:?}) misses X or Y", .0.body, .0.cut)]
    EndCoverageViolated(Fragment),
    #[error(transparent)]
    Chord(#[from] ChordError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}

impl TransformError {
    /// True when the failure is an exhausted search budget (verdict unknown).
    pub fn is_budget_exceeded(&self) -> bool {
        matches!(self, TransformError::Chord(ChordError::BudgetExceeded { .. }))
    }
}

fn list_violations(v: &[SpecViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

/// The three edges of the abstract triangle on a vertex triple.
pub(crate) fn triangle(t: [Vertex; 3]) -> [Edge; 3] {
    [Edge::new(t[0], t[1]), Edge::new(t[0], t[2]), Edge::new(t[1], t[2])]
}
