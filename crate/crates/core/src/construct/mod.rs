//! Constructions from `C₅²` and `C₆²`: replayable traces, decomposition of a
//! uniformly 4-connected graph into such a trace, breadth-first generation
//! of every uniformly 4-connected graph up to a given order, and an
//! independent brute-force enumeration to check it against.

mod decompose;
mod generate;
pub mod oracle;
mod trace;
mod verify;

use thiserror::Error;

use crate::canon::{CanonError, CanonicalCert};
use crate::connectivity::{ConnectivityError, Witness};
use crate::transform::TransformError;

pub use decompose::{decompose, decompose_with, inverse_candidates, predecessors, DecomposeOptions, Predecessor};
pub use generate::{generate_all, generate_with, GenerateOptions, GenerationReport, GenerationStats};
pub use oracle::{brute_force_four_connected, brute_force_uniform, brute_force_uniform_graphs};
pub use trace::{replay, replay_with, Base, ConstructionTrace, TraceStep, TRACE_SCHEMA_VERSION};
pub use verify::{case3_claim_violations, verify_theorem, verify_with, GraphCheck, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("graph is not uniformly 4-connected: {0:?}")]
    NotUniform(Option<Witness>),
    #[error("order {n} outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },
    #[error("search budget exhausted after {explored} candidates; deepest chain reached {} graphs", .partial.len())]
    BudgetExceeded { explored: usize, partial: Vec<CanonicalCert> },
    #[error("no sequence of inverse operations reaches a base graph from {0}")]
    NoDecomposition(CanonicalCert),
    #[error("step {index} is invalid: {cause}")]
    StepInvalid { index: usize, cause: String },
    #[error("step {index} produced {actual}, trace expects {expected}")]
    CertMismatch { index: usize, expected: CanonicalCert, actual: CanonicalCert },
    #[error("trace schema version {0} is not supported")]
    UnsupportedSchema(u32),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Connectivity(#[from] ConnectivityError),
}
