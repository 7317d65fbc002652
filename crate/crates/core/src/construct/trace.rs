use serde::{Deserialize, Serialize};

use super::ConstructError;
use crate::canon::{canonical_cert, CanonicalCert};
use crate::chording::{SearchBudget, Semantics};
use crate::connectivity::is_uniform4;
use crate::graph::{square_of_cycle, Graph};
use crate::transform::{is_quasi_4_compatible_with, FourConnected, OperationSpec};

pub const TRACE_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    #[serde(rename = "C5SQ")]
    C5Sq,
    #[serde(rename = "C6SQ")]
    C6Sq,
}

impl Base {
    /// The base graph with the labeling replays start from.
    pub fn graph(self) -> Graph {
        match self {
            Base::C5Sq => square_of_cycle(5),
            Base::C6Sq => square_of_cycle(6),
        }
        .expect("order at least 5")
    }

    pub fn order(self) -> usize {
        match self {
            Base::C5Sq => 5,
            Base::C6Sq => 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub spec: OperationSpec,
    /// Certificate of the graph after this step.
    pub post_cert: CanonicalCert,
}

/// A base graph and the operations that build the target from it. Vertex
/// ids in each step refer to the graph produced by the previous steps,
/// starting from `Base::graph`; the vertices an operation adds get the next
/// free ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub schema_version: u32,
    pub base: Base,
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    pub fn new(base: Base) -> Self {
        ConstructionTrace { schema_version: TRACE_SCHEMA_VERSION, base, steps: Vec::new() }
    }

    /// Order of the graph the trace builds.
    pub fn final_order(&self) -> usize {
        self.base.order() + self.steps.iter().map(|s| s.spec.added_vertices()).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Rebuilds the graph a trace describes, validating every step, checking
/// compatibility and uniformity of each result, and comparing certificates.
pub fn replay(t: &ConstructionTrace) -> Result<Graph, ConstructError> {
    replay_with(t, &SearchBudget::default(), &Semantics::default())
}

pub fn replay_with(
    t: &ConstructionTrace,
    budget: &SearchBudget,
    sem: &Semantics,
) -> Result<Graph, ConstructError> {
    if t.schema_version != TRACE_SCHEMA_VERSION {
        return Err(ConstructError::UnsupportedSchema(t.schema_version));
    }
    let mut g = t.base.graph();
    for (index, step) in t.steps.iter().enumerate() {
        let invalid = |cause: String| ConstructError::StepInvalid { index, cause };
        let host = FourConnected::new(&g).map_err(|e| invalid(e.to_string()))?;
        let next = host.apply(&step.spec).map_err(|e| invalid(e.to_string()))?;
        let report = is_quasi_4_compatible_with(&g, &step.spec, budget, sem).map_err(|e| invalid(e.to_string()))?;
        if !report.compatible {
            let v = report.violation.expect("incompatible reports carry a violation");
            return Err(invalid(format!("set is not quasi 4-compatible: pair {:?} has a {:?} path", v.pair, v.predicate)));
        }
        if next.n() > crate::graph::MAX_IO_ORDER {
            return Err(invalid(format!("graph grows past {} vertices", crate::graph::MAX_IO_ORDER)));
        }
        let actual = canonical_cert(&next)?;
        if actual != step.post_cert {
            return Err(ConstructError::CertMismatch { index, expected: step.post_cert.clone(), actual });
        }
        if !is_uniform4(&next) {
            return Err(invalid("result is not uniformly 4-connected".into()));
        }
        g = next;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, Edge};
    use crate::transform::Delta1Spec;

    #[test]
    fn empty_traces() {
        assert_eq!(replay(&ConstructionTrace::new(Base::C5Sq)).unwrap(), fixtures::k5());
        let oct = replay(&ConstructionTrace::new(Base::C6Sq)).unwrap();
        assert!(crate::canon::are_isomorphic(&oct, &fixtures::octahedron()).unwrap());
    }

    #[test]
    fn json_shape() {
        let mut t = ConstructionTrace::new(Base::C5Sq);
        t.steps.push(TraceStep {
            spec: OperationSpec::Delta1(Delta1Spec { x_set: [0, 1, 2], y_vertex: 3, ex_edges: vec![Edge::new(0, 1)] }),
            post_cert: CanonicalCert::from_string("E}lw".into()),
        });
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["base"], "C5SQ");
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["steps"][0]["op"], "delta1");
        assert_eq!(v["steps"][0]["y_vertex"], 3);
        assert_eq!(v["steps"][0]["ex_edges"][0][1], 1);
        assert_eq!(ConstructionTrace::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn bad_schema() {
        let mut t = ConstructionTrace::new(Base::C5Sq);
        t.schema_version = 7;
        assert_eq!(replay(&t), Err(ConstructError::UnsupportedSchema(7)));
    }
}
