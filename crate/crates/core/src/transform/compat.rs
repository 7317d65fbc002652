use serde::{Deserialize, Serialize};

use super::delta::param_check;
use super::{triangle, TransformError};
use crate::chording::{
    find_e_plus_quasi_3cc_path, find_quasi_3cc_path, find_quasi_chord, AddedEdgeScope, ChordingWitness,
    QuasiChordWitness, SearchBudget, Semantics,
};
use crate::graph::{Edge, Graph, Vertex};

use super::delta::OperationSpec;

/// The path property a compatibility clause forbids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Predicate {
    Quasi3cc,
    QuasiChord,
    EPlusQuasi3cc { added: Edge },
}

/// "No `u`–`v` path of the reduced graph has `predicate`."
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Condition {
    pub pair: (Vertex, Vertex),
    pub predicate: Predicate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationWitness {
    /// Chording witness; for the `e⁺` clause it lives in the reduced graph plus `e`.
    Chording(ChordingWitness),
    QuasiChord(QuasiChordWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub pair: (Vertex, Vertex),
    pub predicate: Predicate,
    pub witness: ViolationWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatReport {
    pub compatible: bool,
    pub violation: Option<Violation>,
    /// The graph the clauses are evaluated in: `H - E_X` or `H - E_X - E_Y`.
    #[serde(skip)]
    pub reduced: Graph,
}

fn pair(e: Edge) -> (Vertex, Vertex) {
    e.ends()
}

/// The clauses a set must satisfy, in definition order and without
/// repeats, together with the reduced graph they refer to.
pub fn compat_conditions(h: &Graph, s: &OperationSpec) -> Result<(Graph, Vec<Condition>), TransformError> {
    compat_conditions_with(h, s, AddedEdgeScope::default())
}

pub fn compat_conditions_with(
    h: &Graph,
    s: &OperationSpec,
    scope: AddedEdgeScope,
) -> Result<(Graph, Vec<Condition>), TransformError> {
    param_check(h, s)?;
    let reduced = h.remove_edges(s.removed_edges())?;
    let mut out: Vec<Condition> = Vec::new();
    let mut push = |pair: (Vertex, Vertex), predicate: Predicate| {
        let c = Condition { pair, predicate };
        if !out.contains(&c) {
            out.push(c);
        }
    };
    let q = Predicate::Quasi3cc;
    match s {
        OperationSpec::Delta1(d) => {
            for &u in &d.x_set {
                push((u, d.y_vertex), q);
            }
            for e in triangle(d.x_set) {
                if !d.ex_edges.contains(&e) {
                    push(pair(e), q);
                }
            }
        }
        OperationSpec::Delta2(d) => {
            let kx_rest: Vec<Edge> = triangle(d.x_set).into_iter().filter(|e| !d.ex_edges.contains(e)).collect();
            let ky_rest: Vec<Edge> = triangle(d.y_set).into_iter().filter(|e| !d.ey_edges.contains(e)).collect();
            for &u in d.x_set.iter().filter(|u| !d.y_set.contains(u)) {
                for &v in d.y_set.iter().filter(|v| !d.x_set.contains(v)) {
                    push((u, v), q);
                }
            }
            for &e in kx_rest.iter().chain(&ky_rest) {
                push(pair(e), q);
            }
            let shared: Vec<Vertex> = d.x_set.iter().copied().filter(|v| d.y_set.contains(v)).collect();
            if let [a, b] = shared[..] {
                push(pair(Edge::new(a, b)), Predicate::QuasiChord);
            }
            // e⁺ clauses: e ranges over the removed edges on the other side
            // plus its triangle edges missing from the graph `scope` names.
            let base = match scope {
                AddedEdgeScope::Reduced => &reduced,
                AddedEdgeScope::Host => h,
            };
            let absent = |t: [Vertex; 3], removed: &[Edge]| -> Vec<Edge> {
                triangle(t)
                    .into_iter()
                    .filter(|e| !base.has_edge(e.lo(), e.hi()) || removed.contains(e))
                    .collect()
            };
            let y_absent = absent(d.y_set, &d.ey_edges);
            let x_absent = absent(d.x_set, &d.ex_edges);
            for &e1 in &kx_rest {
                for &e in &y_absent {
                    push(pair(e1), Predicate::EPlusQuasi3cc { added: e });
                }
            }
            for &e2 in &ky_rest {
                for &e in &x_absent {
                    push(pair(e2), Predicate::EPlusQuasi3cc { added: e });
                }
            }
        }
    }
    Ok((reduced, out))
}

/// Definition-level compatibility test; the first violated clause is
/// reported with its witness. An exhausted budget is an error, never a verdict.
pub fn is_quasi_4_compatible(
    h: &Graph,
    s: &OperationSpec,
    budget: &SearchBudget,
) -> Result<CompatReport, TransformError> {
    is_quasi_4_compatible_with(h, s, budget, &Semantics::default())
}

pub fn is_quasi_4_compatible_with(
    h: &Graph,
    s: &OperationSpec,
    budget: &SearchBudget,
    sem: &Semantics,
) -> Result<CompatReport, TransformError> {
    let (reduced, conditions) = compat_conditions_with(h, s, sem.added_edges)?;
    for c in conditions {
        let (u, v) = c.pair;
        let witness = match c.predicate {
            Predicate::Quasi3cc => find_quasi_3cc_path(&reduced, u, v, budget, sem)?.map(ViolationWitness::Chording),
            Predicate::QuasiChord => {
                find_quasi_chord(&reduced, u, v, budget, sem.chord_rule)?.map(ViolationWitness::QuasiChord)
            }
            Predicate::EPlusQuasi3cc { added } => {
                find_e_plus_quasi_3cc_path(&reduced, u, v, added, budget, sem)?.map(ViolationWitness::Chording)
            }
        };
        if let Some(witness) = witness {
            return Ok(CompatReport {
                compatible: false,
                violation: Some(Violation { pair: c.pair, predicate: c.predicate, witness }),
                reduced,
            });
        }
    }
    Ok(CompatReport { compatible: true, violation: None, reduced })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_uniform4;
    use crate::graph::{fixtures, square_of_cycle};
    use crate::transform::delta::{build, Delta1Spec, Delta2Spec};

    fn e(u: Vertex, v: Vertex) -> Edge {
        Edge::new(u, v)
    }

    #[test]
    fn type1_conditions() {
        let h = square_of_cycle(6).unwrap();
        let s = OperationSpec::Delta1(Delta1Spec { x_set: [0, 1, 2], y_vertex: 4, ex_edges: vec![e(0, 2)] });
        let (r, cs) = compat_conditions(&h, &s).unwrap();
        assert_eq!(r.edge_count(), 11);
        let pairs: Vec<_> = cs.iter().map(|c| c.pair).collect();
        assert_eq!(pairs, vec![(0, 4), (1, 4), (2, 4), (0, 1), (1, 2)]);
    }

    #[test]
    fn type2_conditions_with_shared_pair() {
        let h = fixtures::k6();
        let s = OperationSpec::Delta2(Delta2Spec {
            x_set: [0, 1, 2],
            y_set: [1, 2, 3],
            ex_edges: vec![e(0, 1)],
            ey_edges: vec![e(2, 3)],
        });
        let (_, cs) = compat_conditions(&h, &s).unwrap();
        let q = |u, v| Condition { pair: (u, v), predicate: Predicate::Quasi3cc };
        assert_eq!(cs[0], q(0, 3));
        assert!(cs.contains(&q(0, 2)) && cs.contains(&q(1, 2)) && cs.contains(&q(1, 3)));
        assert!(cs.contains(&Condition { pair: (1, 2), predicate: Predicate::QuasiChord }));
        // The only triangle edges missing from H - 01 - 23 are 01 and 23.
        assert!(cs.contains(&Condition { pair: (0, 2), predicate: Predicate::EPlusQuasi3cc { added: e(2, 3) } }));
        assert!(cs.contains(&Condition { pair: (1, 3), predicate: Predicate::EPlusQuasi3cc { added: e(0, 1) } }));
        assert_eq!(cs.iter().filter(|c| matches!(c.predicate, Predicate::EPlusQuasi3cc { .. })).count(), 4);
    }

    #[test]
    fn added_edge_scope() {
        // The shared edge 01 is removed through E_X; only the reduced scope
        // offers it as an e⁺ edge on the Y side.
        let h = fixtures::k5();
        let s = OperationSpec::Delta2(Delta2Spec {
            x_set: [0, 1, 2],
            y_set: [0, 1, 3],
            ex_edges: vec![e(0, 1)],
            ey_edges: vec![e(0, 3)],
        });
        let added = |scope| -> Vec<Edge> {
            let (_, cs) = compat_conditions_with(&h, &s, scope).unwrap();
            let mut v: Vec<Edge> = cs
                .iter()
                .filter(|c| c.pair == (1, 2))
                .filter_map(|c| match c.predicate {
                    Predicate::EPlusQuasi3cc { added } => Some(added),
                    _ => None,
                })
                .collect();
            v.sort();
            v
        };
        assert_eq!(added(AddedEdgeScope::Reduced), vec![e(0, 1), e(0, 3)]);
        assert_eq!(added(AddedEdgeScope::Host), vec![e(0, 3)]);
        let rep = is_quasi_4_compatible(&h, &s, &SearchBudget::default()).unwrap();
        assert!(!rep.compatible);
        assert!(!is_uniform4(&build(&h, &s)));
    }

    #[test]
    fn violation_witness_revalidates() {
        let h = square_of_cycle(6).unwrap();
        let s = OperationSpec::Delta1(Delta1Spec { x_set: [0, 1, 2], y_vertex: 4, ex_edges: vec![e(0, 2)] });
        let rep = is_quasi_4_compatible(&h, &s, &SearchBudget::default()).unwrap();
        let uniform = is_uniform4(&build(&h, &s));
        assert_eq!(rep.compatible, uniform);
        if let Some(v) = &rep.violation {
            let ViolationWitness::Chording(w) = &v.witness else { panic!() };
            w.validate(&rep.reduced).unwrap();
        }
    }

    #[test]
    fn budget_is_propagated() {
        let h = fixtures::complete(9);
        let s = OperationSpec::Delta2(Delta2Spec {
            x_set: [0, 1, 2],
            y_set: [1, 2, 3],
            ex_edges: vec![e(0, 1)],
            ey_edges: vec![e(2, 3)],
        });
        let tiny = SearchBudget::new(1, Some(1)).unwrap();
        let sem = Semantics { whole_path_segment: false, ..Semantics::default() };
        let err = is_quasi_4_compatible_with(&h, &s, &tiny, &sem).unwrap_err();
        assert!(err.is_budget_exceeded());
    }
}
