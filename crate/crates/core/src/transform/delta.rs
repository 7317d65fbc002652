use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{triangle, TransformError};
use crate::connectivity::{ends, is_k_connected, vertex_connectivity};
use crate::graph::{mask_of, Edge, Graph, Vertex};

/// Parameters of one `Δ₁⁺`: the triple `X`, the extra neighbour `y` and the
/// removed edges `E_X`. The new vertex gets id `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Delta1Spec {
    pub x_set: [Vertex; 3],
    pub y_vertex: Vertex,
    pub ex_edges: Vec<Edge>,
}

/// Parameters of one `Δ₂⁺`. The new vertices are `x = n` (joined to `X`)
/// and `y = n + 1` (joined to `Y`), adjacent to each other.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Delta2Spec {
    pub x_set: [Vertex; 3],
    pub y_set: [Vertex; 3],
    pub ex_edges: Vec<Edge>,
    pub ey_edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum OperationSpec {
    Delta1(Delta1Spec),
    Delta2(Delta2Spec),
}

/// The vertex-and-edge set a compatibility test is asked about; it carries
/// exactly the parameters of the operation it belongs to.
pub type CompatSet = OperationSpec;

impl Delta1Spec {
    /// Same spec with `X` and `E_X` sorted.
    pub fn normalized(&self) -> Self {
        let mut s = self.clone();
        s.x_set.sort_unstable();
        s.ex_edges.sort_unstable();
        s.ex_edges.dedup();
        s
    }
}

impl Delta2Spec {
    pub fn normalized(&self) -> Self {
        let mut s = self.clone();
        s.x_set.sort_unstable();
        s.y_set.sort_unstable();
        s.ex_edges.sort_unstable();
        s.ex_edges.dedup();
        s.ey_edges.sort_unstable();
        s.ey_edges.dedup();
        s
    }
}

impl OperationSpec {
    /// Number of vertices the operation adds.
    pub fn added_vertices(&self) -> usize {
        match self {
            OperationSpec::Delta1(_) => 1,
            OperationSpec::Delta2(_) => 2,
        }
    }

    pub fn normalized(&self) -> Self {
        match self {
            OperationSpec::Delta1(s) => OperationSpec::Delta1(s.normalized()),
            OperationSpec::Delta2(s) => OperationSpec::Delta2(s.normalized()),
        }
    }

    /// The same operation after renaming every vertex `v` to `perm[v]`,
    /// normalized.
    pub fn relabel(&self, perm: &[Vertex]) -> Self {
        let t = |a: [Vertex; 3]| a.map(|v| perm[v]);
        let es = |v: &[Edge]| v.iter().map(|e| Edge::new(perm[e.lo()], perm[e.hi()])).collect();
        let out = match self {
            OperationSpec::Delta1(s) => OperationSpec::Delta1(Delta1Spec {
                x_set: t(s.x_set),
                y_vertex: perm[s.y_vertex],
                ex_edges: es(&s.ex_edges),
            }),
            OperationSpec::Delta2(s) => OperationSpec::Delta2(Delta2Spec {
                x_set: t(s.x_set),
                y_set: t(s.y_set),
                ex_edges: es(&s.ex_edges),
                ey_edges: es(&s.ey_edges),
            }),
        };
        out.normalized()
    }

    /// Every removed edge, `E_X` then `E_Y`.
    pub fn removed_edges(&self) -> Vec<Edge> {
        match self {
            OperationSpec::Delta1(s) => s.ex_edges.clone(),
            OperationSpec::Delta2(s) => s.ex_edges.iter().chain(&s.ey_edges).copied().collect(),
        }
    }
}

impl From<Delta1Spec> for OperationSpec {
    fn from(s: Delta1Spec) -> Self {
        OperationSpec::Delta1(s)
    }
}

impl From<Delta2Spec> for OperationSpec {
    fn from(s: Delta2Spec) -> Self {
        OperationSpec::Delta2(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TripleLabel {
    X,
    Y,
}

impl fmt::Display for TripleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleLabel::X => "X",
            TripleLabel::Y => "Y",
        })
    }
}

/// One violated parameter clause.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
pub enum SpecViolation {
    #[error("vertex {vertex} is not in the host (n = {n})")]
    UnknownVertex { vertex: Vertex, n: usize },
    #[error("{set} does not consist of three distinct vertices")]
    RepeatedVertex { set: TripleLabel },
    #[error("y = {0} lies in X")]
    YInX(Vertex),
    #[error("H[{set}] has no edges")]
    NoInducedEdge { set: TripleLabel },
    #[error("E_{set} is empty")]
    EmptyEdgeSet { set: TripleLabel },
    #[error("edge {edge} of E_{set} is not an edge of H[{set}]")]
    EdgeNotInduced { set: TripleLabel, edge: Edge },
    #[error("edge {edge} is listed twice in E_{set}")]
    RepeatedEdge { set: TripleLabel, edge: Edge },
    #[error("X and Y coincide")]
    TriplesCoincide,
}

/// A host graph known to be 4-connected. Checking once and reusing the
/// wrapper avoids repeating the connectivity test for every spec.
#[derive(Clone, Copy, Debug)]
pub struct FourConnected<'a>(&'a Graph);

impl<'a> FourConnected<'a> {
    pub fn new(g: &'a Graph) -> Result<Self, TransformError> {
        if is_k_connected(g, 4) {
            Ok(FourConnected(g))
        } else {
            let kappa = if g.n() >= 2 { vertex_connectivity(g)? } else { 0 };
            Err(TransformError::NotFourConnected { kappa })
        }
    }

    pub(crate) fn assume(g: &'a Graph) -> Self {
        FourConnected(g)
    }

    pub fn graph(&self) -> &'a Graph {
        self.0
    }

    pub fn validate(&self, s: &OperationSpec) -> Result<(), TransformError> {
        let h = self.0;
        param_check(h, s)?;
        let reduced = h.remove_edges(s.removed_edges())?;
        let kappa = vertex_connectivity(&reduced)?;
        match s {
            OperationSpec::Delta1(_) => {
                if kappa < 3 {
                    return Err(TransformError::ConnectivityTooLow { required: 3, actual: kappa });
                }
            }
            OperationSpec::Delta2(d) => {
                if kappa < 2 {
                    return Err(TransformError::ConnectivityTooLow { required: 2, actual: kappa });
                }
                if kappa == 2 {
                    let (xm, ym) = (mask_of(d.x_set), mask_of(d.y_set));
                    for end in ends(&reduced)? {
                        let body = mask_of(end.0.body.iter().copied());
                        if body & xm == 0 || body & ym == 0 {
                            return Err(TransformError::EndCoverageViolated(end.0));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, s: &OperationSpec) -> Result<Graph, TransformError> {
        self.validate(s)?;
        Ok(build(self.0, s))
    }
}

pub(crate) fn param_violations(h: &Graph, s: &OperationSpec) -> Vec<SpecViolation> {
    let n = h.n();
    let mut out = Vec::new();
    let known = |v: Vertex, out: &mut Vec<SpecViolation>| {
        if v >= n {
            out.push(SpecViolation::UnknownVertex { vertex: v, n });
            false
        } else {
            true
        }
    };
    let triple = |t: [Vertex; 3], es: &[Edge], set: TripleLabel, out: &mut Vec<SpecViolation>| {
        let mut ok = true;
        for v in t {
            ok &= known(v, out);
        }
        if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
            out.push(SpecViolation::RepeatedVertex { set });
            ok = false;
        }
        if ok && !triangle(t).iter().any(|e| h.has_edge(e.lo(), e.hi())) {
            out.push(SpecViolation::NoInducedEdge { set });
        }
        if es.is_empty() {
            out.push(SpecViolation::EmptyEdgeSet { set });
        }
        for (i, &e) in es.iter().enumerate() {
            let inside = t.contains(&e.lo()) && t.contains(&e.hi()) && e.lo() != e.hi();
            if !(inside && e.hi() < n && h.has_edge(e.lo(), e.hi())) {
                out.push(SpecViolation::EdgeNotInduced { set, edge: e });
            }
            if es[..i].contains(&e) {
                out.push(SpecViolation::RepeatedEdge { set, edge: e });
            }
        }
    };
    match s {
        OperationSpec::Delta1(d) => {
            triple(d.x_set, &d.ex_edges, TripleLabel::X, &mut out);
            if known(d.y_vertex, &mut out) && d.x_set.contains(&d.y_vertex) {
                out.push(SpecViolation::YInX(d.y_vertex));
            }
        }
        OperationSpec::Delta2(d) => {
            triple(d.x_set, &d.ex_edges, TripleLabel::X, &mut out);
            triple(d.y_set, &d.ey_edges, TripleLabel::Y, &mut out);
            let (xm, ym) = (mask_of(d.x_set), mask_of(d.y_set));
            if xm == ym && xm.count_ones() == 3 {
                out.push(SpecViolation::TriplesCoincide);
            }
        }
    }
    out
}

pub(crate) fn param_check(h: &Graph, s: &OperationSpec) -> Result<(), TransformError> {
    let v = param_violations(h, s);
    if v.is_empty() {
        Ok(())
    } else {
        Err(TransformError::SpecInvalid(v))
    }
}

/// The operation itself, without any checks.
pub(crate) fn build(h: &Graph, s: &OperationSpec) -> Graph {
    let reduced = h.remove_edges(s.removed_edges()).expect("edges checked");
    match s {
        OperationSpec::Delta1(d) => {
            let nbrs = d.x_set.iter().copied().chain([d.y_vertex]);
            reduced.add_vertex_with_neighbors(nbrs).expect("vertices checked")
        }
        OperationSpec::Delta2(d) => {
            let x = h.n();
            let g = reduced.add_vertex_with_neighbors(d.x_set).expect("vertices checked");
            g.add_vertex_with_neighbors(d.y_set.iter().copied().chain([x]))
                .expect("vertices checked")
        }
    }
}

/// Nonempty subsets of `E(H[t])` in a fixed order.
fn induced_edge_subsets(h: &Graph, t: [Vertex; 3]) -> Vec<Vec<Edge>> {
    let present: Vec<Edge> = triangle(t).into_iter().filter(|e| h.has_edge(e.lo(), e.hi())).collect();
    (1u32..1 << present.len())
        .map(|sel| {
            present.iter().enumerate().filter(|(i, _)| sel & (1 << i) != 0).map(|(_, &e)| e).collect()
        })
        .collect()
}

fn triples(n: usize) -> impl Iterator<Item = [Vertex; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Every `Δ₁⁺` spec whose parameter clauses hold on `h` (sorted triples;
/// connectivity side conditions not checked).
pub fn delta1_candidates(h: &Graph) -> Vec<Delta1Spec> {
    let mut out = Vec::new();
    for x in triples(h.n()) {
        for ex in induced_edge_subsets(h, x) {
            for y in (0..h.n()).filter(|y| !x.contains(y)) {
                out.push(Delta1Spec { x_set: x, y_vertex: y, ex_edges: ex.clone() });
            }
        }
    }
    out
}

/// Every `Δ₂⁺` spec with `X < Y` whose parameter clauses hold on `h`.
/// Swapping `X` and `Y` gives an isomorphic result, so the order loses nothing.
pub fn delta2_candidates(h: &Graph) -> Vec<Delta2Spec> {
    let sides: Vec<([Vertex; 3], Vec<Vec<Edge>>)> = triples(h.n())
        .map(|t| (t, induced_edge_subsets(h, t)))
        .filter(|(_, subs)| !subs.is_empty())
        .collect();
    let mut out = Vec::new();
    for (i, (x, xs)) in sides.iter().enumerate() {
        for (y, ys) in &sides[i + 1..] {
            for ex in xs {
                for ey in ys {
                    out.push(Delta2Spec { x_set: *x, y_set: *y, ex_edges: ex.clone(), ey_edges: ey.clone() });
                }
            }
        }
    }
    out
}

pub fn validate_operation(h: &Graph, s: &OperationSpec) -> Result<(), TransformError> {
    FourConnected::new(h)?.validate(s)
}

pub fn apply_operation(h: &Graph, s: &OperationSpec) -> Result<Graph, TransformError> {
    FourConnected::new(h)?.apply(s)
}

pub fn validate_delta1(h: &Graph, s: &Delta1Spec) -> Result<(), TransformError> {
    validate_operation(h, &OperationSpec::Delta1(s.clone()))
}

pub fn apply_delta1(h: &Graph, s: &Delta1Spec) -> Result<Graph, TransformError> {
    apply_operation(h, &OperationSpec::Delta1(s.clone()))
}

pub fn validate_delta2(h: &Graph, s: &Delta2Spec) -> Result<(), TransformError> {
    validate_operation(h, &OperationSpec::Delta2(s.clone()))
}

pub fn apply_delta2(h: &Graph, s: &Delta2Spec) -> Result<Graph, TransformError> {
    apply_operation(h, &OperationSpec::Delta2(s.clone()))
}
