use std::collections::HashSet;

use super::trace::{Base, ConstructionTrace, TraceStep};
use super::ConstructError;
use crate::canon::{canonical_cert, canonical_form, isomorphism, CanonicalCert};
use crate::chording::{SearchBudget, Semantics};
use crate::connectivity::{is_uniform4, is_uniformly_4_connected};
use crate::graph::{bit, iter_mask, Edge, Graph, Vertex, MAX_IO_ORDER};
use crate::transform::{
    is_quasi_4_compatible_with, removable_edges, Delta1Spec, Delta2Spec, FourConnected, OperationSpec,
};

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub budget: SearchBudget,
    pub semantics: Semantics,
    /// Cap on predecessor candidates examined over the whole search.
    pub max_candidates: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions { budget: SearchBudget::default(), semantics: Semantics::default(), max_candidates: 1_000_000 }
    }
}

/// A uniformly 4-connected `host` and a compatible spec on it whose result
/// is `g` up to isomorphism. `spec` uses the host's labels.
#[derive(Clone, Debug)]
pub struct Predecessor {
    pub host: Graph,
    pub spec: OperationSpec,
}

fn nonempty_subsets(es: &[Edge]) -> impl Iterator<Item = Vec<Edge>> + '_ {
    (1u32..1 << es.len()).map(move |sel| {
        es.iter().enumerate().filter(|(i, _)| sel & (1 << i) != 0).map(|(_, &e)| e).collect()
    })
}

fn missing_triangle_edges(g: &Graph, t: [Vertex; 3]) -> Vec<Edge> {
    crate::transform::triangle(t).into_iter().filter(|e| !g.has_edge(e.lo(), e.hi())).collect()
}

fn as_triple(m: u32) -> [Vertex; 3] {
    let v: Vec<Vertex> = iter_mask(m).collect();
    [v[0], v[1], v[2]]
}

/// Inverse-operation candidates `(host, spec)` for `g`, in search order,
/// before any uniformity or compatibility test. Vertices touching a
/// removable edge of `g` are tried first.
pub fn inverse_candidates(g: &Graph) -> Vec<Predecessor> {
    let n = g.n();
    let removable = removable_edges(g).unwrap_or_default();
    let touched = removable.iter().fold(0u32, |m, e| m | bit(e.lo()) | bit(e.hi()));
    let mut order: Vec<Vertex> = (0..n).filter(|&v| g.degree(v) == 4).collect();
    order.sort_by_key(|&v| (touched & bit(v) == 0, v));
    let mut out = Vec::new();
    for &x in &order {
        let (rest, map) = g.delete_vertex(x).expect("vertex in range");
        let id = |v: Vertex| map.get(v).expect("only x is dropped");
        for y in g.neighbors(x) {
            let xs = as_triple(g.nbr_mask(x) & !bit(y));
            let missing = missing_triangle_edges(g, xs);
            for ex in nonempty_subsets(&missing) {
                let host = rest.add_edges(ex.iter().map(|e| Edge::new(id(e.lo()), id(e.hi())))).expect("edges new");
                let spec = OperationSpec::Delta1(Delta1Spec {
                    x_set: xs.map(id),
                    y_vertex: id(y),
                    ex_edges: ex.iter().map(|e| Edge::new(id(e.lo()), id(e.hi()))).collect(),
                });
                out.push(Predecessor { host, spec: spec.normalized() });
            }
        }
    }
    for &x in &order {
        for &y in order.iter().filter(|&&y| y > x && g.has_edge(x, y)) {
            let (xs, ys) = (g.nbr_mask(x) & !bit(y), g.nbr_mask(y) & !bit(x));
            if xs == ys {
                continue;
            }
            let (xs, ys) = (as_triple(xs), as_triple(ys));
            let keep: Vec<Vertex> = (0..n).filter(|&v| v != x && v != y).collect();
            let (rest, map) = g.induced(keep).expect("vertices in range");
            let id = |v: Vertex| map.get(v).expect("only x and y are dropped");
            let relabel = |es: &[Edge]| -> Vec<Edge> { es.iter().map(|e| Edge::new(id(e.lo()), id(e.hi()))).collect() };
            let (mx, my) = (missing_triangle_edges(g, xs), missing_triangle_edges(g, ys));
            for ex in nonempty_subsets(&mx) {
                for ey in nonempty_subsets(&my) {
                    let mut added: Vec<Edge> = relabel(&ex).into_iter().chain(relabel(&ey)).collect();
                    added.sort_unstable();
                    added.dedup();
                    let host = rest.add_edges(added).expect("edges new");
                    let spec = OperationSpec::Delta2(Delta2Spec {
                        x_set: xs.map(id),
                        y_set: ys.map(id),
                        ex_edges: relabel(&ex),
                        ey_edges: relabel(&ey),
                    });
                    out.push(Predecessor { host, spec: spec.normalized() });
                }
            }
        }
    }
    out
}

fn accept(p: &Predecessor, opts: &DecomposeOptions) -> Result<bool, ConstructError> {
    if p.host.n() < 5 || !is_uniform4(&p.host) {
        return Ok(false);
    }
    if FourConnected::assume(&p.host).validate(&p.spec).is_err() {
        return Ok(false);
    }
    Ok(is_quasi_4_compatible_with(&p.host, &p.spec, &opts.budget, &opts.semantics)?.compatible)
}

/// Every single-step predecessor of `g`: uniformly 4-connected hosts with a
/// valid, compatible spec reproducing `g`.
pub fn predecessors(g: &Graph, opts: &DecomposeOptions) -> Result<Vec<Predecessor>, ConstructError> {
    let mut out = Vec::new();
    for p in inverse_candidates(g) {
        if accept(&p, opts)? {
            out.push(p);
        }
    }
    Ok(out)
}

fn base_of(cert: &CanonicalCert, c5: &CanonicalCert, c6: &CanonicalCert) -> Option<Base> {
    if cert == c5 {
        Some(Base::C5Sq)
    } else if cert == c6 {
        Some(Base::C6Sq)
    } else {
        None
    }
}

struct Search<'a> {
    opts: &'a DecomposeOptions,
    explored: usize,
    dead: HashSet<CanonicalCert>,
    chain: Vec<CanonicalCert>,
    deepest: Vec<CanonicalCert>,
    c5: CanonicalCert,
    c6: CanonicalCert,
}

impl Search<'_> {
    /// Depth-first search; returns the chain of predecessors from `g`
    /// (canonically labeled) down to a base graph.
    fn run(&mut self, g: &Graph, cert: &CanonicalCert) -> Result<Option<(Base, Vec<Predecessor>)>, ConstructError> {
        if let Some(b) = base_of(cert, &self.c5, &self.c6) {
            return Ok(Some((b, Vec::new())));
        }
        if g.n() <= 6 || self.dead.contains(cert) {
            return Ok(None);
        }
        self.chain.push(cert.clone());
        if self.chain.len() > self.deepest.len() {
            self.deepest = self.chain.clone();
        }
        for p in inverse_candidates(g) {
            self.explored += 1;
            if self.explored > self.opts.max_candidates {
                return Err(ConstructError::BudgetExceeded { explored: self.explored - 1, partial: self.deepest.clone() });
            }
            if !accept(&p, self.opts)? {
                continue;
            }
            let form = canonical_form(&p.host)?;
            let spec = p.spec.relabel(&form.labeling);
            if let Some((b, mut rest)) = self.run(&form.graph, &form.cert)? {
                rest.push(Predecessor { host: form.graph, spec });
                self.chain.pop();
                return Ok(Some((b, rest)));
            }
        }
        self.chain.pop();
        self.dead.insert(cert.clone());
        Ok(None)
    }
}

/// A construction trace for a uniformly 4-connected graph.
pub fn decompose(g: &Graph, budget: &SearchBudget) -> Result<ConstructionTrace, ConstructError> {
    decompose_with(g, &DecomposeOptions { budget: *budget, ..DecomposeOptions::default() })
}

pub fn decompose_with(g: &Graph, opts: &DecomposeOptions) -> Result<ConstructionTrace, ConstructError> {
    if g.n() > MAX_IO_ORDER {
        return Err(ConstructError::OrderOutOfRange { n: g.n(), min: 5, max: MAX_IO_ORDER });
    }
    if g.n() < 5 {
        return Err(ConstructError::NotUniform(None));
    }
    let verdict = is_uniformly_4_connected(g)?;
    if !verdict.uniform {
        return Err(ConstructError::NotUniform(verdict.witness));
    }
    let form = canonical_form(g)?;
    let mut search = Search {
        opts,
        explored: 0,
        dead: HashSet::new(),
        chain: Vec::new(),
        deepest: Vec::new(),
        c5: canonical_cert(&Base::C5Sq.graph())?,
        c6: canonical_cert(&Base::C6Sq.graph())?,
    };
    let Some((base, chain)) = search.run(&form.graph, &form.cert)? else {
        return Err(ConstructError::NoDecomposition(form.cert));
    };
    // `chain` runs upward from the base; carry each spec over to the graph
    // the replay actually holds at that point.
    let mut trace = ConstructionTrace::new(base);
    let mut current = base.graph();
    for p in chain {
        let phi = isomorphism(&p.host, &current)?.expect("chain hosts match the replayed graphs");
        let spec = p.spec.relabel(&phi);
        current = FourConnected::assume(&current).apply(&spec)?;
        trace.steps.push(TraceStep { spec, post_cert: canonical_cert(&current)? });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::replay;
    use crate::graph::{fixtures, square_of_cycle};

    #[test]
    fn base_cases() {
        let t = decompose(&fixtures::k5(), &SearchBudget::default()).unwrap();
        assert_eq!((t.base, t.steps.len()), (Base::C5Sq, 0));
        let t = decompose(&fixtures::octahedron().permute(&[2, 0, 4, 1, 5, 3]), &SearchBudget::default()).unwrap();
        assert_eq!((t.base, t.steps.len()), (Base::C6Sq, 0));
    }

    #[test]
    fn non_uniform_inputs() {
        assert!(matches!(decompose(&fixtures::k6(), &SearchBudget::default()), Err(ConstructError::NotUniform(Some(_)))));
        assert!(matches!(decompose(&fixtures::cycle(7), &SearchBudget::default()), Err(ConstructError::NotUniform(_))));
    }

    #[test]
    fn c7_square_round_trip() {
        let g = square_of_cycle(7).unwrap();
        let t = decompose(&g, &SearchBudget::default()).unwrap();
        assert!(!t.steps.is_empty());
        let r = replay(&t).unwrap();
        assert!(crate::canon::are_isomorphic(&r, &g).unwrap());
    }
}
