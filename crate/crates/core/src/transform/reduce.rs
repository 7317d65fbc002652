use serde::{Deserialize, Serialize};

use super::TransformError;
use crate::connectivity::{is_k_connected, subsets_of_size, vertex_connectivity};
use crate::graph::{bit, iter_mask, Edge, Graph, IdMap, Vertex};

/// Which endpoint of the deleted edge is examined first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndpointOrder {
    #[default]
    LowerFirst,
    HigherFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    /// Old-to-new ids; suppressed endpoints map to `None`.
    pub map: IdMap,
    /// Endpoints that had degree 3 after deleting the edge, in processing order.
    pub suppressed: Vec<Vertex>,
}

fn require_four_connected(g: &Graph) -> Result<(), TransformError> {
    if !is_k_connected(g, 4) {
        let kappa = if g.n() >= 2 { vertex_connectivity(g)? } else { 0 };
        return Err(TransformError::NotFourConnected { kappa });
    }
    Ok(())
}

fn require_edge(g: &Graph, e: Edge) -> Result<(), TransformError> {
    g.check_vertex(e.hi())?;
    if !g.has_edge(e.lo(), e.hi()) {
        return Err(TransformError::EdgeAbsent(e));
    }
    Ok(())
}

/// `G ⊖ e`: delete `e`, then for each endpoint of degree 3 delete it and make
/// its neighbourhood a clique. Endpoints are processed lower id first.
pub fn reduce_edge(g: &Graph, e: Edge) -> Result<Reduction, TransformError> {
    reduce_edge_ordered(g, e, EndpointOrder::LowerFirst)
}

pub fn reduce_edge_ordered(g: &Graph, e: Edge, order: EndpointOrder) -> Result<Reduction, TransformError> {
    require_edge(g, e)?;
    require_four_connected(g)?;
    Ok(reduce_unchecked(g, e, order))
}

pub(crate) fn reduce_unchecked(g: &Graph, e: Edge, order: EndpointOrder) -> Reduction {
    let mut h = g.clone();
    h.erase(e.lo(), e.hi());
    let ends = match order {
        EndpointOrder::LowerFirst => [e.lo(), e.hi()],
        EndpointOrder::HigherFirst => [e.hi(), e.lo()],
    };
    let mut gone = 0;
    let mut suppressed = Vec::new();
    for x in ends {
        if h.degree(x) != 3 {
            continue;
        }
        let nbrs: Vec<Vertex> = h.neighbors(x).collect();
        for &w in &nbrs {
            h.erase(x, w);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                h.insert(a, b);
            }
        }
        gone |= bit(x);
        suppressed.push(x);
    }
    let (graph, map) = h
        .induced(iter_mask(h.all_mask() & !gone))
        .expect("vertices are in range");
    Reduction { graph, map, suppressed }
}

/// Removable: `G ⊖ e` has at least 5 vertices and is 4-connected.
pub fn is_removable(g: &Graph, e: Edge) -> Result<bool, TransformError> {
    let r = reduce_edge(g, e)?;
    Ok(r.graph.n() >= 5 && is_k_connected(&r.graph, 4))
}

pub(crate) fn is_removable_unchecked(g: &Graph, e: Edge) -> bool {
    let r = reduce_unchecked(g, e, EndpointOrder::LowerFirst);
    r.graph.n() >= 5 && is_k_connected(&r.graph, 4)
}

/// Separating-triple form, valid for order at least 7: `e = xy` is not
/// removable iff some 3-set `S` leaves `G - e - S` with exactly two
/// components `A ∋ x`, `B ∋ y`, both of size at least 2.
pub fn is_removable_structural(g: &Graph, e: Edge) -> Result<bool, TransformError> {
    if g.n() < 7 {
        return Err(TransformError::OrderTooSmall { n: g.n(), min: 7 });
    }
    require_edge(g, e)?;
    require_four_connected(g)?;
    let (x, y) = e.ends();
    let mut h = g.clone();
    h.erase(x, y);
    let all = h.all_mask();
    let ends = bit(x) | bit(y);
    for s in subsets_of_size(g.n(), 3) {
        if s & ends != 0 {
            continue;
        }
        let comps = h.components_within(all & !s);
        if let [a, b] = comps[..] {
            let (a, b) = if a & bit(x) != 0 { (a, b) } else { (b, a) };
            if a & bit(x) != 0 && b & bit(y) != 0 && a.count_ones() >= 2 && b.count_ones() >= 2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All removable edges in lexicographic order.
pub fn removable_edges(g: &Graph) -> Result<Vec<Edge>, TransformError> {
    require_four_connected(g)?;
    Ok(g.edges().filter(|&e| is_removable_unchecked(g, e)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, square_of_cycle};

    #[test]
    fn k6_edge_reduction_is_plain_deletion() {
        let r = reduce_edge(&fixtures::k6(), Edge::new(0, 1)).unwrap();
        assert_eq!(r.graph, fixtures::k6_minus_edge());
        assert!(r.suppressed.is_empty());
        assert_eq!(r.map, IdMap::identity(6));
    }

    #[test]
    fn k5_collapses_to_triangle() {
        let r = reduce_edge(&fixtures::k5(), Edge::new(0, 1)).unwrap();
        assert_eq!(r.suppressed, vec![0, 1]);
        assert_eq!(r.graph, Graph::complete(3).unwrap());
        assert_eq!(r.map.0, vec![None, None, Some(0), Some(1), Some(2)]);
    }

    #[test]
    fn octahedron_collapses_to_k4() {
        // 0 goes first and its neighbourhood {2,4,5} gains 2-5; then 1 goes
        // with neighbourhood {2,3,5}, already complete.
        let r = reduce_edge(&fixtures::octahedron(), Edge::new(0, 1)).unwrap();
        assert_eq!(r.suppressed, vec![0, 1]);
        assert_eq!(r.graph, Graph::complete(4).unwrap());
    }

    #[test]
    fn endpoint_order_does_not_matter_on_base_graphs() {
        for g in [fixtures::k5(), fixtures::octahedron(), fixtures::k6(), square_of_cycle(7).unwrap()] {
            for e in g.edges() {
                let a = reduce_edge_ordered(&g, e, EndpointOrder::LowerFirst).unwrap();
                let b = reduce_edge_ordered(&g, e, EndpointOrder::HigherFirst).unwrap();
                assert_eq!(a.graph, b.graph);
            }
        }
    }

    #[test]
    fn removability_of_small_graphs() {
        for g in [fixtures::k5(), fixtures::octahedron()] {
            assert!(removable_edges(&g).unwrap().is_empty());
        }
        assert_eq!(removable_edges(&fixtures::k6()).unwrap().len(), 15);
        assert_eq!(removable_edges(&fixtures::complete(7)).unwrap().len(), 21);
    }

    #[test]
    fn structural_form_agrees_on_c7_square_and_k7() {
        for g in [square_of_cycle(7).unwrap(), fixtures::complete(7)] {
            for e in g.edges() {
                assert_eq!(is_removable_structural(&g, e).unwrap(), is_removable(&g, e).unwrap());
            }
        }
        assert!(g_all_true(&fixtures::complete(7)));
    }

    fn g_all_true(g: &Graph) -> bool {
        g.edges().all(|e| is_removable_structural(g, e).unwrap())
    }

    #[test]
    fn errors() {
        let c6 = fixtures::cycle(6);
        assert!(matches!(
            reduce_edge(&c6, Edge::new(0, 1)),
            Err(TransformError::NotFourConnected { kappa: 2 })
        ));
        let oct = fixtures::octahedron();
        assert_eq!(reduce_edge(&oct, Edge::new(0, 3)), Err(TransformError::EdgeAbsent(Edge::new(0, 3))));
        assert!(matches!(
            is_removable_structural(&oct, Edge::new(0, 1)),
            Err(TransformError::OrderTooSmall { n: 6, min: 7 })
        ));
    }
}
