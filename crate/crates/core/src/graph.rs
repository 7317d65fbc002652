//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one bitmask per vertex, which keeps every
//! operation in this crate allocation-light at the orders it targets.
//! All mutators are value-returning: the receiver is never changed.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex id.
pub type Vertex = usize;

/// Hard ceiling on the number of vertices a [`Graph`] may hold.
///
/// Interchange formats and canonical certificates are limited further, see
/// [`MAX_IO_ORDER`].
pub const MAX_VERTICES: usize = 32;

/// Largest order accepted by graph6 and by canonical certificates.
pub const MAX_IO_ORDER: usize = 16;

pub(crate) type Mask = u32;

#[inline]
pub(crate) fn bit(v: Vertex) -> Mask {
    1 << v
}

pub(crate) fn mask_of(vs: impl IntoIterator<Item = Vertex>) -> Mask {
    vs.into_iter().fold(0, |m, v| m | bit(v))
}

pub(crate) fn iter_mask(mut m: Mask) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as Vertex;
            m &= m - 1;
            Some(v)
        }
    })
}

/// An unordered vertex pair, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[Vertex; 2]", from = "[Vertex; 2]")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn ends(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((u, v): (Vertex, Vertex)) -> Self {
        Edge::new(u, v)
    }
}

impl From<[Vertex; 2]> for Edge {
    fn from([u, v]: [Vertex; 2]) -> Self {
        Edge::new(u, v)
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("order {0} exceeds the supported maximum of {MAX_VERTICES}")]
    OrderTooLarge(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    UnknownVertex { vertex: Vertex, n: usize },
    #[error("edge {0} is not present")]
    UnknownEdge(Edge),
    #[error("square of a cycle needs at least 5 vertices, got {0}")]
    CycleTooShort(usize),
}

/// Simple undirected graph with vertex set `0..n`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Mask>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::OrderTooLarge(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from an edge list, rejecting loops, repeats and
    /// out-of-range endpoints.
    pub fn from_edges<I, E>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut g = Graph::empty(n)?;
        for e in edges {
            let e = e.into();
            g.check_vertex(e.hi())?;
            if e.lo() == e.hi() {
                return Err(GraphError::SelfLoop(e.lo()));
            }
            if g.has_edge(e.lo(), e.hi()) {
                return Err(GraphError::DuplicateEdge(e));
            }
            g.insert(e.lo(), e.hi());
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            g.adj[u] = full_mask(n) & !bit(u);
        }
        Ok(g)
    }

    pub(crate) fn from_masks(adj: Vec<Mask>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> {
        iter_mask(self.adj[v])
    }

    pub(crate) fn nbr_mask(&self, v: Vertex) -> Mask {
        self.adj[v]
    }

    pub(crate) fn all_mask(&self) -> Mask {
        full_mask(self.n)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            iter_mask(self.adj[u] & !full_mask(u + 1)).map(move |v| Edge(u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex { vertex: v, n: self.n })
        }
    }

    pub(crate) fn insert(&mut self, u: Vertex, v: Vertex) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub(crate) fn erase(&mut self, u: Vertex, v: Vertex) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Copy of `self` with the given edges deleted.
    pub fn remove_edges<I, E>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut g = self.clone();
        for e in edges {
            let e = e.into();
            self.check_vertex(e.hi())?;
            if !g.has_edge(e.lo(), e.hi()) {
                return Err(GraphError::UnknownEdge(e));
            }
            g.erase(e.lo(), e.hi());
        }
        Ok(g)
    }

    /// Copy of `self` with the given edges added.
    pub fn add_edges<I, E>(&self, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = E>,
        E: Into<Edge>,
    {
        let mut g = self.clone();
        for e in edges {
            let e = e.into();
            self.check_vertex(e.hi())?;
            if e.lo() == e.hi() {
                return Err(GraphError::SelfLoop(e.lo()));
            }
            if g.has_edge(e.lo(), e.hi()) {
                return Err(GraphError::DuplicateEdge(e));
            }
            g.insert(e.lo(), e.hi());
        }
        Ok(g)
    }

    /// Appends vertex `n` joined to every vertex of `nbrs`.
    pub fn add_vertex_with_neighbors<I>(&self, nbrs: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        if self.n + 1 > MAX_VERTICES {
            return Err(GraphError::OrderTooLarge(self.n + 1));
        }
        let mut g = self.clone();
        let x = g.n;
        g.n += 1;
        g.adj.push(0);
        for v in nbrs {
            self.check_vertex(v)?;
            g.insert(x, v);
        }
        Ok(g)
    }

    /// Deletes `v` and relabels the remaining vertices densely, preserving
    /// their relative order. Returns the old-to-new id map.
    pub fn delete_vertex(&self, v: Vertex) -> Result<(Graph, IdMap), GraphError> {
        self.check_vertex(v)?;
        let keep: Vec<Vertex> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced_ordered(&keep))
    }

    /// Subgraph induced by `vs`, relabeled densely in increasing id order.
    pub fn induced<I>(&self, vs: I) -> Result<(Graph, IdMap), GraphError>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let set: BTreeSet<Vertex> = vs.into_iter().collect();
        for &v in &set {
            self.check_vertex(v)?;
        }
        let keep: Vec<Vertex> = set.into_iter().collect();
        Ok(self.induced_ordered(&keep))
    }

    fn induced_ordered(&self, keep: &[Vertex]) -> (Graph, IdMap) {
        let mut map = vec![None; self.n];
        for (i, &v) in keep.iter().enumerate() {
            map[v] = Some(i);
        }
        let adj = keep
            .iter()
            .map(|&v| {
                iter_mask(self.adj[v])
                    .filter_map(|w| map[w])
                    .fold(0, |m, w| m | bit(w))
            })
            .collect();
        (Graph::from_masks(adj), IdMap(map))
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0; self.n];
        for u in 0..self.n {
            adj[perm[u]] = iter_mask(self.adj[u]).fold(0, |m, w| m | bit(perm[w]));
        }
        Graph::from_masks(adj)
    }

    /// Complement graph.
    pub fn complement(&self) -> Graph {
        let full = full_mask(self.n);
        Graph::from_masks(
            (0..self.n)
                .map(|v| !self.adj[v] & full & !bit(v))
                .collect(),
        )
    }

    /// Vertices reachable from `start` inside the vertex set `allowed`.
    pub(crate) fn reach(&self, start: Vertex, allowed: Mask) -> Mask {
        let mut seen = bit(start) & allowed;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in iter_mask(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `allowed`, each as a
    /// mask, ordered by smallest member.
    pub(crate) fn components_within(&self, allowed: Mask) -> Vec<Mask> {
        let mut rest = allowed;
        let mut comps = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as Vertex;
            let c = self.reach(v, rest);
            comps.push(c);
            rest &= !c;
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.all_mask()) == self.all_mask()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, [", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

pub(crate) fn full_mask(n: usize) -> Mask {
    if n >= Mask::BITS as usize {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

/// Old-to-new vertex id map produced by deletions; `None` marks a removed
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdMap(pub Vec<Option<Vertex>>);

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap((0..n).map(Some).collect())
    }

    pub fn get(&self, v: Vertex) -> Option<Vertex> {
        self.0.get(v).copied().flatten()
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &IdMap) -> IdMap {
        IdMap(self.0.iter().map(|m| m.and_then(|v| other.get(v))).collect())
    }
}

/// `C_n^2`: vertex `i` adjacent to `j` iff their circular distance is 1 or 2.
pub fn square_of_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 5 {
        return Err(GraphError::CycleTooShort(n));
    }
    let mut g = Graph::empty(n)?;
    for i in 0..n {
        g.insert(i, (i + 1) % n);
        g.insert(i, (i + 2) % n);
    }
    Ok(g)
}

/// Named graphs that recur throughout the theory.
pub mod fixtures {
    use super::*;

    pub fn k5() -> Graph {
        Graph::complete(5).unwrap()
    }

    pub fn k6() -> Graph {
        Graph::complete(6).unwrap()
    }

    /// `C_6^2`, whose non-edges are exactly `{0,3}, {1,4}, {2,5}`.
    pub fn octahedron() -> Graph {
        square_of_cycle(6).unwrap()
    }

    /// Octahedron plus the antipodal edge `{0,3}`.
    pub fn oct_plus() -> Graph {
        octahedron().add_edges([(0, 3)]).unwrap()
    }

    /// `K_6` minus the edge `{0,1}`.
    pub fn k6_minus_edge() -> Graph {
        k6().remove_edges([(0, 1)]).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn squares_of_small_cycles() {
        assert_eq!(square_of_cycle(5).unwrap(), k5());
        let oct = octahedron();
        let non_edges: Vec<Edge> = oct.complement().edges().collect();
        assert_eq!(non_edges, vec![Edge::new(0, 3), Edge::new(1, 4), Edge::new(2, 5)]);
        let c7 = square_of_cycle(7).unwrap();
        assert_eq!(c7.edge_count(), 14);
        assert!((0..7).all(|v| c7.degree(v) == 4));
        assert_eq!(square_of_cycle(4), Err(GraphError::CycleTooShort(4)));
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(Edge::new(0, 1)))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::UnknownVertex { vertex: 3, n: 3 })
        ));
        assert!(Graph::empty(MAX_VERTICES + 1).is_err());
    }

    #[test]
    fn mutators_return_new_values() {
        let g = k5();
        let h = g.remove_edges([(0, 1)]).unwrap();
        assert_eq!(h.edge_count(), 9);
        assert_eq!(g.edge_count(), 10);
        assert_eq!(
            g.remove_edges([(0, 1), (0, 1)]),
            Err(GraphError::UnknownEdge(Edge::new(0, 1)))
        );

        let (k4, map) = g.delete_vertex(4).unwrap();
        assert_eq!(k4, Graph::complete(4).unwrap());
        assert_eq!(map.0, vec![Some(0), Some(1), Some(2), Some(3), None]);
        let (_, map) = g.delete_vertex(1).unwrap();
        assert_eq!(map.0, vec![Some(0), None, Some(1), Some(2), Some(3)]);

        let x = g.add_vertex_with_neighbors([0, 2]).unwrap();
        assert_eq!(x.n(), 6);
        assert_eq!(x.degree(5), 2);
        assert_eq!(g.n(), 5);
        assert!(g.add_vertex_with_neighbors([7]).is_err());
    }

    #[test]
    fn induced_triangle_in_octahedron() {
        let (t, map) = octahedron().induced([2, 0, 1]).unwrap();
        assert_eq!(t, Graph::complete(3).unwrap());
        assert_eq!(map.get(2), Some(2));
        assert_eq!(map.get(3), None);
    }

    #[test]
    fn components_and_reach() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3)]).unwrap();
        let comps = g.components_within(g.all_mask());
        assert_eq!(comps, vec![0b00011, 0b01100, 0b10000]);
        assert!(!g.is_connected());
        assert!(cycle(6).is_connected());
    }

    #[test]
    fn id_map_composition() {
        let a = IdMap(vec![Some(0), None, Some(1)]);
        let b = IdMap(vec![None, Some(0)]);
        assert_eq!(a.then(&b).0, vec![None, None, Some(0)]);
    }
}
