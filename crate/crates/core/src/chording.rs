//! Path predicates: quasi 3-circuit chording paths, their `e⁺` variant, and
//! quasi chords of cycles, plus the existence queries over all `u`–`v` paths.
//!
//! A path `p` is quasi 3-circuit chording when some segment `p'` of `p`
//! (from `p[i]` to `p[j]`, `i < j`) has three internally disjoint paths
//! between its ends that avoid every other vertex of `p`. When `p'` is a
//! single edge that edge is excluded from the fan; longer segments have their
//! interior removed, so no fan path can coincide with them. Each fan test is
//! a max-flow query capped at 3.
//!
//! The existence queries enumerate simple paths exhaustively under a
//! [`SearchBudget`]; running out of budget is an error, never a negative
//! answer.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connectivity::{disjoint_path_count, disjoint_paths_within};
use crate::graph::{bit, mask_of, Edge, Graph, Mask, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("query needs two distinct vertices, got {0} twice")]
    SameVertex(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    UnknownVertex { vertex: Vertex, n: usize },
    #[error("edge {0} is already present")]
    EdgePresent(Edge),
    #[error("search budget exceeded after {paths} paths ({reason})")]
    BudgetExceeded { paths: usize, reason: String },
    #[error("search budget fields must be positive")]
    InvalidBudget,
}

/// Caps for simple-path enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_paths: usize,
    /// Maximum path length in edges; `None` means the graph order.
    pub max_len: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_paths: 1_000_000, max_len: None }
    }
}

impl SearchBudget {
    pub fn new(max_paths: usize, max_len: Option<usize>) -> Result<Self, ChordError> {
        if max_paths == 0 || max_len == Some(0) {
            return Err(ChordError::InvalidBudget);
        }
        Ok(SearchBudget { max_paths, max_len })
    }
}

/// How "non-adjacent vertices of the cycle" is read for quasi chords.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordRule {
    /// The two ends are not consecutive along the cycle.
    #[default]
    NonConsecutive,
    /// The two ends are additionally non-adjacent in the whole graph.
    NonAdjacentInGraph,
}

/// Which missing triangle edges the `e⁺` compatibility clauses range over,
/// besides the removed set `E_Y` (or `E_X`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AddedEdgeScope {
    /// Edges of the triangle absent from the reduced graph `H - E_X - E_Y`.
    #[default]
    Reduced,
    /// Edges of the triangle absent from the host `H`.
    Host,
}

/// Interpretation switches for the path predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semantics {
    /// Whether the segment `p'` may be all of `p`.
    pub whole_path_segment: bool,
    pub chord_rule: ChordRule,
    pub added_edges: AddedEdgeScope,
}

impl Default for Semantics {
    fn default() -> Self {
        Semantics {
            whole_path_segment: true,
            chord_rule: ChordRule::NonConsecutive,
            added_edges: AddedEdgeScope::Reduced,
        }
    }
}

/// A simple path with at least one edge, validated against a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSpec(Vec<Vertex>);

impl PathSpec {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self, ChordError> {
        check_path(g, &vertices)?;
        Ok(PathSpec(vertices))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        *self.0.last().unwrap()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub(crate) fn check_path(g: &Graph, vs: &[Vertex]) -> Result<(), ChordError> {
    if vs.len() < 2 {
        return Err(ChordError::InvalidPath("a path needs at least one edge".into()));
    }
    let mut seen: Mask = 0;
    for &v in vs {
        if v >= g.n() {
            return Err(ChordError::UnknownVertex { vertex: v, n: g.n() });
        }
        if seen & bit(v) != 0 {
            return Err(ChordError::InvalidPath(format!("vertex {v} repeats")));
        }
        seen |= bit(v);
    }
    if let Some(w) = vs.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(ChordError::InvalidPath(format!("{}-{} is not an edge", w[0], w[1])));
    }
    Ok(())
}

/// A certified quasi 3-circuit chording path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordingWitness {
    pub path: Vec<Vertex>,
    /// Ends of the segment `p'`, in path order.
    pub subpath_ends: (Vertex, Vertex),
    pub fan: Vec<Vec<Vertex>>,
}

impl ChordingWitness {
    /// Re-checks the witness from scratch against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        check_path(g, &self.path).map_err(|e| e.to_string())?;
        let (a, b) = self.subpath_ends;
        let ia = self.path.iter().position(|&v| v == a).ok_or("segment start not on path")?;
        let ib = self.path.iter().position(|&v| v == b).ok_or("segment end not on path")?;
        if ia >= ib {
            return Err("segment ends out of order".into());
        }
        let segment = &self.path[ia..=ib];
        if self.fan.len() != 3 {
            return Err(format!("fan has {} paths, expected 3", self.fan.len()));
        }
        let path_mask = mask_of(self.path.iter().copied());
        let mut interiors: Mask = 0;
        for f in &self.fan {
            check_path(g, f).map_err(|e| format!("fan path {f:?}: {e}"))?;
            if f[0] != a || *f.last().unwrap() != b {
                return Err(format!("fan path {f:?} does not join {a} and {b}"));
            }
            if f.as_slice() == segment {
                return Err(format!("fan path {f:?} equals the segment"));
            }
            let inner = mask_of(f[1..f.len() - 1].iter().copied());
            if inner & path_mask != 0 {
                return Err(format!("fan path {f:?} meets the path outside the segment ends"));
            }
            if inner & interiors != 0 {
                return Err("fan paths are not internally disjoint".into());
            }
            interiors |= inner;
        }
        let mut sorted = self.fan.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != 3 {
            return Err("fan paths repeat".into());
        }
        Ok(())
    }
}

/// A certified quasi chord: `path` joins two vertices of `cycle` and meets it
/// only at its ends, which are not consecutive on the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiChordWitness {
    pub path: Vec<Vertex>,
    /// Cycle as a closed vertex sequence starting at the path's first vertex
    /// (the start is not repeated at the end).
    pub cycle: Vec<Vertex>,
}

impl QuasiChordWitness {
    pub fn validate(&self, g: &Graph, rule: ChordRule) -> Result<(), String> {
        check_path(g, &self.path).map_err(|e| e.to_string())?;
        let (u, v) = (self.path[0], *self.path.last().unwrap());
        let c = &self.cycle;
        if c.len() < 3 {
            return Err("cycle too short".into());
        }
        let mut closed = c.clone();
        closed.push(c[0]);
        check_path(g, &closed[..closed.len() - 1]).map_err(|e| format!("cycle: {e}"))?;
        if !g.has_edge(c[0], *c.last().unwrap()) {
            return Err("cycle does not close".into());
        }
        if c[0] != u {
            return Err("cycle does not start at the path's first vertex".into());
        }
        let iv = c.iter().position(|&w| w == v).ok_or("path end not on cycle")?;
        if iv == 1 || iv == c.len() - 1 {
            return Err("path ends are consecutive on the cycle".into());
        }
        let inner = mask_of(self.path[1..self.path.len() - 1].iter().copied());
        if inner & mask_of(c.iter().copied()) != 0 {
            return Err("path meets the cycle outside its ends".into());
        }
        if rule == ChordRule::NonAdjacentInGraph && g.has_edge(u, v) {
            return Err("path ends are adjacent in the graph".into());
        }
        Ok(())
    }
}

/// First chording segment of `path` as indices `(i, j)`.
fn chording_segment(g: &Graph, path: &[Vertex], sem: &Semantics) -> Option<(usize, usize)> {
    let last = path.len() - 1;
    let pmask = mask_of(path.iter().copied());
    let outside = g.all_mask() & !pmask;
    for span in (1..=last).rev() {
        if span == last && !sem.whole_path_segment {
            continue;
        }
        for i in 0..=last - span {
            let (a, b) = (path[i], path[i + span]);
            let allowed = outside | bit(a) | bit(b);
            let skip = (span == 1).then(|| Edge::new(a, b));
            let spare = |x: Vertex| {
                let d = (g.nbr_mask(x) & allowed).count_ones() as usize;
                d - skip.is_some() as usize
            };
            if spare(a) < 3 || spare(b) < 3 {
                continue;
            }
            if disjoint_path_count(g, a, b, allowed, skip, 3) >= 3 {
                return Some((i, i + span));
            }
        }
    }
    None
}

fn segment_witness(g: &Graph, path: &[Vertex], (i, j): (usize, usize)) -> ChordingWitness {
    let (a, b) = (path[i], path[j]);
    let pmask = mask_of(path.iter().copied());
    let allowed = (g.all_mask() & !pmask) | bit(a) | bit(b);
    let skip = (j == i + 1).then(|| Edge::new(a, b));
    let fan = disjoint_paths_within(g, a, b, allowed, skip, 3);
    ChordingWitness { path: path.to_vec(), subpath_ends: (a, b), fan }
}

/// Witness that `p` is a quasi 3-circuit chording path of `g`, if it is one.
pub fn classify_quasi_3cc(g: &Graph, p: &PathSpec) -> Result<Option<ChordingWitness>, ChordError> {
    classify_quasi_3cc_with(g, p, &Semantics::default())
}

pub fn classify_quasi_3cc_with(
    g: &Graph,
    p: &PathSpec,
    sem: &Semantics,
) -> Result<Option<ChordingWitness>, ChordError> {
    check_path(g, p.vertices())?;
    Ok(chording_segment(g, p.vertices(), sem).map(|seg| segment_witness(g, p.vertices(), seg)))
}

fn plus_edge(g: &Graph, e: Edge) -> Result<Graph, ChordError> {
    for v in [e.lo(), e.hi()] {
        g.check_vertex(v).map_err(|_| ChordError::UnknownVertex { vertex: v, n: g.n() })?;
    }
    if e.lo() == e.hi() {
        return Err(ChordError::InvalidPath(format!("added edge {e} is a loop")));
    }
    if g.has_edge(e.lo(), e.hi()) {
        return Err(ChordError::EdgePresent(e));
    }
    Ok(g.add_edges([e]).expect("checked above"))
}

/// `p` is not quasi 3-circuit chording in `g` but is in `g + e`.
pub fn is_e_plus_quasi_3cc(g: &Graph, p: &PathSpec, e: Edge) -> Result<bool, ChordError> {
    check_path(g, p.vertices())?;
    let ge = plus_edge(g, e)?;
    let sem = Semantics::default();
    Ok(chording_segment(g, p.vertices(), &sem).is_none()
        && chording_segment(&ge, p.vertices(), &sem).is_some())
}

fn check_query(g: &Graph, u: Vertex, v: Vertex) -> Result<(), ChordError> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(ChordError::UnknownVertex { vertex: w, n: g.n() });
        }
    }
    if u == v {
        return Err(ChordError::SameVertex(u));
    }
    Ok(())
}

/// Exhaustive DFS over simple `u`–`v` paths. `visit` returns `Some` to stop.
fn for_each_path<T>(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    budget: &SearchBudget,
    mut visit: impl FnMut(&[Vertex]) -> Option<T>,
) -> Result<Option<T>, ChordError> {
    let max_len = budget.max_len.unwrap_or(g.n());
    let all = g.all_mask();
    let mut path = vec![u];
    let mut count = 0usize;
    // Stack of candidate masks for the next vertex after path[k].
    let mut pending: Vec<Mask> = vec![g.nbr_mask(u)];
    let mut on_path: Mask = bit(u);
    while let Some(cands) = pending.last_mut() {
        if *cands == 0 {
            pending.pop();
            let w = path.pop().unwrap();
            on_path &= !bit(w);
            continue;
        }
        let w = cands.trailing_zeros() as Vertex;
        *cands &= *cands - 1;
        if w == v {
            count += 1;
            if count > budget.max_paths {
                return Err(ChordError::BudgetExceeded {
                    paths: count - 1,
                    reason: format!("more than {} paths", budget.max_paths),
                });
            }
            path.push(v);
            let hit = visit(&path);
            path.pop();
            if hit.is_some() {
                return Ok(hit);
            }
            continue;
        }
        // Only step to w if v stays reachable without revisiting the path.
        let free = all & !on_path;
        if g.reach(w, free) & bit(v) == 0 {
            continue;
        }
        if path.len() >= max_len {
            return Err(ChordError::BudgetExceeded {
                paths: count,
                reason: format!("paths longer than {max_len} edges"),
            });
        }
        path.push(w);
        on_path |= bit(w);
        pending.push(g.nbr_mask(w) & !on_path);
    }
    Ok(None)
}

/// All simple `u`–`v` paths (test and report helper).
pub fn simple_paths(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    budget: &SearchBudget,
) -> Result<Vec<Vec<Vertex>>, ChordError> {
    check_query(g, u, v)?;
    let mut out = Vec::new();
    for_each_path(g, u, v, budget, |p| {
        out.push(p.to_vec());
        None::<()>
    })?;
    Ok(out)
}

/// Some simple `u`–`v` path of `g` that is quasi 3-circuit chording.
pub fn find_quasi_3cc_path(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    budget: &SearchBudget,
    sem: &Semantics,
) -> Result<Option<ChordingWitness>, ChordError> {
    check_query(g, u, v)?;
    if sem.whole_path_segment {
        // Four disjoint u-v paths: any one of them with the other three as fan.
        let four = disjoint_paths_within(g, u, v, g.all_mask(), None, 4);
        if four.len() == 4 {
            let mut four = four;
            four.sort_by_key(|p| (p.len(), p.clone()));
            let path = four.remove(0);
            return Ok(Some(ChordingWitness { path, subpath_ends: (u, v), fan: four }));
        }
    }
    for_each_path(g, u, v, budget, |p| {
        chording_segment(g, p, sem).map(|seg| segment_witness(g, p, seg))
    })
}

pub fn exists_quasi_3cc_path(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    budget: &SearchBudget,
) -> Result<bool, ChordError> {
    Ok(find_quasi_3cc_path(g, u, v, budget, &Semantics::default())?.is_some())
}

/// Some simple `u`–`v` path of `g` that is `e⁺`-quasi 3-circuit chording;
/// the returned witness certifies it in `g + e`.
pub fn find_e_plus_quasi_3cc_path(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    e: Edge,
    budget: &SearchBudget,
    sem: &Semantics,
) -> Result<Option<ChordingWitness>, ChordError> {
    check_query(g, u, v)?;
    let ge = plus_edge(g, e)?;
    for_each_path(g, u, v, budget, |p| {
        let seg = chording_segment(&ge, p, sem)?;
        if chording_segment(g, p, sem).is_some() {
            return None;
        }
        Some(segment_witness(&ge, p, seg))
    })
}

pub fn exists_e_plus_quasi_3cc_path(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    e: Edge,
    budget: &SearchBudget,
) -> Result<bool, ChordError> {
    Ok(find_e_plus_quasi_3cc_path(g, u, v, e, budget, &Semantics::default())?.is_some())
}

/// Some simple `u`–`v` path that is a quasi chord of a cycle through `u` and
/// `v`. The cycle's two arcs must have length at least 2, so they are found
/// as two disjoint `u`–`v` paths avoiding the path's interior and the edge
/// `uv`.
pub fn find_quasi_chord(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    budget: &SearchBudget,
    rule: ChordRule,
) -> Result<Option<QuasiChordWitness>, ChordError> {
    check_query(g, u, v)?;
    if rule == ChordRule::NonAdjacentInGraph && g.has_edge(u, v) {
        return Ok(None);
    }
    let skip = Some(Edge::new(u, v));
    for_each_path(g, u, v, budget, |p| {
        let inner = mask_of(p[1..p.len() - 1].iter().copied());
        let allowed = g.all_mask() & !inner;
        let arcs = disjoint_paths_within(g, u, v, allowed, skip, 2);
        if arcs.len() < 2 {
            return None;
        }
        let mut cycle = arcs[0].clone();
        cycle.pop();
        cycle.extend(arcs[1].iter().rev().take(arcs[1].len() - 1));
        Some(QuasiChordWitness { path: p.to_vec(), cycle })
    })
}

pub fn exists_quasi_chord(
    g: &Graph,
    u: Vertex,
    v: Vertex,
    budget: &SearchBudget,
) -> Result<bool, ChordError> {
    Ok(find_quasi_chord(g, u, v, budget, ChordRule::default())?.is_some())
}
