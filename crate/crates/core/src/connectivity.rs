//! Exact vertex connectivity.
//!
//! Local connectivity is a unit-capacity maximum flow on the vertex-split
//! digraph. Residual capacities fit in one `u64` mask per split node, so an
//! augmenting search is a handful of bit operations at these orders. The arc
//! `s_out -> t_in` carries the direct edge when `s` and `t` are adjacent, which
//! realizes `κ(s,t) = 1 + κ_{G-st}(s,t)` without a separate case.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, iter_mask, Edge, Graph, Mask, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("local connectivity needs two distinct vertices, got {0} twice")]
    SameVertex(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    UnknownVertex { vertex: Vertex, n: usize },
    #[error("graph has {n} vertices, at least {min} required")]
    TooSmall { n: usize, min: usize },
    #[error("complete graphs have no vertex cut")]
    Complete,
    #[error("{0:?} is not a minimum vertex cut")]
    NotMinimumCut(Vec<Vertex>),
}

/// Residual network of the split digraph restricted to a vertex subset.
struct SplitFlow {
    orig: [u64; 64],
    res: [u64; 64],
    src: usize,
    sink: usize,
}

impl SplitFlow {
    fn new(g: &Graph, s: Vertex, t: Vertex, allowed: Mask, skip: Option<Edge>) -> Self {
        let mut orig = [0u64; 64];
        let allowed = allowed | bit(s) | bit(t);
        for v in iter_mask(allowed) {
            if v != s && v != t {
                orig[2 * v] |= 1 << (2 * v + 1);
            }
            for w in iter_mask(g.nbr_mask(v) & allowed) {
                if skip == Some(Edge::new(v, w)) {
                    continue;
                }
                orig[2 * v + 1] |= 1 << (2 * w);
            }
        }
        SplitFlow { orig, res: orig, src: 2 * s + 1, sink: 2 * t }
    }

    /// One BFS augmentation; false when the sink is unreachable.
    fn augment(&mut self) -> bool {
        let mut parent = [u8::MAX; 64];
        let mut seen: u64 = 1 << self.src;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let a = f.trailing_zeros() as usize;
                f &= f - 1;
                let mut out = self.res[a] & !seen & !next;
                while out != 0 {
                    let b = out.trailing_zeros() as usize;
                    out &= out - 1;
                    parent[b] = a as u8;
                    next |= 1 << b;
                }
            }
            if next & (1 << self.sink) != 0 {
                let mut b = self.sink;
                while b != self.src {
                    let a = parent[b] as usize;
                    self.res[a] &= !(1 << b);
                    self.res[b] |= 1 << a;
                    b = a;
                }
                return true;
            }
            seen |= next;
            frontier = next;
        }
        false
    }

    fn run(&mut self, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit && self.augment() {
            flow += 1;
        }
        flow
    }

    /// Decomposes the current flow into vertex paths from `s` to `t`.
    fn paths(&self) -> Vec<Vec<Vertex>> {
        let mut used = [0u64; 64];
        for a in 0..64 {
            used[a] = self.orig[a] & !self.res[a];
        }
        let mut out = Vec::new();
        while used[self.src] != 0 {
            let mut path = vec![self.src / 2];
            let mut cur = self.src;
            loop {
                let b = used[cur].trailing_zeros() as usize;
                used[cur] &= !(1 << b);
                if b == self.sink {
                    path.push(self.sink / 2);
                    break;
                }
                // Entered b = w_in; the internal arc w_in -> w_out is saturated.
                used[b] &= !(1 << (b + 1));
                cur = b + 1;
                path.push(b / 2);
            }
            out.push(path);
        }
        out.sort();
        out
    }

    /// Vertices whose in-copy is reachable in the residual graph but whose
    /// out-copy is not: a minimum separating vertex set. Edge arcs are treated
    /// as uncapacitated here, which leaves the flow maximum and forces every
    /// cut arc to be an internal one.
    fn min_cut(&self) -> Vec<Vertex> {
        let mut seen: u64 = 1 << self.src;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for a in (0..64).filter(|a| frontier & (1 << a) != 0) {
                next |= self.res[a];
                if a % 2 == 1 {
                    next |= self.orig[a];
                }
            }
            next &= !seen;
            seen |= next;
            frontier = next;
        }
        (0..32)
            .filter(|&v| seen & (1 << (2 * v)) != 0 && seen & (1 << (2 * v + 1)) == 0)
            .collect()
    }
}

fn check_pair(g: &Graph, u: Vertex, v: Vertex) -> Result<(), ConnectivityError> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(ConnectivityError::UnknownVertex { vertex: w, n: g.n() });
        }
    }
    if u == v {
        return Err(ConnectivityError::SameVertex(u));
    }
    Ok(())
}

/// Number of internally disjoint `s`–`t` paths inside the vertex set
/// `allowed` (endpoints are always allowed), ignoring edge `skip`, capped at
/// `limit`. No validation; callers pass distinct in-range vertices.
pub(crate) fn disjoint_path_count(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    allowed: Mask,
    skip: Option<Edge>,
    limit: usize,
) -> usize {
    SplitFlow::new(g, s, t, allowed, skip).run(limit)
}

/// Up to `limit` internally disjoint `s`–`t` paths within `allowed`,
/// ignoring edge `skip`.
pub(crate) fn disjoint_paths_within(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    allowed: Mask,
    skip: Option<Edge>,
    limit: usize,
) -> Vec<Vec<Vertex>> {
    let mut f = SplitFlow::new(g, s, t, allowed, skip);
    f.run(limit);
    f.paths()
}

/// Maximum number of internally disjoint `u`–`v` paths.
pub fn local_connectivity(g: &Graph, u: Vertex, v: Vertex) -> Result<usize, ConnectivityError> {
    check_pair(g, u, v)?;
    Ok(disjoint_path_count(g, u, v, g.all_mask(), None, usize::MAX))
}

/// A maximum family of internally disjoint `u`–`v` paths.
pub fn disjoint_paths(g: &Graph, u: Vertex, v: Vertex) -> Result<Vec<Vec<Vertex>>, ConnectivityError> {
    check_pair(g, u, v)?;
    Ok(disjoint_paths_within(g, u, v, g.all_mask(), None, usize::MAX))
}

/// Minimum vertex set separating two non-adjacent vertices.
pub fn separating_cut(g: &Graph, u: Vertex, v: Vertex) -> Result<Vec<Vertex>, ConnectivityError> {
    check_pair(g, u, v)?;
    if g.has_edge(u, v) {
        return Err(ConnectivityError::Complete);
    }
    let mut f = SplitFlow::new(g, u, v, g.all_mask(), None);
    f.run(usize::MAX);
    Ok(f.min_cut())
}

/// `κ(G)`: minimum local connectivity over non-adjacent pairs, `n - 1` for
/// complete graphs.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, ConnectivityError> {
    Ok(min_nonadjacent_pair(g)?.0)
}

fn min_nonadjacent_pair(g: &Graph) -> Result<(usize, Option<(Vertex, Vertex)>), ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooSmall { n, min: 2 });
    }
    let mut best = (n - 1, None);
    for u in 0..n {
        for v in iter_mask(!g.nbr_mask(u) & g.all_mask() & !crate::graph::full_mask(u + 1)) {
            let k = disjoint_path_count(g, u, v, g.all_mask(), None, best.0);
            if k < best.0 || best.1.is_none() {
                best = (k, Some((u, v)));
            }
            if best.0 == 0 {
                return Ok(best);
            }
        }
    }
    Ok(best)
}

/// A minimum vertex cut of a non-complete graph.
pub fn minimum_cut(g: &Graph) -> Result<Vec<Vertex>, ConnectivityError> {
    match min_nonadjacent_pair(g)? {
        (_, Some((u, v))) => separating_cut(g, u, v),
        (_, None) => Err(ConnectivityError::Complete),
    }
}

/// Evidence that a graph is not uniformly 4-connected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A minimum vertex cut (present when `κ < 4`).
    Cut { vertices: Vec<Vertex> },
    /// Five internally disjoint paths between `u` and `v`.
    Fan { u: Vertex, v: Vertex, paths: Vec<Vec<Vertex>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub kappa: usize,
    /// Symmetric matrix of local connectivities; the diagonal is zero.
    pub local: Vec<Vec<usize>>,
    pub min_local: usize,
    pub max_local: usize,
    pub uniform4: bool,
    pub witness: Option<Witness>,
}

/// Full pairwise report. Requires `n >= 2`.
pub fn connectivity_report(g: &Graph) -> Result<ConnectivityReport, ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooSmall { n, min: 2 });
    }
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let values: Vec<usize> = pairs
        .par_iter()
        .map(|&(u, v)| disjoint_path_count(g, u, v, g.all_mask(), None, usize::MAX))
        .collect();
    let mut local = vec![vec![0; n]; n];
    for (&(u, v), &k) in pairs.iter().zip(&values) {
        local[u][v] = k;
        local[v][u] = k;
    }
    let kappa = pairs
        .iter()
        .zip(&values)
        .filter(|((u, v), _)| !g.has_edge(*u, *v))
        .map(|(_, &k)| k)
        .min()
        .unwrap_or(n - 1);
    let min_local = values.iter().copied().min().unwrap_or(0);
    let max_local = values.iter().copied().max().unwrap_or(0);
    let uniform4 = n >= 5 && min_local == 4 && max_local == 4;
    let witness = if uniform4 {
        None
    } else if kappa < 4 {
        minimum_cut(g).ok().map(|vertices| Witness::Cut { vertices })
    } else {
        pairs
            .iter()
            .zip(&values)
            .find(|(_, &k)| k >= 5)
            .map(|(&(u, v), _)| fan_witness(g, u, v))
    };
    Ok(ConnectivityReport { kappa, local, min_local, max_local, uniform4, witness })
}

fn fan_witness(g: &Graph, u: Vertex, v: Vertex) -> Witness {
    let paths = disjoint_paths_within(g, u, v, g.all_mask(), None, 5);
    Witness::Fan { u, v, paths }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformVerdict {
    pub uniform: bool,
    pub witness: Option<Witness>,
}

/// Whether every vertex pair has local connectivity exactly 4.
///
/// On a negative answer the witness is a minimum cut when `κ < 4`, otherwise
/// the first pair (in lexicographic order) joined by five disjoint paths.
pub fn is_uniformly_4_connected(g: &Graph) -> Result<UniformVerdict, ConnectivityError> {
    let n = g.n();
    if n < 5 {
        return Err(ConnectivityError::TooSmall { n, min: 5 });
    }
    let cut = || UniformVerdict {
        uniform: false,
        witness: minimum_cut(g).ok().map(|vertices| Witness::Cut { vertices }),
    };
    if g.min_degree() < 4 {
        return Ok(cut());
    }
    let mut rich: Option<(Vertex, Vertex)> = None;
    for u in 0..n {
        for v in u + 1..n {
            let k = disjoint_path_count(g, u, v, g.all_mask(), None, 5);
            if k < 4 {
                return Ok(cut());
            }
            if k >= 5 && rich.is_none() {
                rich = Some((u, v));
            }
        }
    }
    Ok(match rich {
        None => UniformVerdict { uniform: true, witness: None },
        Some((u, v)) => UniformVerdict { uniform: false, witness: Some(fan_witness(g, u, v)) },
    })
}

/// Boolean shortcut for [`is_uniformly_4_connected`]; false below order 5.
pub fn is_uniform4(g: &Graph) -> bool {
    if g.n() < 5 || g.min_degree() < 4 {
        return false;
    }
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| disjoint_path_count(g, u, v, g.all_mask(), None, 5) == 4))
}

/// `κ(G) >= k`, decided with flows capped at `k`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.n();
    if n <= k {
        return false;
    }
    if g.min_degree() < k {
        return false;
    }
    (0..n).all(|u| {
        iter_mask(!g.nbr_mask(u) & g.all_mask() & !crate::graph::full_mask(u + 1))
            .all(|v| disjoint_path_count(g, u, v, g.all_mask(), None, k) >= k)
    })
}

/// Iterates all `k`-subsets of `0..n` as masks in increasing numeric order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Mask> {
    let limit: u64 = 1 << n;
    let mut cur: u64 = if k == 0 { 0 } else { (1 << k) - 1 };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur as Mask;
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}

/// Every minimum vertex cut, as sorted vertex lists in lexicographic order.
pub fn minimum_cuts(g: &Graph) -> Result<Vec<Vec<Vertex>>, ConnectivityError> {
    if g.n() < 2 {
        return Err(ConnectivityError::TooSmall { n: g.n(), min: 2 });
    }
    if g.is_complete() {
        return Err(ConnectivityError::Complete);
    }
    let kappa = vertex_connectivity(g)?;
    Ok(cut_masks(g, kappa).into_iter().map(|m| iter_mask(m).collect()).collect())
}

fn cut_masks(g: &Graph, size: usize) -> Vec<Mask> {
    let all = g.all_mask();
    let mut cuts: Vec<Mask> = subsets_of_size(g.n(), size)
        .filter(|&t| g.components_within(all & !t).len() >= 2)
        .collect();
    cuts.sort_by_key(|&m| iter_mask(m).collect::<Vec<_>>());
    cuts
}

/// A `T`-fragment: a union of some but not all components of `G - T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fragment {
    pub cut: Vec<Vertex>,
    pub body: Vec<Vertex>,
}

/// An inclusion-minimal fragment over all minimum cuts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct End(pub Fragment);

fn fragment_masks(g: &Graph, cut: Mask) -> Vec<Mask> {
    let comps = g.components_within(g.all_mask() & !cut);
    let m = comps.len();
    (1u64..(1 << m) - 1)
        .map(|sel| {
            (0..m)
                .filter(|&i| sel & (1 << i) != 0)
                .fold(0, |acc, i| acc | comps[i])
        })
        .collect()
}

/// All `T`-fragments for a minimum cut `T`.
pub fn fragments(g: &Graph, cut: &[Vertex]) -> Result<Vec<Fragment>, ConnectivityError> {
    for &v in cut {
        if v >= g.n() {
            return Err(ConnectivityError::UnknownVertex { vertex: v, n: g.n() });
        }
    }
    let t = crate::graph::mask_of(cut.iter().copied());
    let kappa = vertex_connectivity(g)?;
    if t.count_ones() as usize != kappa
        || t.count_ones() as usize != cut.len()
        || g.components_within(g.all_mask() & !t).len() < 2
    {
        return Err(ConnectivityError::NotMinimumCut(cut.to_vec()));
    }
    let cut: Vec<Vertex> = iter_mask(t).collect();
    let mut out: Vec<Fragment> = fragment_masks(g, t)
        .into_iter()
        .map(|b| Fragment { cut: cut.clone(), body: iter_mask(b).collect() })
        .collect();
    out.sort_by(|a, b| (a.body.len(), &a.body).cmp(&(b.body.len(), &b.body)));
    Ok(out)
}

/// All ends, ordered by body size then lexicographically.
pub fn ends(g: &Graph) -> Result<Vec<End>, ConnectivityError> {
    if g.n() < 2 {
        return Err(ConnectivityError::TooSmall { n: g.n(), min: 2 });
    }
    if g.is_complete() {
        return Err(ConnectivityError::Complete);
    }
    let kappa = vertex_connectivity(g)?;
    let mut all: Vec<(Mask, Mask)> = Vec::new();
    for t in cut_masks(g, kappa) {
        for b in fragment_masks(g, t) {
            if !all.iter().any(|&(_, ob)| ob == b) {
                all.push((t, b));
            }
        }
    }
    let mut ends: Vec<Fragment> = all
        .iter()
        .filter(|&&(_, b)| !all.iter().any(|&(_, o)| o != b && o & b == o))
        .map(|&(t, b)| Fragment { cut: iter_mask(t).collect(), body: iter_mask(b).collect() })
        .collect();
    ends.sort_by(|a, b| (a.body.len(), &a.body).cmp(&(b.body.len(), &b.body)));
    Ok(ends.into_iter().map(End).collect())
}
