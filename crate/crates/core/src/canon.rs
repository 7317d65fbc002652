//! Canonical labeling by equitable-partition refinement and an
//! individualization search, pruned with the automorphisms found on the way.
//!
//! The certificate of a graph is the graph6 string of its canonical
//! relabeling, so two graphs get the same certificate iff they are
//! isomorphic.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, iter_mask, Graph, Mask, Vertex, MAX_IO_ORDER};
use crate::io::format_graph6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("canonical labeling supports at most {MAX_IO_ORDER} vertices, got {0}")]
    OrderTooLarge(usize),
}

/// Isomorphism-class identifier: graph6 text of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalCert(String);

impl CanonicalCert {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    /// Wraps a string read back from a report or trace; no validation is done.
    pub fn from_string(s: String) -> Self {
        CanonicalCert(s)
    }

    /// Order of the graph this certificate describes.
    pub fn order(&self) -> usize {
        self.0.as_bytes().first().map_or(0, |&b| (b - 63) as usize)
    }
}

impl fmt::Display for CanonicalCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for CanonicalCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cert({})", self.0)
    }
}

/// Canonical form together with the labeling that produces it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub cert: CanonicalCert,
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<Vertex>,
    /// The relabeled graph itself.
    pub graph: Graph,
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, CanonError> {
    let n = g.n();
    if n > MAX_IO_ORDER {
        return Err(CanonError::OrderTooLarge(n));
    }
    let mut search = Search {
        g,
        best: None,
        generators: Vec::new(),
    };
    let root = vec![(0..n).collect::<Vec<_>>()];
    search.descend(root, &mut Vec::new());
    let order = search.best.map(|(_, order)| order).unwrap_or_default();
    let mut labeling = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        labeling[v] = pos;
    }
    let graph = g.permute(&labeling);
    let cert = CanonicalCert(format_graph6(&graph).expect("order checked above"));
    Ok(CanonicalForm { cert, labeling, graph })
}

pub fn canonical_cert(g: &Graph) -> Result<CanonicalCert, CanonError> {
    canonical_form(g).map(|f| f.cert)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool, CanonError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_cert(g)? == canonical_cert(h)?)
}

/// An isomorphism `g -> h` as a vertex map, if one exists.
pub fn isomorphism(g: &Graph, h: &Graph) -> Result<Option<Vec<Vertex>>, CanonError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let fg = canonical_form(g)?;
    let fh = canonical_form(h)?;
    if fg.cert != fh.cert {
        return Ok(None);
    }
    let mut h_at = vec![0; h.n()];
    for (v, &pos) in fh.labeling.iter().enumerate() {
        h_at[pos] = v;
    }
    Ok(Some(fg.labeling.iter().map(|&pos| h_at[pos]).collect()))
}

type Cells = Vec<Vec<Vertex>>;

struct Search<'a> {
    g: &'a Graph,
    /// Best leaf: (relabeled adjacency rows, vertex order).
    best: Option<(Vec<Mask>, Vec<Vertex>)>,
    generators: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Cells, prefix: &mut Vec<Vertex>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(cells.into_iter().map(|c| c[0]).collect());
            return;
        };
        let choices = cells[target].clone();
        let mut explored: Vec<Vertex> = Vec::new();
        for &v in &choices {
            if !explored.is_empty() && self.same_orbit(prefix, &choices, &explored, v) {
                continue;
            }
            let mut child = cells.clone();
            let rest: Vec<Vertex> = child[target].iter().copied().filter(|&w| w != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Whether `v` is in the orbit of an explored sibling under the known
    /// automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[Vertex], cell: &[Vertex], explored: &[Vertex], v: Vertex) -> bool {
        let n = self.g.n();
        let mut parent: Vec<Vertex> = (0..n).collect();
        fn find(p: &mut [Vertex], mut x: Vertex) -> Vertex {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gen in &self.generators {
            if prefix.iter().any(|&u| gen[u] != u) {
                continue;
            }
            for &w in cell {
                let (a, b) = (find(&mut parent, w), find(&mut parent, gen[w]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == root)
    }

    fn leaf(&mut self, order: Vec<Vertex>) {
        let n = order.len();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let code: Vec<Mask> = order
            .iter()
            .map(|&v| iter_mask(self.g.nbr_mask(v)).fold(0, |m, w| m | bit(pos[w])))
            .collect();
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best_code, best_order)) => match code.cmp(best_code) {
                std::cmp::Ordering::Greater => self.best = Some((code, order)),
                std::cmp::Ordering::Equal => {
                    let mut gen = vec![0; n];
                    for i in 0..n {
                        gen[order[i]] = best_order[i];
                    }
                    self.generators.push(gen);
                }
                std::cmp::Ordering::Less => {}
            },
        }
    }
}

/// Refines an ordered partition to the coarsest equitable one below it.
/// Split cells are ordered by neighbor count, so the result depends only on
/// the graph structure and the input partition.
fn refine(g: &Graph, cells: &mut Cells) {
    'restart: loop {
        for s in 0..cells.len() {
            let splitter: Mask = cells[s].iter().fold(0, |m, &v| m | bit(v));
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let count = |v: Vertex| (g.nbr_mask(v) & splitter).count_ones();
                let first = count(cells[c][0]);
                if cells[c].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(u32, Vertex)> = cells[c].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut parts: Cells = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        parts.push(Vec::new());
                        last = Some(k);
                    }
                    parts.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, parts);
                continue 'restart;
            }
        }
        return;
    }
}
