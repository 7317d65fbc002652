//! Exhaustive enumeration of small graphs straight from the definitions.
//! Only graph, connectivity and canonical labeling are used here, so the
//! results are independent of the operations being tested.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::ConstructError;
use crate::canon::{canonical_form, CanonicalCert};
use crate::connectivity::{is_k_connected, is_uniform4};
use crate::graph::{full_mask, Graph, Mask, Vertex};

const MIN_ORDER: usize = 5;
const MAX_ORDER: usize = 8;

fn check_order(n: usize) -> Result<(), ConstructError> {
    if !(MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(ConstructError::OrderOutOfRange { n, min: MIN_ORDER, max: MAX_ORDER });
    }
    Ok(())
}

/// Calls `leaf` on every graph on `0..n` whose complement has maximum degree
/// at most `cap`, given as the complement's adjacency rows.
fn complements(n: usize, cap: usize, pairs: &[(Vertex, Vertex)], i: usize, rows: &mut [Mask], leaf: &mut impl FnMut(&[Mask])) {
    let Some(&(u, v)) = pairs.get(i) else {
        leaf(rows);
        return;
    };
    complements(n, cap, pairs, i + 1, rows, leaf);
    if (rows[u].count_ones() as usize) < cap && (rows[v].count_ones() as usize) < cap {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
        complements(n, cap, pairs, i + 1, rows, leaf);
        rows[u] &= !(1 << v);
        rows[v] &= !(1 << u);
    }
}

/// Common-neighbour bound implied by uniformity: an adjacent pair has at
/// most 3 common neighbours, a non-adjacent pair at most 4.
fn common_neighbour_bound(adj: &[Mask]) -> bool {
    let n = adj.len();
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            let common = (adj[u] & adj[v]).count_ones();
            common <= if adj[u] & (1 << v) != 0 { 3 } else { 4 }
        })
    })
}

/// All graphs of order `n` with minimum degree at least 4 passing `keep`,
/// one canonical representative per isomorphism class.
fn sweep(n: usize, prefilter: bool, keep: impl Fn(&Graph) -> bool + Sync) -> Result<BTreeMap<CanonicalCert, Graph>, ConstructError> {
    let cap = n - 5;
    let all = full_mask(n);
    // Split the work on the complement neighbourhood of vertex 0.
    let first: Vec<Mask> = (0..1u32 << (n - 1))
        .map(|s| s << 1)
        .filter(|s| s.count_ones() as usize <= cap)
        .collect();
    let rest_pairs: Vec<(Vertex, Vertex)> = (1..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let found: Vec<BTreeMap<CanonicalCert, Graph>> = first
        .par_iter()
        .map(|&s0| {
            let mut local = BTreeMap::new();
            let mut rows = vec![0 as Mask; n];
            rows[0] = s0;
            for v in 1..n {
                if s0 & (1 << v) != 0 {
                    rows[v] |= 1;
                }
            }
            let mut err = None;
            complements(n, cap, &rest_pairs, 0, &mut rows, &mut |comp: &[Mask]| {
                let adj: Vec<Mask> = (0..n).map(|v| all & !comp[v] & !(1 << v)).collect();
                if prefilter && !common_neighbour_bound(&adj) {
                    return;
                }
                let g = Graph::from_masks(adj);
                if !keep(&g) {
                    return;
                }
                match canonical_form(&g) {
                    Ok(f) => {
                        local.entry(f.cert).or_insert(f.graph);
                    }
                    Err(e) => err = Some(e),
                }
            });
            match err {
                Some(e) => Err(ConstructError::from(e)),
                None => Ok(local),
            }
        })
        .collect::<Result<_, _>>()?;
    let mut out = BTreeMap::new();
    for m in found {
        out.extend(m);
    }
    Ok(out)
}

/// Certificates of every uniformly 4-connected graph of order `n`, `5 ≤ n ≤ 8`.
pub fn brute_force_uniform(n: usize) -> Result<BTreeSet<CanonicalCert>, ConstructError> {
    Ok(brute_force_uniform_graphs(n)?.into_keys().collect())
}

/// As `brute_force_uniform`, with canonical representatives.
pub fn brute_force_uniform_graphs(n: usize) -> Result<BTreeMap<CanonicalCert, Graph>, ConstructError> {
    check_order(n)?;
    sweep(n, true, is_uniform4)
}

/// Every 4-connected graph of order `n`, `5 ≤ n ≤ 8`, one per class.
pub fn brute_force_four_connected(n: usize) -> Result<BTreeMap<CanonicalCert, Graph>, ConstructError> {
    check_order(n)?;
    sweep(n, false, |g| is_k_connected(g, 4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_cert;
    use crate::graph::fixtures;

    #[test]
    fn orders_five_and_six() {
        let k5 = canonical_cert(&fixtures::k5()).unwrap();
        assert_eq!(brute_force_uniform(5).unwrap(), BTreeSet::from([k5]));
        let oct = canonical_cert(&fixtures::octahedron()).unwrap();
        assert_eq!(brute_force_uniform(6).unwrap(), BTreeSet::from([oct.clone()]));
        let four: BTreeSet<_> = brute_force_four_connected(6).unwrap().into_keys().collect();
        let expected: BTreeSet<_> = [fixtures::octahedron(), fixtures::oct_plus(), fixtures::k6_minus_edge(), fixtures::k6()]
            .iter()
            .map(|g| canonical_cert(g).unwrap())
            .collect();
        assert_eq!(four, expected);
    }

    #[test]
    fn range() {
        assert!(brute_force_uniform(4).is_err());
        assert!(brute_force_uniform(9).is_err());
    }
}
