//! Reference implementations used only by tests. Each one works on plain
//! adjacency rows straight from the definitions and shares no code with the
//! library beyond reading edges out of a `Graph`.

#![allow(dead_code)]

use rand::Rng;
use unicon4::{Edge, Graph, OperationSpec, Vertex};

pub type Rows = Vec<u32>;

pub fn rows(g: &Graph) -> Rows {
    let n = g.n();
    (0..n)
        .map(|u| (0..n).filter(|&v| v != u && g.has_edge(u, v)).fold(0, |m, v| m | 1 << v))
        .collect()
}

pub fn graph(rows: &Rows) -> Graph {
    let n = rows.len();
    let edges: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| rows[u] >> v & 1 == 1).collect();
    Graph::from_edges(n, edges).unwrap()
}

fn reach(rows: &Rows, start: usize, allowed: u32) -> u32 {
    let mut seen = 1u32 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for v in 0..rows.len() {
            if allowed >> v & 1 == 1 && rows[u] >> v & 1 == 1 && seen >> v & 1 == 0 {
                seen |= 1 << v;
                stack.push(v);
            }
        }
    }
    seen
}

pub fn components(rows: &Rows, allowed: u32) -> Vec<u32> {
    let mut left = allowed;
    let mut out = Vec::new();
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let c = reach(rows, s, allowed);
        out.push(c);
        left &= !c;
    }
    out
}

fn all(n: usize) -> u32 {
    if n == 32 { u32::MAX } else { (1u32 << n) - 1 }
}

pub fn connected(rows: &Rows, allowed: u32) -> bool {
    allowed == 0 || components(rows, allowed).len() == 1
}

/// Vertex connectivity by trying every vertex subset in order of size.
pub fn kappa(g: &Graph) -> usize {
    let r = rows(g);
    let n = r.len();
    let full = all(n);
    let mut subsets: Vec<u32> = (0..1u32 << n).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for s in subsets {
        let left = full & !s;
        if left.count_ones() >= 2 && !connected(&r, left) {
            return s.count_ones() as usize;
        }
    }
    n.saturating_sub(1)
}

/// Every simple `u`–`v` path, shortest first.
pub fn simple_paths(rows: &Rows, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn go(rows: &Rows, v: usize, path: &mut Vec<usize>, seen: u32, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == v {
            out.push(path.clone());
            return;
        }
        for w in 0..rows.len() {
            if rows[last] >> w & 1 == 1 && seen >> w & 1 == 0 {
                path.push(w);
                go(rows, v, path, seen | 1 << w, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(rows, v, &mut vec![u], 1 << u, &mut out);
    out.sort_by_key(|p| p.len());
    out
}

/// Largest family of internally disjoint `u`–`v` paths, by exhaustive
/// packing over all simple paths. Adjacent vertices count their edge.
pub fn disjoint_path_packing(rows: &Rows, u: usize, v: usize) -> usize {
    let paths: Vec<u32> = simple_paths(rows, u, v)
        .into_iter()
        .map(|p| p[1..p.len() - 1].iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let cap = rows[u].count_ones().min(rows[v].count_ones()) as usize;
    fn pack(paths: &[u32], from: usize, used: u32, count: usize, cap: usize, best: &mut usize) {
        *best = (*best).max(count);
        if *best == cap {
            return;
        }
        for i in from..paths.len() {
            if paths[i] & used == 0 {
                pack(paths, i + 1, used | paths[i], count + 1, cap, best);
                if *best == cap {
                    return;
                }
            }
        }
    }
    let mut best = 0;
    pack(&paths, 0, 0, 0, cap, &mut best);
    best
}

pub fn uniform4(g: &Graph) -> bool {
    let r = rows(g);
    let n = r.len();
    n >= 5 && (0..n).all(|u| (u + 1..n).all(|v| disjoint_path_packing(&r, u, v) == 4))
}

/// Lexicographically least adjacency string over all relabelings.
pub fn brute_canon(g: &Graph) -> Vec<bool> {
    let r = rows(g);
    let n = r.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    permutations(&mut perm, 0, &mut |p| {
        let mut s = Vec::with_capacity(n * n / 2);
        for j in 1..n {
            for i in 0..j {
                s.push(r[p[i]] >> p[j] & 1 == 1);
            }
        }
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    });
    best.unwrap_or_default()
}

pub fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.edge_count() == h.edge_count() && brute_canon(g) == brute_canon(h)
}

/// `G ⊖ e` built by hand: drop `e`, then for each endpoint in turn (lower
/// first) that has degree 3, delete it and make its neighbours a clique.
/// Returns the rows of the result with surviving vertices renumbered.
pub fn reduce(g: &Graph, e: Edge) -> Graph {
    let mut r = rows(g);
    let (x, y) = e.ends();
    r[x] &= !(1 << y);
    r[y] &= !(1 << x);
    let mut alive = all(r.len());
    for w in [x, y] {
        if (r[w] & alive).count_ones() == 3 {
            let nb = r[w] & alive;
            alive &= !(1 << w);
            for a in 0..r.len() {
                if nb >> a & 1 == 1 {
                    r[a] |= nb & !(1 << a);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..r.len()).filter(|&v| alive >> v & 1 == 1).collect();
    let out: Rows = keep
        .iter()
        .map(|&u| keep.iter().enumerate().filter(|&(_, &v)| v != u && r[u] >> v & 1 == 1).fold(0, |m, (j, _)| m | 1 << j))
        .collect();
    graph(&out)
}

/// The result of an operation, built directly from its parameters.
pub fn apply(h: &Graph, s: &OperationSpec) -> Graph {
    let mut r = rows(h);
    let n = r.len();
    let join = |r: &mut Rows, a: usize, b: usize| {
        r[a] |= 1 << b;
        r[b] |= 1 << a;
    };
    match s {
        OperationSpec::Delta1(d) => {
            for e in &d.ex_edges {
                r[e.lo()] &= !(1 << e.hi());
                r[e.hi()] &= !(1 << e.lo());
            }
            r.push(0);
            for &v in d.x_set.iter().chain([&d.y_vertex]) {
                join(&mut r, n, v);
            }
        }
        OperationSpec::Delta2(d) => {
            for e in d.ex_edges.iter().chain(&d.ey_edges) {
                r[e.lo()] &= !(1 << e.hi());
                r[e.hi()] &= !(1 << e.lo());
            }
            r.push(0);
            r.push(0);
            join(&mut r, n, n + 1);
            for &v in &d.x_set {
                join(&mut r, n, v);
            }
            for &v in &d.y_set {
                join(&mut r, n + 1, v);
            }
        }
    }
    graph(&r)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// Rejection-sampled random graph with brute-force connectivity at least 4.
pub fn random_four_connected(rng: &mut impl Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.6..0.95);
        let g = random_graph(rng, n, p);
        if g.min_degree() >= 4 && kappa(&g) >= 4 {
            return g;
        }
    }
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Every graph on `n` vertices with minimum degree at least 4 and
/// brute-force connectivity at least 4, one per isomorphism class.
pub fn four_connected_classes(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for sel in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::from_edges(n, edges).unwrap();
        if g.min_degree() < 4 || kappa(&g) < 4 {
            continue;
        }
        seen.entry(brute_canon(&g)).or_insert(g);
    }
    seen.into_values().collect()
}

fn missing_in(rows: &Rows, t: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if rows[t[i]] >> t[j] & 1 == 0 {
                out.push((t[i].min(t[j]), t[i].max(t[j])));
            }
        }
    }
    out
}

fn without(rows: &Rows, drop: &[usize], add: &[(usize, usize)]) -> Graph {
    let mut r = rows.clone();
    for &(a, b) in add {
        r[a] |= 1 << b;
        r[b] |= 1 << a;
    }
    let keep: Vec<usize> = (0..r.len()).filter(|v| !drop.contains(v)).collect();
    let out: Rows = keep
        .iter()
        .map(|&u| keep.iter().enumerate().filter(|&(_, &v)| r[u] >> v & 1 == 1).fold(0, |m, (j, _)| m | 1 << j))
        .collect();
    graph(&out)
}

/// Every graph one operation could have started from to produce `g`:
/// undo a single-vertex step at any degree-4 vertex, or a two-vertex step at
/// any adjacent pair of degree-4 vertices, restoring any nonempty set of
/// edges inside each triple.
pub fn inverse_hosts(g: &Graph) -> Vec<Graph> {
    let r = rows(g);
    let n = r.len();
    let nb = |v: usize| -> Vec<usize> { (0..n).filter(|&w| r[v] >> w & 1 == 1).collect() };
    let mut out = Vec::new();
    for x in (0..n).filter(|&x| g.degree(x) == 4) {
        for y in nb(x) {
            let t: Vec<usize> = nb(x).into_iter().filter(|&w| w != y).collect();
            let miss = missing_in(&r, &t);
            for sel in 1u32..1 << miss.len() {
                let add: Vec<_> = miss.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).map(|(_, &e)| e).collect();
                out.push(without(&r, &[x], &add));
            }
        }
    }
    for x in (0..n).filter(|&x| g.degree(x) == 4) {
        for y in nb(x).into_iter().filter(|&y| y > x && g.degree(y) == 4) {
            let tx: Vec<usize> = nb(x).into_iter().filter(|&w| w != y).collect();
            let ty: Vec<usize> = nb(y).into_iter().filter(|&w| w != x).collect();
            let (mx, my) = (missing_in(&r, &tx), missing_in(&r, &ty));
            let mut union: Vec<(usize, usize)> = mx.iter().chain(&my).copied().collect();
            union.sort_unstable();
            union.dedup();
            for sel in 1u32..1 << union.len() {
                let add: Vec<_> = union.iter().enumerate().filter(|(i, _)| sel >> i & 1 == 1).map(|(_, &e)| e).collect();
                if add.iter().any(|e| mx.contains(e)) && add.iter().any(|e| my.contains(e)) {
                    out.push(without(&r, &[x, y], &add));
                }
            }
        }
    }
    out
}
