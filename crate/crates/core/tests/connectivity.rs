mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unicon4::connectivity::{
    disjoint_paths, ends, fragments, is_uniform4, minimum_cut, minimum_cuts, separating_cut, Witness,
};
use unicon4::{connectivity_report, fixtures, is_uniformly_4_connected, local_connectivity, square_of_cycle, vertex_connectivity, Graph};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0.2f64..0.95).prop_map(|(n, seed, p)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_graph(&mut rng, n, p)
    })
}

fn check_paths(g: &Graph, u: usize, v: usize, paths: &[Vec<usize>]) {
    let mut used = 0u32;
    for p in paths {
        assert_eq!((p[0], *p.last().unwrap()), (u, v));
        assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])), "{p:?} is not a path");
        for &w in &p[1..p.len() - 1] {
            assert_eq!(used >> w & 1, 0, "paths share {w}");
            used |= 1 << w;
        }
    }
    let mut distinct = paths.to_vec();
    distinct.sort();
    distinct.dedup();
    assert_eq!(distinct.len(), paths.len());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn local_connectivity_matches_packing(g in arb_graph(7)) {
        let r = common::rows(&g);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let k = local_connectivity(&g, u, v).unwrap();
                prop_assert_eq!(k, common::disjoint_path_packing(&r, u, v));
                let paths = disjoint_paths(&g, u, v).unwrap();
                prop_assert_eq!(paths.len(), k);
                check_paths(&g, u, v, &paths);
            }
        }
    }

    #[test]
    fn vertex_connectivity_matches_subset_search(g in arb_graph(8)) {
        let k = vertex_connectivity(&g).unwrap();
        prop_assert_eq!(k, common::kappa(&g));
        if !g.is_complete() {
            let cut = minimum_cut(&g).unwrap();
            prop_assert_eq!(cut.len(), k);
            let left = (0..g.n()).filter(|v| !cut.contains(v)).fold(0u32, |m, v| m | 1 << v);
            prop_assert!(!common::connected(&common::rows(&g), left));
        }
    }

    #[test]
    fn separating_cuts_separate(g in arb_graph(7)) {
        let r = common::rows(&g);
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.has_edge(u, v) {
                    continue;
                }
                let cut = separating_cut(&g, u, v).unwrap();
                prop_assert_eq!(cut.len(), local_connectivity(&g, u, v).unwrap());
                let left = (0..g.n()).filter(|w| !cut.contains(w)).fold(0u32, |m, w| m | 1 << w);
                let comps = common::components(&r, left);
                prop_assert!(comps.iter().all(|c| c >> u & 1 == 0 || c >> v & 1 == 0));
            }
        }
    }
}

#[test]
fn base_graphs_are_uniform() {
    for n in [5, 6] {
        let g = square_of_cycle(n).unwrap();
        let r = connectivity_report(&g).unwrap();
        assert_eq!((r.kappa, r.min_local, r.max_local, r.uniform4), (4, 4, 4, true));
        assert!(r.witness.is_none());
        assert!(common::uniform4(&g));
    }
}

#[test]
fn k6_has_a_five_fan() {
    let g = fixtures::k6();
    let v = is_uniformly_4_connected(&g).unwrap();
    assert!(!v.uniform);
    match v.witness.unwrap() {
        Witness::Fan { u, v, paths } => {
            assert_eq!(paths.len(), 5);
            check_paths(&g, u, v, &paths);
        }
        w => panic!("expected a fan, got {w:?}"),
    }
}

#[test]
fn low_connectivity_yields_a_cut() {
    let g = square_of_cycle(7).unwrap().remove_edges([(0, 1)]).unwrap();
    let v = is_uniformly_4_connected(&g).unwrap();
    assert!(!v.uniform);
    let Some(Witness::Cut { vertices }) = v.witness else { panic!("expected a cut") };
    assert_eq!(vertices.len(), common::kappa(&g));
    assert!(is_uniformly_4_connected(&fixtures::complete(4)).is_err());
}

#[test]
fn uniform_verdict_matches_packing_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let g = common::random_four_connected(&mut rng, 7);
        assert_eq!(is_uniform4(&g), common::uniform4(&g));
    }
}

#[test]
fn ends_are_minimal_fragments() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let g = common::random_graph(&mut rng, 7, 0.55);
        if g.is_complete() || !g.is_connected() {
            continue;
        }
        let cuts = minimum_cuts(&g).unwrap();
        let k = common::kappa(&g);
        assert!(cuts.iter().all(|c| c.len() == k));
        let all: Vec<_> = cuts.iter().flat_map(|c| fragments(&g, c).unwrap()).collect();
        let es = ends(&g).unwrap();
        assert!(!es.is_empty());
        for e in &es {
            assert!(all.contains(&e.0));
            let body: u32 = e.0.body.iter().fold(0, |m, v| m | 1 << v);
            for f in &all {
                let fb: u32 = f.body.iter().fold(0, |m, v| m | 1 << v);
                assert!(fb == body || fb & !body != 0, "{f:?} is strictly inside end {e:?}");
            }
        }
    }
}
