mod common;

use unicon4::canon::are_isomorphic;
use unicon4::chording::{ChordRule, SearchBudget};
use unicon4::connectivity::is_uniform4;
use unicon4::construct::brute_force_uniform_graphs;
use unicon4::transform::{
    apply_operation, delta1_candidates, delta2_candidates, is_quasi_4_compatible, reduce_edge, validate_operation,
    OperationSpec, TransformError, ViolationWitness,
};
use unicon4::{fixtures, square_of_cycle, Delta1Spec, Delta2Spec, Edge, Graph};

fn uniform_hosts(max_n: usize) -> Vec<Graph> {
    (5..=max_n).flat_map(|n| brute_force_uniform_graphs(n).unwrap().into_values()).collect()
}

fn valid_specs(h: &Graph) -> Vec<OperationSpec> {
    delta1_candidates(h)
        .into_iter()
        .map(OperationSpec::Delta1)
        .chain(delta2_candidates(h).into_iter().map(OperationSpec::Delta2))
        .filter(|s| validate_operation(h, s).is_ok())
        .collect()
}

fn is_triangle(h: &Graph, t: [usize; 3]) -> bool {
    h.has_edge(t[0], t[1]) && h.has_edge(t[1], t[2]) && h.has_edge(t[0], t[2])
}

#[test]
fn applications_match_hand_construction() {
    for h in uniform_hosts(6) {
        for s in valid_specs(&h) {
            assert_eq!(apply_operation(&h, &s).unwrap(), common::apply(&h, &s), "{s:?}");
        }
    }
}

#[test]
fn violation_witnesses_check_out() {
    let budget = SearchBudget::default();
    let mut seen = 0;
    for h in uniform_hosts(6) {
        for s in valid_specs(&h) {
            let r = is_quasi_4_compatible(&h, &s, &budget).unwrap();
            assert_eq!(r.compatible, r.violation.is_none());
            let Some(v) = r.violation else { continue };
            seen += 1;
            match &v.witness {
                ViolationWitness::Chording(w) => {
                    let host = match v.predicate {
                        unicon4::transform::Predicate::EPlusQuasi3cc { added } => r.reduced.add_edges([added]).unwrap(),
                        _ => r.reduced.clone(),
                    };
                    w.validate(&host).unwrap();
                    assert_eq!((w.path[0], *w.path.last().unwrap()), v.pair);
                }
                ViolationWitness::QuasiChord(w) => w.validate(&r.reduced, ChordRule::default()).unwrap(),
            }
        }
    }
    assert!(seen > 0);
}

// Reducing the edge an operation created gives back the host whenever the
// host's triples were triangles, since the reduction completes them.
#[test]
fn reduction_undoes_an_operation_on_triangles() {
    let mut checked = 0;
    for h in uniform_hosts(7) {
        let n = h.n();
        for s in valid_specs(&h) {
            let (edge, triples) = match &s {
                OperationSpec::Delta1(d) => (Edge::new(n, d.y_vertex), vec![d.x_set]),
                OperationSpec::Delta2(d) => (Edge::new(n, n + 1), vec![d.x_set, d.y_set]),
            };
            if !triples.iter().all(|&t| is_triangle(&h, t)) {
                continue;
            }
            let g = apply_operation(&h, &s).unwrap();
            let r = reduce_edge(&g, edge).unwrap();
            assert!(common::brute_isomorphic(&r.graph, &h) || are_isomorphic(&r.graph, &h).unwrap(), "{s:?}");
            assert_eq!(r.graph, common::reduce(&g, edge));
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn invalid_specs_are_rejected_with_a_reason() {
    let c6 = square_of_cycle(6).unwrap();
    let d1 = |x: [usize; 3], y: usize, ex: Vec<(usize, usize)>| {
        OperationSpec::Delta1(Delta1Spec { x_set: x, y_vertex: y, ex_edges: ex.into_iter().map(|(a, b)| Edge::new(a, b)).collect() })
    };
    assert!(matches!(validate_operation(&c6, &d1([0, 1, 2], 1, vec![(0, 2)])), Err(TransformError::SpecInvalid(_))));
    assert!(matches!(validate_operation(&c6, &d1([0, 1, 2], 4, vec![])), Err(TransformError::SpecInvalid(_))));
    assert!(matches!(validate_operation(&c6, &d1([0, 1, 3], 4, vec![(0, 3)])), Err(TransformError::SpecInvalid(_))));
    assert!(matches!(validate_operation(&c6, &d1([0, 1, 9], 4, vec![(0, 1)])), Err(TransformError::SpecInvalid(_))));
    assert!(validate_operation(&c6, &d1([0, 1, 2], 4, vec![(0, 2)])).is_ok());
    let same = OperationSpec::Delta2(Delta2Spec {
        x_set: [0, 1, 2],
        y_set: [2, 1, 0],
        ex_edges: vec![Edge::new(0, 1)],
        ey_edges: vec![Edge::new(1, 2)],
    });
    assert!(matches!(validate_operation(&c6, &same), Err(TransformError::SpecInvalid(_))));
    let weak = fixtures::cycle(6);
    assert!(matches!(validate_operation(&weak, &d1([0, 1, 2], 4, vec![(0, 1)])), Err(TransformError::NotFourConnected { kappa: 2 })));
}

#[test]
fn outputs_stay_uniform_only_when_compatible() {
    let budget = SearchBudget::default();
    let k5 = fixtures::k5();
    let (mut yes, mut no) = (0, 0);
    for s in valid_specs(&k5) {
        let compat = is_quasi_4_compatible(&k5, &s, &budget).unwrap().compatible;
        let out = apply_operation(&k5, &s).unwrap();
        assert_eq!(compat, is_uniform4(&out));
        if out.n() <= 7 {
            assert_eq!(compat, common::uniform4(&out));
        }
        if compat { yes += 1 } else { no += 1 }
    }
    assert!(yes > 0 && no > 0);
}
