use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decompose::{decompose_with, DecomposeOptions};
use super::generate::{generate_with, GenerateOptions};
use super::oracle::brute_force_uniform_graphs;
use super::trace::replay_with;
use super::ConstructError;
use crate::canon::{are_isomorphic, CanonicalCert};
use crate::connectivity::is_uniform4;
use crate::graph::{Edge, Graph, Vertex};
use crate::transform::{reduce_edge, removable_edges};

/// Decomposition round trip for one oracle graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCheck {
    pub cert: CanonicalCert,
    pub order: usize,
    pub steps: Option<usize>,
    pub round_trip: bool,
    pub budget_exceeded: bool,
    pub error: Option<String>,
    pub micros: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderSummary {
    pub order: usize,
    pub oracle: usize,
    pub generated: usize,
    pub only_oracle: Vec<CanonicalCert>,
    pub only_generated: Vec<CanonicalCert>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n_min: usize,
    pub n_max: usize,
    pub orders: Vec<OrderSummary>,
    pub oracle: BTreeSet<CanonicalCert>,
    pub generated: BTreeSet<CanonicalCert>,
    pub generation_partial: bool,
    pub checks: Vec<GraphCheck>,
    /// Edges where the claim checked by `case3_claim_violations` fails.
    pub case3_violations: Vec<(CanonicalCert, Edge)>,
    /// Sets equal and every oracle graph decomposed and replayed.
    pub holds: bool,
}

/// Removable edges `xy` with `d(x) = d(y) = 4` and both `G[N(x)∖y]`,
/// `G[N(y)∖x]` paths on three vertices for which `G ⊖ xy` is not uniformly
/// 4-connected. Expected to be empty.
pub fn case3_claim_violations(g: &Graph) -> Vec<Edge> {
    let Ok(removable) = removable_edges(g) else { return Vec::new() };
    let induced_edges = |t: Vec<Vertex>| {
        (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| g.has_edge(t[i], t[j])).count()
    };
    removable
        .into_iter()
        .filter(|e| {
            let (x, y) = e.ends();
            if g.degree(x) != 4 || g.degree(y) != 4 {
                return false;
            }
            let xs: Vec<Vertex> = g.neighbors(x).filter(|&v| v != y).collect();
            let ys: Vec<Vertex> = g.neighbors(y).filter(|&v| v != x).collect();
            induced_edges(xs) == 2
                && induced_edges(ys) == 2
                && !reduce_edge(g, *e).map(|r| is_uniform4(&r.graph)).unwrap_or(false)
        })
        .collect()
}

impl VerificationReport {
    pub fn symmetric_difference(&self) -> Vec<CanonicalCert> {
        self.oracle.symmetric_difference(&self.generated).cloned().collect()
    }
}

pub fn verify_theorem(n_max: usize) -> Result<VerificationReport, ConstructError> {
    verify_with(n_max, &GenerateOptions::default(), &DecomposeOptions::default())
}

pub fn verify_with(
    n_max: usize,
    gen: &GenerateOptions,
    dec: &DecomposeOptions,
) -> Result<VerificationReport, ConstructError> {
    if !(5..=8).contains(&n_max) {
        return Err(ConstructError::OrderOutOfRange { n: n_max, min: 5, max: 8 });
    }
    let generated_report = generate_with(n_max, gen)?;
    let mut orders = Vec::new();
    let mut oracle = BTreeSet::new();
    let mut graphs = Vec::new();
    for n in 5..=n_max {
        let found = brute_force_uniform_graphs(n)?;
        let o: BTreeSet<CanonicalCert> = found.keys().cloned().collect();
        let g = generated_report.certs_of_order(n);
        orders.push(OrderSummary {
            order: n,
            oracle: o.len(),
            generated: g.len(),
            only_oracle: o.difference(&g).cloned().collect(),
            only_generated: g.difference(&o).cloned().collect(),
        });
        oracle.extend(o);
        graphs.extend(found);
    }
    let checks: Vec<GraphCheck> = graphs
        .par_iter()
        .map(|(cert, g)| {
            let start = Instant::now();
            let mut check = GraphCheck {
                cert: cert.clone(),
                order: g.n(),
                steps: None,
                round_trip: false,
                budget_exceeded: false,
                error: None,
                micros: 0,
            };
            match decompose_with(g, dec) {
                Ok(t) => {
                    check.steps = Some(t.steps.len());
                    match replay_with(&t, &dec.budget, &dec.semantics) {
                        Ok(r) => check.round_trip = are_isomorphic(&r, g).unwrap_or(false),
                        Err(e) => check.error = Some(e.to_string()),
                    }
                }
                Err(e) => {
                    check.budget_exceeded = matches!(e, ConstructError::BudgetExceeded { .. });
                    check.error = Some(e.to_string());
                }
            }
            check.micros = start.elapsed().as_micros();
            check
        })
        .collect();
    let case3_violations = graphs
        .iter()
        .flat_map(|(c, g)| case3_claim_violations(g).into_iter().map(move |e| (c.clone(), e)))
        .collect();
    let generated = generated_report.all_certs();
    let holds = oracle == generated && checks.iter().all(|c| c.round_trip) && !generated_report.partial;
    Ok(VerificationReport {
        n_min: 5,
        n_max,
        orders,
        oracle,
        generated,
        generation_partial: generated_report.partial,
        checks,
        case3_violations,
        holds,
    })
}
