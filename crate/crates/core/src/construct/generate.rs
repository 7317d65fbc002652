use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ConstructError;
use crate::canon::{canonical_form, CanonicalCert};
use crate::chording::{SearchBudget, Semantics};
use crate::connectivity::is_uniform4;
use crate::graph::{square_of_cycle, Graph};
use crate::transform::{
    delta1_candidates, delta2_candidates, is_quasi_4_compatible_with, FourConnected, OperationSpec,
};

#[derive(Clone, Debug)]
pub struct GenerateOptions {
    pub budget: SearchBudget,
    pub semantics: Semantics,
    /// When false every valid spec is applied whether or not its set is
    /// compatible. Used to check that reports expose the difference.
    pub check_compatibility: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions { budget: SearchBudget::default(), semantics: Semantics::default(), check_compatibility: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub specs_considered: usize,
    pub specs_valid: usize,
    /// New isomorphism classes whose specs went through the compatibility test.
    pub classes_tested: usize,
    pub compatibility_checks: usize,
    pub budget_exhausted: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerationReport {
    pub n_max: usize,
    pub by_order: BTreeMap<usize, BTreeSet<CanonicalCert>>,
    pub stats: GenerationStats,
    /// Set when some class could not be decided within the search budget.
    pub partial: bool,
    /// Generated graphs that fail the independent uniformity test.
    pub unsound: Vec<CanonicalCert>,
    /// Canonical representatives, keyed by certificate.
    #[serde(skip)]
    pub graphs: BTreeMap<CanonicalCert, Graph>,
}

impl GenerationReport {
    pub fn all_certs(&self) -> BTreeSet<CanonicalCert> {
        self.by_order.values().flatten().cloned().collect()
    }

    pub fn certs_of_order(&self, n: usize) -> BTreeSet<CanonicalCert> {
        self.by_order.get(&n).cloned().unwrap_or_default()
    }
}

/// Every uniformly 4-connected graph on at most `n_max` vertices, as the
/// closure of `{C₅², C₆²}` under compatible operations.
pub fn generate_all(n_max: usize) -> Result<GenerationReport, ConstructError> {
    generate_with(n_max, &GenerateOptions::default())
}

struct Outcome {
    cert: CanonicalCert,
    graph: Graph,
    /// Valid specs on the host producing this class, in enumeration order.
    specs: Vec<OperationSpec>,
}

pub fn generate_with(n_max: usize, opts: &GenerateOptions) -> Result<GenerationReport, ConstructError> {
    if !(5..=9).contains(&n_max) {
        return Err(ConstructError::OrderOutOfRange { n: n_max, min: 5, max: 9 });
    }
    let mut levels: BTreeMap<usize, BTreeMap<CanonicalCert, Graph>> = BTreeMap::new();
    for n in [5, 6].into_iter().filter(|&n| n <= n_max) {
        let f = canonical_form(&square_of_cycle(n).expect("order at least 5"))?;
        levels.entry(n).or_default().insert(f.cert, f.graph);
    }
    let mut stats = GenerationStats::default();
    let mut partial = false;
    for n in 5..=n_max {
        let hosts: Vec<Graph> = levels.get(&n).map(|l| l.values().cloned().collect()).unwrap_or_default();
        for h in hosts {
            let mut specs: Vec<OperationSpec> = Vec::new();
            if n < n_max {
                specs.extend(delta1_candidates(&h).into_iter().map(OperationSpec::Delta1));
            }
            if n + 1 < n_max {
                specs.extend(delta2_candidates(&h).into_iter().map(OperationSpec::Delta2));
            }
            stats.specs_considered += specs.len();
            let outcomes = classify(&h, specs, &levels)?;
            stats.specs_valid += outcomes.iter().map(|o| o.specs.len()).sum::<usize>();
            stats.classes_tested += outcomes.len();
            let verdicts: Vec<Result<(bool, usize, bool), ConstructError>> = outcomes
                .par_iter()
                .map(|o| decide(&h, &o.specs, opts))
                .collect();
            for (o, v) in outcomes.into_iter().zip(verdicts) {
                let (accepted, checks, exhausted) = v?;
                stats.compatibility_checks += checks;
                if exhausted && !accepted {
                    stats.budget_exhausted += 1;
                    partial = true;
                }
                if accepted {
                    levels.entry(o.graph.n()).or_default().insert(o.cert, o.graph);
                }
            }
        }
    }
    let mut by_order = BTreeMap::new();
    let mut graphs = BTreeMap::new();
    let mut unsound = Vec::new();
    for (n, level) in levels {
        by_order.insert(n, level.keys().cloned().collect());
        for (cert, g) in level {
            if !is_uniform4(&g) {
                unsound.push(cert.clone());
            }
            graphs.insert(cert, g);
        }
    }
    Ok(GenerationReport { n_max, by_order, stats, partial, unsound, graphs })
}

/// Applies every valid spec and groups the results by isomorphism class,
/// dropping classes already generated.
fn classify(
    h: &Graph,
    specs: Vec<OperationSpec>,
    known: &BTreeMap<usize, BTreeMap<CanonicalCert, Graph>>,
) -> Result<Vec<Outcome>, ConstructError> {
    let host = FourConnected::assume(h);
    let applied: Vec<Result<Option<(CanonicalCert, Graph, OperationSpec)>, ConstructError>> = specs
        .into_par_iter()
        .map(|s| {
            let Ok(g) = host.apply(&s) else { return Ok(None) };
            let f = canonical_form(&g)?;
            let seen = known.get(&g.n()).is_some_and(|l| l.contains_key(&f.cert));
            Ok((!seen).then_some((f.cert, f.graph, s)))
        })
        .collect();
    let mut groups: BTreeMap<CanonicalCert, Outcome> = BTreeMap::new();
    for r in applied {
        if let Some((cert, graph, spec)) = r? {
            groups
                .entry(cert.clone())
                .or_insert_with(|| Outcome { cert, graph, specs: Vec::new() })
                .specs
                .push(spec);
        }
    }
    Ok(groups.into_values().collect())
}

/// Accept the class if some spec producing it is compatible. Returns
/// (accepted, checks run, some check ran out of budget).
fn decide(h: &Graph, specs: &[OperationSpec], opts: &GenerateOptions) -> Result<(bool, usize, bool), ConstructError> {
    if !opts.check_compatibility {
        return Ok((true, 0, false));
    }
    let mut exhausted = false;
    for (i, s) in specs.iter().enumerate() {
        match is_quasi_4_compatible_with(h, s, &opts.budget, &opts.semantics) {
            Ok(r) if r.compatible => return Ok((true, i + 1, exhausted)),
            Ok(_) => {}
            Err(e) if e.is_budget_exceeded() => exhausted = true,
            Err(e) => return Err(e.into()),
        }
    }
    Ok((false, specs.len(), exhausted))
}
