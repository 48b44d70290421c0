//! Exhaustive and grid-wide oracle runs, parallelized over cases.

use rayon::prelude::*;
use serde::Serialize;

use super::certify::{certify_measurement, certify_sequence, MeasurementCertificate, SequenceCertificate};
use super::lc::OrbitIndex;
use super::lc::DEFAULT_ORBIT_CAP;
use super::OracleError;
use crate::graph::{Graph, VertexId};
use crate::measurement::{measure, MeasurementSpec, PauliBasis};
use crate::network::QlanNetwork;
use crate::recipes::{self, RecipeKind, RecipeParams, Side};

/// Every labeled simple graph on vertices `0..n`, ordered by edge mask.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (a + 1..n as u32).map(move |b| (a, b))).collect();
    assert!(pairs.len() < 32, "too many graphs to enumerate");
    (0u32..1 << pairs.len())
        .map(|mask| {
            let mut g = Graph::with_vertices((0..n as u32).map(VertexId::plain));
            for (k, (a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(VertexId::plain(*a), VertexId::plain(*b)).expect("distinct");
                }
            }
            g
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MeasurementSuiteReport {
    pub max_vertices: usize,
    pub graphs: usize,
    pub cases: Vec<MeasurementCertificate>,
    pub failed: usize,
}

impl MeasurementSuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Certify every vertex and basis of every labeled graph with 1..=`nmax`
/// vertices. X measurements use the default `k0`.
pub fn measurement_suite(nmax: usize) -> Result<MeasurementSuiteReport, OracleError> {
    let graphs: Vec<Graph> = (1..=nmax).flat_map(all_graphs).collect();
    let specs: Vec<(usize, MeasurementSpec)> = graphs
        .iter()
        .enumerate()
        .flat_map(|(k, g)| {
            g.vertices()
                .flat_map(move |v| PauliBasis::ALL.into_iter().map(move |b| (k, MeasurementSpec { vertex: *v, basis: b, k0: None })))
                .collect::<Vec<_>>()
        })
        .collect();
    let cases: Vec<MeasurementCertificate> =
        specs.par_iter().map(|(k, spec)| certify_measurement(&graphs[*k], spec)).collect::<Result<_, _>>()?;
    let failed = cases.iter().filter(|c| !c.lc_equivalent).count();
    Ok(MeasurementSuiteReport { max_vertices: nmax, graphs: graphs.len(), cases, failed })
}

#[derive(Clone, Debug, Serialize)]
pub struct K0Failure {
    pub graph: Graph,
    pub vertex: VertexId,
    pub k0: VertexId,
    pub other_k0: VertexId,
}

#[derive(Clone, Debug, Serialize)]
pub struct K0SuiteReport {
    pub max_vertices: usize,
    pub comparisons: usize,
    pub failures: Vec<K0Failure>,
}

/// For every labeled graph with 1..=`nmax` vertices and every vertex of
/// degree at least two, check that the X rewrites for all choices of `k0`
/// are locally Clifford equivalent to the one with the smallest neighbor.
pub fn k0_independence_suite(nmax: usize) -> Result<K0SuiteReport, OracleError> {
    let graphs: Vec<Graph> = (1..=nmax).flat_map(all_graphs).collect();
    let per_graph: Vec<(usize, Vec<K0Failure>)> = graphs
        .par_iter()
        .map(|g| {
            let mut comparisons = 0;
            let mut failures = Vec::new();
            for v in g.vertices() {
                let nbrs: Vec<VertexId> = g.neighborhood(v)?.iter().copied().collect();
                let Some((first, rest)) = nbrs.split_first() else { continue };
                if rest.is_empty() {
                    continue;
                }
                let (base, _) = measure(g, &MeasurementSpec::x_with(*v, *first))?;
                let orbit = OrbitIndex::new(&base, DEFAULT_ORBIT_CAP)?;
                for k0 in rest {
                    let (other, _) = measure(g, &MeasurementSpec::x_with(*v, *k0))?;
                    comparisons += 1;
                    if !orbit.contains(&other)? {
                        failures.push(K0Failure { graph: g.clone(), vertex: *v, k0: *first, other_k0: *k0 });
                    }
                }
            }
            Ok((comparisons, failures))
        })
        .collect::<Result<_, OracleError>>()?;
    let comparisons = per_graph.iter().map(|(c, _)| c).sum();
    let failures = per_graph.into_iter().flat_map(|(_, f)| f).collect();
    Ok(K0SuiteReport { max_vertices: nmax, comparisons, failures })
}

/// One point of the recipe grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecipeCase {
    pub n1: usize,
    pub n2: usize,
    pub kind: RecipeKind,
    pub params: RecipeParams,
}

/// All recipes, both sides and every valid client choice for QLAN sizes in
/// `nmin..=nmax`.
pub fn recipe_cases(nmin: usize, nmax: usize) -> Vec<RecipeCase> {
    let mut out = Vec::new();
    for n1 in nmin..=nmax {
        for n2 in nmin..=nmax {
            for kind in RecipeKind::ALL {
                for side in [Side::Right, Side::Left] {
                    let (n_src, n_tgt) = match side {
                        Side::Right => (n1, n2),
                        Side::Left => (n2, n1),
                    };
                    let js: Vec<Option<u32>> =
                        if kind.needs_client_j() { (1..n_src as u32).map(Some).collect() } else { vec![None] };
                    let is: Vec<Option<u32>> =
                        if kind.needs_client_i() { (1..n_tgt as u32).map(Some).collect() } else { vec![None] };
                    for &client_j in &js {
                        for &client_i in &is {
                            let params = RecipeParams { target_side: side, client_j, client_i };
                            out.push(RecipeCase { n1, n2, kind, params });
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RecipeCaseReport {
    #[serde(flatten)]
    pub case: RecipeCase,
    pub matched: bool,
    /// Present when the case was also run on the stabilizer oracle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lc_equivalent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branches: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit_size: Option<usize>,
}

impl RecipeCaseReport {
    pub fn passed(&self) -> bool {
        self.matched && self.lc_equivalent != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecipeSuiteReport {
    pub nmax: usize,
    pub cases: Vec<RecipeCaseReport>,
    pub failed: usize,
}

impl RecipeSuiteReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// Run a recipe's plan on the tableau across all outcome combinations.
pub fn certify_recipe(net: &QlanNetwork, kind: RecipeKind, params: &RecipeParams) -> Result<SequenceCertificate, OracleError> {
    let base = recipes::base_graph(net, kind, params)?;
    let plan = recipes::plan(net, kind, params)?;
    certify_sequence(&base, &plan)
}

fn run_case(case: &RecipeCase, oracle_qubits: usize) -> Result<RecipeCaseReport, OracleError> {
    let net = QlanNetwork::build(case.n1, case.n2)
        .and_then(|n| n.merge_remote_cz())
        .map_err(|e| OracleError::Recipe(Box::new(e.into())))?;
    let report = recipes::apply(&net, case.kind, &case.params)?;
    let mut out = RecipeCaseReport { case: *case, matched: report.matched, lc_equivalent: None, branches: None, orbit_size: None };
    if case.n1 + case.n2 <= oracle_qubits {
        let cert = certify_recipe(&net, case.kind, &case.params)?;
        out.lc_equivalent = Some(cert.lc_equivalent);
        out.branches = Some(cert.leaves.len());
        out.orbit_size = Some(cert.orbit_size);
    }
    Ok(out)
}

/// Apply every recipe on the grid `2..=nmax` and compare with the closed
/// forms. Cases with at most `oracle_qubits` qubits are also certified on
/// the stabilizer oracle.
pub fn recipe_suite(nmax: usize, oracle_qubits: usize) -> Result<RecipeSuiteReport, OracleError> {
    let cases: Vec<RecipeCaseReport> =
        recipe_cases(2, nmax).par_iter().map(|c| run_case(c, oracle_qubits)).collect::<Result<_, _>>()?;
    let failed = cases.iter().filter(|c| !c.passed()).count();
    Ok(RecipeSuiteReport { nmax, cases, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        assert_eq!(all_graphs(1).len(), 1);
        assert_eq!(all_graphs(3).len(), 8);
        assert_eq!(all_graphs(4).len(), 64);
        assert_eq!(all_graphs(0).len(), 1);
    }

    #[test]
    fn z_measurements_certify_up_to_four() {
        for n in 1..=4 {
            for g in all_graphs(n) {
                for v in g.vertices() {
                    assert!(certify_measurement(&g, &MeasurementSpec::z(*v)).unwrap().lc_equivalent);
                }
            }
        }
    }

    #[test]
    fn small_measurement_suite_passes() {
        let report = measurement_suite(3).unwrap();
        assert!(report.passed());
        assert_eq!(report.graphs, 1 + 2 + 8);
        assert_eq!(report.cases.len(), 3 + 2 * 2 * 3 + 8 * 3 * 3);
    }

    #[test]
    fn recipe_case_grid_size() {
        // n1 = n2 = 2: one client per QLAN, so every choice is forced.
        assert_eq!(recipe_cases(2, 2).len(), 9 * 2);
        let cases = recipe_cases(3, 3);
        let double = cases.iter().filter(|c| c.kind == RecipeKind::DoubleRoleDelegation).count();
        assert_eq!(double, 2 * 2 * 2);
    }
}
