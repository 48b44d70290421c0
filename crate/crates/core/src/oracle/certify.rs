//! Certification of rewrite results against simulated measurements.

use serde::Serialize;

use super::extract::{align_to_graph, extract_graph};
use super::lc::{OrbitIndex, DEFAULT_ORBIT_CAP};
use super::pauli::Sign;
use super::tableau::{Probability, StabilizerTableau};
use super::{OracleError, ORACLE_LIMIT};
use crate::graph::Graph;
use crate::measurement::{measure, measure_sequence, MeasurementSpec};

/// Largest graph accepted by [`certify_measurement`].
pub const CERTIFY_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub outcome: Sign,
    pub probability: Probability,
    /// Graph extracted from the residual state after discarding the measured qubit.
    pub extracted: Graph,
    pub lc_equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeasurementCertificate {
    pub graph: Graph,
    pub spec: MeasurementSpec,
    pub rewrite: Graph,
    pub branches: Vec<BranchReport>,
    pub lc_equivalent: bool,
    pub orbit_size: usize,
}

/// Measure `spec.vertex` of `|g⟩` on the tableau, keep every outcome, and
/// check each residual state is locally Clifford equivalent to the rewrite
/// engine's output.
pub fn certify_measurement(g: &Graph, spec: &MeasurementSpec) -> Result<MeasurementCertificate, OracleError> {
    if g.vertex_count() > CERTIFY_LIMIT {
        return Err(OracleError::TooLarge { what: "graph", size: g.vertex_count(), limit: CERTIFY_LIMIT });
    }
    let (rewrite, _) = measure(g, spec)?;
    let orbit = OrbitIndex::new(&rewrite, DEFAULT_ORBIT_CAP)?;
    let t = StabilizerTableau::from_graph(g)?;
    let mut branches = Vec::new();
    for b in t.measure_pauli(&spec.vertex, spec.basis)? {
        let residual = b.tableau.discard_qubit(&spec.vertex)?;
        let (extracted, _) = extract_graph(&residual);
        let lc_equivalent = orbit.contains(&extracted)?;
        branches.push(BranchReport { outcome: b.outcome, probability: b.probability, extracted, lc_equivalent });
    }
    Ok(MeasurementCertificate {
        graph: g.clone(),
        spec: *spec,
        lc_equivalent: branches.iter().all(|b| b.lc_equivalent),
        rewrite,
        branches,
        orbit_size: orbit.len(),
    })
}

/// One combination of outcomes through a measurement sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeafReport {
    pub outcomes: Vec<Sign>,
    /// Graph extracted from the final residual state, or from the state at
    /// the step where alignment failed.
    pub extracted: Graph,
    pub lc_equivalent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceCertificate {
    pub graph: Graph,
    pub plan: Vec<MeasurementSpec>,
    pub rewrite: Graph,
    pub leaves: Vec<LeafReport>,
    pub lc_equivalent: bool,
    pub orbit_size: usize,
}

struct Walk<'a> {
    plan: &'a [MeasurementSpec],
    /// Rewrite-engine graph after each prefix of the plan.
    steps: Vec<Graph>,
    orbit: OrbitIndex,
    leaves: Vec<LeafReport>,
}

impl Walk<'_> {
    fn visit(&mut self, k: usize, t: StabilizerTableau, outcomes: &mut Vec<Sign>) -> Result<(), OracleError> {
        if k == self.plan.len() {
            let (extracted, _) = extract_graph(&t);
            let lc_equivalent = self.orbit.contains(&extracted)?;
            self.leaves.push(LeafReport { outcomes: outcomes.clone(), extracted, lc_equivalent });
            return Ok(());
        }
        let spec = &self.plan[k];
        for b in t.measure_pauli(&spec.vertex, spec.basis)? {
            outcomes.push(b.outcome);
            let residual = b.tableau.discard_qubit(&spec.vertex)?;
            let next = if k + 1 < self.plan.len() { align_to_graph(&residual, &self.steps[k + 1])? } else { Some(residual.clone()) };
            match next {
                Some(next) => self.visit(k + 1, next, outcomes)?,
                None => {
                    let (extracted, _) = extract_graph(&residual);
                    self.leaves.push(LeafReport { outcomes: outcomes.clone(), extracted, lc_equivalent: false });
                }
            }
            outcomes.pop();
        }
        Ok(())
    }
}

/// Run a whole measurement sequence on the tableau, following every
/// outcome combination. Between steps the state is brought onto the rewrite
/// engine's intermediate graph by local Cliffords, as the protocol's
/// corrections would; a step whose state cannot be aligned fails its leaf.
pub fn certify_sequence(g: &Graph, plan: &[MeasurementSpec]) -> Result<SequenceCertificate, OracleError> {
    if g.vertex_count() > ORACLE_LIMIT {
        return Err(OracleError::TooLarge { what: "graph", size: g.vertex_count(), limit: ORACLE_LIMIT });
    }
    let mut steps = vec![g.clone()];
    for spec in plan {
        let (next, _) = measure(steps.last().expect("non-empty"), spec)?;
        steps.push(next);
    }
    let (rewrite, _) = measure_sequence(g, plan)?;
    debug_assert_eq!(Some(&rewrite), steps.last());
    let orbit = OrbitIndex::new(&rewrite, DEFAULT_ORBIT_CAP)?;
    let mut walk = Walk { plan, steps, orbit, leaves: Vec::new() };
    walk.visit(0, StabilizerTableau::from_graph(g)?, &mut Vec::new())?;
    Ok(SequenceCertificate {
        graph: g.clone(),
        plan: plan.to_vec(),
        lc_equivalent: walk.leaves.iter().all(|l| l.lc_equivalent),
        orbit_size: walk.orbit.len(),
        leaves: walk.leaves,
        rewrite,
    })
}
