//! Graph rewrites induced by single-qubit Pauli measurements on graph states.
//!
//! Measuring vertex `i` of `|G⟩` leaves the unmeasured qubits in a state that is
//! local-unitary equivalent to `|G'⟩`, where
//!
//! * Z: `G' = G - i`
//! * Y: `G' = τ_i(G) - i`
//! * X: `G' = τ_k0(τ_i(τ_k0(G)) - i)` for a neighbor `k0` of `i`
//!
//! The rewrite does not depend on the outcome sign; outcome branching is only
//! simulated by the stabilizer oracle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};

/// Soft cap on graph size for the rewrite engine.
pub const DEFAULT_REWRITE_LIMIT: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PauliBasis {
    X,
    Y,
    Z,
}

impl PauliBasis {
    pub const ALL: [PauliBasis; 3] = [PauliBasis::X, PauliBasis::Y, PauliBasis::Z];
}

impl fmt::Display for PauliBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PauliBasis::X => "X",
            PauliBasis::Y => "Y",
            PauliBasis::Z => "Z",
        };
        f.write_str(s)
    }
}

impl FromStr for PauliBasis {
    type Err = MeasurementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "X" | "x" => Ok(PauliBasis::X),
            "Y" | "y" => Ok(PauliBasis::Y),
            "Z" | "z" => Ok(PauliBasis::Z),
            other => Err(MeasurementError::BadBasis(other.to_string())),
        }
    }
}

/// One Pauli measurement. `k0` may only be set for X measurements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MeasurementSpec {
    pub vertex: VertexId,
    pub basis: PauliBasis,
    pub k0: Option<VertexId>,
}

impl MeasurementSpec {
    pub fn z(vertex: VertexId) -> Self {
        Self { vertex, basis: PauliBasis::Z, k0: None }
    }

    pub fn y(vertex: VertexId) -> Self {
        Self { vertex, basis: PauliBasis::Y, k0: None }
    }

    /// X measurement with `k0` left to [`default_k0`].
    pub fn x(vertex: VertexId) -> Self {
        Self { vertex, basis: PauliBasis::X, k0: None }
    }

    pub fn x_with(vertex: VertexId, k0: VertexId) -> Self {
        Self { vertex, basis: PauliBasis::X, k0: Some(k0) }
    }

    pub fn new(vertex: VertexId, basis: PauliBasis, k0: Option<VertexId>) -> Result<Self, MeasurementError> {
        let spec = Self { vertex, basis, k0 };
        spec.check_shape()?;
        Ok(spec)
    }

    fn check_shape(&self) -> Result<(), MeasurementError> {
        match (self.basis, self.k0) {
            (PauliBasis::X, _) | (_, None) => Ok(()),
            (basis, Some(_)) => Err(MeasurementError::K0OnNonX { vertex: self.vertex, basis }),
        }
    }
}

impl fmt::Display for MeasurementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k0 {
            Some(k0) => write!(f, "{} {} (k0={})", self.basis, self.vertex, k0),
            None => write!(f, "{} {}", self.basis, self.vertex),
        }
    }
}

/// One applied measurement: the request, the `k0` actually used, and the
/// vertex count before the measurement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub spec: MeasurementSpec,
    pub resolved_k0: Option<VertexId>,
    pub vertices_before: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MeasurementTrace {
    pub entries: Vec<TraceEntry>,
}

impl MeasurementTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One JSON object per line, each tagged with its step index.
    pub fn to_json_lines(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            step: usize,
            #[serde(flatten)]
            entry: &'a TraceEntry,
        }
        self.entries
            .iter()
            .enumerate()
            .map(|(step, entry)| serde_json::to_string(&Line { step, entry }).expect("plain data") + "\n")
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasurementError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("k0 = {k0} is not a neighbor of measured vertex {vertex}")]
    InvalidK0 { vertex: VertexId, k0: VertexId },
    #[error("k0 given for a {basis} measurement on {vertex}; only X measurements take k0")]
    K0OnNonX { vertex: VertexId, basis: PauliBasis },
    #[error("graph has {vertices} vertices, above the rewrite limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("unknown Pauli basis {0:?}")]
    BadBasis(String),
    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<MeasurementError>,
    },
}

/// Smallest neighbor of `v`, or `None` when `v` is isolated.
pub fn default_k0(g: &Graph, v: &VertexId) -> Result<Option<VertexId>, GraphError> {
    Ok(g.neighborhood(v)?.iter().next().copied())
}

/// Apply one measurement rewrite.
pub fn measure(g: &Graph, spec: &MeasurementSpec) -> Result<(Graph, TraceEntry), MeasurementError> {
    measure_with_limit(g, spec, DEFAULT_REWRITE_LIMIT)
}

pub fn measure_with_limit(
    g: &Graph,
    spec: &MeasurementSpec,
    limit: usize,
) -> Result<(Graph, TraceEntry), MeasurementError> {
    spec.check_shape()?;
    if g.vertex_count() > limit {
        return Err(MeasurementError::TooLarge { vertices: g.vertex_count(), limit });
    }
    let i = &spec.vertex;
    let nbrs = g.neighborhood(i)?;
    let mut resolved_k0 = None;
    let out = match spec.basis {
        PauliBasis::Z => g.delete_vertex(i)?,
        PauliBasis::Y => g.local_complement(i)?.delete_vertex(i)?,
        PauliBasis::X => {
            let k0 = match spec.k0 {
                Some(k0) if nbrs.contains(&k0) => Some(k0),
                Some(k0) => return Err(MeasurementError::InvalidK0 { vertex: *i, k0 }),
                None => nbrs.iter().next().copied(),
            };
            match k0 {
                // isolated vertex: the state factorizes, so the rewrite is plain deletion
                None => g.delete_vertex(i)?,
                Some(k0) => {
                    resolved_k0 = Some(k0);
                    g.local_complement(&k0)?
                        .local_complement(i)?
                        .delete_vertex(i)?
                        .local_complement(&k0)?
                }
            }
        }
    };
    let entry = TraceEntry { spec: *spec, resolved_k0, vertices_before: g.vertex_count() };
    Ok((out, entry))
}

/// Left fold of [`measure`] over `specs`.
pub fn measure_sequence(g: &Graph, specs: &[MeasurementSpec]) -> Result<(Graph, MeasurementTrace), MeasurementError> {
    let mut cur = g.clone();
    let mut trace = MeasurementTrace::default();
    for (step, spec) in specs.iter().enumerate() {
        let (next, entry) =
            measure(&cur, spec).map_err(|e| MeasurementError::AtStep { step, source: Box::new(e) })?;
        trace.entries.push(entry);
        cur = next;
    }
    Ok((cur, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{make_topology, Topology};
    use std::collections::BTreeSet;

    fn v(i: u32) -> VertexId {
        VertexId::plain(i)
    }

    #[test]
    fn z_on_leaf_leaves_smaller_star() {
        let s4 = make_topology(&Topology::Star { n: 4 }).unwrap();
        let (g, entry) = measure(&s4, &MeasurementSpec::z(v(3))).unwrap();
        let leaves = BTreeSet::from([v(1), v(2)]);
        assert_eq!(g, crate::topology::star(v(0), &leaves).unwrap());
        assert_eq!(entry.vertices_before, 4);
        assert_eq!(entry.resolved_k0, None);
    }

    #[test]
    fn y_on_star_center_gives_complete_graph_on_leaves() {
        let s5 = make_topology(&Topology::Star { n: 5 }).unwrap();
        let (g, _) = measure(&s5, &MeasurementSpec::y(v(0))).unwrap();
        let leaves: BTreeSet<VertexId> = (1..5).map(v).collect();
        assert_eq!(g, crate::topology::complete(&leaves));
    }

    #[test]
    fn x_on_star_center_recenters_at_k0() {
        let s5 = make_topology(&Topology::Star { n: 5 }).unwrap();
        let (g, entry) = measure(&s5, &MeasurementSpec::x_with(v(0), v(3))).unwrap();
        let rest = BTreeSet::from([v(1), v(2), v(4)]);
        assert_eq!(g, crate::topology::star(v(3), &rest).unwrap());
        assert_eq!(entry.resolved_k0, Some(v(3)));
    }

    #[test]
    fn x_default_k0_is_smallest_neighbor() {
        let s4 = make_topology(&Topology::Star { n: 4 }).unwrap();
        let (_, entry) = measure(&s4, &MeasurementSpec::x(v(0))).unwrap();
        assert_eq!(entry.resolved_k0, Some(v(1)));
    }

    #[test]
    fn x_on_isolated_vertex_is_deletion() {
        let g = Graph::from_edges([v(1), v(2), v(3)], [(v(1), v(2))]).unwrap();
        let (out, entry) = measure(&g, &MeasurementSpec::x(v(3))).unwrap();
        assert_eq!(out, g.delete_vertex(&v(3)).unwrap());
        assert_eq!(entry.resolved_k0, None);
    }

    #[test]
    fn measurement_errors() {
        let p3 = make_topology(&Topology::Path { n: 3 }).unwrap();
        assert_eq!(
            measure(&p3, &MeasurementSpec::x_with(v(0), v(2))),
            Err(MeasurementError::InvalidK0 { vertex: v(0), k0: v(2) })
        );
        assert!(matches!(
            measure(&p3, &MeasurementSpec { vertex: v(1), basis: PauliBasis::Z, k0: Some(v(0)) }),
            Err(MeasurementError::K0OnNonX { .. })
        ));
        assert!(MeasurementSpec::new(v(1), PauliBasis::Y, Some(v(0))).is_err());
        assert!(matches!(
            measure(&p3, &MeasurementSpec::z(v(9))),
            Err(MeasurementError::Graph(GraphError::UnknownVertex(_)))
        ));
        let big = make_topology(&Topology::Path { n: 10 }).unwrap();
        assert!(matches!(
            measure_with_limit(&big, &MeasurementSpec::z(v(0)), 8),
            Err(MeasurementError::TooLarge { vertices: 10, limit: 8 })
        ));
    }

    #[test]
    fn default_k0_cases() {
        let p3 = make_topology(&Topology::Path { n: 3 }).unwrap();
        assert_eq!(default_k0(&p3, &v(1)).unwrap(), Some(v(0)));
        let iso = Graph::with_vertices([v(5)]);
        assert_eq!(default_k0(&iso, &v(5)).unwrap(), None);
        assert!(default_k0(&iso, &v(6)).is_err());
    }

    #[test]
    fn sequence_reports_failing_step() {
        let p3 = make_topology(&Topology::Path { n: 3 }).unwrap();
        let err = measure_sequence(&p3, &[MeasurementSpec::z(v(0)), MeasurementSpec::z(v(0))]).unwrap_err();
        assert!(matches!(err, MeasurementError::AtStep { step: 1, .. }));
        let (same, trace) = measure_sequence(&p3, &[]).unwrap();
        assert_eq!(same, p3);
        assert!(trace.is_empty());
    }

    #[test]
    fn spec_json_shape() {
        let s = MeasurementSpec::x_with(v(1), v(2));
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"vertex":"1","basis":"X","k0":"2"}"#);
        let z = MeasurementSpec::z(v(4));
        assert_eq!(serde_json::to_string(&z).unwrap(), r#"{"vertex":"4","basis":"Z","k0":null}"#);
        let back: Vec<MeasurementSpec> =
            serde_json::from_str(r#"[{"vertex":"1","basis":"X","k0":"2"},{"vertex":"4","basis":"Z","k0":null}]"#)
                .unwrap();
        assert_eq!(back, vec![s, z]);
    }

    #[test]
    fn trace_json_lines() {
        let p3 = make_topology(&Topology::Path { n: 3 }).unwrap();
        let (_, trace) = measure_sequence(&p3, &[MeasurementSpec::x(v(1))]).unwrap();
        assert_eq!(
            trace.to_json_lines(),
            "{\"step\":0,\"spec\":{\"vertex\":\"1\",\"basis\":\"X\",\"k0\":null},\"resolved_k0\":\"0\",\"vertices_before\":3}\n"
        );
    }
}
