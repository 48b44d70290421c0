//! Named measurement recipes that reshape the merged binary star into
//! inter-QLAN artificial topologies.
//!
//! Every recipe is written for the orientation where the topology is built
//! around the *target* QLAN's clients and the other QLAN is the *source*.
//! `Side::Right` makes QLAN 2 the target, `Side::Left` swaps the roles.
//! `client_i` always indexes a target-side client and `client_j` a
//! source-side client.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexId};
use crate::measurement::{measure_sequence, MeasurementError, MeasurementSpec, MeasurementTrace};
use crate::network::{NetworkError, Qlan, QlanNetwork};
use crate::topology::{binary_star, complete, complete_bipartite, star};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RecipeKind {
    /// Complete graph on the source super-node and all target clients.
    #[serde(rename = "p2p-hier")]
    HierarchicalPeerToPeer,
    /// Star on the same set, centered at target client `i`.
    #[serde(rename = "role-del-1")]
    RoleDelegationI,
    /// Star on the same set, centered at the source super-node.
    #[serde(rename = "handover")]
    ClientsHandOver,
    /// Complete graph on source client `j` and all target clients.
    #[serde(rename = "p2p-pure")]
    PurePeerToPeer,
    /// Star on the same set, centered at target client `i`.
    #[serde(rename = "role-del-2a")]
    RoleDelegationIICase1,
    /// Star on the same set, centered at source client `j`.
    #[serde(rename = "role-del-2b")]
    RoleDelegationIICase2,
    /// Complete bipartite graph between the two client sets.
    #[serde(rename = "extranet")]
    Extranet,
    /// Binary star on the two client sets, centered at `j` and `i`.
    #[serde(rename = "double-role-del")]
    DoubleRoleDelegation,
    /// X measurement at the center of the target QLAN's own star, moving
    /// the center to client `i`.
    #[serde(rename = "star-recenter")]
    StarRecenter,
}

impl RecipeKind {
    pub const ALL: [RecipeKind; 9] = [
        RecipeKind::HierarchicalPeerToPeer,
        RecipeKind::RoleDelegationI,
        RecipeKind::ClientsHandOver,
        RecipeKind::PurePeerToPeer,
        RecipeKind::RoleDelegationIICase1,
        RecipeKind::RoleDelegationIICase2,
        RecipeKind::Extranet,
        RecipeKind::DoubleRoleDelegation,
        RecipeKind::StarRecenter,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            RecipeKind::HierarchicalPeerToPeer => "p2p-hier",
            RecipeKind::RoleDelegationI => "role-del-1",
            RecipeKind::ClientsHandOver => "handover",
            RecipeKind::PurePeerToPeer => "p2p-pure",
            RecipeKind::RoleDelegationIICase1 => "role-del-2a",
            RecipeKind::RoleDelegationIICase2 => "role-del-2b",
            RecipeKind::Extranet => "extranet",
            RecipeKind::DoubleRoleDelegation => "double-role-del",
            RecipeKind::StarRecenter => "star-recenter",
        }
    }

    /// Whether the recipe needs a source-side client index.
    pub fn needs_client_j(self) -> bool {
        matches!(
            self,
            RecipeKind::PurePeerToPeer
                | RecipeKind::RoleDelegationIICase1
                | RecipeKind::RoleDelegationIICase2
                | RecipeKind::DoubleRoleDelegation
        )
    }

    /// Whether the recipe needs a target-side client index.
    pub fn needs_client_i(self) -> bool {
        matches!(
            self,
            RecipeKind::RoleDelegationI
                | RecipeKind::RoleDelegationIICase1
                | RecipeKind::DoubleRoleDelegation
                | RecipeKind::StarRecenter
        )
    }

    /// Recipes that act on the merged binary star (all but `StarRecenter`).
    pub fn needs_merge(self) -> bool {
        self != RecipeKind::StarRecenter
    }
}

impl fmt::Display for RecipeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for RecipeKind {
    type Err = RecipeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RecipeKind::ALL
            .into_iter()
            .find(|k| k.cli_name() == s)
            .ok_or_else(|| RecipeError::UnknownRecipe(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    #[default]
    Right,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RecipeParams {
    pub target_side: Side,
    pub client_j: Option<u32>,
    pub client_i: Option<u32>,
}

impl RecipeParams {
    pub fn right() -> Self {
        Self::default()
    }

    pub fn side(mut self, side: Side) -> Self {
        self.target_side = side;
        self
    }

    pub fn j(mut self, j: u32) -> Self {
        self.client_j = Some(j);
        self
    }

    pub fn i(mut self, i: u32) -> Self {
        self.client_i = Some(i);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("unknown recipe {0:?}")]
    UnknownRecipe(String),
    #[error("invalid parameters for {kind}: {reason}")]
    InvalidParams { kind: RecipeKind, reason: String },
    #[error("the recipe needs a merged network")]
    NotMerged,
    #[error("keep set is empty; no state would remain")]
    EmptyKeep,
    #[error("vertex {0} is not part of the target topology")]
    KeepOutsideTarget(VertexId),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Measurement(#[from] MeasurementError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of running a recipe on a network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeReport {
    pub kind: RecipeKind,
    pub params: RecipeParams,
    pub plan: Vec<MeasurementSpec>,
    /// Graph the plan was applied to.
    pub base: Graph,
    pub result: Graph,
    pub expected: Graph,
    pub matched: bool,
    pub trace: MeasurementTrace,
}

impl RecipeReport {
    /// Extend the plan with Z measurements on every target vertex outside
    /// `keep` and re-run it. The expected graph shrinks to the induced subgraph.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Result<RecipeReport, RecipeError> {
        let plan = restrict_to_subset(&self.plan, &self.expected, keep)?;
        let (result, trace) = measure_sequence(&self.base, &plan)?;
        let expected = self.expected.induced_subgraph(keep)?;
        Ok(RecipeReport {
            kind: self.kind,
            params: self.params,
            plan,
            base: self.base.clone(),
            matched: result == expected,
            result,
            expected,
            trace,
        })
    }
}

/// The network seen from one side: `target` hosts the clients the topology
/// is built for, `source` is the other QLAN.
struct Frame<'a> {
    kind: RecipeKind,
    source: &'a Qlan,
    target: &'a Qlan,
    client_j: Option<VertexId>,
    client_i: Option<VertexId>,
}

impl<'a> Frame<'a> {
    fn new(net: &'a QlanNetwork, kind: RecipeKind, params: &RecipeParams) -> Result<Self, RecipeError> {
        if kind.needs_merge() && !net.is_merged() {
            return Err(RecipeError::NotMerged);
        }
        let (source, target) = match params.target_side {
            Side::Right => (&net.qlan1, &net.qlan2),
            Side::Left => (&net.qlan2, &net.qlan1),
        };
        let invalid = |reason: String| RecipeError::InvalidParams { kind, reason };
        let pick = |needed: bool, index: Option<u32>, qlan: &Qlan, name: &str| -> Result<Option<VertexId>, RecipeError> {
            if !needed {
                return Ok(None);
            }
            let index = index.ok_or_else(|| invalid(format!("{name} is required")))?;
            qlan.client(index).map(Some).ok_or_else(|| {
                invalid(format!(
                    "{name} = {index} is out of range; QLAN {} has {} clients",
                    qlan.id,
                    qlan.client_vertices.len()
                ))
            })
        };
        let client_j = pick(kind.needs_client_j(), params.client_j, source, "client_j")?;
        let client_i = pick(kind.needs_client_i(), params.client_i, target, "client_i")?;
        Ok(Self { kind, source, target, client_j, client_i })
    }

    fn j(&self) -> VertexId {
        self.client_j.expect("validated in Frame::new")
    }

    fn i(&self) -> VertexId {
        self.client_i.expect("validated in Frame::new")
    }

    fn z_on_source_clients_except(&self, skip: Option<VertexId>) -> Vec<MeasurementSpec> {
        self.source
            .client_vertices
            .iter()
            .filter(|c| Some(**c) != skip)
            .map(|c| MeasurementSpec::z(*c))
            .collect()
    }

    fn plan(&self) -> Vec<MeasurementSpec> {
        let s_src = self.source.super_vertex;
        let s_tgt = self.target.super_vertex;
        let mut plan;
        match self.kind {
            RecipeKind::HierarchicalPeerToPeer => {
                plan = self.z_on_source_clients_except(None);
                plan.push(MeasurementSpec::y(s_tgt));
            }
            RecipeKind::RoleDelegationI => {
                plan = self.z_on_source_clients_except(None);
                plan.push(MeasurementSpec::x_with(s_tgt, self.i()));
            }
            RecipeKind::ClientsHandOver => {
                plan = self.z_on_source_clients_except(None);
                plan.push(MeasurementSpec::x_with(s_tgt, s_src));
            }
            RecipeKind::PurePeerToPeer => {
                plan = self.z_on_source_clients_except(Some(self.j()));
                plan.push(MeasurementSpec::y(s_src));
                plan.push(MeasurementSpec::y(s_tgt));
            }
            RecipeKind::RoleDelegationIICase1 => {
                plan = self.z_on_source_clients_except(Some(self.j()));
                plan.push(MeasurementSpec::y(s_src));
                plan.push(MeasurementSpec::x_with(s_tgt, self.i()));
            }
            RecipeKind::RoleDelegationIICase2 => {
                plan = self.z_on_source_clients_except(Some(self.j()));
                plan.push(MeasurementSpec::y(s_src));
                plan.push(MeasurementSpec::x_with(s_tgt, self.j()));
            }
            RecipeKind::Extranet => {
                plan = vec![MeasurementSpec::x_with(s_src, s_tgt), MeasurementSpec::z(s_tgt)];
            }
            RecipeKind::DoubleRoleDelegation => {
                plan = vec![MeasurementSpec::x_with(s_src, self.j()), MeasurementSpec::x_with(s_tgt, self.i())];
            }
            RecipeKind::StarRecenter => {
                plan = vec![MeasurementSpec::x_with(s_tgt, self.i())];
            }
        }
        plan
    }

    fn expected(&self) -> Result<Graph, GraphError> {
        let s_src = self.source.super_vertex;
        let clients_tgt = self.target.client_set();
        let with = |extra: VertexId| {
            let mut set = clients_tgt.clone();
            set.insert(extra);
            set
        };
        let without = |set: &BTreeSet<VertexId>, v: VertexId| {
            let mut set = set.clone();
            set.remove(&v);
            set
        };
        match self.kind {
            RecipeKind::HierarchicalPeerToPeer => Ok(complete(&with(s_src))),
            RecipeKind::RoleDelegationI => star(self.i(), &without(&with(s_src), self.i())),
            RecipeKind::ClientsHandOver => star(s_src, &clients_tgt),
            RecipeKind::PurePeerToPeer => Ok(complete(&with(self.j()))),
            RecipeKind::RoleDelegationIICase1 => star(self.i(), &without(&with(self.j()), self.i())),
            RecipeKind::RoleDelegationIICase2 => star(self.j(), &clients_tgt),
            RecipeKind::Extranet => complete_bipartite(&self.source.client_set(), &clients_tgt),
            RecipeKind::DoubleRoleDelegation => {
                binary_star(&self.source.client_set(), self.j(), &clients_tgt, self.i())
            }
            RecipeKind::StarRecenter => star(self.i(), &without(&clients_tgt, self.i())),
        }
    }

    fn base(&self, net: &'a QlanNetwork) -> Result<&'a Graph, RecipeError> {
        if self.kind.needs_merge() {
            Ok(net.shared()?)
        } else {
            Ok(&self.target.state_graph)
        }
    }
}

/// Measurement sequence realizing `kind`, with every `k0` pinned explicitly.
pub fn plan(net: &QlanNetwork, kind: RecipeKind, params: &RecipeParams) -> Result<Vec<MeasurementSpec>, RecipeError> {
    Ok(Frame::new(net, kind, params)?.plan())
}

/// Closed-form labeled target graph of `kind`.
pub fn expected_graph(net: &QlanNetwork, kind: RecipeKind, params: &RecipeParams) -> Result<Graph, RecipeError> {
    Ok(Frame::new(net, kind, params)?.expected()?)
}

/// Graph the recipe's plan is applied to: the shared binary star, or the
/// target QLAN's own star for [`RecipeKind::StarRecenter`].
pub fn base_graph(net: &QlanNetwork, kind: RecipeKind, params: &RecipeParams) -> Result<Graph, RecipeError> {
    let frame = Frame::new(net, kind, params)?;
    Ok(frame.base(net)?.clone())
}

/// Run the plan through the rewrite engine and compare with the closed form.
pub fn apply(net: &QlanNetwork, kind: RecipeKind, params: &RecipeParams) -> Result<RecipeReport, RecipeError> {
    let frame = Frame::new(net, kind, params)?;
    let plan = frame.plan();
    let expected = frame.expected()?;
    let base = frame.base(net)?.clone();
    let (result, trace) = measure_sequence(&base, &plan)?;
    Ok(RecipeReport { kind, params: *params, plan, base, matched: result == expected, result, expected, trace })
}

/// Append Z measurements on the vertices of `target` that are not in `keep`,
/// in ascending order.
pub fn restrict_to_subset(
    plan: &[MeasurementSpec],
    target: &Graph,
    keep: &BTreeSet<VertexId>,
) -> Result<Vec<MeasurementSpec>, RecipeError> {
    if keep.is_empty() {
        return Err(RecipeError::EmptyKeep);
    }
    if let Some(v) = keep.iter().find(|v| !target.contains(v)) {
        return Err(RecipeError::KeepOutsideTarget(*v));
    }
    let mut out = plan.to_vec();
    out.extend(target.vertices().filter(|v| !keep.contains(v)).map(|v| MeasurementSpec::z(*v)));
    Ok(out)
}
