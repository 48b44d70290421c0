//! Two QLANs, their star states, the remote-CZ merge and EPR accounting.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bipartition, Graph, GraphError, Role, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("a QLAN needs at least one node (the super-node), got {0}")]
    InvalidSize(usize),
    #[error("QLAN id must be 1 or 2, got {0}")]
    InvalidQlanId(u8),
    #[error("the two QLANs are already merged")]
    AlreadyMerged,
    #[error("the two QLANs have not been merged yet")]
    NotMerged,
    #[error("no vertex with label (qlan {qlan_id}, {role:?}, {index})")]
    UnknownLabel { qlan_id: u8, role: Role, index: u32 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// EPR pairs generated and consumed so far. Counts only grow.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceLedger {
    pub epr_generated: u64,
    pub epr_consumed_intra: u64,
    pub epr_consumed_inter: u64,
}

impl ResourceLedger {
    pub fn absorb(&mut self, delta: &ResourceLedger) {
        self.epr_generated += delta.epr_generated;
        self.epr_consumed_intra += delta.epr_consumed_intra;
        self.epr_consumed_inter += delta.epr_consumed_inter;
    }
}

/// One QLAN holding a star state centered at its super-node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Qlan {
    pub id: u8,
    pub super_vertex: VertexId,
    pub client_vertices: Vec<VertexId>,
    pub state_graph: Graph,
}

impl Qlan {
    /// Number of nodes, super-node included.
    pub fn size(&self) -> usize {
        1 + self.client_vertices.len()
    }

    pub fn client_set(&self) -> BTreeSet<VertexId> {
        self.client_vertices.iter().copied().collect()
    }

    /// Client by 1-based index.
    pub fn client(&self, index: u32) -> Option<VertexId> {
        let i = usize::try_from(index).ok()?.checked_sub(1)?;
        self.client_vertices.get(i).copied()
    }
}

/// Build QLAN `id` with `n` nodes: star state on `qlanID_super_1` and clients
/// `qlanID_client_1..n-1`. Teleporting one qubit to each client costs one EPR
/// pair per client, which is returned as a ledger delta.
pub fn build_qlan(id: u8, n: usize) -> Result<(Qlan, ResourceLedger), NetworkError> {
    if n == 0 {
        return Err(NetworkError::InvalidSize(n));
    }
    if !(1..=2).contains(&id) {
        return Err(NetworkError::InvalidQlanId(id));
    }
    let super_vertex = VertexId::qlan(id, Role::Super, 1);
    let client_vertices: Vec<VertexId> = (1..n as u32).map(|k| VertexId::qlan(id, Role::Client, k)).collect();
    let leaves: BTreeSet<VertexId> = client_vertices.iter().copied().collect();
    let state_graph = crate::topology::star(super_vertex, &leaves)?;
    let clients = client_vertices.len() as u64;
    let delta = ResourceLedger { epr_generated: clients, epr_consumed_intra: clients, epr_consumed_inter: 0 };
    Ok((Qlan { id, super_vertex, client_vertices, state_graph }, delta))
}

/// Two QLANs joined by one physical link between their super-nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QlanNetwork {
    pub qlan1: Qlan,
    pub qlan2: Qlan,
    pub shared_graph: Option<Graph>,
    pub ledger: ResourceLedger,
}

impl QlanNetwork {
    /// Distribute star states in both QLANs.
    pub fn build(n1: usize, n2: usize) -> Result<Self, NetworkError> {
        let (qlan1, d1) = build_qlan(1, n1)?;
        let (qlan2, d2) = build_qlan(2, n2)?;
        let mut ledger = ResourceLedger::default();
        ledger.absorb(&d1);
        ledger.absorb(&d2);
        Ok(Self { qlan1, qlan2, shared_graph: None, ledger })
    }

    pub fn is_merged(&self) -> bool {
        self.shared_graph.is_some()
    }

    pub fn qlan(&self, id: u8) -> Result<&Qlan, NetworkError> {
        match id {
            1 => Ok(&self.qlan1),
            2 => Ok(&self.qlan2),
            other => Err(NetworkError::InvalidQlanId(other)),
        }
    }

    pub fn shared(&self) -> Result<&Graph, NetworkError> {
        self.shared_graph.as_ref().ok_or(NetworkError::NotMerged)
    }

    /// Consume one EPR pair between the super-nodes to perform a remote CZ,
    /// which adds the single edge between them to the union of the two stars.
    pub fn merge_remote_cz(&self) -> Result<Self, NetworkError> {
        if self.is_merged() {
            return Err(NetworkError::AlreadyMerged);
        }
        let mut shared = self.qlan1.state_graph.disjoint_union(&self.qlan2.state_graph)?;
        shared.add_edge(self.qlan1.super_vertex, self.qlan2.super_vertex)?;
        let mut ledger = self.ledger;
        ledger.absorb(&ResourceLedger { epr_generated: 1, epr_consumed_intra: 0, epr_consumed_inter: 1 });
        Ok(Self { qlan1: self.qlan1.clone(), qlan2: self.qlan2.clone(), shared_graph: Some(shared), ledger })
    }

    /// Parts of the merged binary star: part1 is QLAN 1's super-node with
    /// QLAN 2's clients, part2 is QLAN 2's super-node with QLAN 1's clients.
    pub fn recolored_parts(&self) -> Result<Bipartition, NetworkError> {
        self.shared()?;
        let part1 = std::iter::once(self.qlan1.super_vertex).chain(self.qlan2.client_vertices.iter().copied()).collect();
        let part2 = std::iter::once(self.qlan2.super_vertex).chain(self.qlan1.client_vertices.iter().copied()).collect();
        Ok(Bipartition { part1, part2 })
    }

    pub fn lookup_vertex(&self, qlan_id: u8, role: Role, index: u32) -> Result<VertexId, NetworkError> {
        let unknown = NetworkError::UnknownLabel { qlan_id, role, index };
        let qlan = self.qlan(qlan_id).map_err(|_| unknown.clone())?;
        match role {
            Role::Super if index == 1 => Ok(qlan.super_vertex),
            Role::Super => Err(unknown),
            Role::Client => qlan.client(index).ok_or(unknown),
        }
    }
}
