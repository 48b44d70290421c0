//! Finite undirected simple graphs over labeled vertices.
//!
//! A [`Graph`] stores one sorted adjacency set per vertex. Every transform
//! (complement, local complementation, vertex deletion, induced subgraphs)
//! returns a fresh value and leaves the input untouched.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Role of a qubit inside a QLAN. `Super` sorts before `Client`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Super,
    Client,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Super => "super",
            Role::Client => "client",
        }
    }
}

/// Network-wide identity of a qubit: which QLAN holds it, whether it sits at
/// the super-node or at a client, and its index within that role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QlanVertexLabel {
    pub qlan_id: u8,
    pub role: Role,
    pub index: u32,
}

impl QlanVertexLabel {
    pub fn new(qlan_id: u8, role: Role, index: u32) -> Self {
        Self { qlan_id, role, index }
    }
}

/// Opaque, totally ordered vertex identifier.
///
/// Plain ids sort before QLAN-labeled ids; QLAN ids sort by
/// `(qlan_id, role, index)`. The textual form (`Display`/`FromStr`) is the
/// name used in DOT and JSON output: `7` for plain ids and
/// `qlan1_super_1` / `qlan2_client_3` for labeled ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexId {
    Plain(u32),
    Qlan(QlanVertexLabel),
}

impl VertexId {
    pub fn plain(id: u32) -> Self {
        VertexId::Plain(id)
    }

    pub fn qlan(qlan_id: u8, role: Role, index: u32) -> Self {
        VertexId::Qlan(QlanVertexLabel::new(qlan_id, role, index))
    }

    pub fn label(&self) -> Option<&QlanVertexLabel> {
        match self {
            VertexId::Plain(_) => None,
            VertexId::Qlan(label) => Some(label),
        }
    }
}

impl From<u32> for VertexId {
    fn from(id: u32) -> Self {
        VertexId::Plain(id)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Plain(id) => write!(f, "{id}"),
            VertexId::Qlan(l) => write!(f, "qlan{}_{}_{}", l.qlan_id, l.role.as_str(), l.index),
        }
    }
}

impl FromStr for VertexId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::BadVertexName(s.to_string());
        if let Ok(id) = s.parse::<u32>() {
            return Ok(VertexId::Plain(id));
        }
        let rest = s.strip_prefix("qlan").ok_or_else(bad)?;
        let mut parts = rest.split('_');
        let qlan_id = parts.next().and_then(|p| p.parse::<u8>().ok()).ok_or_else(bad)?;
        let role = match parts.next() {
            Some("super") => Role::Super,
            Some("client") => Role::Client,
            _ => return Err(bad()),
        };
        let index = parts.next().and_then(|p| p.parse::<u32>().ok()).ok_or_else(bad)?;
        if parts.next().is_some() || index == 0 {
            return Err(bad());
        }
        Ok(VertexId::qlan(qlan_id, role, index))
    }
}

impl Serialize for VertexId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("self-loop on vertex {0} is not allowed in a simple graph")]
    SelfLoop(VertexId),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("cycle length {0} is odd; only even cycles are two-colorable")]
    OddCycle(usize),
    #[error("invalid tree parent list: {0}")]
    InvalidTree(String),
    #[error("cannot parse vertex name {0:?}")]
    BadVertexName(String),
    #[error("vertex {id} carries label {found:?} but its name implies {expected:?}")]
    LabelMismatch {
        id: VertexId,
        expected: Option<QlanVertexLabel>,
        found: Option<QlanVertexLabel>,
    },
}

/// Finite undirected simple graph.
///
/// Equality is labeled equality: same vertex set and same edge set.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on the given vertices. Duplicates collapse.
    pub fn with_vertices<I: IntoIterator<Item = VertexId>>(vertices: I) -> Self {
        Self {
            adj: vertices.into_iter().map(|v| (v, BTreeSet::new())).collect(),
        }
    }

    /// Build a graph from a vertex list and an edge list.
    pub fn from_edges<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::with_vertices(vertices);
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Insert the undirected edge `(a, b)`. Inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.require(&a)?;
        self.require(&b)?;
        self.adj.get_mut(&a).expect("checked").insert(b);
        self.adj.get_mut(&b).expect("checked").insert(a);
        Ok(())
    }

    fn toggle_edge(&mut self, a: VertexId, b: VertexId) {
        debug_assert!(a != b);
        let row = self.adj.get_mut(&a).expect("vertex present");
        if !row.remove(&b) {
            row.insert(b);
            self.adj.get_mut(&b).expect("vertex present").insert(a);
        } else {
            self.adj.get_mut(&b).expect("vertex present").remove(&a);
        }
    }

    fn require(&self, v: &VertexId) -> Result<(), GraphError> {
        if self.adj.contains_key(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(*v))
        }
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.adj.contains_key(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.adj.keys()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    /// Edges as `(a, b)` with `a < b`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .flat_map(|(a, row)| row.range((std::ops::Bound::Excluded(*a), std::ops::Bound::Unbounded)).map(move |b| (*a, *b)))
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        self.adj.get(a).is_some_and(|row| row.contains(b))
    }

    pub fn degree(&self, v: &VertexId) -> Result<usize, GraphError> {
        Ok(self.neighborhood(v)?.len())
    }

    /// The set of vertices adjacent to `v`.
    pub fn neighborhood(&self, v: &VertexId) -> Result<&BTreeSet<VertexId>, GraphError> {
        self.adj.get(v).ok_or(GraphError::UnknownVertex(*v))
    }

    /// Subgraph on `keep` containing every edge with both endpoints in `keep`.
    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        for v in keep {
            self.require(v)?;
        }
        let adj = keep
            .iter()
            .map(|v| {
                let row = self.adj[v].intersection(keep).copied().collect();
                (*v, row)
            })
            .collect();
        Ok(Graph { adj })
    }

    /// Same vertices; two vertices are adjacent iff they were not.
    pub fn complement(&self) -> Graph {
        let all = self.vertex_set();
        let adj = self
            .adj
            .iter()
            .map(|(v, row)| {
                let comp = all.iter().filter(|u| *u != v && !row.contains(u)).copied().collect();
                (*v, comp)
            })
            .collect();
        Graph { adj }
    }

    /// Local complementation at `v`: complement the subgraph induced by the
    /// neighborhood of `v`, leave everything else as is.
    pub fn local_complement(&self, v: &VertexId) -> Result<Graph, GraphError> {
        let nbrs: Vec<VertexId> = self.neighborhood(v)?.iter().copied().collect();
        let mut out = self.clone();
        for (k, a) in nbrs.iter().enumerate() {
            for b in &nbrs[k + 1..] {
                out.toggle_edge(*a, *b);
            }
        }
        Ok(out)
    }

    /// Remove `v` together with its incident edges.
    pub fn delete_vertex(&self, v: &VertexId) -> Result<Graph, GraphError> {
        self.require(v)?;
        let mut out = self.clone();
        let row = out.adj.remove(v).expect("checked");
        for u in row {
            out.adj.get_mut(&u).expect("symmetric").remove(v);
        }
        Ok(out)
    }

    /// A two-coloring witness, or `None` when the graph has an odd cycle or
    /// fewer than two vertices (both parts of a bipartition must be non-empty).
    ///
    /// Each connected component puts its smallest vertex in `part1`, so the
    /// part holding the globally smallest vertex is always `part1`. When every
    /// component is a single vertex the largest one is moved to `part2`.
    pub fn two_coloring(&self) -> Option<Bipartition> {
        if self.vertex_count() < 2 {
            return None;
        }
        let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
        for start in self.adj.keys() {
            if color.contains_key(start) {
                continue;
            }
            color.insert(*start, false);
            let mut queue = VecDeque::from([*start]);
            while let Some(v) = queue.pop_front() {
                let c = color[&v];
                for u in &self.adj[&v] {
                    match color.get(u) {
                        Some(cu) if *cu == c => return None,
                        Some(_) => {}
                        None => {
                            color.insert(*u, !c);
                            queue.push_back(*u);
                        }
                    }
                }
            }
        }
        let mut part1: BTreeSet<VertexId> = color.iter().filter(|(_, c)| !**c).map(|(v, _)| *v).collect();
        let mut part2: BTreeSet<VertexId> = color.iter().filter(|(_, c)| **c).map(|(v, _)| *v).collect();
        if part2.is_empty() {
            let last = *part1.iter().next_back().expect("at least two vertices");
            part1.remove(&last);
            part2.insert(last);
        }
        Some(Bipartition { part1, part2 })
    }

    pub fn is_two_colorable(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Vertex-disjoint union. Fails if the vertex sets overlap.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let mut out = self.clone();
        for (v, row) in &other.adj {
            if out.adj.insert(*v, row.clone()).is_some() {
                return Err(GraphError::DuplicateVertex(*v));
            }
        }
        Ok(out)
    }

    /// Graphviz rendering: one node line per vertex, then one `a -- b;` line
    /// per edge, both in ascending order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in self.vertices() {
            out.push_str(&format!("  {v};\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("  {a} -- {b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Labeled equality of two graphs (not isomorphism).
pub fn graph_equal(g1: &Graph, g2: &Graph) -> bool {
    g1 == g2
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self.vertices().map(ToString::to_string).collect();
        let es: Vec<String> = self.edges().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "V={{{}}} E={{{}}}", vs.join(","), es.join(","))
    }
}

/// The two color classes of a two-colorable graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub part1: BTreeSet<VertexId>,
    pub part2: BTreeSet<VertexId>,
}

impl Bipartition {
    /// Checks the partition conditions and that no edge stays inside a part.
    pub fn is_witness_for(&self, g: &Graph) -> bool {
        if self.part1.is_empty() || self.part2.is_empty() || !self.part1.is_disjoint(&self.part2) {
            return false;
        }
        let union: BTreeSet<VertexId> = self.part1.union(&self.part2).copied().collect();
        if union != g.vertex_set() {
            return false;
        }
        g.edges()
            .all(|(a, b)| self.part1.contains(&a) != self.part1.contains(&b))
    }
}

#[derive(Serialize, Deserialize)]
struct VertexRepr {
    id: VertexId,
    label: Option<QlanVertexLabel>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<VertexRepr>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            vertices: self
                .vertices()
                .map(|v| VertexRepr { id: *v, label: v.label().copied() })
                .collect(),
            edges: self.edges().collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = GraphRepr::deserialize(deserializer)?;
        let mut g = Graph::new();
        for v in repr.vertices {
            if v.label.as_ref() != v.id.label() {
                return Err(D::Error::custom(GraphError::LabelMismatch {
                    id: v.id,
                    expected: v.id.label().copied(),
                    found: v.label,
                }));
            }
            if !g.add_vertex(v.id) {
                return Err(D::Error::custom(GraphError::DuplicateVertex(v.id)));
            }
        }
        for (a, b) in repr.edges {
            g.add_edge(a, b).map_err(D::Error::custom)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId::plain(i)
    }

    fn path3() -> Graph {
        Graph::from_edges([v(1), v(2), v(3)], [(v(1), v(2)), (v(2), v(3))]).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_edges([v(1), v(2), v(3)], [(v(1), v(2)), (v(2), v(3)), (v(1), v(3))]).unwrap()
    }

    #[test]
    fn vertex_names_round_trip() {
        for id in [v(0), v(42), VertexId::qlan(1, Role::Super, 1), VertexId::qlan(2, Role::Client, 13)] {
            assert_eq!(id.to_string().parse::<VertexId>().unwrap(), id);
        }
        assert_eq!(VertexId::qlan(2, Role::Client, 3).to_string(), "qlan2_client_3");
        assert!("qlan1_boss_1".parse::<VertexId>().is_err());
        assert!("qlan1_client_0".parse::<VertexId>().is_err());
        assert!("x7".parse::<VertexId>().is_err());
    }

    #[test]
    fn vertex_order_is_qlan_then_role_then_index() {
        let s1 = VertexId::qlan(1, Role::Super, 1);
        let c11 = VertexId::qlan(1, Role::Client, 1);
        let c12 = VertexId::qlan(1, Role::Client, 2);
        let s2 = VertexId::qlan(2, Role::Super, 1);
        assert!(v(999) < s1 && s1 < c11 && c11 < c12 && c12 < s2);
    }

    #[test]
    fn neighborhood_cases() {
        let g = path3();
        assert_eq!(g.neighborhood(&v(2)).unwrap(), &BTreeSet::from([v(1), v(3)]));
        let iso = Graph::with_vertices([v(9)]);
        assert!(iso.neighborhood(&v(9)).unwrap().is_empty());
        assert_eq!(g.neighborhood(&v(7)), Err(GraphError::UnknownVertex(v(7))));
    }

    #[test]
    fn simple_graph_rejects_self_loops_and_dangling_edges() {
        let mut g = Graph::with_vertices([v(1), v(2)]);
        assert_eq!(g.add_edge(v(1), v(1)), Err(GraphError::SelfLoop(v(1))));
        assert_eq!(g.add_edge(v(1), v(3)), Err(GraphError::UnknownVertex(v(3))));
        g.add_edge(v(1), v(2)).unwrap();
        g.add_edge(v(2), v(1)).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn induced_subgraph_cases() {
        let sub = k3().induced_subgraph(&BTreeSet::from([v(1), v(2)])).unwrap();
        assert_eq!(sub, Graph::from_edges([v(1), v(2)], [(v(1), v(2))]).unwrap());
        assert_eq!(k3().induced_subgraph(&k3().vertex_set()).unwrap(), k3());
        assert!(k3().induced_subgraph(&BTreeSet::from([v(5)])).is_err());
    }

    #[test]
    fn complement_cases() {
        let empty = Graph::with_vertices([v(1), v(2), v(3)]);
        assert_eq!(empty.complement(), k3());
        assert_eq!(k3().complement(), empty);
        assert_eq!(path3().complement(), Graph::from_edges([v(1), v(2), v(3)], [(v(1), v(3))]).unwrap());
    }

    #[test]
    fn local_complement_of_path_center_is_triangle() {
        assert_eq!(path3().local_complement(&v(2)).unwrap(), k3());
        assert_eq!(path3().local_complement(&v(1)).unwrap(), path3());
        assert!(path3().local_complement(&v(4)).is_err());
    }

    #[test]
    fn delete_vertex_cases() {
        let g = k3().delete_vertex(&v(3)).unwrap();
        assert_eq!(g, Graph::from_edges([v(1), v(2)], [(v(1), v(2))]).unwrap());
        let mut h = path3();
        h.add_vertex(v(4));
        assert_eq!(h.delete_vertex(&v(4)).unwrap(), path3());
    }

    #[test]
    fn two_coloring_prefers_smallest_vertex_in_part1() {
        let b = path3().two_coloring().unwrap();
        assert_eq!(b.part1, BTreeSet::from([v(1), v(3)]));
        assert_eq!(b.part2, BTreeSet::from([v(2)]));
        assert!(k3().two_coloring().is_none());
        assert!(Graph::with_vertices([v(1)]).two_coloring().is_none());
        let iso = Graph::with_vertices([v(1), v(2), v(3)]).two_coloring().unwrap();
        assert_eq!(iso.part2, BTreeSet::from([v(3)]));
        assert!(iso.is_witness_for(&Graph::with_vertices([v(1), v(2), v(3)])));
    }

    #[test]
    fn edges_insertion_order_does_not_matter() {
        let a = Graph::from_edges([v(1), v(2), v(3)], [(v(1), v(2)), (v(3), v(2))]).unwrap();
        let b = Graph::from_edges([v(3), v(2), v(1)], [(v(2), v(3)), (v(2), v(1))]).unwrap();
        assert!(graph_equal(&a, &b));
        assert!(!graph_equal(&a, &k3()));
    }

    #[test]
    fn dot_output_is_sorted() {
        let g = Graph::from_edges([v(2), v(1)], [(v(2), v(1))]).unwrap();
        assert_eq!(g.to_dot("g"), "graph g {\n  1;\n  2;\n  1 -- 2;\n}\n");
    }

    #[test]
    fn json_schema_and_round_trip() {
        let s = VertexId::qlan(1, Role::Super, 1);
        let c = VertexId::qlan(1, Role::Client, 1);
        let g = Graph::from_edges([c, s], [(c, s)]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(
            json,
            r#"{"vertices":[{"id":"qlan1_super_1","label":{"qlan_id":1,"role":"super","index":1}},{"id":"qlan1_client_1","label":{"qlan_id":1,"role":"client","index":1}}],"edges":[["qlan1_super_1","qlan1_client_1"]]}"#
        );
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let bad = r#"{"vertices":[{"id":"1","label":null}],"edges":[["1","1"]]}"#;
        assert!(serde_json::from_str::<Graph>(bad).is_err());
    }
}
