//! Local-complementation orbits by breadth-first search.
//!
//! Graphs are packed into one 16-bit adjacency row per vertex (vertex order
//! ascending), so orbits of graphs with up to 16 vertices can be hashed cheaply.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::OracleError;
use crate::graph::{Graph, VertexId};

pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
pub const LC_LIMIT: usize = 16;

type Adj = [u16; LC_LIMIT];

struct Packed {
    vertices: Vec<VertexId>,
    adj: Adj,
}

fn pack(g: &Graph) -> Result<Packed, OracleError> {
    if g.vertex_count() > LC_LIMIT {
        return Err(OracleError::TooLarge { what: "graph", size: g.vertex_count(), limit: LC_LIMIT });
    }
    let vertices: Vec<VertexId> = g.vertices().copied().collect();
    let mut adj = [0u16; LC_LIMIT];
    for (a, b) in g.edges() {
        let i = vertices.binary_search(&a).expect("vertex of g");
        let j = vertices.binary_search(&b).expect("vertex of g");
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    Ok(Packed { vertices, adj })
}

fn unpack(vertices: &[VertexId], adj: &Adj) -> Graph {
    let mut g = Graph::with_vertices(vertices.iter().copied());
    for (i, a) in vertices.iter().enumerate() {
        for (j, b) in vertices.iter().enumerate().skip(i + 1) {
            if adj[i] >> j & 1 == 1 {
                g.add_edge(*a, *b).expect("distinct vertices");
            }
        }
    }
    g
}

fn tau(adj: &Adj, v: usize) -> Adj {
    let nb = adj[v];
    let mut out = *adj;
    let mut rest = nb;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out[u] ^= nb & !(1 << u);
    }
    out
}

/// Breadth-first closure of a graph under local complementation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcOrbit {
    /// Members in discovery order, starting with the input graph.
    pub members: Vec<Graph>,
    /// The cap was reached before the closure was complete.
    pub truncated: bool,
}

impl LcOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Hashed orbit for repeated membership queries.
pub struct OrbitIndex {
    vertices: Vec<VertexId>,
    order: Vec<Adj>,
    seen: HashSet<Adj>,
    truncated: bool,
}

impl OrbitIndex {
    pub fn new(g: &Graph, cap: usize) -> Result<Self, OracleError> {
        let Packed { vertices, adj } = pack(g)?;
        let n = vertices.len();
        let mut seen = HashSet::from([adj]);
        let mut order = vec![adj];
        let mut head = 0;
        let mut truncated = false;
        'bfs: while head < order.len() {
            let cur = order[head];
            head += 1;
            for v in 0..n {
                let next = tau(&cur, v);
                if seen.insert(next) {
                    if order.len() >= cap {
                        truncated = true;
                        break 'bfs;
                    }
                    order.push(next);
                }
            }
        }
        if truncated {
            seen = order.iter().copied().collect();
        }
        Ok(OrbitIndex { vertices, order, seen, truncated })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// Membership under the identity vertex correspondence. A truncated
    /// orbit cannot rule a graph out, so that case is an error.
    pub fn contains(&self, g: &Graph) -> Result<bool, OracleError> {
        if !g.vertices().copied().eq(self.vertices.iter().copied()) {
            return Err(OracleError::VertexSetMismatch);
        }
        let found = self.seen.contains(&pack(g)?.adj);
        if !found && self.truncated {
            return Err(OracleError::CapExceeded { cap: self.order.len() });
        }
        Ok(found)
    }

    pub fn to_orbit(&self) -> LcOrbit {
        LcOrbit {
            members: self.order.iter().map(|a| unpack(&self.vertices, a)).collect(),
            truncated: self.truncated,
        }
    }
}

/// All graphs reachable from `g` by local complementations, up to `cap`
/// members. Iteration order is deterministic.
pub fn lc_orbit(g: &Graph, cap: usize) -> Result<LcOrbit, OracleError> {
    Ok(OrbitIndex::new(g, cap)?.to_orbit())
}

/// Shortest sequence of vertices whose local complementations turn `from`
/// into `to`, or `None` if `to` is outside the orbit.
pub fn lc_path(from: &Graph, to: &Graph, cap: usize) -> Result<Option<Vec<VertexId>>, OracleError> {
    let start = pack(from)?;
    let goal = pack(to)?;
    if start.vertices != goal.vertices {
        return Err(OracleError::VertexSetMismatch);
    }
    let n = start.vertices.len();
    let mut parent: HashMap<Adj, (Adj, u8)> = HashMap::new();
    let mut queue = VecDeque::from([start.adj]);
    let mut seen = HashSet::from([start.adj]);
    let mut found = start.adj == goal.adj;
    while !found {
        let Some(cur) = queue.pop_front() else { return Ok(None) };
        for v in 0..n {
            let next = tau(&cur, v);
            if seen.insert(next) {
                parent.insert(next, (cur, v as u8));
                if next == goal.adj {
                    found = true;
                    break;
                }
                if seen.len() >= cap {
                    return Err(OracleError::CapExceeded { cap });
                }
                queue.push_back(next);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = goal.adj;
    while let Some((prev, v)) = parent.get(&cur) {
        path.push(start.vertices[*v as usize]);
        cur = *prev;
    }
    path.reverse();
    Ok(Some(path))
}

/// Whether `g2` lies in the local-complementation orbit of `g1`, with
/// vertices matched by label.
pub fn lc_equivalent(g1: &Graph, g2: &Graph) -> Result<bool, OracleError> {
    lc_equivalent_with_cap(g1, g2, DEFAULT_ORBIT_CAP)
}

pub fn lc_equivalent_with_cap(g1: &Graph, g2: &Graph, cap: usize) -> Result<bool, OracleError> {
    Ok(lc_path(g1, g2, cap)?.is_some())
}
