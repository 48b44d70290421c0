//! Constructors for the named two-colorable families and the complete graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError, VertexId};

/// A named graph family with its size parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Topology {
    Path { n: usize },
    EvenCycle { n: usize },
    /// `S_n`: one center plus `n - 1` leaves.
    Star { n: usize },
    /// `S_{n1,n2}`: parts of sizes `n1` and `n2`; the first vertex of each
    /// part is joined to every vertex of the other part.
    BinaryStar { n1: usize, n2: usize },
    CompleteBipartite { n1: usize, n2: usize },
    Complete { n: usize },
    /// `Q_dim` on `2^dim` vertices.
    Hypercube { dim: u32 },
    /// `parents[i]` is the parent of vertex `i`; exactly one entry is `None`.
    Tree { parents: Vec<Option<usize>> },
}

impl Topology {
    pub fn vertex_count(&self) -> usize {
        match self {
            Topology::Path { n } | Topology::EvenCycle { n } | Topology::Star { n } | Topology::Complete { n } => *n,
            Topology::BinaryStar { n1, n2 } | Topology::CompleteBipartite { n1, n2 } => n1 + n2,
            Topology::Hypercube { dim } => 1usize.checked_shl(*dim).unwrap_or(0),
            Topology::Tree { parents } => parents.len(),
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        let positive = |n: usize, what: &str| {
            if n == 0 {
                Err(GraphError::InvalidSize(format!("{what} must be at least 1")))
            } else {
                Ok(())
            }
        };
        match self {
            Topology::Path { n } | Topology::Star { n } | Topology::Complete { n } => positive(*n, "n"),
            Topology::EvenCycle { n } => {
                if n % 2 == 1 {
                    Err(GraphError::OddCycle(*n))
                } else if *n < 4 {
                    Err(GraphError::InvalidSize(format!("an even cycle needs at least 4 vertices, got {n}")))
                } else {
                    Ok(())
                }
            }
            Topology::BinaryStar { n1, n2 } | Topology::CompleteBipartite { n1, n2 } => {
                positive(*n1, "n1")?;
                positive(*n2, "n2")
            }
            Topology::Hypercube { dim } => {
                if *dim == 0 || *dim > 16 {
                    Err(GraphError::InvalidSize(format!("hypercube dimension must be in 1..=16, got {dim}")))
                } else {
                    Ok(())
                }
            }
            Topology::Tree { parents } => validate_parents(parents),
        }
    }
}

fn validate_parents(parents: &[Option<usize>]) -> Result<(), GraphError> {
    let n = parents.len();
    if n == 0 {
        return Err(GraphError::InvalidSize("a tree needs at least one vertex".into()));
    }
    let roots = parents.iter().filter(|p| p.is_none()).count();
    if roots != 1 {
        return Err(GraphError::InvalidTree(format!("expected exactly one root, found {roots}")));
    }
    for (i, p) in parents.iter().enumerate() {
        if let Some(p) = p {
            if *p >= n || *p == i {
                return Err(GraphError::InvalidTree(format!("vertex {i} has invalid parent {p}")));
            }
        }
    }
    // every vertex must reach the root without revisiting anything
    for start in 0..n {
        let mut cur = start;
        for _ in 0..=n {
            match parents[cur] {
                None => break,
                Some(p) => cur = p,
            }
        }
        if parents[cur].is_some() {
            return Err(GraphError::InvalidTree(format!("cycle through vertex {start}")));
        }
    }
    Ok(())
}

/// Build `kind` on the plain vertices `0..n`.
pub fn make_topology(kind: &Topology) -> Result<Graph, GraphError> {
    kind.validate()?;
    let labels: Vec<VertexId> = (0..kind.vertex_count() as u32).map(VertexId::plain).collect();
    make_topology_labeled(kind, &labels)
}

/// Build `kind` on caller-supplied labels, assigned by position.
///
/// Positional conventions: stars put the center first; bipartite families list
/// the first part (`n1` labels, its distinguished vertex first) and then the
/// second part (its distinguished vertex first); trees follow the parent list
/// indices; hypercube position `k` is the corner with binary coordinates `k`.
pub fn make_topology_labeled(kind: &Topology, labels: &[VertexId]) -> Result<Graph, GraphError> {
    kind.validate()?;
    let n = kind.vertex_count();
    if labels.len() != n {
        return Err(GraphError::InvalidSize(format!("{n} labels required, got {}", labels.len())));
    }
    let mut g = Graph::new();
    for v in labels {
        if !g.add_vertex(*v) {
            return Err(GraphError::DuplicateVertex(*v));
        }
    }
    let mut edge = |a: usize, b: usize| g.add_edge(labels[a], labels[b]);
    match kind {
        Topology::Path { n } => {
            for i in 1..*n {
                edge(i - 1, i)?;
            }
        }
        Topology::EvenCycle { n } => {
            for i in 0..*n {
                edge(i, (i + 1) % n)?;
            }
        }
        Topology::Star { n } => {
            for i in 1..*n {
                edge(0, i)?;
            }
        }
        Topology::BinaryStar { n1, n2 } => {
            for j in *n1..n1 + n2 {
                edge(0, j)?;
            }
            for i in 0..*n1 {
                edge(i, *n1)?;
            }
        }
        Topology::CompleteBipartite { n1, n2 } => {
            for i in 0..*n1 {
                for j in *n1..n1 + n2 {
                    edge(i, j)?;
                }
            }
        }
        Topology::Complete { n } => {
            for i in 0..*n {
                for j in i + 1..*n {
                    edge(i, j)?;
                }
            }
        }
        Topology::Hypercube { dim } => {
            for k in 0..n {
                for bit in 0..*dim {
                    let other = k ^ (1 << bit);
                    if other > k {
                        edge(k, other)?;
                    }
                }
            }
        }
        Topology::Tree { parents } => {
            for (i, p) in parents.iter().enumerate() {
                if let Some(p) = p {
                    edge(i, *p)?;
                }
            }
        }
    }
    Ok(g)
}

/// Complete graph on `vertices`.
pub fn complete(vertices: &BTreeSet<VertexId>) -> Graph {
    let vs: Vec<VertexId> = vertices.iter().copied().collect();
    let mut g = Graph::with_vertices(vs.iter().copied());
    for (k, a) in vs.iter().enumerate() {
        for b in &vs[k + 1..] {
            g.add_edge(*a, *b).expect("distinct members");
        }
    }
    g
}

/// Star with the given center joined to every leaf.
pub fn star(center: VertexId, leaves: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
    let mut g = Graph::with_vertices(std::iter::once(center).chain(leaves.iter().copied()));
    for l in leaves {
        g.add_edge(center, *l)?;
    }
    Ok(g)
}

/// Complete bipartite graph with every cross-part pair joined.
pub fn complete_bipartite(part1: &BTreeSet<VertexId>, part2: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
    let mut g = Graph::with_vertices(part1.iter().chain(part2.iter()).copied());
    for a in part1 {
        for b in part2 {
            g.add_edge(*a, *b)?;
        }
    }
    Ok(g)
}

/// Binary star: `center1 ∈ part1` is joined to all of `part2` and
/// `center2 ∈ part2` to all of `part1`.
pub fn binary_star(
    part1: &BTreeSet<VertexId>,
    center1: VertexId,
    part2: &BTreeSet<VertexId>,
    center2: VertexId,
) -> Result<Graph, GraphError> {
    if !part1.contains(&center1) {
        return Err(GraphError::UnknownVertex(center1));
    }
    if !part2.contains(&center2) {
        return Err(GraphError::UnknownVertex(center2));
    }
    let mut g = Graph::with_vertices(part1.iter().chain(part2.iter()).copied());
    for b in part2 {
        g.add_edge(center1, *b)?;
    }
    for a in part1 {
        g.add_edge(*a, center2)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId::plain(i)
    }

    fn edges(g: &Graph) -> Vec<(u32, u32)> {
        g.edges()
            .map(|(a, b)| match (a, b) {
                (VertexId::Plain(a), VertexId::Plain(b)) => (a, b),
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn star_of_four() {
        let g = make_topology(&Topology::Star { n: 4 }).unwrap();
        assert_eq!(edges(&g), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn binary_star_three_three() {
        // P1 = {0,1,2} with v¹₁ = 0; P2 = {3,4,5} with v²₁ = 3
        let g = make_topology(&Topology::BinaryStar { n1: 3, n2: 3 }).unwrap();
        assert_eq!(edges(&g), vec![(0, 3), (0, 4), (0, 5), (1, 3), (2, 3)]);
    }

    #[test]
    fn complete_bipartite_two_three() {
        let g = make_topology(&Topology::CompleteBipartite { n1: 2, n2: 3 }).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.edges().all(|(a, b)| (a < v(2)) != (b < v(2))));
    }

    #[test]
    fn hypercube_counts() {
        for dim in 1..=5u32 {
            let g = make_topology(&Topology::Hypercube { dim }).unwrap();
            assert_eq!(g.vertex_count(), 1 << dim);
            assert_eq!(g.edge_count(), (1usize << (dim - 1)) * dim as usize);
        }
        let q3 = make_topology(&Topology::Hypercube { dim: 3 }).unwrap();
        assert!(q3.is_two_colorable());
    }

    #[test]
    fn size_errors() {
        assert_eq!(make_topology(&Topology::EvenCycle { n: 5 }), Err(GraphError::OddCycle(5)));
        assert!(matches!(make_topology(&Topology::EvenCycle { n: 2 }), Err(GraphError::InvalidSize(_))));
        assert!(matches!(make_topology(&Topology::Path { n: 0 }), Err(GraphError::InvalidSize(_))));
        assert!(matches!(
            make_topology(&Topology::BinaryStar { n1: 0, n2: 2 }),
            Err(GraphError::InvalidSize(_))
        ));
        assert!(make_topology_labeled(&Topology::Path { n: 2 }, &[v(1)]).is_err());
        assert!(make_topology_labeled(&Topology::Path { n: 2 }, &[v(1), v(1)]).is_err());
    }

    #[test]
    fn tree_parent_list() {
        let g = make_topology(&Topology::Tree { parents: vec![None, Some(0), Some(0), Some(1)] }).unwrap();
        assert_eq!(edges(&g), vec![(0, 1), (0, 2), (1, 3)]);
        assert!(make_topology(&Topology::Tree { parents: vec![None, None] }).is_err());
        assert!(make_topology(&Topology::Tree { parents: vec![None, Some(2), Some(1)] }).is_err());
        assert!(make_topology(&Topology::Tree { parents: vec![None, Some(1)] }).is_err());
    }

    #[test]
    fn labeled_helpers_agree_with_families() {
        let p1: BTreeSet<VertexId> = [v(0), v(1), v(2)].into();
        let p2: BTreeSet<VertexId> = [v(3), v(4)].into();
        assert_eq!(
            binary_star(&p1, v(0), &p2, v(3)).unwrap(),
            make_topology(&Topology::BinaryStar { n1: 3, n2: 2 }).unwrap()
        );
        assert_eq!(
            complete_bipartite(&p1, &p2).unwrap(),
            make_topology(&Topology::CompleteBipartite { n1: 3, n2: 2 }).unwrap()
        );
        let all: BTreeSet<VertexId> = (0..4).map(v).collect();
        assert_eq!(complete(&all), make_topology(&Topology::Complete { n: 4 }).unwrap());
        let leaves: BTreeSet<VertexId> = (1..4).map(v).collect();
        assert_eq!(star(v(0), &leaves).unwrap(), make_topology(&Topology::Star { n: 4 }).unwrap());
    }
}
