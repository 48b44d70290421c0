use std::collections::BTreeSet;

use proptest::prelude::*;
use qlan_topo::{make_topology, measure, Graph, MeasurementSpec, Topology, VertexId};

fn build(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::with_vertices((0..n as u32).map(VertexId::plain));
    let mut k = 0;
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if bits[k] {
                g.add_edge(VertexId::plain(a), VertexId::plain(b)).unwrap();
            }
            k += 1;
        }
    }
    g
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| build(n, &bits)))
}

fn arb_graph_and_vertex(max_n: usize) -> impl Strategy<Value = (Graph, VertexId)> {
    arb_graph(1, max_n).prop_flat_map(|g| {
        let n = g.vertex_count() as u32;
        (Just(g), (0..n).prop_map(VertexId::plain))
    })
}

/// Try every 2-coloring with vertex 0 fixed to the first color.
fn brute_force_two_colorable(g: &Graph) -> bool {
    let vs: Vec<VertexId> = g.vertices().copied().collect();
    let n = vs.len();
    if n < 2 {
        return false;
    }
    (0u32..1 << (n - 1)).any(|mask| {
        let color = |v: &VertexId| {
            let i = vs.binary_search(v).unwrap();
            i > 0 && mask >> (i - 1) & 1 == 1
        };
        g.edges().all(|(a, b)| color(&a) != color(&b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn local_complement_is_an_involution((g, v) in arb_graph_and_vertex(10)) {
        prop_assert_eq!(g.local_complement(&v).unwrap().local_complement(&v).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(0, 10)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let n = g.vertex_count();
        prop_assert_eq!(g.complement().edge_count() + g.edge_count(), n * n.saturating_sub(1) / 2);
    }

    #[test]
    fn local_complement_toggles_exactly_neighbor_pairs((g, v) in arb_graph_and_vertex(9)) {
        let h = g.local_complement(&v).unwrap();
        let nbrs = g.neighborhood(&v).unwrap().clone();
        prop_assert_eq!(h.neighborhood(&v).unwrap(), &nbrs);
        for a in g.vertices() {
            for b in g.vertices().filter(|b| a < *b) {
                let inside = nbrs.contains(a) && nbrs.contains(b);
                prop_assert_eq!(h.has_edge(a, b), g.has_edge(a, b) != inside);
            }
        }
        if nbrs.len() <= 1 {
            prop_assert_eq!(h, g);
        }
    }

    #[test]
    fn deletion_removes_exactly_incident_edges((g, v) in arb_graph_and_vertex(10)) {
        let d = g.degree(&v).unwrap();
        let h = g.delete_vertex(&v).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count() - d);
        prop_assert_eq!(h.vertex_count(), g.vertex_count() - 1);
        let rest: BTreeSet<VertexId> = g.vertices().copied().filter(|u| *u != v).collect();
        prop_assert_eq!(h, g.induced_subgraph(&rest).unwrap());
    }

    #[test]
    fn two_coloring_agrees_with_brute_force(g in arb_graph(0, 12)) {
        let witness = g.two_coloring();
        prop_assert_eq!(witness.is_some(), brute_force_two_colorable(&g));
        if let Some(w) = witness {
            prop_assert!(w.is_witness_for(&g));
            prop_assert!(!w.part1.is_empty() && !w.part2.is_empty());
            prop_assert!(w.part1.contains(g.vertices().next().unwrap()));
        }
    }

    #[test]
    fn z_measurements_on_non_adjacent_vertices_commute(g in arb_graph(2, 9), a in 0u32..9, b in 0u32..9) {
        let n = g.vertex_count() as u32;
        let (a, b) = (VertexId::plain(a % n), VertexId::plain(b % n));
        prop_assume!(a != b && !g.has_edge(&a, &b));
        let ab = measure(&measure(&g, &MeasurementSpec::z(a)).unwrap().0, &MeasurementSpec::z(b)).unwrap().0;
        let ba = measure(&measure(&g, &MeasurementSpec::z(b)).unwrap().0, &MeasurementSpec::z(a)).unwrap().0;
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn two_colorable_families_are_two_colorable(kind in prop_oneof![
        (2usize..20).prop_map(|n| Topology::Path { n }),
        (2usize..10).prop_map(|k| Topology::EvenCycle { n: 2 * k }),
        (2usize..20).prop_map(|n| Topology::Star { n }),
        (1usize..8, 1usize..8).prop_map(|(n1, n2)| Topology::BinaryStar { n1, n2 }),
        (1usize..8, 1usize..8).prop_map(|(n1, n2)| Topology::CompleteBipartite { n1, n2 }),
        (1u32..7).prop_map(|dim| Topology::Hypercube { dim }),
        prop::collection::vec(any::<prop::sample::Index>(), 1..15).prop_map(|picks| {
            let mut parents = vec![None];
            for (i, p) in picks.iter().enumerate() {
                parents.push(Some(p.index(i + 1)));
            }
            Topology::Tree { parents }
        }),
    ]) {
        let g = make_topology(&kind).unwrap();
        prop_assert_eq!(g.vertex_count(), kind.vertex_count());
        let w = g.two_coloring();
        prop_assert!(w.is_some(), "{:?} not two-colorable", kind);
        prop_assert!(w.unwrap().is_witness_for(&g));
    }
}

#[test]
fn odd_structures_are_not_two_colorable() {
    for n in 3..8 {
        assert!(!make_topology(&Topology::Complete { n }).unwrap().is_two_colorable());
    }
    let c5 = build(5, &[true, false, false, true, true, false, false, true, false, true]);
    assert_eq!(c5.edge_count(), 5);
    assert!(!c5.is_two_colorable());
}
