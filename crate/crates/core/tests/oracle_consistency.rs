use num_complex::Complex64;
use proptest::prelude::*;
use qlan_topo::oracle::extract::{align_to_graph, extract_graph};
use qlan_topo::oracle::lc::{lc_equivalent, lc_orbit};
use qlan_topo::oracle::pauli::{Gate, PauliString};
use qlan_topo::oracle::statevector::{apply_pauli, stabilizer_residual, statevector_from_graph};
use qlan_topo::oracle::suite::all_graphs;
use qlan_topo::oracle::tableau::{Probability, StabilizerTableau};
use qlan_topo::{Graph, PauliBasis, VertexId};

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

fn arb_gate() -> impl Strategy<Value = Gate> {
    prop_oneof![Just(Gate::H), Just(Gate::S), Just(Gate::Sdg), Just(Gate::X), Just(Gate::Z)]
}

fn arb_basis() -> impl Strategy<Value = PauliBasis> {
    prop_oneof![Just(PauliBasis::X), Just(PauliBasis::Y), Just(PauliBasis::Z)]
}

fn norm(psi: &[Complex64]) -> f64 {
    psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

#[test]
fn extraction_round_trips_every_small_graph() {
    for n in 0..=4 {
        for g in all_graphs(n) {
            let (h, rec) = extract_graph(&StabilizerTableau::from_graph(&g).unwrap());
            assert_eq!(h, g);
            assert!(rec.is_identity());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extraction_round_trips(g in arb_graph(0, 8)) {
        let (h, rec) = extract_graph(&StabilizerTableau::from_graph(&g).unwrap());
        prop_assert_eq!(h, g);
        prop_assert!(rec.is_identity());
    }

    #[test]
    fn extraction_undoes_local_cliffords(
        g in arb_graph(1, 8),
        gates in prop::collection::vec((0usize..8, arb_gate()), 0..24),
    ) {
        let n = g.vertex_count();
        let mut t = StabilizerTableau::from_graph(&g).unwrap();
        for (q, gate) in gates {
            t.apply_gate(q % n, gate);
        }
        t.validate().unwrap();
        let (h, rec) = extract_graph(&t);
        let mut back = StabilizerTableau::from_graph(&h).unwrap();
        rec.apply(&mut back).unwrap();
        prop_assert!(back.same_state(&t));
        prop_assert!(lc_equivalent(&g, &h).unwrap());
        let aligned = align_to_graph(&t, &g).unwrap().expect("same orbit");
        prop_assert!(aligned.same_state(&StabilizerTableau::from_graph(&g).unwrap()));
    }

    #[test]
    fn measurement_keeps_tableaus_valid(g in arb_graph(1, 8), v in 0u32..8, basis in arb_basis()) {
        let v = VertexId::plain(v % g.vertex_count() as u32);
        let t = StabilizerTableau::from_graph(&g).unwrap();
        for b in t.measure_pauli(&v, basis).unwrap() {
            b.tableau.validate().unwrap();
            b.tableau.discard_qubit(&v).unwrap().validate().unwrap();
        }
    }

    /// Project the dense state onto each outcome and check the branch
    /// tableau stabilizes the projected state with the stated probability.
    #[test]
    fn measurement_branches_match_projected_statevector(g in arb_graph(1, 7), v in 0u32..7, basis in arb_basis()) {
        let n = g.vertex_count();
        let v = VertexId::plain(v % n as u32);
        let t = StabilizerTableau::from_graph(&g).unwrap();
        let q = t.index_of(&v).unwrap();
        let psi = statevector_from_graph(&g).unwrap();
        let p = PauliString::single(q, basis);
        let branches = t.measure_pauli(&v, basis).unwrap();
        for sign in [1.0, -1.0] {
            let pp = apply_pauli(&p, &psi);
            let projected: Vec<Complex64> = psi.iter().zip(&pp).map(|(a, b)| (a + b * sign) * 0.5).collect();
            let prob = norm(&projected).powi(2);
            let outcome = if sign > 0.0 { qlan_topo::oracle::Sign::Plus } else { qlan_topo::oracle::Sign::Minus };
            match branches.iter().find(|b| b.outcome == outcome) {
                Some(b) => {
                    prop_assert!((prob - b.probability.value()).abs() < 1e-9);
                    let normed: Vec<Complex64> = projected.iter().map(|a| a / prob.sqrt()).collect();
                    prop_assert!(stabilizer_residual(&b.tableau, &normed) < 1e-9);
                }
                None => prop_assert!(prob < 1e-12),
            }
        }
        if branches.len() == 1 {
            prop_assert_eq!(branches[0].probability, Probability::Certain);
        }
    }

    #[test]
    fn generators_stabilize_statevector(g in arb_graph(1, 10)) {
        let psi = statevector_from_graph(&g).unwrap();
        prop_assert!((norm(&psi) - 1.0).abs() < 1e-12);
        prop_assert!(stabilizer_residual(&StabilizerTableau::from_graph(&g).unwrap(), &psi) < 1e-9);
    }

    #[test]
    fn lc_equivalence_behaves_like_an_equivalence(g in arb_graph(1, 5), picks in prop::collection::vec(any::<prop::sample::Index>(), 2)) {
        let orbit = lc_orbit(&g, 100_000).unwrap();
        prop_assert!(!orbit.truncated);
        let a = &orbit.members[picks[0].index(orbit.len())];
        let b = &orbit.members[picks[1].index(orbit.len())];
        prop_assert!(lc_equivalent(&g, &g).unwrap());
        prop_assert!(lc_equivalent(a, &g).unwrap());
        prop_assert!(lc_equivalent(a, b).unwrap() && lc_equivalent(b, a).unwrap());
        // closure: every local complement of a member is a member
        for v in a.vertices() {
            let next = a.local_complement(v).unwrap();
            prop_assert!(orbit.members.contains(&next));
        }
    }
}

#[test]
fn non_equivalence_is_symmetric_on_four_vertices() {
    let graphs = all_graphs(4);
    for (i, a) in graphs.iter().enumerate().step_by(5) {
        for b in graphs.iter().skip(i).step_by(7) {
            assert_eq!(lc_equivalent(a, b).unwrap(), lc_equivalent(b, a).unwrap(), "{a} vs {b}");
        }
    }
}
