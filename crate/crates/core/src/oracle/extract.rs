//! Reduction of a stabilizer state to a graph state by single-qubit Cliffords.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lc::{lc_path, DEFAULT_ORBIT_CAP};
use super::pauli::{Gate, Sign};
use super::tableau::StabilizerTableau;
use super::OracleError;
use crate::graph::{Graph, VertexId};

/// Per-qubit gate lists. Applying each list in order to the graph state
/// reproduces the original tableau.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordRecord {
    pub ops: BTreeMap<VertexId, Vec<Gate>>,
}

impl CliffordRecord {
    pub fn is_identity(&self) -> bool {
        self.ops.values().all(Vec::is_empty)
    }

    pub fn apply(&self, t: &mut StabilizerTableau) -> Result<(), OracleError> {
        for (v, gates) in &self.ops {
            for g in gates {
                t.apply_gate_at(v, *g)?;
            }
        }
        Ok(())
    }
}

/// Graph found by the reduction, the gates applied along the way (qubit
/// index, gate) and the reduced tableau, which equals the graph's own.
pub(crate) struct Reduction {
    pub graph: Graph,
    pub forward: Vec<(usize, Gate)>,
    pub tableau: StabilizerTableau,
}

fn has_x(t: &StabilizerTableau, row: usize, col: usize) -> bool {
    t.generators()[row].x >> col & 1 == 1
}

fn has_z(t: &StabilizerTableau, row: usize, col: usize) -> bool {
    t.generators()[row].z >> col & 1 == 1
}

/// Eliminate column `col` of the chosen block using rows `from..`; returns
/// whether a pivot was found (it is moved to row `from`). `clear` limits
/// which other rows are cleared.
fn eliminate(
    t: &mut StabilizerTableau,
    col: usize,
    from: usize,
    clear: std::ops::Range<usize>,
    test: fn(&StabilizerTableau, usize, usize) -> bool,
) -> bool {
    let n = t.qubit_count();
    let Some(k) = (from..n).find(|&k| test(t, k, col)) else { return false };
    t.row_swap(from, k);
    for j in clear {
        if j != from && test(t, j, col) {
            t.row_mul(j, from);
        }
    }
    true
}

pub(crate) fn reduce(t: &StabilizerTableau) -> Reduction {
    let n = t.qubit_count();
    let mut w = t.clone();
    let mut forward = Vec::new();
    let mut apply = |w: &mut StabilizerTableau, q: usize, g: Gate| {
        w.apply_gate(q, g);
        forward.push((q, g));
    };

    // Row-reduce the X block; the rows left without X part are Z-only.
    let mut rank = 0;
    for col in 0..n {
        if eliminate(&mut w, col, rank, 0..n, has_x) {
            rank += 1;
        }
    }
    // Hadamards on a pivot set of the Z-only rows make the X block invertible.
    let mut next = rank;
    let mut pivots = Vec::new();
    for col in 0..n {
        if next < n && eliminate(&mut w, col, next, rank..n, has_z) {
            pivots.push(col);
            next += 1;
        }
    }
    for q in pivots {
        apply(&mut w, q, Gate::H);
    }
    for col in 0..n {
        let ok = eliminate(&mut w, col, col, 0..n, has_x);
        assert!(ok, "X block of a valid stabilizer state is invertible after the basis change");
    }
    // X block is now the identity and the Z block symmetric. Clear Y's on the
    // diagonal, then fix signs.
    for q in 0..n {
        if has_z(&w, q, q) {
            apply(&mut w, q, Gate::S);
        }
    }
    for q in 0..n {
        if w.generators()[q].sign() == Sign::Minus {
            apply(&mut w, q, Gate::Z);
        }
    }
    let qubits = w.qubits().to_vec();
    let mut graph = Graph::with_vertices(qubits.iter().copied());
    for i in 0..n {
        for j in i + 1..n {
            if has_z(&w, i, j) {
                debug_assert!(has_z(&w, j, i));
                graph.add_edge(qubits[i], qubits[j]).expect("distinct qubits");
            }
        }
    }
    debug_assert_eq!(
        StabilizerTableau::from_graph_with_limit(&graph, n).map(|g| g.generators().to_vec()).ok(),
        Some(w.generators().to_vec())
    );
    Reduction { graph, forward, tableau: w }
}

/// Graph state reached from `t` by single-qubit Cliffords, and the record
/// that maps the graph state back to `t`.
pub fn extract_graph(t: &StabilizerTableau) -> (Graph, CliffordRecord) {
    let red = reduce(t);
    let mut record = CliffordRecord::default();
    for v in t.qubits() {
        record.ops.insert(*v, Vec::new());
    }
    for (q, g) in red.forward.iter().rev() {
        record.ops.get_mut(&t.qubits()[*q]).expect("qubit").push(g.inverse());
    }
    record.ops.retain(|_, gates| !gates.is_empty());
    (red.graph, record)
}

/// Apply single-qubit Cliffords that take `t` exactly to the graph state of
/// `target`. Returns `None` when `target` is not locally Clifford
/// equivalent to `t`.
///
/// Each local complementation at `v` is realized by `√X` on `v` and `√Z` on
/// its neighbors; the leftover Pauli frame is fixed generator by generator.
pub fn align_to_graph(t: &StabilizerTableau, target: &Graph) -> Result<Option<StabilizerTableau>, OracleError> {
    if !t.qubits().iter().copied().eq(target.vertices().copied()) {
        return Err(OracleError::VertexSetMismatch);
    }
    let Reduction { graph, tableau: mut w, .. } = reduce(t);
    let Some(path) = lc_path(&graph, target, DEFAULT_ORBIT_CAP)? else { return Ok(None) };
    let mut cur = graph;
    for v in &path {
        let q = w.index_of(v)?;
        w.apply_gate(q, Gate::H);
        w.apply_gate(q, Gate::S);
        w.apply_gate(q, Gate::H);
        for u in cur.neighborhood(v)?.clone() {
            w.apply_gate_at(&u, Gate::Sdg)?;
        }
        cur = cur.local_complement(v)?;
    }
    let want = StabilizerTableau::from_graph_with_limit(target, t.qubit_count())?;
    for (q, g) in want.generators().iter().enumerate() {
        match w.group_sign_of(g) {
            Some(Sign::Plus) => {}
            Some(Sign::Minus) => w.apply_gate(q, Gate::Z),
            None => {
                return Err(OracleError::InvalidTableau(format!(
                    "local complementation gates missed generator {}",
                    g.render(t.qubit_count())
                )))
            }
        }
    }
    if !w.same_state(&want) {
        return Err(OracleError::InvalidTableau("Pauli frame fix did not reach the target".into()));
    }
    Ok(Some(w))
}
