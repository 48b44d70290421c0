//! Stabilizer tableaus over labeled qubits.

use serde::{Deserialize, Serialize};

use super::pauli::{Gate, PauliString, Sign};
use super::{OracleError, HARD_QUBIT_LIMIT, ORACLE_LIMIT};
use crate::graph::{Graph, VertexId};
use crate::measurement::PauliBasis;

/// `n` independent, commuting, Hermitian generators over `n` qubits. Qubit
/// `k` is `qubits[k]`; the list is kept in ascending vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    qubits: Vec<VertexId>,
    generators: Vec<PauliString>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Probability {
    #[serde(rename = "1")]
    Certain,
    #[serde(rename = "1/2")]
    Half,
}

impl Probability {
    pub fn value(self) -> f64 {
        match self {
            Probability::Certain => 1.0,
            Probability::Half => 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeBranch {
    pub outcome: Sign,
    pub probability: Probability,
    pub tableau: StabilizerTableau,
}

/// Row-reduced basis of a set of Pauli strings, remembering which input
/// strings make up each reduced row.
struct Reducer {
    rows: Vec<(u128, u64, u32)>,
}

fn pack(p: &PauliString) -> u128 {
    u128::from(p.x) | (u128::from(p.z) << 64)
}

impl Reducer {
    fn new() -> Self {
        Reducer { rows: Vec::new() }
    }

    /// Reduce `v` against the stored rows; returns the remainder and the
    /// combination of inputs that was folded in.
    fn reduce(&self, mut v: u128, mut combo: u64) -> (u128, u64) {
        for (row, rc, pivot) in &self.rows {
            if v >> pivot & 1 == 1 {
                v ^= row;
                combo ^= rc;
            }
        }
        (v, combo)
    }

    /// Insert input number `idx`; false if it was dependent.
    fn insert(&mut self, v: u128, idx: usize) -> bool {
        let (v, combo) = self.reduce(v, 1u64 << idx);
        if v == 0 {
            return false;
        }
        self.rows.push((v, combo, v.trailing_zeros()));
        true
    }
}

fn product(generators: &[PauliString], combo: u64) -> PauliString {
    let mut acc = PauliString::IDENTITY;
    for (k, g) in generators.iter().enumerate() {
        if combo >> k & 1 == 1 {
            acc = acc.mul(g);
        }
    }
    acc
}

impl StabilizerTableau {
    /// Generators `X_v ∏_{u ∈ N(v)} Z_u`, one per vertex.
    pub fn from_graph(g: &Graph) -> Result<Self, OracleError> {
        Self::from_graph_with_limit(g, ORACLE_LIMIT)
    }

    pub fn from_graph_with_limit(g: &Graph, limit: usize) -> Result<Self, OracleError> {
        let limit = limit.min(HARD_QUBIT_LIMIT);
        if g.vertex_count() > limit {
            return Err(OracleError::TooLarge { what: "graph", size: g.vertex_count(), limit });
        }
        let qubits: Vec<VertexId> = g.vertices().copied().collect();
        let index = |v: &VertexId| qubits.binary_search(v).expect("vertex of g");
        let generators = qubits
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let z = g.neighborhood(v).expect("vertex of g").iter().fold(0u64, |m, u| m | 1 << index(u));
                PauliString { x: 1 << k, z, phase: 0 }
            })
            .collect();
        Ok(StabilizerTableau { qubits, generators })
    }

    /// Build from explicit generators, checking they describe a pure state.
    pub fn from_generators(qubits: Vec<VertexId>, generators: Vec<PauliString>) -> Result<Self, OracleError> {
        if qubits.len() > HARD_QUBIT_LIMIT {
            return Err(OracleError::TooLarge { what: "tableau", size: qubits.len(), limit: HARD_QUBIT_LIMIT });
        }
        if !qubits.windows(2).all(|w| w[0] < w[1]) {
            return Err(OracleError::InvalidTableau("qubits must be strictly ascending".into()));
        }
        let t = StabilizerTableau { qubits, generators };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let n = self.qubits.len();
        let bad = |m: String| Err(OracleError::InvalidTableau(m));
        if self.generators.len() != n {
            return bad(format!("{} generators for {n} qubits", self.generators.len()));
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut reducer = Reducer::new();
        for (k, g) in self.generators.iter().enumerate() {
            if g.support() & !mask != 0 {
                return bad(format!("generator {k} acts outside the register"));
            }
            if !g.is_hermitian() {
                return bad(format!("generator {k} is not Hermitian"));
            }
            if let Some(j) = self.generators[..k].iter().position(|h| !h.commutes_with(g)) {
                return bad(format!("generators {j} and {k} anticommute"));
            }
            if !reducer.insert(pack(g), k) {
                return bad(format!("generator {k} is dependent on earlier ones"));
            }
        }
        Ok(())
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[VertexId] {
        &self.qubits
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn index_of(&self, v: &VertexId) -> Result<usize, OracleError> {
        self.qubits.binary_search(v).map_err(|_| OracleError::UnmappedQubit(*v))
    }

    pub fn apply_gate(&mut self, q: usize, gate: Gate) {
        for g in &mut self.generators {
            g.conjugate(q, gate);
        }
    }

    pub fn apply_gate_at(&mut self, v: &VertexId, gate: Gate) -> Result<(), OracleError> {
        let q = self.index_of(v)?;
        self.apply_gate(q, gate);
        Ok(())
    }

    /// Replace generator `a` by `generators[a] · generators[b]`.
    pub(crate) fn row_mul(&mut self, a: usize, b: usize) {
        self.generators[a] = self.generators[a].mul(&self.generators[b]);
    }

    pub(crate) fn row_swap(&mut self, a: usize, b: usize) {
        self.generators.swap(a, b);
    }

    /// The element of the stabilizer group with the same X/Z bits as `p`,
    /// with its exact phase, or `None` if no group element has those bits.
    pub fn group_element(&self, p: &PauliString) -> Option<PauliString> {
        let mut reducer = Reducer::new();
        for (k, g) in self.generators.iter().enumerate() {
            reducer.insert(pack(g), k);
        }
        let (rest, combo) = reducer.reduce(pack(p), 0);
        (rest == 0).then(|| product(&self.generators, combo))
    }

    /// `Some(Plus)` if `p` stabilizes the state, `Some(Minus)` if `-p` does,
    /// `None` if neither is in the group.
    pub fn group_sign_of(&self, p: &PauliString) -> Option<Sign> {
        let e = self.group_element(p)?;
        Some(if e.phase == p.phase { Sign::Plus } else { Sign::Minus })
    }

    /// Both tableaus describe the same state on the same qubits.
    pub fn same_state(&self, other: &StabilizerTableau) -> bool {
        self.qubits == other.qubits
            && other.generators.iter().all(|g| self.group_sign_of(g) == Some(Sign::Plus))
    }

    /// Projective measurement of the single-qubit Pauli `basis` on `v`.
    pub fn measure_pauli(&self, v: &VertexId, basis: PauliBasis) -> Result<Vec<OutcomeBranch>, OracleError> {
        let q = self.index_of(v)?;
        let p = PauliString::single(q, basis);
        let anti: Vec<usize> = (0..self.generators.len()).filter(|&k| !self.generators[k].commutes_with(&p)).collect();
        let Some((&first, rest)) = anti.split_first() else {
            let e = self.group_element(&p).expect("a commuting Pauli is in the group up to sign");
            let outcome = if e.phase == p.phase { Sign::Plus } else { Sign::Minus };
            return Ok(vec![OutcomeBranch { outcome, probability: Probability::Certain, tableau: self.clone() }]);
        };
        let mut base = self.clone();
        for &k in rest {
            base.row_mul(k, first);
        }
        let branch = |outcome: Sign| {
            let mut t = base.clone();
            t.generators[first] = p.with_sign(outcome);
            OutcomeBranch { outcome, probability: Probability::Half, tableau: t }
        };
        Ok(vec![branch(Sign::Plus), branch(Sign::Minus)])
    }

    /// Remove qubit `v`, which must be in a product state with the rest.
    pub fn discard_qubit(&self, v: &VertexId) -> Result<StabilizerTableau, OracleError> {
        let q = self.index_of(v)?;
        let here = 1u64 << q;
        let local = (u128::from(here)) | (u128::from(here) << 64);
        // Find a group element supported only on q: eliminate every other column.
        let mut reducer = Reducer::new();
        let mut local_elem = None;
        for (k, g) in self.generators.iter().enumerate() {
            let (rest, combo) = reducer.reduce(pack(g) & !local, 1u64 << k);
            if rest == 0 {
                local_elem = Some(product(&self.generators, combo));
                break;
            }
            reducer.rows.push((rest, combo, rest.trailing_zeros()));
        }
        let e = local_elem.ok_or(OracleError::NotFactorized(*v))?;
        // Every generator commutes with e, so its part on q is trivial or
        // equal to e's; multiplying by e clears it.
        let mut keep = Reducer::new();
        let mut survivors = Vec::with_capacity(self.generators.len() - 1);
        for g in &self.generators {
            let g = if g.support() & here != 0 { g.mul(&e) } else { *g };
            debug_assert_eq!(g.support() & here, 0);
            if keep.insert(pack(&g), survivors.len()) {
                survivors.push(g.remove_qubit(q));
            }
        }
        let mut qubits = self.qubits.clone();
        qubits.remove(q);
        debug_assert_eq!(survivors.len(), qubits.len());
        Ok(StabilizerTableau { qubits, generators: survivors })
    }

    /// Generators rendered as signed letter strings.
    pub fn render(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render(self.qubits.len())).collect()
    }
}

/// Convenience wrapper for [`StabilizerTableau::from_graph`].
pub fn tableau_from_graph(g: &Graph) -> Result<StabilizerTableau, OracleError> {
    StabilizerTableau::from_graph(g)
}
