//! Dense statevectors of graph states, used to check the tableau engine.

use num_complex::Complex64;

use super::pauli::PauliString;
use super::tableau::StabilizerTableau;
use super::OracleError;
use crate::graph::Graph;

pub const STATEVECTOR_LIMIT: usize = 12;

/// Amplitudes of `∏_{(a,b) ∈ E} CZ_ab |+⟩^⊗n`. Qubit `k` (the `k`-th vertex
/// in ascending order) is bit `k` of the basis index.
pub fn statevector_from_graph(g: &Graph) -> Result<Vec<Complex64>, OracleError> {
    let n = g.vertex_count();
    if n > STATEVECTOR_LIMIT {
        return Err(OracleError::TooLarge { what: "statevector", size: n, limit: STATEVECTOR_LIMIT });
    }
    let vertices: Vec<_> = g.vertices().copied().collect();
    let index = |v| vertices.binary_search(&v).expect("vertex of g");
    let edges: Vec<u64> = g.edges().map(|(a, b)| (1u64 << index(a)) | (1u64 << index(b))).collect();
    let norm = 0.5f64.powf(n as f64 / 2.0);
    Ok((0u64..1 << n)
        .map(|b| {
            let parity = edges.iter().filter(|&&e| b & e == e).count() % 2;
            Complex64::new(if parity == 0 { norm } else { -norm }, 0.0)
        })
        .collect())
}

/// `P |ψ⟩` for a Pauli string over the same qubit order.
pub fn apply_pauli(p: &PauliString, psi: &[Complex64]) -> Vec<Complex64> {
    let phase = [Complex64::new(1.0, 0.0), Complex64::i(), Complex64::new(-1.0, 0.0), -Complex64::i()][p.phase as usize];
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (b, amp) in psi.iter().enumerate() {
        let b = b as u64;
        let sign = if (p.z & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[(b ^ p.x) as usize] = amp * phase * sign;
    }
    out
}

/// Largest `‖Gψ − ψ‖` over the tableau's generators.
pub fn stabilizer_residual(t: &StabilizerTableau, psi: &[Complex64]) -> f64 {
    t.generators()
        .iter()
        .map(|g| {
            apply_pauli(g, psi).iter().zip(psi).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
        })
        .fold(0.0, f64::max)
}
