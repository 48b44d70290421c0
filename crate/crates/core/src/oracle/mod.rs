//! Independent stabilizer-simulation oracle.
//!
//! The rewrite engine only manipulates graphs. This module simulates the
//! actual states: graph states as stabilizer tableaus, projective Pauli
//! measurements with both outcomes, reduction back to a graph state, and
//! local-Clifford equivalence by orbit search. A dense statevector backend
//! checks the tableau engine itself.

pub mod certify;
pub mod extract;
pub mod lc;
pub mod pauli;
pub mod statevector;
pub mod suite;
pub mod tableau;

use thiserror::Error;

use crate::graph::{GraphError, VertexId};
use crate::measurement::MeasurementError;
use crate::recipes::RecipeError;

pub use certify::{certify_measurement, certify_sequence, MeasurementCertificate, SequenceCertificate};
pub use extract::{align_to_graph, extract_graph, CliffordRecord};
pub use lc::{lc_equivalent, lc_orbit, LcOrbit};
pub use pauli::{Gate, PauliString, Sign};
pub use statevector::statevector_from_graph;
pub use tableau::{OutcomeBranch, Probability, StabilizerTableau};

/// Largest state the tableau engine accepts unless told otherwise.
pub const ORACLE_LIMIT: usize = 16;
/// Pauli strings are packed into 64-bit masks.
pub const HARD_QUBIT_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} has {size} qubits, above the limit of {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("qubit {0} is not part of the state")]
    UnmappedQubit(VertexId),
    #[error("qubit {0} is still entangled with the rest of the state")]
    NotFactorized(VertexId),
    #[error("orbit search stopped after {cap} graphs without a verdict")]
    CapExceeded { cap: usize },
    #[error("graphs are on different vertex sets")]
    VertexSetMismatch,
    #[error("generators do not form a valid stabilizer state: {0}")]
    InvalidTableau(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Measurement(#[from] MeasurementError),
    #[error(transparent)]
    Recipe(#[from] Box<RecipeError>),
}

impl From<RecipeError> for OracleError {
    fn from(e: RecipeError) -> Self {
        OracleError::Recipe(Box::new(e))
    }
}
