//! Pauli strings in binary-symplectic form with exact phases.
//!
//! A string stands for `i^phase · ∏_q X_q^{x_q} Z_q^{z_q}`, with the X factor
//! written before the Z factor on every qubit. `Y = i·X·Z` is therefore
//! `x = z = 1` with one extra power of `i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::measurement::PauliBasis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x: u64,
    pub z: u64,
    /// Exponent of `i`, reduced mod 4.
    pub phase: u8,
}

/// Sign of a Hermitian Pauli operator relative to its unsigned X/Y/Z product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Single-qubit Clifford gates used for basis changes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    H,
    S,
    Sdg,
    X,
    Z,
}

impl Gate {
    pub fn inverse(self) -> Gate {
        match self {
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            g => g,
        }
    }
}

fn bit(q: usize) -> u64 {
    1u64 << q
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0, phase: 0 };

    /// `+X_q`, `+Y_q` or `+Z_q`.
    pub fn single(q: usize, basis: PauliBasis) -> Self {
        match basis {
            PauliBasis::X => PauliString { x: bit(q), z: 0, phase: 0 },
            PauliBasis::Y => PauliString { x: bit(q), z: bit(q), phase: 1 },
            PauliBasis::Z => PauliString { x: 0, z: bit(q), phase: 0 },
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn neg(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    pub fn with_sign(self, sign: Sign) -> Self {
        match sign {
            Sign::Plus => self,
            Sign::Minus => self.neg(),
        }
    }

    fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    pub fn is_hermitian(&self) -> bool {
        u32::from(self.phase) % 2 == self.y_count() % 2
    }

    /// Sign relative to the plain X/Y/Z product. Only meaningful for
    /// Hermitian strings.
    pub fn sign(&self) -> Sign {
        let rel = (u32::from(self.phase) + 4 * 16 - self.y_count()) % 4;
        if rel == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Same operator up to an overall sign or factor of `i`.
    pub fn same_bits(&self, other: &PauliString) -> bool {
        self.x == other.x && self.z == other.z
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        let swaps = (self.z & other.x).count_ones();
        PauliString {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: ((u32::from(self.phase) + u32::from(other.phase) + 2 * swaps) % 4) as u8,
        }
    }

    /// Conjugate by `gate` acting on qubit `q`: `P ↦ U P U†`.
    pub fn conjugate(&mut self, q: usize, gate: Gate) {
        let b = bit(q);
        let xq = u32::from(self.x & b != 0);
        let zq = u32::from(self.z & b != 0);
        let mut phase = u32::from(self.phase);
        match gate {
            Gate::H => {
                phase += 2 * (xq & zq);
                self.x = (self.x & !b) | if zq == 1 { b } else { 0 };
                self.z = (self.z & !b) | if xq == 1 { b } else { 0 };
            }
            Gate::S => {
                phase += xq;
                if xq == 1 {
                    self.z ^= b;
                }
            }
            Gate::Sdg => {
                phase += 3 * xq;
                if xq == 1 {
                    self.z ^= b;
                }
            }
            Gate::X => phase += 2 * zq,
            Gate::Z => phase += 2 * xq,
        }
        self.phase = (phase % 4) as u8;
    }

    /// Drop qubit `q`, shifting higher qubits down by one. The caller must
    /// make sure the string acts trivially on `q`.
    pub fn remove_qubit(&self, q: usize) -> PauliString {
        debug_assert_eq!(self.support() & bit(q), 0);
        let squeeze = |m: u64| {
            let low = m & (bit(q) - 1);
            let high = if q + 1 >= 64 { 0 } else { (m >> (q + 1)) << q };
            low | high
        };
        PauliString { x: squeeze(self.x), z: squeeze(self.z), phase: self.phase }
    }

    /// Letter on qubit `q`: `I`, `X`, `Y` or `Z`.
    pub fn letter(&self, q: usize) -> char {
        match (self.x & bit(q) != 0, self.z & bit(q) != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    /// Signed letter string over `n` qubits, for example `-XZI`.
    pub fn render(&self, n: usize) -> String {
        let mut out = String::with_capacity(n + 2);
        if self.is_hermitian() {
            out.push_str(if self.sign() == Sign::Plus { "+" } else { "-" });
        } else {
            let rel = (u32::from(self.phase) + 64 - self.y_count()) % 4;
            out.push_str(if rel == 1 { "+i" } else { "-i" });
        }
        out.extend((0..n).map(|q| self.letter(q)));
        out
    }
}
