use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One tensor factor of the composite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subsystem {
    Qubit1,
    Qubit2,
    Boson,
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subsystem::Qubit1 => "qubit1",
            Subsystem::Qubit2 => "qubit2",
            Subsystem::Boson => "boson",
        };
        f.write_str(s)
    }
}

/// Ordered list of tensor factors with their local dimensions.
pub type Factors = Vec<(Subsystem, usize)>;

/// Truncated composite space qubit 1 ⊗ qubit 2 ⊗ boson.
///
/// Basis index of |q1, q2, n⟩ is `(2 q1 + q2) n_fock + n` with `q = 0` for
/// |g⟩ and `q = 1` for |e⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    n_fock: usize,
}

impl HilbertSpace {
    pub const N_QUBITS: usize = 2;

    pub fn new(n_fock: usize) -> Result<Self> {
        if n_fock < 2 {
            return Err(Error::InvalidSpace(format!(
                "Fock cutoff must be at least 2, got {n_fock}"
            )));
        }
        Ok(Self { n_fock })
    }

    pub fn n_fock(&self) -> usize {
        self.n_fock
    }

    pub fn dim(&self) -> usize {
        4 * self.n_fock
    }

    #[inline]
    pub fn index(&self, q1: usize, q2: usize, n: usize) -> usize {
        debug_assert!(q1 < 2 && q2 < 2 && n < self.n_fock);
        (2 * q1 + q2) * self.n_fock + n
    }

    /// Inverse of [`HilbertSpace::index`].
    #[inline]
    pub fn decompose(&self, i: usize) -> (usize, usize, usize) {
        let qq = i / self.n_fock;
        (qq / 2, qq % 2, i % self.n_fock)
    }

    /// Total excitation number n + q1 + q2 of a basis state.
    #[inline]
    pub fn excitations(&self, i: usize) -> usize {
        let (q1, q2, n) = self.decompose(i);
        q1 + q2 + n
    }

    pub fn factors(&self) -> Factors {
        vec![
            (Subsystem::Qubit1, 2),
            (Subsystem::Qubit2, 2),
            (Subsystem::Boson, self.n_fock),
        ]
    }
}
