use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Frequencies and couplings of the two-qubit Rabi Hamiltonian, in units of
/// a reference frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub g1: f64,
    pub g2: f64,
}

impl ModelParams {
    pub fn new(omega: f64, delta1: f64, delta2: f64, g1: f64, g2: f64) -> Result<Self> {
        let p = Self {
            omega,
            delta1,
            delta2,
            g1,
            g2,
        };
        p.validate()?;
        Ok(p)
    }

    /// Identical qubits with equal couplings.
    pub fn symmetric(omega: f64, delta: f64, g: f64) -> Result<Self> {
        Self::new(omega, delta, delta, g, g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega, self.delta1, self.delta2, self.g1, self.g2]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameter(format!(
                "non-finite value in {self}"
            )));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega must be > 0, got {}",
                self.omega
            )));
        }
        if self.delta1 < 0.0 || self.delta2 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "qubit splittings must be >= 0, got {} and {}",
                self.delta1, self.delta2
            )));
        }
        if self.g1 < 0.0 || self.g2 < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "couplings must be >= 0, got {} and {}",
                self.g1, self.g2
            )));
        }
        Ok(())
    }

    /// Same model with the qubit labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            omega: self.omega,
            delta1: self.delta2,
            delta2: self.delta1,
            g1: self.g2,
            g2: self.g1,
        }
    }

    pub fn with_couplings(&self, g1: f64, g2: f64) -> Self {
        Self { g1, g2, ..*self }
    }

    pub fn g_plus(&self) -> f64 {
        self.g1 + self.g2
    }

    pub fn g_minus(&self) -> f64 {
        self.g1 - self.g2
    }

    pub fn is_symmetric(&self) -> bool {
        self.delta1 == self.delta2 && self.g1 == self.g2
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "omega={} delta1={} delta2={} g1={} g2={}",
            self.omega, self.delta1, self.delta2, self.g1, self.g2
        )
    }
}
