//! Thermal equilibrium of two qubits coupled to a single bosonic mode at
//! arbitrary coupling strength.
//!
//! The crate diagonalizes the two-qubit Rabi Hamiltonian in a truncated Fock
//! basis, builds the Gibbs state, checks it against the steady state of a
//! master equation written in the dressed eigenbasis and evaluates photon
//! statistics and qubit correlation measures over parameter grids.

pub mod dissipator;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod model;
pub mod qops;
pub mod quantifiers;
pub mod selftest;
pub mod thermal;

pub use error::{Error, Result};
