//! Operators and states on qubit 1 ⊗ qubit 2 ⊗ boson.

mod density;
mod operator;
mod space;
pub mod sparse;

pub use density::{entropy_bits, two_qubit_factors, DensityMatrix, Tolerances};
pub use operator::{
    annihilation, basis_ket, creation, excitation_number, field_quadrature, number,
    parity_operator, parity_sign, pauli, qubit_pair, Operator, Pauli,
};
pub use space::{Factors, HilbertSpace, Subsystem};
