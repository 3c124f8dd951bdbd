//! The two-qubit Rabi Hamiltonian, its spectrum and analytic limits.

mod cutoff;
mod eigen;
mod hamiltonian;
mod limits;
mod params;

pub use cutoff::{converge_cutoff, initial_cutoff, values_agree, Converged, CutoffPolicy};
pub use eigen::{diagonalize, diagonalize_model, EigenSystem};
pub use hamiltonian::{build_hamiltonian, sector_hamiltonian, sector_indices};
pub use limits::{
    adiabatic_eigenstates, dispersive_nonrwa, dispersive_rwa, displacement, dsc_spectrum,
    nonrwa_coupling, rwa_coupling, AdiabaticState, DispersiveModel,
};
pub use params::ModelParams;
