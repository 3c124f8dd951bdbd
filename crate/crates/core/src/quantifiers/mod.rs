//! Photon statistics, squeezing and correlation measures of the thermal
//! state.

mod entanglement;
mod field;
mod information;
pub mod minimize;
mod photon;
mod report;

pub use entanglement::{
    concurrence, negativity, negativity_qubits_field, negativity_trace_norm, Bipartition,
};
pub use field::{squeezing, squeezing_thermal, Squeezing, MEAN_TOL};
pub use information::{
    coherence_re, lqu, measured_conditional_entropy, min_conditional_entropy, mutual_information,
    quantum_discord, MeasuredSide, DISCORD_GRID,
};
pub use photon::{
    bare_g2, dressed_g2, dressed_g2_thermal, DressedJumpOperator, PhotonStatistics, GUARD_LEVELS,
    X_NUM_FLOOR,
};
pub use report::{
    choose_cutoff, evaluate_all, evaluate_eigensystem, qubit_state, EvaluateOptions,
    QuantifierReport, Quantity,
};
