//! Parameter sweeps over one or two axes with CSV and PGM output.

mod config;
mod output;
mod sweep;

pub use config::{
    Axis, AxisName, BathSection, ModelSection, OutputSection, ReferenceUnit, Scale, SweepConfig,
    SweepSection,
};
pub use output::{
    csv_header, emit_csv, emit_heatmap, heatmap, sidecar_path, write_csv, write_outputs, Field,
    Heatmap, OutputFiles,
};
pub use sweep::{run_sweep, PointFailure, SweepResult, SweepRow};
