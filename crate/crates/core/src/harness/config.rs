use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dissipator::{BathParams, Channel, Route};
use crate::error::{Error, Result};
use crate::model::{CutoffPolicy, ModelParams};
use crate::quantifiers::{MeasuredSide, Quantity};
use crate::thermal::ThermalSpec;

/// Parameter that an axis sweeps. `g` and `delta` set both qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxisName {
    #[serde(rename = "g")]
    G,
    #[serde(rename = "g1")]
    G1,
    #[serde(rename = "g2")]
    G2,
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "delta1")]
    Delta1,
    #[serde(rename = "delta2")]
    Delta2,
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "T")]
    T,
}

impl AxisName {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisName::G => "g",
            AxisName::G1 => "g1",
            AxisName::G2 => "g2",
            AxisName::Delta => "delta",
            AxisName::Delta1 => "delta1",
            AxisName::Delta2 => "delta2",
            AxisName::Omega => "omega",
            AxisName::T => "T",
        }
    }

    /// Model fields written by this axis.
    fn targets(self) -> &'static [&'static str] {
        match self {
            AxisName::G => &["g1", "g2"],
            AxisName::G1 => &["g1"],
            AxisName::G2 => &["g2"],
            AxisName::Delta => &["delta1", "delta2"],
            AxisName::Delta1 => &["delta1"],
            AxisName::Delta2 => &["delta2"],
            AxisName::Omega => &["omega"],
            AxisName::T => &["T"],
        }
    }
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// One swept parameter; `points` values from `min` to `max` inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Axis {
    pub fn linear(name: AxisName, min: f64, max: f64, points: usize) -> Self {
        Self {
            name,
            min,
            max,
            points,
            scale: Scale::Linear,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Config(format!(
                "axis {}: points must be >= 2",
                self.name
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::Config(format!(
                "axis {}: need finite min < max, got {} and {}",
                self.name, self.min, self.max
            )));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(Error::Config(format!(
                "axis {}: log scale requires min > 0",
                self.name
            )));
        }
        Ok(())
    }

    /// Grid values; the end points are exact.
    pub fn values(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == last {
                    return self.max;
                }
                let t = i as f64 / last as f64;
                match self.scale {
                    Scale::Linear => self.min + t * (self.max - self.min),
                    Scale::Log => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                }
            })
            .collect()
    }
}

/// Frequency that is set to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReferenceUnit {
    #[default]
    Omega,
    Delta,
}

/// Fixed model values; swept fields are overwritten per point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub omega: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub g1: f64,
    pub g2: f64,
    pub temperature: f64,
    pub reference_unit: ReferenceUnit,
}

impl Default for ModelSection {
    fn default() -> Self {
        Self {
            omega: 1.0,
            delta1: 1.0,
            delta2: 1.0,
            g1: 0.0,
            g2: 0.0,
            temperature: 0.1,
            reference_unit: ReferenceUnit::Omega,
        }
    }
}

/// Bath strength and cutoff as multiples of the local mode frequency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BathSection {
    pub alpha_per_omega: f64,
    pub omega_c_per_omega: f64,
    pub channels: Vec<Channel>,
    pub route: Route,
    /// Liouvillian level count; automatic when absent.
    pub levels: Option<usize>,
}

impl Default for BathSection {
    fn default() -> Self {
        Self {
            alpha_per_omega: BathParams::ALPHA_PER_OMEGA,
            omega_c_per_omega: BathParams::OMEGA_C_PER_OMEGA,
            channels: Channel::ALL.to_vec(),
            route: Route::Auto,
            levels: None,
        }
    }
}

impl BathSection {
    pub fn bath_for(&self, omega: f64, temperature: f64) -> Result<BathParams> {
        BathParams::new(
            self.alpha_per_omega * omega,
            self.omega_c_per_omega * omega,
            temperature,
            self.channels.clone(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub axes: Vec<Axis>,
    pub quantities: Vec<Quantity>,
    pub include_gap: bool,
    pub workers: usize,
    pub cutoff: CutoffPolicy,
    pub prune_tol: f64,
    pub discord_side: MeasuredSide,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self {
            axes: Vec::new(),
            quantities: Vec::new(),
            include_gap: false,
            workers: 1,
            cutoff: CutoffPolicy::default(),
            prune_tol: ThermalSpec::DEFAULT_PRUNE_TOL,
            discord_side: MeasuredSide::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<PathBuf>,
    pub csv: String,
    /// Fields rendered as PGM heatmaps (two-axis sweeps only).
    pub heatmaps: Vec<String>,
    /// Fill the wall_ms column; off by default so that output is
    /// reproducible byte for byte.
    pub record_wall_time: bool,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            dir: None,
            csv: "sweep.csv".into(),
            heatmaps: Vec::new(),
            record_wall_time: false,
        }
    }
}

/// Complete sweep description.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub model: ModelSection,
    pub bath: BathSection,
    pub sweep: SweepSection,
    pub output: OutputSection,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let c: SweepConfig = serde_json::from_str(text)
            .map_err(|e| Error::Config(format!("config parse error: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Quantities in report declaration order without duplicates.
    pub fn quantities(&self) -> Vec<Quantity> {
        let set: BTreeSet<Quantity> = self.sweep.quantities.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn validate(&self) -> Result<()> {
        let axes = &self.sweep.axes;
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::Config(format!(
                "one or two axes required, got {}",
                axes.len()
            )));
        }
        let mut written = BTreeSet::new();
        for a in axes {
            a.validate()?;
            for t in a.name.targets() {
                if !written.insert(*t) {
                    return Err(Error::Config(format!(
                        "axis {} overlaps another axis",
                        a.name
                    )));
                }
            }
        }
        if self.sweep.workers == 0 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        ThermalSpec::with_prune_tol(self.model.temperature, self.sweep.prune_tol)
            .map_err(|e| Error::Config(e.to_string()))?;
        if self.sweep.cutoff.hard_max < 2
            || self.sweep.cutoff.rel_tol <= 0.0
            || self.sweep.cutoff.abs_tol <= 0.0
        {
            return Err(Error::Config(
                "cutoff policy needs hard_max >= 2 and positive tolerances".into(),
            ));
        }
        if self.output.csv.is_empty() {
            return Err(Error::Config("output.csv must name a file".into()));
        }
        for h in &self.output.heatmaps {
            if axes.len() != 2 {
                return Err(Error::Config("heatmaps need exactly two axes".into()));
            }
            super::output::field_getter(h, self)?;
        }
        // Every grid point must be a valid parameter set.
        for idx in self.grid_indices() {
            let (p, t) = self.point(&idx);
            p.validate()
                .map_err(|e| Error::Config(format!("grid point {idx:?}: {e}")))?;
            if t.is_nan() || t < 0.0 {
                return Err(Error::Config(format!(
                    "grid point {idx:?}: temperature {t} < 0"
                )));
            }
            if self.sweep.include_gap {
                self.bath_for(&p, t)
                    .map_err(|e| Error::Config(format!("bath: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn axis_values(&self) -> Vec<Vec<f64>> {
        self.sweep.axes.iter().map(Axis::values).collect()
    }

    /// All index tuples, first axis slowest.
    pub fn grid_indices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for a in &self.sweep.axes {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..a.points).map(move |i| {
                        let mut v = prefix.clone();
                        v.push(i);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Model parameters and temperature at a grid index.
    pub fn point(&self, idx: &[usize]) -> (ModelParams, f64) {
        let m = &self.model;
        let mut p = ModelParams {
            omega: m.omega,
            delta1: m.delta1,
            delta2: m.delta2,
            g1: m.g1,
            g2: m.g2,
        };
        let mut t = m.temperature;
        for (a, &i) in self.sweep.axes.iter().zip(idx) {
            let v = a.values()[i];
            match a.name {
                AxisName::G => {
                    p.g1 = v;
                    p.g2 = v;
                }
                AxisName::G1 => p.g1 = v,
                AxisName::G2 => p.g2 = v,
                AxisName::Delta => {
                    p.delta1 = v;
                    p.delta2 = v;
                }
                AxisName::Delta1 => p.delta1 = v,
                AxisName::Delta2 => p.delta2 = v,
                AxisName::Omega => p.omega = v,
                AxisName::T => t = v,
            }
        }
        (p, t)
    }

    pub fn bath_for(&self, p: &ModelParams, temperature: f64) -> Result<BathParams> {
        self.bath.bath_for(p.omega, temperature)
    }

    /// The resolved configuration with the derived bath values stated
    /// explicitly.
    pub fn echo(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).unwrap_or(serde_json::Value::Null);
        if let Some(obj) = v.as_object_mut() {
            obj.insert(
                "resolved".into(),
                serde_json::json!({
                    "units": format!(
                        "all frequencies and temperatures in units of {}",
                        match self.model.reference_unit {
                            ReferenceUnit::Omega => "omega",
                            ReferenceUnit::Delta => "delta",
                        }
                    ),
                    "bath_alpha": format!("{} * omega", self.bath.alpha_per_omega),
                    "bath_omega_c": format!("{} * omega", self.bath.omega_c_per_omega),
                    "axis_values": self.axis_values(),
                    "grid_points": self.grid_indices().len(),
                }),
            );
        }
        v
    }
}
