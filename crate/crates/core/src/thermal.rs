//! Canonical Gibbs state of the full system.

use faer::Mat;
use num_complex::Complex64 as c64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::EigenSystem;
use crate::qops::DensityMatrix;

/// Temperature (k_B = 1) and the population below which levels are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalSpec {
    pub temperature: f64,
    pub prune_tol: f64,
}

impl ThermalSpec {
    pub const DEFAULT_PRUNE_TOL: f64 = 1e-14;

    pub fn new(temperature: f64) -> Result<Self> {
        Self::with_prune_tol(temperature, Self::DEFAULT_PRUNE_TOL)
    }

    pub fn with_prune_tol(temperature: f64, prune_tol: f64) -> Result<Self> {
        let s = Self {
            temperature,
            prune_tol,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.temperature.is_finite() || self.temperature < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "temperature must be finite and >= 0, got {}",
                self.temperature
            )));
        }
        if !(self.prune_tol > 0.0 && self.prune_tol <= 1e-6) {
            return Err(Error::InvalidParameter(format!(
                "prune_tol must lie in (0, 1e-6], got {}",
                self.prune_tol
            )));
        }
        Ok(())
    }
}

/// Number of states in the ground cluster (within 1e-9 of the spectral scale).
pub fn ground_multiplicity(eigs: &EigenSystem) -> usize {
    let e = eigs.energies();
    let width = 1e-9 * eigs.scale();
    e.iter().take_while(|&&x| x - e[0] < width).count()
}

/// Unpruned Boltzmann weights P_k = e^{−(E_k−E₀)/T}/Z. At T = 0 the weight is
/// shared equally by the ground cluster.
pub fn populations(eigs: &EigenSystem, spec: &ThermalSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let e = eigs.energies();
    if e.is_empty() {
        return Ok(Vec::new());
    }
    let mut w: Vec<f64> = if spec.temperature == 0.0 {
        let g = ground_multiplicity(eigs);
        (0..e.len())
            .map(|k| if k < g { 1.0 } else { 0.0 })
            .collect()
    } else {
        e.iter()
            .map(|&x| (-(x - e[0]) / spec.temperature).exp())
            .collect()
    };
    let z: f64 = w.iter().sum();
    for x in &mut w {
        *x /= z;
    }
    Ok(w)
}

/// Thermal state kept in spectral form: retained levels and their
/// renormalized weights.
#[derive(Debug, Clone)]
pub struct ThermalState {
    levels: Vec<usize>,
    weights: Vec<f64>,
    spec: ThermalSpec,
}

impl ThermalState {
    pub fn new(eigs: &EigenSystem, spec: &ThermalSpec) -> Result<Self> {
        let p = populations(eigs, spec)?;
        let mut levels = Vec::new();
        let mut weights = Vec::new();
        for (k, &w) in p.iter().enumerate() {
            if w > spec.prune_tol {
                levels.push(k);
                weights.push(w);
            }
        }
        let z: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= z;
        }
        Ok(Self {
            levels,
            weights,
            spec: *spec,
        })
    }

    pub fn spec(&self) -> &ThermalSpec {
        &self.spec
    }

    /// Indices of retained eigenstates, ascending.
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.levels
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }

    /// Number of eigenstates up to and including the highest retained one.
    pub fn span(&self) -> usize {
        self.levels.last().map_or(0, |&k| k + 1)
    }

    /// Ground-state population.
    pub fn p0(&self) -> f64 {
        match self.levels.first() {
            Some(0) => self.weights[0],
            _ => 0.0,
        }
    }

    /// Dense density matrix on the full composite space.
    pub fn density(&self, eigs: &EigenSystem) -> Result<DensityMatrix> {
        let space = eigs.space();
        let d = space.dim();
        let mut rho = Mat::<c64>::zeros(d, d);
        for (k, w) in self.iter() {
            let v = eigs.state(k);
            for j in 0..d {
                let b = v[j].conj() * w;
                if b == c64::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..d {
                    rho[(i, j)] += v[i] * b;
                }
            }
        }
        DensityMatrix::trusted(space.factors(), rho)
    }
}

/// ρ̂ = Σ_k P_k |φ_k⟩⟨φ_k| on the full space.
pub fn gibbs_state(eigs: &EigenSystem, spec: &ThermalSpec) -> Result<DensityMatrix> {
    ThermalState::new(eigs, spec)?.density(eigs)
}
