use faer::Col;
use num_complex::Complex64 as c64;

use super::bath::{occupation, spectral_density, BathParams, Channel};
use crate::error::{Error, Result};
use crate::model::EigenSystem;
use crate::qops::sparse;

/// Population threshold defining the level truncation.
pub const LEVEL_THRESHOLD: f64 = 1e-12;

/// One dressed transition k → j (k < j) through one channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub channel: Channel,
    /// Upper eigenstate index j.
    pub upper: usize,
    /// Lower eigenstate index k.
    pub lower: usize,
    /// Δ_jk = E_j − E_k ≥ 0
    pub gap: f64,
    /// S_u^{jk} = ⟨φ_j|Ô_u|φ_k⟩
    pub coefficient: c64,
    /// Γ_u^{jk} = γ(Δ_jk)|S_u^{jk}|²
    pub gamma: f64,
    /// n(Δ_jk)
    pub occupation: f64,
    /// Γ(1 + n), j → k
    pub rate_down: f64,
    /// Γn, k → j
    pub rate_up: f64,
}

/// All dressed transitions among the lowest M eigenstates.
#[derive(Debug, Clone)]
pub struct TransitionTable {
    pub levels: usize,
    pub energies: Vec<f64>,
    pub parities: Vec<i8>,
    pub temperature: f64,
    pub transitions: Vec<Transition>,
}

impl TransitionTable {
    pub fn for_channel(&self, channel: Channel) -> impl Iterator<Item = &Transition> {
        self.transitions
            .iter()
            .filter(move |t| t.channel == channel)
    }
}

/// Smallest M with e^{−(E_{M−1}−E₀)/T} < 1e-12, at least 2.
pub fn required_levels(energies: &[f64], temperature: f64) -> Option<usize> {
    let e0 = *energies.first()?;
    (1..energies.len())
        .find(|&k| (-(energies[k] - e0) / temperature).exp() < LEVEL_THRESHOLD)
        .map(|k| (k + 1).max(2))
}

fn apply_channel(eigs: &EigenSystem, channel: Channel, v: &Col<c64>) -> Col<c64> {
    let s = eigs.space();
    match channel {
        Channel::Qubit1 => sparse::apply_sigma_x(s, 1, v),
        Channel::Qubit2 => sparse::apply_sigma_x(s, 2, v),
        Channel::Cavity => sparse::apply_quadrature(s, v),
    }
}

/// Build the transition table for the lowest `levels` eigenstates.
pub fn transition_table(
    eigs: &EigenSystem,
    bath: &BathParams,
    levels: usize,
) -> Result<TransitionTable> {
    bath.validate()?;
    let t = bath.temperature;
    let required = required_levels(eigs.energies(), t).ok_or(Error::TooFewLevels {
        requested: levels,
        required: eigs.len() + 1,
        temperature: t,
    })?;
    if levels < required || levels > eigs.len() {
        return Err(Error::TooFewLevels {
            requested: levels,
            required,
            temperature: t,
        });
    }
    let states: Vec<Col<c64>> = (0..levels).map(|k| eigs.state(k)).collect();
    let energies = eigs.energies()[..levels].to_vec();
    let parities = eigs.parities()[..levels].to_vec();
    let mut transitions = Vec::new();
    for &channel in &bath.channels {
        for k in 0..levels {
            let ok = apply_channel(eigs, channel, &states[k]);
            for j in (k + 1)..levels {
                let s = sparse::inner(&states[j], &ok);
                let gap = (energies[j] - energies[k]).max(0.0);
                let s2 = s.norm_sqr();
                let (down, up) = bath.rates(gap);
                transitions.push(Transition {
                    channel,
                    upper: j,
                    lower: k,
                    gap,
                    coefficient: s,
                    gamma: spectral_density(gap, bath) * s2,
                    occupation: occupation(gap, t),
                    rate_down: down * s2,
                    rate_up: up * s2,
                });
            }
        }
    }
    Ok(TransitionTable {
        levels,
        energies,
        parities,
        temperature: t,
        transitions,
    })
}
