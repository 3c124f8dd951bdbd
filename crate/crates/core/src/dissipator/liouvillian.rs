use faer::Mat;
use num_complex::Complex64 as c64;
use serde::{Deserialize, Serialize};

use super::table::TransitionTable;
use crate::error::{Error, Result};
use crate::linalg::{self, ZERO};

/// Levels up to which [`Route::Auto`] uses the dense superoperator.
pub const DENSE_LEVEL_LIMIT: usize = 24;

/// How spectra and null spaces are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Dense for M ≤ [`DENSE_LEVEL_LIMIT`], structured above.
    #[default]
    Auto,
    /// Full M²×M² superoperator.
    Dense,
    /// Population block plus independently decaying coherences.
    Structured,
}

/// Dressed Liouvillian in the truncated eigenbasis.
///
/// Every jump operator is a single |b⟩⟨a|, so populations only couple to
/// populations and each coherence ρ_ab evolves on its own with eigenvalue
/// −i(E_a − E_b) − (out_a + out_b)/2.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    energies: Vec<f64>,
    /// rates[(b, a)]: total rate of jumps a → b (a ≠ b).
    rates: Mat<f64>,
    /// Total decay rate out of each level.
    out: Vec<f64>,
}

/// Build the Liouvillian from a transition table.
pub fn build_liouvillian(table: &TransitionTable) -> Liouvillian {
    Liouvillian::from_table(table)
}

impl Liouvillian {
    pub fn from_table(table: &TransitionTable) -> Self {
        let m = table.levels;
        let mut rates = Mat::<f64>::zeros(m, m);
        for t in &table.transitions {
            rates[(t.lower, t.upper)] += t.rate_down;
            rates[(t.upper, t.lower)] += t.rate_up;
        }
        Self::from_rates(table.energies.clone(), rates)
    }

    /// Liouvillian with explicit energies and rate matrix (rates[(b, a)] is
    /// the rate a → b; the diagonal is ignored).
    pub fn from_rates(energies: Vec<f64>, mut rates: Mat<f64>) -> Self {
        let m = energies.len();
        assert_eq!(rates.nrows(), m);
        for a in 0..m {
            rates[(a, a)] = 0.0;
        }
        let out = (0..m)
            .map(|a| (0..m).map(|b| rates[(b, a)]).sum())
            .collect();
        Self {
            energies,
            rates,
            out,
        }
    }

    pub fn levels(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Total rate of jumps a → b.
    pub fn rate(&self, from: usize, to: usize) -> f64 {
        self.rates[(to, from)]
    }

    pub fn decay_out(&self, a: usize) -> f64 {
        self.out[a]
    }

    #[inline]
    pub fn vec_index(&self, a: usize, b: usize) -> usize {
        a + self.levels() * b
    }

    /// Dense superoperator acting on column-stacked ρ (index a + M·b).
    pub fn dense(&self) -> Mat<c64> {
        let m = self.levels();
        let mut l = Mat::<c64>::zeros(m * m, m * m);
        for a in 0..m {
            for b in 0..m {
                let i = self.vec_index(a, b);
                let w = self.energies[a] - self.energies[b];
                l[(i, i)] += c64::new(-0.5 * (self.out[a] + self.out[b]), -w);
            }
        }
        for a in 0..m {
            for b in 0..m {
                if a != b {
                    let r = self.rates[(b, a)];
                    if r != 0.0 {
                        l[(self.vec_index(b, b), self.vec_index(a, a))] += c64::new(r, 0.0);
                    }
                }
            }
        }
        l
    }

    /// L(ρ) for an M×M matrix in the eigenbasis.
    pub fn apply(&self, rho: &Mat<c64>) -> Mat<c64> {
        let m = self.levels();
        let mut out = Mat::from_fn(m, m, |a, b| {
            let w = self.energies[a] - self.energies[b];
            rho[(a, b)] * c64::new(-0.5 * (self.out[a] + self.out[b]), -w)
        });
        for b in 0..m {
            let mut gain = ZERO;
            for a in 0..m {
                if a != b {
                    gain += rho[(a, a)] * self.rates[(b, a)];
                }
            }
            out[(b, b)] += gain;
        }
        out
    }

    /// Classical master-equation generator on populations.
    pub fn population_generator(&self) -> Mat<f64> {
        let m = self.levels();
        Mat::from_fn(m, m, |b, a| {
            if a == b {
                -self.out[a]
            } else {
                self.rates[(b, a)]
            }
        })
    }

    fn resolve(&self, route: Route) -> Route {
        match route {
            Route::Auto if self.levels() <= DENSE_LEVEL_LIMIT => Route::Dense,
            Route::Auto => Route::Structured,
            r => r,
        }
    }

    /// Coherence eigenvalues −i(E_a − E_b) − (out_a + out_b)/2, a ≠ b.
    fn coherence_modes(&self) -> impl Iterator<Item = c64> + '_ {
        let m = self.levels();
        (0..m).flat_map(move |a| {
            (0..m).filter(move |&b| b != a).map(move |b| {
                c64::new(
                    -0.5 * (self.out[a] + self.out[b]),
                    -(self.energies[a] - self.energies[b]),
                )
            })
        })
    }

    /// Full spectrum (unordered).
    pub fn spectrum(&self, route: Route) -> Result<Vec<c64>> {
        match self.resolve(route) {
            Route::Dense => linalg::eigenvalues(self.dense().as_ref()),
            _ => {
                let mut v = linalg::real_eigenvalues(self.population_generator().as_ref())?;
                v.extend(self.coherence_modes());
                Ok(v)
            }
        }
    }

    /// Unique steady state as an M×M matrix in the eigenbasis.
    pub fn steady_state(&self, route: Route) -> Result<SteadyState> {
        let m = self.levels();
        let (smallest, second, mut rho) = match self.resolve(route) {
            Route::Dense => {
                let (s, v) = linalg::svd(self.dense().as_ref())?;
                let n = s.len();
                let rho = Mat::from_fn(m, m, |a, b| v[(self.vec_index(a, b), n - 1)]);
                (s[n - 1], s[n - 2], rho)
            }
            _ => {
                let (s, v) = linalg::real_svd(self.population_generator().as_ref())?;
                let n = s.len();
                let coh = self
                    .coherence_modes()
                    .map(|z| z.norm())
                    .fold(f64::INFINITY, f64::min);
                let rho = Mat::from_fn(m, m, |a, b| {
                    if a == b {
                        c64::new(v[(a, n - 1)], 0.0)
                    } else {
                        ZERO
                    }
                });
                (s[n - 1], s[n - 2].min(coh), rho)
            }
        };
        if second.is_nan() || smallest.is_nan() || second <= 1e3 * smallest {
            return Err(Error::NonUniqueSteadyState { smallest, second });
        }
        let tr = linalg::trace(rho.as_ref());
        rho = Mat::from_fn(m, m, |a, b| {
            0.5 * (rho[(a, b)] / tr + (rho[(b, a)] / tr).conj())
        });
        Ok(SteadyState { rho })
    }

    /// μ₁ = −max Re μ over the spectrum without the stationary eigenvalue.
    pub fn gap(&self, route: Route) -> Result<f64> {
        liouvillian_gap(&self.spectrum(route)?)
    }
}

/// Gap of a Liouvillian spectrum. The eigenvalue closest to zero is taken as
/// the stationary one.
pub fn liouvillian_gap(spectrum: &[c64]) -> Result<f64> {
    if spectrum.len() < 2 {
        return Err(Error::Linalg("spectrum too short for a gap".into()));
    }
    let max_re = spectrum
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_re > 1e-8 {
        return Err(Error::UnstableLiouvillian(max_re));
    }
    let zero = spectrum
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let top = spectrum
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != zero)
        .map(|(_, z)| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(-top)
}

/// Stationary state in the truncated eigenbasis.
#[derive(Debug, Clone)]
pub struct SteadyState {
    rho: Mat<c64>,
}

impl SteadyState {
    pub fn matrix(&self) -> &Mat<c64> {
        &self.rho
    }

    pub fn levels(&self) -> usize {
        self.rho.nrows()
    }

    pub fn populations(&self) -> Vec<f64> {
        (0..self.levels()).map(|k| self.rho[(k, k)].re).collect()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(linalg::hermitian_eigenvalues(self.rho.as_ref())?[0])
    }

    /// ½‖ρ_ss − ρ_G‖₁ against a state diagonal in the eigenbasis, given its
    /// populations over all levels. Weight above the truncation counts fully.
    pub fn trace_distance_to_diagonal(&self, populations: &[f64]) -> Result<f64> {
        let m = self.levels();
        let diff = Mat::from_fn(m, m, |a, b| {
            let p = if a == b {
                populations.get(a).copied().unwrap_or(0.0)
            } else {
                0.0
            };
            self.rho[(a, b)] - c64::new(p, 0.0)
        });
        let vals = linalg::hermitian_eigenvalues(diff.as_ref())?;
        let inside: f64 = vals.iter().map(|v| v.abs()).sum();
        let outside: f64 = populations.iter().skip(m).sum();
        Ok(0.5 * (inside + outside))
    }
}
