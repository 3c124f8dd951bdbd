//! Master equation in the dressed eigenbasis: transition rates, Liouvillian,
//! steady state and spectral gap.

mod bath;
mod liouvillian;
mod table;

pub use bath::{occupation, spectral_density, BathParams, Channel};
pub use liouvillian::{
    build_liouvillian, liouvillian_gap, Liouvillian, Route, SteadyState, DENSE_LEVEL_LIMIT,
};
pub use table::{required_levels, transition_table, Transition, TransitionTable, LEVEL_THRESHOLD};

use crate::error::{Error, Result};
use crate::model::{diagonalize_model, initial_cutoff, CutoffPolicy, EigenSystem, ModelParams};
use crate::qops::HilbertSpace;

/// Temperature used for gap ratios unless stated otherwise.
pub const DEFAULT_GAP_TEMPERATURE: f64 = 0.1;

/// Weight of eigenstate `k` on the top eighth of the Fock ladder.
pub fn fock_tail_weight(eigs: &EigenSystem, k: usize) -> f64 {
    let s = eigs.space();
    let nf = s.n_fock();
    let start = nf - (nf / 8).max(2);
    let v = eigs.state(k);
    (0..s.dim())
        .filter(|&i| s.decompose(i).2 >= start)
        .map(|i| v[i].norm_sqr())
        .sum()
}

/// Eigen-decomposition, transition table and Liouvillian for one point.
#[derive(Debug, Clone)]
pub struct DressedSystem {
    pub eigs: EigenSystem,
    pub table: TransitionTable,
    pub liouvillian: Liouvillian,
}

/// Tail weight above which the truncated levels are not trusted.
const TAIL_LIMIT: f64 = 1e-10;

/// Diagonalize at a cutoff large enough that every level kept by the bath
/// truncation lives well inside the Fock basis, then build the Liouvillian.
///
/// `levels` overrides the automatic level count (it must not be smaller than
/// the required one).
pub fn dressed_system(
    params: &ModelParams,
    bath: &BathParams,
    levels: Option<usize>,
    policy: &CutoffPolicy,
) -> Result<DressedSystem> {
    bath.validate()?;
    let mut n = initial_cutoff(params, policy).min(policy.hard_max);
    loop {
        let eigs = diagonalize_model(params, HilbertSpace::new(n)?)?;
        let m = required_levels(eigs.energies(), bath.temperature)
            .map(|req| levels.unwrap_or(req).max(req));
        let adequate = match m {
            Some(m) if m <= eigs.len() => (0..m).all(|k| fock_tail_weight(&eigs, k) < TAIL_LIMIT),
            _ => false,
        };
        if adequate {
            let m = m.expect("checked above");
            if let Some(l) = levels {
                if l < m {
                    return Err(Error::TooFewLevels {
                        requested: l,
                        required: m,
                        temperature: bath.temperature,
                    });
                }
            }
            let table = transition_table(&eigs, bath, m)?;
            let liouvillian = Liouvillian::from_table(&table);
            return Ok(DressedSystem {
                eigs,
                table,
                liouvillian,
            });
        }
        if n >= policy.hard_max {
            return Err(Error::CutoffExceeded {
                required: 2 * n,
                max: policy.hard_max,
                detail: format!(
                    "thermally relevant levels at T = {} not contained in the Fock basis",
                    bath.temperature
                ),
            });
        }
        n = (2 * n).min(policy.hard_max);
    }
}

/// Energy above the ground state that the automatic gap truncation covers:
/// the thermal window, one bare excitation of the fastest subsystem and the
/// largest coupling shift g₊²/ω of the ground state.
///
/// The slowest relaxation mode can sit in levels with no thermal weight
/// (bare-qubit levels when Δ ≫ ω, dark singlet states in deep strong
/// coupling), so the thermal window alone is not enough.
pub fn gap_window(params: &ModelParams, temperature: f64) -> f64 {
    let thermal = temperature * (1.0 / LEVEL_THRESHOLD).ln();
    let bare = params.omega.max(params.delta1).max(params.delta2);
    thermal + bare + params.g_plus().powi(2) / params.omega
}

/// Smallest level count (at least the population-rule count) that holds
/// every level within `window` of the ground state.
fn window_levels(
    params: &ModelParams,
    bath: &BathParams,
    window: f64,
    policy: &CutoffPolicy,
) -> Result<usize> {
    let mut m = dressed_system(params, bath, None, policy)?.table.levels;
    loop {
        let sys = dressed_system(params, bath, Some(m), policy)?;
        let e = sys.eigs.energies();
        let tol = 1e-9 * sys.eigs.scale();
        let count = e.iter().take_while(|&&x| x - e[0] <= window + tol).count();
        if count <= m {
            return Ok(m);
        }
        if count == e.len() {
            // Every computed level is inside the window: ask for one more so
            // that the Fock cutoff grows.
            m = count + 1;
        } else {
            m = count;
        }
    }
}

/// μ₁(g)/μ₁(g = 0) with the same bath and the same level count.
///
/// When `levels` is `None` the count is the larger of the two systems'
/// counts for [`gap_window`].
pub fn gap_ratio(
    params: &ModelParams,
    bath: &BathParams,
    levels: Option<usize>,
    policy: &CutoffPolicy,
    route: Route,
) -> Result<f64> {
    let free = params.with_couplings(0.0, 0.0);
    if params.g1 == 0.0 && params.g2 == 0.0 {
        return Ok(1.0);
    }
    let m = match levels {
        Some(m) => m,
        None => {
            let w = gap_window(params, bath.temperature);
            window_levels(params, bath, w, policy)?.max(window_levels(&free, bath, w, policy)?)
        }
    };
    let coupled = dressed_system(params, bath, Some(m), policy)?;
    let reference = dressed_system(&free, bath, Some(m), policy)?;
    let mu = coupled.liouvillian.gap(route)?;
    let mu0 = reference.liouvillian.gap(route)?;
    Ok(mu / mu0)
}
