//! Analytic limits of the model: dispersive effective Hamiltonians, the
//! deep-strong-coupling displaced-oscillator spectrum and the adiabatic
//! collective-spin product states.

use faer::{Col, Mat};
use num_complex::Complex64 as c64;

use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::linalg::{self, ZERO};
use crate::qops::{self, HilbertSpace, Operator, Pauli};

/// Effective Hamiltonian together with its qubit-qubit coupling.
#[derive(Debug, Clone)]
pub struct DispersiveModel {
    pub hamiltonian: Operator,
    /// J₁₂ (RWA) or J̄₁₂ (beyond RWA).
    pub coupling: f64,
    /// max gᵢ/|δᵢ|; the expansion needs this to be small.
    pub validity_ratio: f64,
}

impl DispersiveModel {
    /// Rough validity flag for the perturbative expansion.
    pub fn is_valid(&self) -> bool {
        self.validity_ratio < 0.1
    }
}

/// Detunings δᵢ = Δᵢ − ω.
fn detunings(p: &ModelParams) -> Result<[f64; 2]> {
    let d = [p.delta1 - p.omega, p.delta2 - p.omega];
    for (i, v) in d.iter().enumerate() {
        if *v == 0.0 {
            return Err(Error::DispersiveUndefined(format!(
                "qubit {} is resonant with the mode (delta = omega = {})",
                i + 1,
                p.omega
            )));
        }
    }
    Ok(d)
}

fn validity(p: &ModelParams, d: &[f64; 2]) -> f64 {
    (p.g1 / d[0].abs()).max(p.g2 / d[1].abs())
}

/// J₁₂ = g₁g₂(1/δ₁ + 1/δ₂)
pub fn rwa_coupling(p: &ModelParams) -> Result<f64> {
    let d = detunings(p)?;
    Ok(p.g1 * p.g2 * (1.0 / d[0] + 1.0 / d[1]))
}

/// J̄₁₂ = g₁g₂(1/δ₁ + 1/δ₂ − 1/(2Δ₁−δ₁) − 1/(2Δ₂−δ₂))
pub fn nonrwa_coupling(p: &ModelParams) -> Result<f64> {
    let d = detunings(p)?;
    let s1 = 2.0 * p.delta1 - d[0];
    let s2 = 2.0 * p.delta2 - d[1];
    if s1 == 0.0 || s2 == 0.0 {
        return Err(Error::DispersiveUndefined(
            "2*delta_i - delta_i vanishes".into(),
        ));
    }
    Ok(p.g1 * p.g2 * (1.0 / d[0] + 1.0 / d[1] - 1.0 / s1 - 1.0 / s2))
}

fn sigma(w: Pauli, q: usize, s: HilbertSpace) -> Operator {
    qops::pauli(w, q, s).expect("qubit index is 1 or 2")
}

/// Dispersive Hamiltonian in the rotating-wave approximation:
/// ωâ†â + ½Σ(Δⱼ + gⱼ²/δⱼ)σᶻ + Σ(gⱼ²/δⱼ)â†âσᶻ + J₁₂(σ⁺σ⁻ + σ⁻σ⁺).
pub fn dispersive_rwa(p: &ModelParams, space: HilbertSpace) -> Result<DispersiveModel> {
    p.validate()?;
    let d = detunings(p)?;
    let j12 = rwa_coupling(p)?;
    let n = qops::number(space);
    let mut h = n.scale(p.omega);
    for (q, (delta, g)) in [(1, (p.delta1, p.g1)), (2, (p.delta2, p.g2))] {
        let chi = g * g / d[q - 1];
        let z = sigma(Pauli::Z, q, space);
        h = &h + &z.scale(0.5 * (delta + chi));
        h = &h + &(&n * &z).scale(chi);
    }
    let flip_flop = &(&sigma(Pauli::Plus, 1, space) * &sigma(Pauli::Minus, 2, space))
        + &(&sigma(Pauli::Minus, 1, space) * &sigma(Pauli::Plus, 2, space));
    h = &h + &flip_flop.scale(j12);
    Ok(DispersiveModel {
        hamiltonian: h,
        coupling: j12,
        validity_ratio: validity(p, &d),
    })
}

/// Dispersive Hamiltonian beyond the rotating-wave approximation:
/// ωâ†â + ½ΣΔⱼσᶻ + J̄₁₂σˣσˣ + Σgⱼ²(1/δⱼ − 1/(Δⱼ−δⱼ))(â†+â)²σᶻ.
pub fn dispersive_nonrwa(p: &ModelParams, space: HilbertSpace) -> Result<DispersiveModel> {
    p.validate()?;
    let d = detunings(p)?;
    let jbar = nonrwa_coupling(p)?;
    let x = qops::field_quadrature(space);
    let x2 = &x * &x;
    let mut h = qops::number(space).scale(p.omega);
    for (q, (delta, g)) in [(1, (p.delta1, p.g1)), (2, (p.delta2, p.g2))] {
        let dj = d[q - 1];
        let coeff = g * g * (1.0 / dj - 1.0 / (delta - dj));
        let z = sigma(Pauli::Z, q, space);
        h = &h + &z.scale(0.5 * delta);
        h = &h + &(&x2 * &z).scale(coeff);
    }
    h = &h + &qops::qubit_pair(Pauli::X, Pauli::X, space).scale(jbar);
    Ok(DispersiveModel {
        hamiltonian: h,
        coupling: jbar,
        validity_ratio: validity(p, &d),
    })
}

/// Leading-order deep-strong-coupling energies ωn − g±²/ω (each twofold),
/// ascending, first `n_levels` values.
pub fn dsc_spectrum(p: &ModelParams, n_levels: usize) -> Vec<f64> {
    let shifts = [p.g_plus().powi(2) / p.omega, p.g_minus().powi(2) / p.omega];
    let per_branch = n_levels / 2 + 1;
    let mut e = Vec::with_capacity(4 * per_branch);
    for &s in &shifts {
        for n in 0..per_branch {
            let v = p.omega * n as f64 - s;
            e.push(v);
            e.push(v);
        }
    }
    e.sort_by(f64::total_cmp);
    e.truncate(n_levels);
    e
}

/// One adiabatic product state |j,m⟩ ⊗ D̂(−2mg/ω)|n⟩.
#[derive(Debug, Clone)]
pub struct AdiabaticState {
    pub j: u8,
    pub m: i8,
    /// Fock index before displacement.
    pub n: usize,
    pub state: Col<c64>,
}

/// Collective σˣ eigenstates as (j, m, amplitude on (q1, q2)) in the
/// computational basis, |±⟩ = (|g⟩ ± |e⟩)/√2.
fn collective_spin_states() -> [(u8, i8, [[f64; 2]; 2]); 4] {
    let h = 0.5_f64.sqrt();
    let plus = [h, h];
    let minus = [h, -h];
    let prod = |a: [f64; 2], b: [f64; 2]| [[a[0] * b[0], a[0] * b[1]], [a[1] * b[0], a[1] * b[1]]];
    let pp = prod(plus, plus);
    let pm = prod(plus, minus);
    let mp = prod(minus, plus);
    let mm = prod(minus, minus);
    let comb = |a: [[f64; 2]; 2], b: [[f64; 2]; 2], s: f64| {
        let mut o = [[0.0; 2]; 2];
        for i in 0..2 {
            for k in 0..2 {
                o[i][k] = h * (a[i][k] + s * b[i][k]);
            }
        }
        o
    };
    [
        (1, 1, pp),
        (1, 0, comb(pm, mp, 1.0)),
        (0, 0, comb(pm, mp, -1.0)),
        (1, -1, mm),
    ]
}

/// Displacement D̂(β) = exp(β(â† − â)) for real β on an `n_fock` truncation.
pub fn displacement(beta: f64, n_fock: usize) -> Mat<c64> {
    let gen = Mat::from_fn(n_fock, n_fock, |i, j| {
        if i == j + 1 {
            c64::new(beta * (i as f64).sqrt(), 0.0)
        } else if j == i + 1 {
            c64::new(-beta * (j as f64).sqrt(), 0.0)
        } else {
            ZERO
        }
    });
    linalg::expm(gen.as_ref())
}

/// Adiabatic product states for Fock indices `0..=n_max`, ordered by n and
/// then by the rows of the collective-spin transformation.
///
/// With H ≈ ωâ†â + 2g Ŝₓ(â + â†) the field for spin projection m is displaced
/// by −2mg/ω.
pub fn adiabatic_eigenstates(
    p: &ModelParams,
    space: HilbertSpace,
    n_max: usize,
) -> Result<Vec<AdiabaticState>> {
    p.validate()?;
    if p.g1 != p.g2 {
        return Err(Error::InvalidParameter(format!(
            "adiabatic collective-spin states need g1 == g2, got {} and {}",
            p.g1, p.g2
        )));
    }
    let nf = space.n_fock();
    if n_max >= nf {
        return Err(Error::InvalidParameter(format!(
            "Fock index {n_max} outside cutoff {nf}"
        )));
    }
    let spins = collective_spin_states();
    let mut disp = Vec::new();
    for m in [-1i8, 0, 1] {
        let beta = -2.0 * m as f64 * p.g1 / p.omega;
        disp.push(if m == 0 {
            Mat::<c64>::identity(nf, nf)
        } else {
            displacement(beta, nf)
        });
    }
    let mut out = Vec::with_capacity(4 * (n_max + 1));
    for n in 0..=n_max {
        for &(j, m, amp) in &spins {
            let d = &disp[(m + 1) as usize];
            let mut v = Col::<c64>::zeros(space.dim());
            for (q1, row) in amp.iter().enumerate() {
                for (q2, &a) in row.iter().enumerate() {
                    if a == 0.0 {
                        continue;
                    }
                    for k in 0..nf {
                        v[space.index(q1, q2, k)] = d[(k, n)] * a;
                    }
                }
            }
            out.push(AdiabaticState { j, m, n, state: v });
        }
    }
    Ok(out)
}
