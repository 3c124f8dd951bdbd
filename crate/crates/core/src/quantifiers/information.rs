use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64 as c64;
use serde::{Deserialize, Serialize};

use super::entanglement::require_two_qubits;
use super::minimize::NelderMead;
use crate::error::Result;
use crate::linalg::{self, ZERO};
use crate::qops::{entropy_bits, DensityMatrix, Pauli, Subsystem};

/// Number of points per angle in the discord search grid.
pub const DISCORD_GRID: usize = 64;

/// Grid minima refined locally.
const DISCORD_STARTS: usize = 4;

/// Qubit on which the discord measurement acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MeasuredSide {
    #[default]
    A,
    B,
}

/// I = S(ρ_A) + S(ρ_B) − S(ρ_AB) in bits, with A the listed factors and B
/// the rest.
pub fn mutual_information(rho: &DensityMatrix, part_a: &[Subsystem]) -> Result<f64> {
    let rest: Vec<Subsystem> = rho
        .factors()
        .iter()
        .map(|f| f.0)
        .filter(|s| !part_a.contains(s))
        .collect();
    let sa = rho.partial_trace(part_a)?.von_neumann_entropy()?;
    let sb = rho.partial_trace(&rest)?.von_neumann_entropy()?;
    Ok(sa + sb - rho.von_neumann_entropy()?)
}

/// Entropy in bits of a 2×2 Hermitian PSD block [[a, b], [b*, d]] scaled by
/// its trace; returns (trace, entropy).
fn block_entropy(a: f64, b: c64, d: f64) -> (f64, f64) {
    let t = a + d;
    if t <= 0.0 {
        return (0.0, 0.0);
    }
    let r = ((a - d) * (a - d) + 4.0 * b.norm_sqr()).sqrt();
    let l1 = 0.5 * (t + r) / t;
    let l2 = 0.5 * (t - r) / t;
    (t, entropy_bits(&[l1, l2]))
}

/// Average entropy of qubit B after the projective measurement
/// {|ψ⟩⟨ψ|, |ψ⊥⟩⟨ψ⊥|} on qubit A, |ψ⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
/// `rho` is indexed by 2a + b.
pub fn measured_conditional_entropy(rho: &Mat<c64>, theta: f64, phi: f64) -> f64 {
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    let e = c64::from_polar(1.0, phi);
    let outcomes = [[c64::new(c, 0.0), e * s], [-e.conj() * s, c64::new(c, 0.0)]];
    let mut total = 0.0;
    for psi in &outcomes {
        // ⟨ψ|_A ρ |ψ⟩_A as a 2×2 operator on B
        let mut blk = [[ZERO; 2]; 2];
        for (b, row) in blk.iter_mut().enumerate() {
            for (bp, out) in row.iter_mut().enumerate() {
                let mut acc = ZERO;
                for a in 0..2 {
                    for ap in 0..2 {
                        acc += psi[a].conj() * rho[(2 * a + b, 2 * ap + bp)] * psi[ap];
                    }
                }
                *out = acc;
            }
        }
        let (p, h) = block_entropy(blk[0][0].re, blk[0][1], blk[1][1].re);
        total += p * h;
    }
    total
}

/// Minimum of [`measured_conditional_entropy`] over measurement directions:
/// uniform θ ∈ [0, π] × φ ∈ [0, 2π) grid, then Nelder–Mead from the best
/// grid points.
pub fn min_conditional_entropy(rho: &Mat<c64>, grid: usize) -> (f64, f64, f64) {
    let f = |x: &[f64]| measured_conditional_entropy(rho, x[0], x[1]);
    let dt = PI / (grid - 1) as f64;
    let dp = 2.0 * PI / grid as f64;
    let mut samples = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            let (t, p) = (i as f64 * dt, j as f64 * dp);
            samples.push((f(&[t, p]), t, p));
        }
    }
    samples.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.total_cmp(&b.2))
    });
    let mut best = samples[0];
    let nm = NelderMead::default();
    for &(_, t, p) in samples.iter().take(DISCORD_STARTS) {
        let (x, v) = nm.minimize(f, &[t, p], &[0.5 * dt, 0.5 * dp]);
        if v < best.0 {
            best = (v, x[0], x[1]);
        }
    }
    best
}

fn swap_qubits(rho: &Mat<c64>) -> Mat<c64> {
    let sw = |i: usize| 2 * (i % 2) + i / 2;
    Mat::from_fn(4, 4, |i, j| rho[(sw(i), sw(j))])
}

/// D = S(ρ_A) − S(ρ_AB) + min S(ρ_{B|Π^A}) in bits (A and B exchanged when
/// measuring B).
pub fn quantum_discord(rho_qq: &DensityMatrix, side: MeasuredSide) -> Result<f64> {
    require_two_qubits(rho_qq)?;
    let m = match side {
        MeasuredSide::A => rho_qq.data().to_owned(),
        MeasuredSide::B => swap_qubits(&rho_qq.data().to_owned()),
    };
    let measured = match side {
        MeasuredSide::A => Subsystem::Qubit1,
        MeasuredSide::B => Subsystem::Qubit2,
    };
    let s_m = rho_qq.partial_trace(&[measured])?.von_neumann_entropy()?;
    let s_ab = rho_qq.von_neumann_entropy()?;
    let (cond, _, _) = min_conditional_entropy(&m, DISCORD_GRID);
    Ok(s_m - s_ab + cond)
}

/// C_RE = S(diag ρ) − S(ρ) in the computational basis, in bits.
pub fn coherence_re(rho: &DensityMatrix) -> Result<f64> {
    let diag: Vec<f64> = (0..rho.dim()).map(|i| rho.get(i, i).re).collect();
    Ok(entropy_bits(&diag) - rho.von_neumann_entropy()?)
}

/// Local quantum uncertainty of qubit A, U = 1 − λ_max(W) with
/// W_ij = Tr{√ρ (σᵢ⊗I) √ρ (σⱼ⊗I)}.
pub fn lqu(rho_qq: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho_qq)?;
    let s = rho_qq.herm_sqrt()?;
    let ops: Vec<Mat<c64>> = [Pauli::X, Pauli::Y, Pauli::Z]
        .iter()
        .map(|p| {
            let m = p.matrix();
            Mat::from_fn(4, 4, |i, j| {
                if i % 2 == j % 2 {
                    m[i / 2][j / 2]
                } else {
                    ZERO
                }
            })
        })
        .collect();
    let sandwiched: Vec<Mat<c64>> = ops.iter().map(|o| &s * o * &s).collect();
    let mut w = Mat::<f64>::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            w[(i, j)] = linalg::trace((&sandwiched[i] * &ops[j]).as_ref()).re;
        }
    }
    let w = Mat::from_fn(3, 3, |i, j| 0.5 * (w[(i, j)] + w[(j, i)]));
    let (vals, _) = linalg::symmetric_eigen(w.as_ref())?;
    Ok(1.0 - vals[2])
}

#[cfg(test)]
mod tests {
    use super::*;
    use faer::Col;

    fn pure(psi: [c64; 4]) -> DensityMatrix {
        let v = Col::from_fn(4, |i| psi[i]);
        DensityMatrix::pure(crate::qops::two_qubit_factors(), &v).unwrap()
    }

    fn r(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    fn werner(p: f64) -> DensityMatrix {
        let h = 0.5f64.sqrt();
        let bell = pure([r(h), ZERO, ZERO, r(h)]);
        let m = Mat::from_fn(4, 4, |i, j| {
            bell.get(i, j) * p + if i == j { r((1.0 - p) / 4.0) } else { ZERO }
        });
        DensityMatrix::two_qubit(m).unwrap()
    }

    #[test]
    fn bell_values() {
        let h = 0.5f64.sqrt();
        let bell = pure([r(h), ZERO, ZERO, r(h)]);
        assert!((mutual_information(&bell, &[Subsystem::Qubit1]).unwrap() - 2.0).abs() < 1e-9);
        assert!((quantum_discord(&bell, MeasuredSide::A).unwrap() - 1.0).abs() < 1e-4);
        assert!((lqu(&bell).unwrap() - 1.0).abs() < 1e-7);
        assert!((coherence_re(&bell).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn product_and_classical_states() {
        let prod = pure([ZERO, r(1.0), ZERO, ZERO]);
        assert!(
            mutual_information(&prod, &[Subsystem::Qubit1])
                .unwrap()
                .abs()
                < 1e-9
        );
        assert!(lqu(&prod).unwrap().abs() < 1e-7);
        let m = Mat::from_fn(4, 4, |i, j| {
            if i == j {
                r([0.4, 0.1, 0.2, 0.3][i])
            } else {
                ZERO
            }
        });
        let cc = DensityMatrix::two_qubit(m).unwrap();
        assert!(quantum_discord(&cc, MeasuredSide::A).unwrap().abs() < 1e-6);
        assert!(quantum_discord(&cc, MeasuredSide::B).unwrap().abs() < 1e-6);
        assert!(coherence_re(&cc).unwrap().abs() < 1e-12);
        // |+⟩⊗|g⟩
        let h = 0.5f64.sqrt();
        let plus = pure([r(h), ZERO, r(h), ZERO]);
        assert!((coherence_re(&plus).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn werner_discord_closed_form() {
        // Werner states: D = (1−p)/4 log(1−p) − (1+p)/2 log(1+p)
        //                  + (1+3p)/4 log(1+3p), log base 2
        for p in [0.3, 0.7] {
            let l = |x: f64| x.log2();
            let exact = 0.25 * (1.0 - p) * l(1.0 - p) - 0.5 * (1.0 + p) * l(1.0 + p)
                + 0.25 * (1.0 + 3.0 * p) * l(1.0 + 3.0 * p);
            let d = quantum_discord(&werner(p), MeasuredSide::A).unwrap();
            assert!((d - exact).abs() < 1e-7, "p = {p}: {d} vs {exact}");
        }
    }

    #[test]
    fn pure_state_lqu_is_linear_entropy() {
        let psi = [r(0.6), c64::new(0.0, 0.48), r(0.0), c64::new(0.64, 0.0)];
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi = psi.map(|z| z / norm);
        let rho = pure(psi);
        let ra = rho.partial_trace(&[Subsystem::Qubit1]).unwrap();
        let purity: f64 = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| (ra.get(i, j) * ra.get(j, i)).re)
            .sum();
        let u = lqu(&rho).unwrap();
        assert!(
            (u - 2.0 * (1.0 - purity)).abs() < 1e-9,
            "{u} vs {}",
            2.0 * (1.0 - purity)
        );
    }
}
