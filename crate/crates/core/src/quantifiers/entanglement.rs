use faer::Mat;
use num_complex::Complex64 as c64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, ZERO};
use crate::model::{sector_indices, EigenSystem};
use crate::qops::{two_qubit_factors, DensityMatrix, Subsystem};
use crate::thermal::ThermalState;

/// Bipartitions for which negativity is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bipartition {
    /// qubit 1 | qubit 2 on the reduced qubit pair
    QubitQubit,
    /// qubits | field on the full state
    QubitsField,
}

fn negative_part(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().map(|&e| 0.5 * (e.abs() - e)).sum()
}

/// Reduce to the qubit pair if the state still carries the field.
fn qubit_pair(rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.factors() == &two_qubit_factors() {
        Ok(rho.clone())
    } else {
        rho.partial_trace(&[Subsystem::Qubit1, Subsystem::Qubit2])
    }
}

fn transposed(rho: &DensityMatrix, cut: Bipartition) -> Result<Mat<c64>> {
    match cut {
        Bipartition::QubitQubit => qubit_pair(rho)?.partial_transpose(&[Subsystem::Qubit2]),
        Bipartition::QubitsField => rho.partial_transpose(&[Subsystem::Boson]),
    }
}

/// N = Σᵢ(|εᵢ| − εᵢ)/2 over the eigenvalues of the partial transpose.
pub fn negativity(rho: &DensityMatrix, cut: Bipartition) -> Result<f64> {
    let pt = transposed(rho, cut)?;
    Ok(negative_part(&linalg::hermitian_eigenvalues(pt.as_ref())?))
}

/// N = (‖ρ^T‖₁ − 1)/2 from the singular values of the partial transpose.
pub fn negativity_trace_norm(rho: &DensityMatrix, cut: Bipartition) -> Result<f64> {
    let pt = transposed(rho, cut)?;
    let norm: f64 = linalg::singular_values(pt.as_ref())?.iter().sum();
    Ok(0.5 * (norm - rho.trace().re))
}

/// Qubits|field negativity of a thermal state in spectral form.
///
/// Transposing the boson index maps a parity-conserving state to another
/// parity-conserving matrix, so the partial transpose splits into two blocks
/// of size 2N.
pub fn negativity_qubits_field(eigs: &EigenSystem, thermal: &ThermalState) -> Result<f64> {
    let space = eigs.space();
    let nf = space.n_fock();
    let r = thermal.levels().len();
    // rows[i] = (√w_k ⟨i|φ_k⟩)_k
    let mut rows = vec![vec![ZERO; r]; space.dim()];
    for (c, (k, w)) in thermal.iter().enumerate() {
        let v = eigs.state(k);
        let s = w.sqrt();
        for (i, row) in rows.iter_mut().enumerate() {
            row[c] = v[i] * s;
        }
    }
    let mut total = 0.0;
    for parity in [1i8, -1] {
        let idx = sector_indices(space, parity);
        let m = idx.len();
        // ρ^{T_B}[(q,n),(q',n')] = ρ[(q,n'),(q',n)]
        let block = Mat::from_fn(m, m, |a, b| {
            let (qa, na) = (idx[a] / nf, idx[a] % nf);
            let (qb, nb) = (idx[b] / nf, idx[b] % nf);
            let x = &rows[qa * nf + nb];
            let y = &rows[qb * nf + na];
            x.iter().zip(y).map(|(p, q)| p * q.conj()).sum::<c64>()
        });
        total += negative_part(&linalg::hermitian_eigenvalues(block.as_ref())?);
    }
    Ok(total)
}

fn sigma_yy() -> Mat<c64> {
    // σʸ⊗σʸ is real: antidiagonal (−1, 1, 1, −1)
    let mut m = Mat::<c64>::zeros(4, 4);
    m[(0, 3)] = c64::new(-1.0, 0.0);
    m[(1, 2)] = c64::new(1.0, 0.0);
    m[(2, 1)] = c64::new(1.0, 0.0);
    m[(3, 0)] = c64::new(-1.0, 0.0);
    m
}

pub(crate) fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.factors() != &two_qubit_factors() {
        return Err(Error::InvalidSubsystem(format!(
            "expected a two-qubit state, got factors {:?}",
            rho.factors()
        )));
    }
    Ok(())
}

/// Wootters concurrence max(0, λ₁ − λ₂ − λ₃ − λ₄).
///
/// λᵢ, the square roots of the eigenvalues of ρρ̃, are computed as the
/// singular values of √ρ √ρ̃ with √ρ̃ = (σʸ⊗σʸ)(√ρ)*(σʸ⊗σʸ). This avoids
/// taking square roots of eigenvalues near round-off.
pub fn concurrence(rho_qq: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho_qq)?;
    let yy = sigma_yy();
    let s = rho_qq.herm_sqrt()?;
    let conj = Mat::from_fn(4, 4, |i, j| s[(i, j)].conj());
    let s_tilde = &yy * &conj * &yy;
    let lam = linalg::singular_values((&s * &s_tilde).as_ref())?;
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(0.0))
}
