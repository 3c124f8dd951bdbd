use faer::Mat;
use num_complex::Complex64 as c64;

use super::params::ModelParams;
use crate::qops::{HilbertSpace, Operator};

/// Diagonal element ωn + Δ₁σᶻ₁/2 + Δ₂σᶻ₂/2 of basis state `i`.
#[inline]
pub(crate) fn diagonal_energy(p: &ModelParams, space: HilbertSpace, i: usize) -> f64 {
    let (q1, q2, n) = space.decompose(i);
    let s = |q: usize| if q == 1 { 0.5 } else { -0.5 };
    p.omega * n as f64 + p.delta1 * s(q1) + p.delta2 * s(q2)
}

/// Nonzero off-diagonal elements in row `i`: (column, value).
///
/// The coupling g(â+â†)σˣ flips one qubit and moves the boson by one quantum.
pub(crate) fn couplings(
    p: &ModelParams,
    space: HilbertSpace,
    i: usize,
) -> impl Iterator<Item = (usize, f64)> {
    let (q1, q2, n) = space.decompose(i);
    let nf = space.n_fock();
    let mut out = [(0usize, 0.0f64); 4];
    let mut len = 0;
    for (g, flipped) in [(p.g1, (1 - q1, q2)), (p.g2, (q1, 1 - q2))] {
        if g == 0.0 {
            continue;
        }
        if n + 1 < nf {
            out[len] = (
                space.index(flipped.0, flipped.1, n + 1),
                g * ((n + 1) as f64).sqrt(),
            );
            len += 1;
        }
        if n > 0 {
            out[len] = (
                space.index(flipped.0, flipped.1, n - 1),
                g * (n as f64).sqrt(),
            );
            len += 1;
        }
    }
    out.into_iter().take(len)
}

/// Ĥ = ωâ†â + Σᵢ(Δᵢ/2)σ̂ᶻ⁽ⁱ⁾ + Σᵢ gᵢ(â+â†)σ̂ˣ⁽ⁱ⁾ as a dense operator.
pub fn build_hamiltonian(params: &ModelParams, space: HilbertSpace) -> Operator {
    let d = space.dim();
    let mut h = Mat::<c64>::zeros(d, d);
    for i in 0..d {
        h[(i, i)] = c64::new(diagonal_energy(params, space, i), 0.0);
        for (j, v) in couplings(params, space, i) {
            h[(i, j)] = c64::new(v, 0.0);
        }
    }
    Operator::from_matrix(space, h).expect("shape matches by construction")
}

/// Basis indices of one parity sector, in ascending order.
pub fn sector_indices(space: HilbertSpace, parity: i8) -> Vec<usize> {
    (0..space.dim())
        .filter(|&i| crate::qops::parity_sign(space, i) == parity)
        .collect()
}

/// Real symmetric Hamiltonian block restricted to one parity sector.
pub fn sector_hamiltonian(
    params: &ModelParams,
    space: HilbertSpace,
    indices: &[usize],
) -> Mat<f64> {
    let mut local = vec![usize::MAX; space.dim()];
    for (k, &i) in indices.iter().enumerate() {
        local[i] = k;
    }
    let m = indices.len();
    let mut h = Mat::<f64>::zeros(m, m);
    for (a, &i) in indices.iter().enumerate() {
        h[(a, a)] = diagonal_energy(params, space, i);
        for (j, v) in couplings(params, space, i) {
            let b = local[j];
            debug_assert!(b != usize::MAX, "coupling leaves the parity sector");
            h[(a, b)] = v;
        }
    }
    h
}
