//! Matrix-free application of the local operators that are needed on large
//! cutoffs, where dense composite-space matrices are too expensive.

use faer::Col;
use num_complex::Complex64 as c64;

use super::space::HilbertSpace;

/// â|v⟩
pub fn apply_annihilation(space: HilbertSpace, v: &Col<c64>) -> Col<c64> {
    let nf = space.n_fock();
    let mut out = Col::<c64>::zeros(space.dim());
    for qq in 0..4 {
        let base = qq * nf;
        for n in 1..nf {
            out[base + n - 1] = v[base + n] * (n as f64).sqrt();
        }
    }
    out
}

/// (â + â†)|v⟩
pub fn apply_quadrature(space: HilbertSpace, v: &Col<c64>) -> Col<c64> {
    let nf = space.n_fock();
    let mut out = Col::<c64>::zeros(space.dim());
    for qq in 0..4 {
        let base = qq * nf;
        for n in 0..nf {
            let mut s = c64::new(0.0, 0.0);
            if n + 1 < nf {
                s += v[base + n + 1] * ((n + 1) as f64).sqrt();
            }
            if n > 0 {
                s += v[base + n - 1] * (n as f64).sqrt();
            }
            out[base + n] = s;
        }
    }
    out
}

/// σˣ on qubit 1 or 2.
pub fn apply_sigma_x(space: HilbertSpace, qubit: usize, v: &Col<c64>) -> Col<c64> {
    assert!(qubit == 1 || qubit == 2, "qubit index must be 1 or 2");
    let nf = space.n_fock();
    let mut out = Col::<c64>::zeros(space.dim());
    for q1 in 0..2 {
        for q2 in 0..2 {
            let (f1, f2) = if qubit == 1 {
                (1 - q1, q2)
            } else {
                (q1, 1 - q2)
            };
            let src = (2 * f1 + f2) * nf;
            let dst = (2 * q1 + q2) * nf;
            for n in 0..nf {
                out[dst + n] = v[src + n];
            }
        }
    }
    out
}

/// ⟨u|v⟩
pub fn inner(u: &Col<c64>, v: &Col<c64>) -> c64 {
    u.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(v: &Col<c64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}
