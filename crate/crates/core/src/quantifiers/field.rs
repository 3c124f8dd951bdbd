use num_complex::Complex64 as c64;

use crate::error::Result;
use crate::linalg::ZERO;
use crate::model::EigenSystem;
use crate::qops::{DensityMatrix, Subsystem};
use crate::thermal::ThermalState;

/// |⟨â⟩| above which the mean-subtracted variance is used.
pub const MEAN_TOL: f64 = 1e-8;

/// Quadrature squeezing of the bare mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Squeezing {
    /// min_θ of the quadrature variance, vacuum = 1
    pub zeta2: f64,
    /// ⟨â†â⟩
    pub n_photons: f64,
    /// |⟨â⟩|
    pub mean_abs: f64,
}

impl Squeezing {
    fn from_moments(n: f64, a2: c64, a1: c64) -> Self {
        let mean_abs = a1.norm();
        let zeta2 = if mean_abs <= MEAN_TOL {
            1.0 + 2.0 * n - 2.0 * a2.norm()
        } else {
            // Variance of âe^{−iθ} + â†e^{iθ} minimized over θ in closed form.
            1.0 + 2.0 * (n - a1.norm_sqr()) - 2.0 * (a2 - a1 * a1).norm()
        };
        Self {
            zeta2,
            n_photons: n,
            mean_abs,
        }
    }
}

/// ζ² = 1 + 2⟨â†â⟩ − 2|⟨â²⟩| with bare operators. Accepts a field-only state
/// or any state containing the boson factor.
pub fn squeezing(rho: &DensityMatrix) -> Result<Squeezing> {
    let field = if rho.factors().len() == 1 && rho.factors()[0].0 == Subsystem::Boson {
        rho.clone()
    } else {
        rho.partial_trace(&[Subsystem::Boson])?
    };
    let nf = field.dim();
    let (mut n, mut a2, mut a1) = (0.0, ZERO, ZERO);
    for m in 0..nf {
        let mf = m as f64;
        n += mf * field.get(m, m).re;
        if m >= 1 {
            a1 += field.get(m, m - 1) * mf.sqrt();
        }
        if m >= 2 {
            a2 += field.get(m, m - 2) * (mf * (mf - 1.0)).sqrt();
        }
    }
    Ok(Squeezing::from_moments(n, a2, a1))
}

/// [`squeezing`] of a thermal state in spectral form.
pub fn squeezing_thermal(eigs: &EigenSystem, thermal: &ThermalState) -> Squeezing {
    let nf = eigs.space().n_fock();
    let (mut n, mut a2, mut a1) = (0.0, ZERO, ZERO);
    for (k, w) in thermal.iter() {
        let v = eigs.state(k);
        for qq in 0..4 {
            let b = qq * nf;
            for m in 0..nf {
                let mf = m as f64;
                n += w * mf * v[b + m].norm_sqr();
                if m >= 1 {
                    a1 += v[b + m - 1].conj() * v[b + m] * (w * mf.sqrt());
                }
                if m >= 2 {
                    a2 += v[b + m - 2].conj() * v[b + m] * (w * (mf * (mf - 1.0)).sqrt());
                }
            }
        }
    }
    Squeezing::from_moments(n, a2, a1)
}
