use faer::Mat;
use num_complex::Complex64 as c64;

use crate::error::{Error, Result};
use crate::linalg::ZERO;
use crate::model::EigenSystem;
use crate::qops::{sparse, DensityMatrix, HilbertSpace, Operator, Subsystem};
use crate::thermal::ThermalState;

/// Extra eigenstates kept above the highest populated level.
pub const GUARD_LEVELS: usize = 8;

/// ⟨X̂⁻X̂⁺⟩ below which G²(0) is undefined.
pub const X_NUM_FLOOR: f64 = 1e-14;

/// Dressed photon annihilation operator
/// X̂⁺ = −i Σ_{k>j} (E_k − E_j) X_jk |φ_j⟩⟨φ_k|, X_jk = ⟨φ_j|â + â†|φ_k⟩,
/// stored on the lowest K eigenstates.
#[derive(Debug, Clone)]
pub struct DressedJumpOperator {
    space: HilbertSpace,
    basis: Mat<c64>,
    xplus: Mat<c64>,
}

impl DressedJumpOperator {
    /// Build X̂⁺ on the lowest `levels` eigenstates (capped at the spectrum
    /// size).
    pub fn new(eigs: &EigenSystem, levels: usize) -> Result<Self> {
        let k = levels.min(eigs.len());
        if k == 0 {
            return Err(Error::InvalidParameter(
                "dressed jump operator needs at least one level".into(),
            ));
        }
        let space = eigs.space();
        let basis = eigs.states(k);
        let cols: Vec<_> = (0..k).map(|c| basis.col(c).to_owned()).collect();
        let e = eigs.energies();
        let mut xplus = Mat::<c64>::zeros(k, k);
        for hi in 1..k {
            let w = sparse::apply_quadrature(space, &cols[hi]);
            for lo in 0..hi {
                let x = sparse::inner(&cols[lo], &w);
                xplus[(lo, hi)] = c64::new(0.0, -(e[hi] - e[lo])) * x;
            }
        }
        Ok(Self {
            space,
            basis,
            xplus,
        })
    }

    /// Truncation matched to a thermal state: every retained level plus
    /// [`GUARD_LEVELS`].
    pub fn for_thermal(eigs: &EigenSystem, thermal: &ThermalState) -> Result<Self> {
        Self::new(eigs, thermal.span() + GUARD_LEVELS)
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    /// Number of eigenstates K in the truncated basis.
    pub fn levels(&self) -> usize {
        self.xplus.nrows()
    }

    /// K×K matrix of X̂⁺ in the eigenbasis (strictly upper triangular).
    pub fn matrix(&self) -> &Mat<c64> {
        &self.xplus
    }

    /// Eigenvectors spanning the truncated basis, as columns.
    pub fn basis(&self) -> &Mat<c64> {
        &self.basis
    }

    /// X̂⁺ embedded in the full composite space.
    pub fn to_operator(&self) -> Result<Operator> {
        let full = &self.basis * &self.xplus * self.basis.adjoint();
        Operator::from_matrix(self.space, full)
    }
}

/// Dressed photon statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonStatistics {
    /// G²(0); `None` when ⟨X̂⁻X̂⁺⟩ < [`X_NUM_FLOOR`].
    pub g2: Option<f64>,
    /// ⟨X̂⁻X̂⁺⟩
    pub x_excitations: f64,
}

impl PhotonStatistics {
    fn from_moments(first: f64, second: f64) -> Self {
        let g2 = if first < X_NUM_FLOOR {
            None
        } else {
            Some(second / (first * first))
        };
        Self {
            g2,
            x_excitations: first,
        }
    }
}

fn column_norm_sqr(m: &Mat<c64>, c: usize) -> f64 {
    (0..m.nrows()).map(|r| m[(r, c)].norm_sqr()).sum()
}

/// G²(0) = ⟨(X̂⁻)²(X̂⁺)²⟩/⟨X̂⁻X̂⁺⟩² for a state on the full composite space.
///
/// The state is projected onto the truncated eigenbasis of `x`; it must be
/// supported there for the result to be exact.
pub fn dressed_g2(rho: &DensityMatrix, x: &DressedJumpOperator) -> Result<PhotonStatistics> {
    let expected = x.space.factors();
    if rho.factors() != &expected {
        return Err(Error::BasisMismatch(format!(
            "state factors {:?} do not match the jump operator space {:?}",
            rho.factors(),
            expected
        )));
    }
    let v = &x.basis;
    let rk = v.adjoint() * rho.data() * v;
    let a = &x.xplus;
    let a2 = a * a;
    let n1 = a.adjoint() * a;
    let n2 = a2.adjoint() * &a2;
    let k = x.levels();
    let (mut first, mut second) = (ZERO, ZERO);
    for i in 0..k {
        for j in 0..k {
            first += rk[(i, j)] * n1[(j, i)];
            second += rk[(i, j)] * n2[(j, i)];
        }
    }
    Ok(PhotonStatistics::from_moments(first.re, second.re))
}

/// Same as [`dressed_g2`] for a thermal state given in spectral form.
pub fn dressed_g2_thermal(
    thermal: &ThermalState,
    x: &DressedJumpOperator,
) -> Result<PhotonStatistics> {
    if thermal.span() > x.levels() {
        return Err(Error::BasisMismatch(format!(
            "thermal state spans {} levels but the jump operator keeps {}",
            thermal.span(),
            x.levels()
        )));
    }
    let a = &x.xplus;
    let a2 = a * a;
    let (mut first, mut second) = (0.0, 0.0);
    for (k, w) in thermal.iter() {
        first += w * column_norm_sqr(a, k);
        second += w * column_norm_sqr(&a2, k);
    }
    Ok(PhotonStatistics::from_moments(first, second))
}

/// Photon statistics of the bare field with X̂⁺ = −iωâ on a field-only or
/// composite state; the weak-coupling reference.
pub fn bare_g2(rho: &DensityMatrix) -> Result<PhotonStatistics> {
    let field = if rho.factors().len() == 1 && rho.factors()[0].0 == Subsystem::Boson {
        rho.clone()
    } else {
        rho.partial_trace(&[Subsystem::Boson])?
    };
    let n = field.dim();
    // ⟨a†a⟩ and ⟨a†²a²⟩ are diagonal in the Fock basis; ω cancels in the ratio.
    let (mut first, mut second) = (0.0, 0.0);
    for m in 0..n {
        let p = field.get(m, m).re;
        let mf = m as f64;
        first += mf * p;
        second += mf * (mf - 1.0) * p;
    }
    Ok(PhotonStatistics::from_moments(first, second))
}
