use faer::{Col, Mat, MatRef};
use num_complex::Complex64 as c64;

use super::space::{Factors, HilbertSpace, Subsystem};
use crate::error::{Error, Result};
use crate::linalg::{self, ZERO};

/// Validation tolerances carried by every [`DensityMatrix`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub trace: f64,
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-10,
            trace: 1e-10,
            psd: 1e-10,
        }
    }
}

/// A density matrix over an ordered list of tensor factors.
///
/// The first factor is the most significant digit of the basis index, so
/// the full composite space is `[(Qubit1, 2), (Qubit2, 2), (Boson, N)]`.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    factors: Factors,
    data: Mat<c64>,
    tol: Tolerances,
}

fn factor_dim(factors: &Factors) -> usize {
    factors.iter().map(|f| f.1).product()
}

fn check_shape(factors: &Factors, data: MatRef<'_, c64>) -> Result<()> {
    let d = factor_dim(factors);
    if data.nrows() != d || data.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: data.nrows().max(data.ncols()),
        });
    }
    Ok(())
}

impl DensityMatrix {
    /// Validated constructor: Hermiticity, unit trace and PSD are checked.
    pub fn new(factors: Factors, data: Mat<c64>) -> Result<Self> {
        Self::with_tolerances(factors, data, Tolerances::default())
    }

    pub fn with_tolerances(factors: Factors, data: Mat<c64>, tol: Tolerances) -> Result<Self> {
        check_shape(&factors, data.as_ref())?;
        let h = linalg::hermiticity_defect(data.as_ref());
        if h > tol.herm {
            return Err(Error::NotHermitian(h));
        }
        let tr = linalg::trace(data.as_ref());
        let dev = (tr - c64::new(1.0, 0.0)).norm();
        if dev > tol.trace {
            return Err(Error::InvalidTrace(dev));
        }
        let rho = Self { factors, data, tol };
        let min = rho.eigenvalues()?.first().copied().unwrap_or(0.0);
        if min < -tol.psd {
            return Err(Error::NotPositive(min));
        }
        Ok(rho)
    }

    /// Constructor for states that are valid by construction (spectral sums,
    /// reductions). Only the shape is checked; the matrix is Hermitized.
    pub fn trusted(factors: Factors, data: Mat<c64>) -> Result<Self> {
        check_shape(&factors, data.as_ref())?;
        let n = data.nrows();
        let data = Mat::from_fn(n, n, |i, j| (data[(i, j)] + data[(j, i)].conj()) * 0.5);
        Ok(Self {
            factors,
            data,
            tol: Tolerances::default(),
        })
    }

    /// State on the full composite space.
    pub fn on_space(space: HilbertSpace, data: Mat<c64>) -> Result<Self> {
        Self::new(space.factors(), data)
    }

    /// |ψ⟩⟨ψ| for a normalized ψ.
    pub fn pure(factors: Factors, psi: &Col<c64>) -> Result<Self> {
        let n = psi.nrows();
        let data = Mat::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
        Self::new(factors, data)
    }

    /// Two-qubit state on `[(Qubit1, 2), (Qubit2, 2)]`.
    pub fn two_qubit(data: Mat<c64>) -> Result<Self> {
        Self::new(two_qubit_factors(), data)
    }

    pub fn factors(&self) -> &Factors {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn data(&self) -> MatRef<'_, c64> {
        self.data.as_ref()
    }

    pub fn into_data(self) -> Mat<c64> {
        self.data
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.data[(i, j)]
    }

    pub fn trace(&self) -> c64 {
        linalg::trace(self.data.as_ref())
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::hermitian_eigenvalues(self.data.as_ref())
    }

    /// ρ_A ⊗ ρ_B with factor lists concatenated.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let db = other.dim();
        let d = self.dim() * db;
        let data = Mat::from_fn(d, d, |i, j| {
            self.data[(i / db, j / db)] * other.data[(i % db, j % db)]
        });
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().copied());
        DensityMatrix {
            factors,
            data,
            tol: self.tol,
        }
    }

    fn positions(&self, subs: &[Subsystem]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.factors.len()];
        for s in subs {
            match self.factors.iter().position(|f| f.0 == *s) {
                Some(p) => mask[p] = true,
                None => {
                    return Err(Error::InvalidSubsystem(format!(
                        "{s} is not a factor of this state"
                    )))
                }
            }
        }
        Ok(mask)
    }

    /// Reduced state on the factors in `keep` (in their original order).
    pub fn partial_trace(&self, keep: &[Subsystem]) -> Result<DensityMatrix> {
        let mask = self.positions(keep)?;
        let n_keep = mask.iter().filter(|&&m| m).count();
        if n_keep == 0 {
            return Err(Error::InvalidSubsystem("keep set is empty".into()));
        }
        if n_keep == self.factors.len() {
            return Err(Error::InvalidSubsystem(
                "keep set must be a proper subset of the factors".into(),
            ));
        }
        let kept: Factors = self
            .factors
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(f, _)| *f)
            .collect();
        let dk = factor_dim(&kept);
        let dr = self.dim() / dk;

        // full[k * dr + r] = composite index with kept digits k and traced digits r
        let mut full = vec![0usize; self.dim()];
        for i in 0..self.dim() {
            let (mut k, mut r) = (0usize, 0usize);
            let mut rem = i;
            let mut stride = self.dim();
            for (f, &m) in self.factors.iter().zip(&mask) {
                stride /= f.1;
                let digit = rem / stride;
                rem %= stride;
                if m {
                    k = k * f.1 + digit;
                } else {
                    r = r * f.1 + digit;
                }
            }
            full[k * dr + r] = i;
        }
        let data = Mat::from_fn(dk, dk, |a, b| {
            let mut s = ZERO;
            for r in 0..dr {
                s += self.data[(full[a * dr + r], full[b * dr + r])];
            }
            s
        });
        Ok(DensityMatrix {
            factors: kept,
            data,
            tol: self.tol,
        })
    }

    /// Transpose the indices of the listed factors.
    pub fn partial_transpose(&self, subs: &[Subsystem]) -> Result<Mat<c64>> {
        if subs.is_empty() {
            return Err(Error::InvalidSubsystem("no subsystem selected".into()));
        }
        let mask = self.positions(subs)?;
        let d = self.dim();
        let dims: Vec<usize> = self.factors.iter().map(|f| f.1).collect();
        let mut strides = vec![1usize; dims.len()];
        for p in (0..dims.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * dims[p + 1];
        }
        // Swap the selected digits of (i, j).
        let swap = |i: usize, j: usize| -> (usize, usize) {
            let (mut a, mut b) = (i, j);
            for p in 0..dims.len() {
                if mask[p] {
                    let di = (i / strides[p]) % dims[p];
                    let dj = (j / strides[p]) % dims[p];
                    a = a - di * strides[p] + dj * strides[p];
                    b = b - dj * strides[p] + di * strides[p];
                }
            }
            (a, b)
        };
        Ok(Mat::from_fn(d, d, |i, j| {
            let (a, b) = swap(i, j);
            self.data[(a, b)]
        }))
    }

    /// Hermitian PSD square root; eigenvalues within `psd` of zero are clamped.
    ///
    /// Eigenvalues below the round-off level of the eigensolver
    /// (dim · ε · λ_max) are treated as exact zeros, since their square roots
    /// would otherwise inject noise of order √ε.
    pub fn herm_sqrt(&self) -> Result<Mat<c64>> {
        let (vals, vecs) = linalg::hermitian_eigen(self.data.as_ref())?;
        if let Some(&min) = vals.first() {
            if min < -self.tol.psd {
                return Err(Error::NotPositive(min));
            }
        }
        let n = vals.len();
        let top = vals.last().copied().unwrap_or(0.0).max(0.0);
        let floor = n as f64 * f64::EPSILON * top;
        let root = |v: f64| if v > floor { v.sqrt() } else { 0.0 };
        let scaled = Mat::from_fn(n, n, |i, j| vecs[(i, j)] * root(vals[j]));
        Ok(&scaled * vecs.adjoint())
    }

    /// S(ρ) in bits.
    pub fn von_neumann_entropy(&self) -> Result<f64> {
        Ok(entropy_bits(&self.eigenvalues()?))
    }

    /// ½‖ρ − σ‖₁
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let diff = &self.data - &other.data;
        let vals = linalg::hermitian_eigenvalues(diff.as_ref())?;
        Ok(0.5 * vals.iter().map(|v| v.abs()).sum::<f64>())
    }

    /// Tr(ρ O)
    pub fn expectation(&self, op: MatRef<'_, c64>) -> c64 {
        let n = self.dim();
        let mut s = ZERO;
        for i in 0..n {
            for k in 0..n {
                s += self.data[(i, k)] * op[(k, i)];
            }
        }
        s
    }
}

pub fn two_qubit_factors() -> Factors {
    vec![(Subsystem::Qubit1, 2), (Subsystem::Qubit2, 2)]
}

/// −Σ λ log₂ λ over a spectrum; nonpositive entries contribute zero.
pub fn entropy_bits(spectrum: &[f64]) -> f64 {
    let s: f64 = spectrum
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}
