use std::ops::{Add, Mul, Sub};

use faer::{Col, Mat, MatRef};
use num_complex::Complex64 as c64;

use super::space::HilbertSpace;
use crate::error::{Error, Result};
use crate::linalg::{self, ONE, ZERO};

/// Single-qubit operator names.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
    /// σ⁺ = |e⟩⟨g|
    Plus,
    /// σ⁻ = |g⟩⟨e|
    Minus,
}

impl Pauli {
    /// 2×2 matrix in the (|g⟩, |e⟩) basis. σᶻ|e⟩ = +|e⟩.
    pub fn matrix(self) -> [[c64; 2]; 2] {
        let i = c64::new(0.0, 1.0);
        match self {
            Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
            Pauli::Y => [[ZERO, i], [-i, ZERO]],
            Pauli::Z => [[-ONE, ZERO], [ZERO, ONE]],
            Pauli::Plus => [[ZERO, ZERO], [ONE, ZERO]],
            Pauli::Minus => [[ZERO, ONE], [ZERO, ZERO]],
        }
    }
}

/// Dense operator on the composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    data: Mat<c64>,
}

impl Operator {
    pub fn from_matrix(space: HilbertSpace, data: Mat<c64>) -> Result<Self> {
        if data.nrows() != space.dim() || data.ncols() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                got: data.nrows().max(data.ncols()),
            });
        }
        Ok(Self { space, data })
    }

    pub fn zeros(space: HilbertSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            data: Mat::zeros(d, d),
        }
    }

    pub fn identity(space: HilbertSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            data: Mat::identity(d, d),
        }
    }

    /// Embed local operators acting on (qubit 1, qubit 2, boson).
    pub fn product(
        space: HilbertSpace,
        q1: [[c64; 2]; 2],
        q2: [[c64; 2]; 2],
        boson: MatRef<'_, c64>,
    ) -> Self {
        let nf = space.n_fock();
        assert_eq!(boson.nrows(), nf);
        let data = Mat::from_fn(space.dim(), space.dim(), |i, j| {
            let (a1, a2, n) = space.decompose(i);
            let (b1, b2, m) = space.decompose(j);
            q1[a1][b1] * q2[a2][b2] * boson[(n, m)]
        });
        Self { space, data }
    }

    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn data(&self) -> MatRef<'_, c64> {
        self.data.as_ref()
    }

    pub fn into_data(self) -> Mat<c64> {
        self.data
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.data[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space,
            data: linalg::adjoint(self.data.as_ref()),
        }
    }

    pub fn scale(&self, s: impl Into<c64>) -> Self {
        let s = s.into();
        let d = self.dim();
        Self {
            space: self.space,
            data: Mat::from_fn(d, d, |i, j| self.data[(i, j)] * s),
        }
    }

    pub fn commutator(&self, other: &Operator) -> Self {
        Self {
            space: self.space,
            data: linalg::commutator(self.data.as_ref(), other.data.as_ref()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(self.data.as_ref())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(self.data.as_ref())
    }

    pub fn apply(&self, v: &Col<c64>) -> Col<c64> {
        &self.data * v
    }

    /// ⟨u|O|v⟩
    pub fn matrix_element(&self, u: &Col<c64>, v: &Col<c64>) -> c64 {
        let ov = self.apply(v);
        u.iter().zip(ov.iter()).map(|(a, b)| a.conj() * b).sum()
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator {
            space: self.space,
            data: &self.data + &rhs.data,
        }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator {
            space: self.space,
            data: &self.data - &rhs.data,
        }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator {
            space: self.space,
            data: &self.data * &rhs.data,
        }
    }
}

fn qubit_identity() -> [[c64; 2]; 2] {
    [[ONE, ZERO], [ZERO, ONE]]
}

fn boson_block(n_fock: usize, f: impl Fn(usize, usize) -> f64) -> Mat<c64> {
    Mat::from_fn(n_fock, n_fock, |i, j| c64::new(f(i, j), 0.0))
}

/// Boson annihilation operator â ⊗ identity on both qubits.
pub fn annihilation(space: HilbertSpace) -> Operator {
    let b = boson_block(space.n_fock(), |i, j| {
        if j == i + 1 {
            (j as f64).sqrt()
        } else {
            0.0
        }
    });
    Operator::product(space, qubit_identity(), qubit_identity(), b.as_ref())
}

pub fn creation(space: HilbertSpace) -> Operator {
    annihilation(space).adjoint()
}

/// â†â
pub fn number(space: HilbertSpace) -> Operator {
    let b = boson_block(space.n_fock(), |i, j| if i == j { i as f64 } else { 0.0 });
    Operator::product(space, qubit_identity(), qubit_identity(), b.as_ref())
}

/// â + â†
pub fn field_quadrature(space: HilbertSpace) -> Operator {
    let b = boson_block(space.n_fock(), |i, j| {
        if j == i + 1 {
            (j as f64).sqrt()
        } else if i == j + 1 {
            (i as f64).sqrt()
        } else {
            0.0
        }
    });
    Operator::product(space, qubit_identity(), qubit_identity(), b.as_ref())
}

/// A single-qubit operator on qubit `qubit` (1 or 2).
pub fn pauli(which: Pauli, qubit: usize, space: HilbertSpace) -> Result<Operator> {
    let id_b = Mat::<c64>::identity(space.n_fock(), space.n_fock());
    match qubit {
        1 => Ok(Operator::product(
            space,
            which.matrix(),
            qubit_identity(),
            id_b.as_ref(),
        )),
        2 => Ok(Operator::product(
            space,
            qubit_identity(),
            which.matrix(),
            id_b.as_ref(),
        )),
        _ => Err(Error::InvalidSubsystem(format!(
            "qubit index must be 1 or 2, got {qubit}"
        ))),
    }
}

/// Two-qubit operator `a ⊗ b ⊗ 1`.
pub fn qubit_pair(a: Pauli, b: Pauli, space: HilbertSpace) -> Operator {
    let id_b = Mat::<c64>::identity(space.n_fock(), space.n_fock());
    Operator::product(space, a.matrix(), b.matrix(), id_b.as_ref())
}

/// n̂ = â†â + σ⁺σ⁻ (qubit 1) + σ⁺σ⁻ (qubit 2)
pub fn excitation_number(space: HilbertSpace) -> Operator {
    let d = space.dim();
    let data = Mat::from_fn(d, d, |i, j| {
        if i == j {
            c64::new(space.excitations(i) as f64, 0.0)
        } else {
            ZERO
        }
    });
    Operator { space, data }
}

/// π̂ = exp(iπ n̂), diagonal with entries ±1.
pub fn parity_operator(space: HilbertSpace) -> Operator {
    let d = space.dim();
    let data = Mat::from_fn(d, d, |i, j| {
        if i == j {
            c64::new(parity_sign(space, i) as f64, 0.0)
        } else {
            ZERO
        }
    });
    Operator { space, data }
}

/// Parity of a basis state as ±1.
#[inline]
pub fn parity_sign(space: HilbertSpace, i: usize) -> i8 {
    if space.excitations(i).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Basis ket |q1, q2, n⟩.
pub fn basis_ket(space: HilbertSpace, q1: usize, q2: usize, n: usize) -> Col<c64> {
    let mut v = Col::zeros(space.dim());
    v[space.index(q1, q2, n)] = ONE;
    v
}
