use faer::{Col, Mat};
use num_complex::Complex64 as c64;

use super::hamiltonian::{sector_hamiltonian, sector_indices};
use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::linalg::{self, ZERO};
use crate::qops::{parity_sign, HilbertSpace, Operator};

#[derive(Debug, Clone)]
enum Vectors {
    Real(Mat<f64>),
    Complex(Mat<c64>),
}

/// Eigenvectors restricted to a subset of basis states.
#[derive(Debug, Clone)]
struct Block {
    indices: Vec<usize>,
    vectors: Vectors,
}

/// Spectral decomposition of the Hamiltonian with parity labels.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    space: HilbertSpace,
    energies: Vec<f64>,
    parities: Vec<i8>,
    blocks: Vec<Block>,
    // (block, column) of eigenstate k
    slots: Vec<(usize, usize)>,
}

impl EigenSystem {
    pub fn space(&self) -> HilbertSpace {
        self.space
    }

    pub fn n_fock_used(&self) -> usize {
        self.space.n_fock()
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    /// Ascending eigenvalues.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn energy(&self, k: usize) -> f64 {
        self.energies[k]
    }

    pub fn parities(&self) -> &[i8] {
        &self.parities
    }

    pub fn parity(&self, k: usize) -> i8 {
        self.parities[k]
    }

    /// E_max − E_min, floored at 1 so that tolerances stay meaningful for
    /// tiny spectra.
    pub fn scale(&self) -> f64 {
        match (self.energies.first(), self.energies.last()) {
            (Some(a), Some(b)) => (b - a).max(1.0),
            _ => 1.0,
        }
    }

    /// Eigenvector |φ_k⟩ on the full space.
    pub fn state(&self, k: usize) -> Col<c64> {
        let (b, c) = self.slots[k];
        let block = &self.blocks[b];
        let mut v = Col::<c64>::zeros(self.space.dim());
        match &block.vectors {
            Vectors::Real(u) => {
                for (r, &i) in block.indices.iter().enumerate() {
                    v[i] = c64::new(u[(r, c)], 0.0);
                }
            }
            Vectors::Complex(u) => {
                for (r, &i) in block.indices.iter().enumerate() {
                    v[i] = u[(r, c)];
                }
            }
        }
        v
    }

    /// The lowest `count` eigenvectors as columns.
    pub fn states(&self, count: usize) -> Mat<c64> {
        let count = count.min(self.len());
        let mut m = Mat::<c64>::zeros(self.space.dim(), count);
        for k in 0..count {
            let v = self.state(k);
            for i in 0..v.nrows() {
                m[(i, k)] = v[i];
            }
        }
        m
    }

    /// ⟨φ_k|π̂|φ_k⟩ evaluated from the stored vector.
    pub fn parity_expectation(&self, k: usize) -> f64 {
        let v = self.state(k);
        (0..v.nrows())
            .map(|i| parity_sign(self.space, i) as f64 * v[i].norm_sqr())
            .sum()
    }
}

fn merge(space: HilbertSpace, sectors: Vec<(i8, Vec<f64>, Block)>) -> EigenSystem {
    let mut order: Vec<(f64, i8, usize, usize)> = Vec::new();
    let mut blocks = Vec::new();
    for (b, (parity, vals, block)) in sectors.into_iter().enumerate() {
        for (c, &e) in vals.iter().enumerate() {
            order.push((e, parity, b, c));
        }
        blocks.push(block);
    }
    // Even parity first among exact ties keeps the ordering reproducible.
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));
    EigenSystem {
        space,
        energies: order.iter().map(|o| o.0).collect(),
        parities: order.iter().map(|o| o.1).collect(),
        blocks,
        slots: order.iter().map(|o| (o.2, o.3)).collect(),
    }
}

/// Diagonalize the model Hamiltonian sector by sector. Eigenvectors are real
/// and carry exact parity.
pub fn diagonalize_model(params: &ModelParams, space: HilbertSpace) -> Result<EigenSystem> {
    params.validate()?;
    let mut sectors = Vec::with_capacity(2);
    for parity in [1i8, -1] {
        let indices = sector_indices(space, parity);
        let h = sector_hamiltonian(params, space, &indices);
        let (vals, vecs) = linalg::symmetric_eigen(h.as_ref())?;
        sectors.push((
            parity,
            vals,
            Block {
                indices,
                vectors: Vectors::Real(vecs),
            },
        ));
    }
    Ok(merge(space, sectors))
}

/// Largest |H_ij| connecting basis states of opposite parity.
fn parity_leak(h: &Operator) -> f64 {
    let s = h.space();
    let d = s.dim();
    let mut m = 0.0_f64;
    for j in 0..d {
        for i in 0..d {
            if parity_sign(s, i) != parity_sign(s, j) {
                m = m.max(h.get(i, j).norm());
            }
        }
    }
    m
}

/// Diagonalize an arbitrary Hermitian operator on the composite space.
///
/// Parity-conserving input is split into sectors. Otherwise the full matrix is
/// diagonalized and each cluster of states closer than 1e-9·(E_max − E_min)
/// is rotated to diagonalize π̂ within it.
pub fn diagonalize(h: &Operator) -> Result<EigenSystem> {
    let norm = h.max_abs().max(f64::MIN_POSITIVE);
    let defect = h.hermiticity_defect();
    if defect > 1e-12 * norm.max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let space = h.space();
    if parity_leak(h) == 0.0 {
        let mut sectors = Vec::with_capacity(2);
        for parity in [1i8, -1] {
            let indices = sector_indices(space, parity);
            let m = indices.len();
            let block = Mat::from_fn(m, m, |a, b| h.get(indices[a], indices[b]));
            let (vals, vecs) = linalg::hermitian_eigen(block.as_ref())?;
            let vectors = if linalg::is_real(block.as_ref()) {
                Vectors::Real(linalg::real_part(vecs.as_ref()))
            } else {
                Vectors::Complex(vecs)
            };
            sectors.push((parity, vals, Block { indices, vectors }));
        }
        return Ok(merge(space, sectors));
    }
    diagonalize_mixed(h)
}

fn diagonalize_mixed(h: &Operator) -> Result<EigenSystem> {
    let space = h.space();
    let d = space.dim();
    let (vals, mut vecs) = linalg::hermitian_eigen(h.data())?;
    let spread = vals.last().unwrap_or(&0.0) - vals.first().unwrap_or(&0.0);
    let width = 1e-9 * spread.max(f64::MIN_POSITIVE);
    let sign: Vec<f64> = (0..d).map(|i| parity_sign(space, i) as f64).collect();

    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && vals[end] - vals[end - 1] < width {
            end += 1;
        }
        let k = end - start;
        if k > 1 {
            let pc = Mat::from_fn(k, k, |a, b| {
                let mut s = ZERO;
                for i in 0..d {
                    s += vecs[(i, start + a)].conj() * sign[i] * vecs[(i, start + b)];
                }
                s
            });
            let (_, w) = linalg::hermitian_eigen(pc.as_ref())?;
            let cluster = vecs.subcols(start, k).to_owned();
            let rotated = &cluster * &w;
            for c in 0..k {
                for i in 0..d {
                    vecs[(i, start + c)] = rotated[(i, c)];
                }
            }
        }
        start = end;
    }

    let mut parities = Vec::with_capacity(d);
    for c in 0..d {
        let p: f64 = (0..d).map(|i| sign[i] * vecs[(i, c)].norm_sqr()).sum();
        parities.push(if p >= 0.0 { 1 } else { -1 });
    }
    Ok(EigenSystem {
        space,
        energies: vals,
        parities,
        blocks: vec![Block {
            indices: (0..d).collect(),
            vectors: Vectors::Complex(vecs),
        }],
        slots: (0..d).map(|c| (0, c)).collect(),
    })
}
