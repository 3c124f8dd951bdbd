//! Checks against independent constructions: a dense nalgebra Hamiltonian,
//! closed forms for the uncoupled model and X-shaped two-qubit states.

use faer::Mat;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64 as c64;
use rand::{rngs::StdRng, Rng, SeedableRng};

use tqrm::dissipator::{dressed_system, BathParams, Route};
use tqrm::model::{diagonalize_model, CutoffPolicy, ModelParams};
use tqrm::qops::Subsystem;
use tqrm::qops::{DensityMatrix, HilbertSpace};
use tqrm::quantifiers::{
    concurrence, evaluate_all, lqu, mutual_information, negativity, quantum_discord, Bipartition,
    EvaluateOptions, MeasuredSide,
};

/// Dense H built from Kronecker products, |e⟩ = (1, 0) on each qubit.
fn nalgebra_hamiltonian(p: &ModelParams, n: usize) -> DMatrix<f64> {
    let eye = |d: usize| DMatrix::<f64>::identity(d, d);
    let mut x = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let s = (k as f64).sqrt();
        x[(k - 1, k)] = s;
        x[(k, k - 1)] = s;
    }
    let num = DMatrix::from_fn(n, n, |i, j| if i == j { i as f64 } else { 0.0 });
    let sz = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let sx = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let kron3 = |a: &DMatrix<f64>, b: &DMatrix<f64>, c: &DMatrix<f64>| a.kronecker(b).kronecker(c);
    kron3(&eye(2), &eye(2), &num) * p.omega
        + kron3(&sz, &eye(2), &eye(n)) * (0.5 * p.delta1)
        + kron3(&eye(2), &sz, &eye(n)) * (0.5 * p.delta2)
        + kron3(&sx, &eye(2), &x) * p.g1
        + kron3(&eye(2), &sx, &x) * p.g2
}

#[test]
fn spectrum_matches_dense_nalgebra_diagonalization() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..6 {
        let p = ModelParams::new(
            rng.gen_range(0.3..3.0),
            rng.gen_range(0.0..3.0),
            rng.gen_range(0.0..3.0),
            rng.gen_range(0.0..1.2),
            rng.gen_range(0.0..1.2),
        )
        .unwrap();
        let n = 20;
        let mut want = SymmetricEigen::new(nalgebra_hamiltonian(&p, n))
            .eigenvalues
            .as_slice()
            .to_vec();
        want.sort_by(f64::total_cmp);
        let got = diagonalize_model(&p, HilbertSpace::new(n).unwrap()).unwrap();
        let scale = want.last().unwrap() - want[0];
        for (a, b) in got.energies().iter().zip(&want) {
            assert!((a - b).abs() < 1e-10 * scale, "{p}: {a} vs {b}");
        }
    }
}

#[test]
fn uncoupled_spectrum_is_analytic() {
    let p = ModelParams::new(1.3, 0.7, 2.1, 0.0, 0.0).unwrap();
    let n = 12;
    let eigs = diagonalize_model(&p, HilbertSpace::new(n).unwrap()).unwrap();
    let mut want = Vec::new();
    for k in 0..n {
        for s1 in [-0.5, 0.5] {
            for s2 in [-0.5, 0.5] {
                want.push(k as f64 * p.omega + s1 * p.delta1 + s2 * p.delta2);
            }
        }
    }
    want.sort_by(f64::total_cmp);
    for (a, b) in eigs.energies().iter().zip(&want) {
        assert!((a - b).abs() < 1e-12, "{a} vs {b}");
    }
}

#[test]
fn uncoupled_thermal_state_has_closed_forms() {
    let (omega, d1, d2, t) = (1.0, 0.8, 1.4, 0.7);
    let p = ModelParams::new(omega, d1, d2, 0.0, 0.0).unwrap();
    let bath = BathParams::for_mode(omega, t).unwrap();
    let r = evaluate_all(&p, &bath, t, &EvaluateOptions::default()).unwrap();
    let nbar = 1.0 / ((omega / t).exp() - 1.0);
    let z = (1.0 + (-d1 / t).exp()) * (1.0 + (-d2 / t).exp()) / (1.0 - (-omega / t).exp());
    assert!(
        (r.n_photons.unwrap() - nbar).abs() < 1e-8,
        "{:?}",
        r.n_photons
    );
    assert!((r.p0.unwrap() - 1.0 / z).abs() < 1e-8, "{:?}", r.p0);
    assert!((r.g2.unwrap() - 2.0).abs() < 1e-6, "{:?}", r.g2);
    for v in [
        r.negativity_qq,
        r.negativity_q_f,
        r.concurrence,
        r.mutual_info,
        r.discord,
        r.lqu,
        r.coherence_re,
    ] {
        assert!(v.unwrap().abs() < 1e-9, "{v:?}");
    }
}

#[test]
fn steady_state_populations_follow_boltzmann() {
    let p = ModelParams::symmetric(1.0, 1.2, 0.8).unwrap();
    let t = 0.4;
    let bath = BathParams::for_mode(1.0, t).unwrap();
    let sys = dressed_system(&p, &bath, None, &CutoffPolicy::default()).unwrap();
    let ss = sys.liouvillian.steady_state(Route::Dense).unwrap();
    let e = sys.liouvillian.energies();
    let w: Vec<f64> = e.iter().map(|x| (-(x - e[0]) / t).exp()).collect();
    let z: f64 = w.iter().sum();
    for (got, want) in ss.populations().iter().zip(&w) {
        assert!((got - want / z).abs() < 1e-9, "{got} vs {}", want / z);
    }
}

struct XState {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    z: c64,
    w: c64,
}

impl XState {
    fn random(rng: &mut StdRng) -> Self {
        let mut p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.01..1.0));
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= s);
        let [a, b, c, d] = p;
        // Positivity needs |z|² ≤ bc and |w|² ≤ ad.
        let z = c64::from_polar(
            (b * c).sqrt() * rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..6.3),
        );
        let w = c64::from_polar(
            (a * d).sqrt() * rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..6.3),
        );
        Self { a, b, c, d, z, w }
    }

    fn matrix(&self) -> DensityMatrix {
        let r = |x: f64| c64::new(x, 0.0);
        let o = c64::new(0.0, 0.0);
        let rows = [
            [r(self.a), o, o, self.w],
            [o, r(self.b), self.z, o],
            [o, self.z.conj(), r(self.c), o],
            [self.w.conj(), o, o, r(self.d)],
        ];
        DensityMatrix::two_qubit(Mat::from_fn(4, 4, |i, j| rows[i][j])).unwrap()
    }

    fn concurrence(&self) -> f64 {
        let c1 = self.z.norm() - (self.a * self.d).sqrt();
        let c2 = self.w.norm() - (self.b * self.c).sqrt();
        2.0 * c1.max(c2).max(0.0)
    }

    fn negativity(&self) -> f64 {
        let low = |p: f64, q: f64, x: c64| {
            0.5 * (p + q) - ((0.5 * (p - q)).powi(2) + x.norm_sqr()).sqrt()
        };
        (-low(self.a, self.d, self.z)).max(0.0) + (-low(self.b, self.c, self.w)).max(0.0)
    }
}

#[test]
fn x_states_match_closed_forms() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..50 {
        let x = XState::random(&mut rng);
        let rho = x.matrix();
        let c = concurrence(&rho).unwrap();
        assert!(
            (c - x.concurrence()).abs() < 1e-9,
            "{c} vs {}",
            x.concurrence()
        );
        let n = negativity(&rho, Bipartition::QubitQubit).unwrap();
        assert!(
            (n - x.negativity()).abs() < 1e-12,
            "{n} vs {}",
            x.negativity()
        );
    }
}

#[test]
fn classical_states_have_no_quantum_correlations() {
    let mut rng = StdRng::seed_from_u64(9);
    for _ in 0..10 {
        let mut p: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.01..1.0));
        let s: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= s);
        let rho = DensityMatrix::two_qubit(Mat::from_fn(4, 4, |i, j| {
            if i == j {
                c64::new(p[i], 0.0)
            } else {
                c64::new(0.0, 0.0)
            }
        }))
        .unwrap();
        let h = |q: &[f64]| -q.iter().map(|x| x * x.log2()).sum::<f64>();
        let mi = h(&[p[0] + p[1], p[2] + p[3]]) + h(&[p[0] + p[2], p[1] + p[3]]) - h(&p);
        let got = mutual_information(&rho, &[Subsystem::Qubit1]).unwrap();
        assert!((got - mi).abs() < 1e-12, "{got} vs {mi}");
        assert!(quantum_discord(&rho, MeasuredSide::A).unwrap().abs() < 1e-9);
        assert!(lqu(&rho).unwrap().abs() < 1e-12);
        assert!(concurrence(&rho).unwrap() < 1e-12);
    }
}
