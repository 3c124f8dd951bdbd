//! Quick invariant checks run by `tqrm selftest`.

use faer::{Col, Mat};
use num_complex::Complex64 as c64;
use serde::Serialize;

use crate::dissipator::{dressed_system, BathParams, Route};
use crate::error::Result;
use crate::harness::{run_sweep, write_csv, Axis, AxisName, SweepConfig};
use crate::linalg::ZERO;
use crate::model::{
    build_hamiltonian, diagonalize_model, initial_cutoff, CutoffPolicy, ModelParams,
};
use crate::qops::{parity_operator, two_qubit_factors, DensityMatrix, HilbertSpace};
use crate::quantifiers::{
    concurrence, evaluate_all, lqu, negativity, quantum_discord, Bipartition, EvaluateOptions,
    MeasuredSide, Quantity,
};
use crate::thermal::{gibbs_state, populations, ThermalSpec};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check {
            name,
            passed,
            detail,
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn asymmetric() -> ModelParams {
    ModelParams {
        omega: 1.0,
        delta1: 0.7,
        delta2: 1.3,
        g1: 0.4,
        g2: 0.6,
    }
}

fn bell() -> Result<DensityMatrix> {
    let h = 0.5f64.sqrt();
    let v = Col::from_fn(4, |i| {
        if i == 0 || i == 3 {
            c64::new(h, 0.0)
        } else {
            ZERO
        }
    });
    DensityMatrix::pure(two_qubit_factors(), &v)
}

/// Run every check; the build is healthy when all pass.
pub fn run() -> Vec<Check> {
    vec![
        check("hamiltonian hermitian and parity conserving", || {
            let s = HilbertSpace::new(20)?;
            let h = build_hamiltonian(&asymmetric(), s);
            let herm = h.hermiticity_defect();
            let comm = h.commutator(&parity_operator(s)).max_abs();
            Ok((
                herm < 1e-12 && comm < 1e-12,
                format!("hermiticity {herm:e}, [H, P] {comm:e}"),
            ))
        }),
        check("spectrum sorted with definite parity", || {
            let eigs = diagonalize_model(&asymmetric(), HilbertSpace::new(24)?)?;
            let sorted = eigs.energies().windows(2).all(|w| w[0] <= w[1]);
            let parity = eigs.parities().iter().all(|&p| p == 1 || p == -1);
            Ok((sorted && parity, format!("{} levels", eigs.len())))
        }),
        check("starting cutoff at zero coupling", || {
            let n = initial_cutoff(
                &ModelParams::symmetric(1.0, 1.0, 0.0)?,
                &CutoffPolicy::default(),
            );
            Ok((n == 20, format!("n0 = {n}")))
        }),
        check("gibbs state normalized", || {
            let eigs = diagonalize_model(&asymmetric(), HilbertSpace::new(24)?)?;
            let rho = gibbs_state(&eigs, &ThermalSpec::new(0.5)?)?;
            let tr = (rho.trace().re - 1.0).abs();
            let min = rho.eigenvalues()?[0];
            Ok((
                tr < 1e-12 && min > -1e-12,
                format!("|tr - 1| {tr:e}, min eigenvalue {min:e}"),
            ))
        }),
        check("bell state measures", || {
            let b = bell()?;
            let c = concurrence(&b)?;
            let n = negativity(&b, Bipartition::QubitQubit)?;
            let d = quantum_discord(&b, MeasuredSide::A)?;
            let u = lqu(&b)?;
            let ok = (c - 1.0).abs() < 1e-9
                && (n - 0.5).abs() < 1e-9
                && (d - 1.0).abs() < 1e-6
                && (u - 1.0).abs() < 1e-7;
            Ok((ok, format!("C {c}, N {n}, D {d}, U {u}")))
        }),
        check("decoupled field is thermal", || {
            let p = ModelParams::symmetric(1.0, 1.0, 0.0)?;
            let opts =
                EvaluateOptions::only(&[Quantity::G2, Quantity::Zeta2, Quantity::Concurrence]);
            let r = evaluate_all(&p, &BathParams::for_mode(1.0, 1.0)?, 1.0, &opts)?;
            let g2 = r.g2.unwrap_or(f64::NAN);
            let c = r.concurrence.unwrap_or(f64::NAN);
            Ok((
                (g2 - 2.0).abs() < 1e-6 && c.abs() < 1e-9,
                format!("G2 {g2}, C {c}"),
            ))
        }),
        check("steady state equals gibbs state", || {
            let p = ModelParams::symmetric(1.0, 1.0, 0.5)?;
            let bath = BathParams::for_mode(1.0, 0.3)?;
            let sys = dressed_system(&p, &bath, None, &CutoffPolicy::default())?;
            let ss = sys.liouvillian.steady_state(Route::Auto)?;
            let d =
                ss.trace_distance_to_diagonal(&populations(&sys.eigs, &ThermalSpec::new(0.3)?)?)?;
            Ok((d < 1e-6, format!("trace distance {d:e}")))
        }),
        check("sweep output independent of workers", || {
            let mut c = SweepConfig::default();
            c.sweep.axes = vec![
                Axis::linear(AxisName::G, 0.0, 1.0, 3),
                Axis::linear(AxisName::T, 0.1, 1.0, 3),
            ];
            c.sweep.quantities = vec![Quantity::G2, Quantity::Lqu];
            let mut outputs = Vec::new();
            for w in [1, 3] {
                c.sweep.workers = w;
                let mut buf = Vec::new();
                write_csv(&run_sweep(&c)?, &mut buf)?;
                outputs.push(buf);
            }
            Ok((
                outputs[0] == outputs[1],
                format!("{} bytes", outputs[0].len()),
            ))
        }),
        check("partial transpose preserves trace", || {
            let m = Mat::from_fn(4, 4, |i, j| {
                if i == j {
                    c64::new([0.1, 0.2, 0.3, 0.4][i], 0.0)
                } else {
                    ZERO
                }
            });
            let rho = DensityMatrix::two_qubit(m)?;
            let n = negativity(&rho, Bipartition::QubitQubit)?;
            Ok((n.abs() < 1e-12, format!("N {n:e}")))
        }),
    ]
}
