//! Derivative-free local minimization.

/// Stopping rule: every vertex within `xtol` (max norm) and `ftol` of the
/// best vertex, or `max_iter` iterations.
#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    pub xtol: f64,
    pub ftol: f64,
    pub max_iter: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            xtol: 1e-8,
            ftol: 1e-14,
            max_iter: 4000,
        }
    }
}

impl NelderMead {
    /// Minimize `f` from `x0` with an axis-aligned initial simplex of size
    /// `step`. Deterministic for a given input.
    pub fn minimize(&self, f: impl Fn(&[f64]) -> f64, x0: &[f64], step: &[f64]) -> (Vec<f64>, f64) {
        let n = x0.len();
        let mut simplex: Vec<Vec<f64>> = vec![x0.to_vec()];
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += step[i];
            simplex.push(v);
        }
        let mut vals: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

        for _ in 0..self.max_iter {
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            vals = order.iter().map(|&i| vals[i]).collect();

            let spread = simplex[1..]
                .iter()
                .flat_map(|v| v.iter().zip(&simplex[0]).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            let fspread = vals[1..]
                .iter()
                .map(|v| (v - vals[0]).abs())
                .fold(0.0, f64::max);
            if spread <= self.xtol && fspread <= self.ftol {
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|i| simplex[..n].iter().map(|v| v[i]).sum::<f64>() / n as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                (0..n)
                    .map(|i| centroid[i] + t * (simplex[n][i] - centroid[i]))
                    .collect()
            };
            let xr = along(-1.0);
            let fr = f(&xr);
            if fr < vals[0] {
                let xe = along(-2.0);
                let fe = f(&xe);
                if fe < fr {
                    simplex[n] = xe;
                    vals[n] = fe;
                } else {
                    simplex[n] = xr;
                    vals[n] = fr;
                }
                continue;
            }
            if fr < vals[n - 1] {
                simplex[n] = xr;
                vals[n] = fr;
                continue;
            }
            let (xc, fc) = if fr < vals[n] {
                let x = along(-0.5);
                let v = f(&x);
                (x, v)
            } else {
                let x = along(0.5);
                let v = f(&x);
                (x, v)
            };
            if fc < vals[n].min(fr) {
                simplex[n] = xc;
                vals[n] = fc;
                continue;
            }
            // Shrink toward the best vertex.
            let best = simplex[0].clone();
            for k in 1..=n {
                for (x, b) in simplex[k].iter_mut().zip(&best) {
                    *x = b + 0.5 * (*x - b);
                }
                vals[k] = f(&simplex[k]);
            }
        }
        let best = (0..=n)
            .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
            .unwrap_or(0);
        (simplex[best].clone(), vals[best])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let (x, v) = NelderMead::default().minimize(f, &[-1.2, 1.0], &[0.1, 0.1]);
        assert!((x[0] - 1.0).abs() < 1e-6 && (x[1] - 1.0).abs() < 1e-6);
        assert!(v < 1e-12);
    }

    #[test]
    fn quadratic_is_deterministic() {
        let f = |x: &[f64]| (x[0] - 0.3).powi(2) + 2.0 * (x[1] + 0.7).powi(2);
        let a = NelderMead::default().minimize(f, &[0.0, 0.0], &[0.05, 0.05]);
        let b = NelderMead::default().minimize(f, &[0.0, 0.0], &[0.05, 0.05]);
        assert_eq!(a.0, b.0);
        assert!((a.0[0] - 0.3).abs() < 1e-7 && (a.0[1] + 0.7).abs() < 1e-7);
    }
}
