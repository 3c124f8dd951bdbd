use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use crate::error::{Error, Result};

/// Fock-cutoff convergence settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CutoffPolicy {
    pub hard_max: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Lower bound on the starting cutoff.
    pub floor: usize,
}

impl Default for CutoffPolicy {
    fn default() -> Self {
        Self {
            hard_max: 1024,
            rel_tol: 1e-6,
            abs_tol: 1e-9,
            floor: 16,
        }
    }
}

/// Starting cutoff max(floor, ⌈d² + 6d + 20⌉) with d = (g₁+g₂)/ω.
pub fn initial_cutoff(p: &ModelParams, policy: &CutoffPolicy) -> usize {
    let d = p.g_plus() / p.omega;
    let n = (d * d + 6.0 * d + 20.0).ceil();
    (n as usize).max(policy.floor)
}

/// Two values agree if either tolerance holds. Two undefined values agree.
pub fn values_agree(a: f64, b: f64, policy: &CutoffPolicy) -> bool {
    if a.is_nan() || b.is_nan() {
        return a.is_nan() && b.is_nan();
    }
    let diff = (a - b).abs();
    diff < policy.abs_tol || diff < policy.rel_tol * a.abs().max(b.abs())
}

/// Result of a cutoff search: the accepted cutoff and the payload computed
/// there.
#[derive(Debug, Clone)]
pub struct Converged<R> {
    pub n_fock: usize,
    pub value: R,
}

/// Double the cutoff, starting from [`initial_cutoff`], until every scalar
/// returned by `eval` changes by less than the tolerances. The smaller of the
/// two cutoffs is returned together with its payload. If doubling would pass
/// the hard maximum the last step is clamped to it.
pub fn converge_cutoff<R>(
    p: &ModelParams,
    policy: &CutoffPolicy,
    mut eval: impl FnMut(usize) -> Result<(Vec<f64>, R)>,
) -> Result<Converged<R>> {
    let mut n = initial_cutoff(p, policy);
    if n > policy.hard_max {
        return Err(Error::CutoffExceeded {
            required: n,
            max: policy.hard_max,
            detail: format!(
                "starting cutoff for displacement (g1+g2)/omega = {}",
                p.g_plus() / p.omega
            ),
        });
    }
    let (mut scalars, mut payload) = eval(n)?;
    loop {
        if n >= policy.hard_max {
            return Err(Error::CutoffExceeded {
                required: 2 * n,
                max: policy.hard_max,
                detail: format!("target not converged at cutoff {n} for {p}"),
            });
        }
        let next = (2 * n).min(policy.hard_max);
        let (s2, p2) = eval(next)?;
        let ok = scalars.len() == s2.len()
            && scalars
                .iter()
                .zip(&s2)
                .all(|(a, b)| values_agree(*a, *b, policy));
        if ok {
            return Ok(Converged {
                n_fock: n,
                value: payload,
            });
        }
        n = next;
        scalars = s2;
        payload = p2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starting_cutoffs() {
        let pol = CutoffPolicy::default();
        // The additive constant already exceeds the floor at zero coupling.
        let p = ModelParams::symmetric(1.0, 1.0, 0.0).unwrap();
        assert_eq!(initial_cutoff(&p, &pol), 20);
        let small = CutoffPolicy { floor: 32, ..pol };
        assert_eq!(initial_cutoff(&p, &small), 32);
        // d = 19.8: 392.04 + 118.8 + 20 = 530.84
        let p = ModelParams::symmetric(1.0, 1.0, 9.9).unwrap();
        assert_eq!(initial_cutoff(&p, &pol), 531);
    }

    #[test]
    fn tolerance_rules() {
        let pol = CutoffPolicy::default();
        assert!(values_agree(1.0, 1.0 + 5e-7, &pol));
        assert!(!values_agree(1.0, 1.0 + 5e-6, &pol));
        assert!(values_agree(1e-12, 5e-10, &pol));
        assert!(values_agree(f64::NAN, f64::NAN, &pol));
        assert!(!values_agree(f64::NAN, 0.0, &pol));
    }

    #[test]
    fn doubling_and_clamping() {
        let pol = CutoffPolicy {
            hard_max: 100,
            ..Default::default()
        };
        let p = ModelParams::symmetric(1.0, 1.0, 0.0).unwrap();
        let mut seen = Vec::new();
        let r = converge_cutoff(&p, &pol, |n| {
            seen.push(n);
            Ok((vec![if n >= 64 { 1.0 } else { n as f64 }], n))
        })
        .unwrap();
        assert_eq!(seen, vec![20, 40, 80, 100]);
        assert_eq!(r.n_fock, 80);
        assert_eq!(r.value, 80);

        let err = converge_cutoff(&p, &pol, |n| Ok((vec![n as f64], ()))).unwrap_err();
        assert!(matches!(err, Error::CutoffExceeded { max: 100, .. }));

        let big = ModelParams::symmetric(1.0, 1.0, 20.0).unwrap();
        assert!(converge_cutoff(&big, &pol, |_| Ok((vec![], ()))).is_err());
    }
}
