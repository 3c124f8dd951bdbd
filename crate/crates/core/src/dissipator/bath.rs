use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A system operator coupled to its own bath.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    /// σ⁺ + σ⁻ of qubit 1
    Qubit1,
    /// σ⁺ + σ⁻ of qubit 2
    Qubit2,
    /// â + â†
    Cavity,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Qubit1, Channel::Qubit2, Channel::Cavity];
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Qubit1 => "qubit1",
            Channel::Qubit2 => "qubit2",
            Channel::Cavity => "cavity",
        })
    }
}

/// Ohmic baths at a common temperature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BathParams {
    pub alpha: f64,
    pub omega_c: f64,
    pub temperature: f64,
    pub channels: Vec<Channel>,
}

impl BathParams {
    pub const ALPHA_PER_OMEGA: f64 = 0.001;
    pub const OMEGA_C_PER_OMEGA: f64 = 10.0;

    pub fn new(alpha: f64, omega_c: f64, temperature: f64, channels: Vec<Channel>) -> Result<Self> {
        let b = Self {
            alpha,
            omega_c,
            temperature,
            channels,
        };
        b.validate()?;
        Ok(b)
    }

    /// α = 0.001ω, ω_c = 10ω, all three channels.
    pub fn for_mode(omega: f64, temperature: f64) -> Result<Self> {
        Self::new(
            Self::ALPHA_PER_OMEGA * omega,
            Self::OMEGA_C_PER_OMEGA * omega,
            temperature,
            Channel::ALL.to_vec(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha must be > 0, got {}",
                self.alpha
            )));
        }
        if !(self.omega_c > 0.0 && self.omega_c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "omega_c must be > 0, got {}",
                self.omega_c
            )));
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bath temperature must be >= 0, got {}",
                self.temperature
            )));
        }
        if self.channels.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one bath channel is required".into(),
            ));
        }
        Ok(())
    }

    pub fn with_temperature(&self, temperature: f64) -> Self {
        Self {
            temperature,
            ..self.clone()
        }
    }

    /// Downward and upward rates per unit |S|² for a gap Δ ≥ 0:
    /// γ(Δ)(1 + n(Δ)) and γ(Δ)n(Δ).
    ///
    /// Both tend to παT as Δ → 0, and that limit is used at Δ = 0.
    pub fn rates(&self, gap: f64) -> (f64, f64) {
        let t = self.temperature;
        if t == 0.0 {
            return (spectral_density(gap, self), 0.0);
        }
        if gap == 0.0 {
            let r = std::f64::consts::PI * self.alpha * t;
            return (r, r);
        }
        let x = gap / t;
        let base = spectral_density(gap, self);
        (base / -(-x).exp_m1(), base / x.exp_m1())
    }
}

/// Ohmic spectral function γ(Δ) = παΔe^{−Δ/ω_c}.
pub fn spectral_density(gap: f64, bath: &BathParams) -> f64 {
    std::f64::consts::PI * bath.alpha * gap * (-gap / bath.omega_c).exp()
}

/// Bose occupation 1/(e^{Δ/T} − 1); infinite at Δ = 0 for T > 0.
pub fn occupation(gap: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 0.0;
    }
    1.0 / (gap / temperature).exp_m1()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn bath(t: f64) -> BathParams {
        BathParams::for_mode(1.0, t).unwrap()
    }

    #[test]
    fn defaults_and_validation() {
        let b = bath(0.1);
        assert_eq!(b.alpha, 0.001);
        assert_eq!(b.omega_c, 10.0);
        assert_eq!(b.channels.len(), 3);
        assert!(BathParams::new(0.0, 1.0, 0.1, vec![Channel::Cavity]).is_err());
        assert!(BathParams::new(0.1, 1.0, -1.0, vec![Channel::Cavity]).is_err());
        assert!(BathParams::new(0.1, 1.0, 0.1, vec![]).is_err());
    }

    #[test]
    fn ohmic_values() {
        let b = bath(0.1);
        assert_eq!(spectral_density(0.0, &b), 0.0);
        let at_cut = spectral_density(b.omega_c, &b);
        assert!((at_cut - PI * b.alpha * b.omega_c * (-1.0f64).exp()).abs() < 1e-16);
        let one = spectral_density(1.0, &b);
        assert!((one - 0.001 * PI * (-0.1f64).exp()).abs() < 1e-17);
    }

    #[test]
    fn detailed_balance_and_small_gap_limit() {
        for t in [0.05, 0.3, 2.0] {
            let b = bath(t);
            for gap in [1e-10, 1e-3, 0.2, 1.0, 7.0] {
                let (down, up) = b.rates(gap);
                let ratio = up / down;
                assert!((ratio / (-gap / t).exp() - 1.0).abs() < 1e-9);
                assert!(up >= 0.0 && down >= 0.0);
            }
            let (d0, u0) = b.rates(0.0);
            let (d1, u1) = b.rates(1e-12);
            assert!((d0 - d1).abs() < 1e-12 && (u0 - u1).abs() < 1e-12);
            assert!((u0 - PI * b.alpha * t).abs() < 1e-18);
        }
        let (down, up) = bath(0.0).rates(1.0);
        assert_eq!(up, 0.0);
        assert_eq!(down, spectral_density(1.0, &bath(0.0)));
    }

    #[test]
    fn occupation_numbers() {
        assert!((occupation(1.0, 1.0) - 1.0 / (1.0f64.exp() - 1.0)).abs() < 1e-15);
        assert_eq!(occupation(1.0, 0.0), 0.0);
        assert!(occupation(0.0, 1.0).is_infinite());
    }
}
