use std::fmt;
use std::str::FromStr;

use faer::Mat;
use serde::{Deserialize, Serialize};

use super::entanglement::{concurrence, negativity, negativity_qubits_field, Bipartition};
use super::field::squeezing_thermal;
use super::information::{coherence_re, lqu, mutual_information, quantum_discord, MeasuredSide};
use super::photon::{dressed_g2_thermal, DressedJumpOperator};
use crate::dissipator::{gap_ratio, BathParams, Route};
use crate::error::{Error, Result};
use crate::linalg::ZERO;
use crate::model::{converge_cutoff, diagonalize_model, CutoffPolicy, EigenSystem, ModelParams};
use crate::qops::{two_qubit_factors, DensityMatrix, HilbertSpace, Subsystem};
use crate::thermal::{ThermalSpec, ThermalState};

/// Scalar fields of a [`QuantifierReport`], in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    G2,
    XExcitations,
    Zeta2,
    NPhotons,
    NegativityQq,
    NegativityQF,
    Concurrence,
    MutualInfo,
    Discord,
    CoherenceRe,
    Lqu,
    P0,
}

impl Quantity {
    pub const ALL: [Quantity; 12] = [
        Quantity::G2,
        Quantity::XExcitations,
        Quantity::Zeta2,
        Quantity::NPhotons,
        Quantity::NegativityQq,
        Quantity::NegativityQF,
        Quantity::Concurrence,
        Quantity::MutualInfo,
        Quantity::Discord,
        Quantity::CoherenceRe,
        Quantity::Lqu,
        Quantity::P0,
    ];

    /// Field and column name.
    pub fn name(self) -> &'static str {
        match self {
            Quantity::G2 => "g2",
            Quantity::XExcitations => "x_excitations",
            Quantity::Zeta2 => "zeta2",
            Quantity::NPhotons => "n_photons",
            Quantity::NegativityQq => "negativity_qq",
            Quantity::NegativityQF => "negativity_q_f",
            Quantity::Concurrence => "concurrence",
            Quantity::MutualInfo => "mutual_info",
            Quantity::Discord => "discord",
            Quantity::CoherenceRe => "coherence_re",
            Quantity::Lqu => "lqu",
            Quantity::P0 => "p0",
        }
    }

    fn needs_qubit_state(self) -> bool {
        matches!(
            self,
            Quantity::NegativityQq
                | Quantity::Concurrence
                | Quantity::MutualInfo
                | Quantity::Discord
                | Quantity::CoherenceRe
                | Quantity::Lqu
        )
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .iter()
            .copied()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown quantity '{s}'")))
    }
}

/// Every scalar computed at one grid point. Fields that were not requested
/// are `None`; `g2` is also `None` when it is undefined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantifierReport {
    pub g2: Option<f64>,
    pub x_excitations: Option<f64>,
    pub zeta2: Option<f64>,
    pub n_photons: Option<f64>,
    pub negativity_qq: Option<f64>,
    pub negativity_q_f: Option<f64>,
    pub concurrence: Option<f64>,
    pub mutual_info: Option<f64>,
    pub discord: Option<f64>,
    pub coherence_re: Option<f64>,
    pub lqu: Option<f64>,
    pub p0: Option<f64>,
    pub gap_ratio: Option<f64>,
    pub n_fock_used: usize,
    /// Eigenstates used by the dressed jump operator (otherwise the thermal
    /// span).
    pub m_used: usize,
    /// Requested quantities in declaration order.
    pub computed: Vec<Quantity>,
}

impl QuantifierReport {
    fn empty(n_fock_used: usize, computed: Vec<Quantity>) -> Self {
        Self {
            g2: None,
            x_excitations: None,
            zeta2: None,
            n_photons: None,
            negativity_qq: None,
            negativity_q_f: None,
            concurrence: None,
            mutual_info: None,
            discord: None,
            coherence_re: None,
            lqu: None,
            p0: None,
            gap_ratio: None,
            n_fock_used,
            m_used: 0,
            computed,
        }
    }

    pub fn get(&self, q: Quantity) -> Option<f64> {
        match q {
            Quantity::G2 => self.g2,
            Quantity::XExcitations => self.x_excitations,
            Quantity::Zeta2 => self.zeta2,
            Quantity::NPhotons => self.n_photons,
            Quantity::NegativityQq => self.negativity_qq,
            Quantity::NegativityQF => self.negativity_q_f,
            Quantity::Concurrence => self.concurrence,
            Quantity::MutualInfo => self.mutual_info,
            Quantity::Discord => self.discord,
            Quantity::CoherenceRe => self.coherence_re,
            Quantity::Lqu => self.lqu,
            Quantity::P0 => self.p0,
        }
    }

    fn set(&mut self, q: Quantity, v: Option<f64>) {
        let slot = match q {
            Quantity::G2 => &mut self.g2,
            Quantity::XExcitations => &mut self.x_excitations,
            Quantity::Zeta2 => &mut self.zeta2,
            Quantity::NPhotons => &mut self.n_photons,
            Quantity::NegativityQq => &mut self.negativity_qq,
            Quantity::NegativityQF => &mut self.negativity_q_f,
            Quantity::Concurrence => &mut self.concurrence,
            Quantity::MutualInfo => &mut self.mutual_info,
            Quantity::Discord => &mut self.discord,
            Quantity::CoherenceRe => &mut self.coherence_re,
            Quantity::Lqu => &mut self.lqu,
            Quantity::P0 => &mut self.p0,
        };
        *slot = v;
    }
}

/// Settings for [`evaluate_all`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EvaluateOptions {
    /// Quantities to compute; they are also the cutoff convergence target
    /// (P0 when empty).
    pub quantities: Vec<Quantity>,
    pub include_gap: bool,
    /// Liouvillian level count for the gap ratio; automatic when `None`.
    pub gap_levels: Option<usize>,
    pub route: Route,
    pub policy: CutoffPolicy,
    pub prune_tol: f64,
    pub discord_side: MeasuredSide,
}

impl Default for EvaluateOptions {
    fn default() -> Self {
        Self {
            quantities: Quantity::ALL.to_vec(),
            include_gap: false,
            gap_levels: None,
            route: Route::Auto,
            policy: CutoffPolicy::default(),
            prune_tol: ThermalSpec::DEFAULT_PRUNE_TOL,
            discord_side: MeasuredSide::A,
        }
    }
}

impl EvaluateOptions {
    pub fn only(quantities: &[Quantity]) -> Self {
        Self {
            quantities: quantities.to_vec(),
            ..Self::default()
        }
    }

    fn sorted_quantities(&self) -> Vec<Quantity> {
        let mut q = self.quantities.clone();
        q.sort();
        q.dedup();
        q
    }
}

/// Reduced state of the qubit pair, ρ_qq = Tr_field ρ̂, from the spectral form.
pub fn qubit_state(eigs: &EigenSystem, thermal: &ThermalState) -> Result<DensityMatrix> {
    let nf = eigs.space().n_fock();
    let mut m = Mat::from_fn(4, 4, |_, _| ZERO);
    for (k, w) in thermal.iter() {
        let v = eigs.state(k);
        for a in 0..4 {
            for b in 0..4 {
                let mut s = ZERO;
                for n in 0..nf {
                    s += v[a * nf + n] * v[b * nf + n].conj();
                }
                m[(a, b)] += s * w;
            }
        }
    }
    DensityMatrix::trusted(two_qubit_factors(), m)
}

/// Evaluate the requested quantities on a fixed eigensystem (no cutoff
/// search, no gap ratio).
pub fn evaluate_eigensystem(
    eigs: &EigenSystem,
    spec: &ThermalSpec,
    options: &EvaluateOptions,
) -> Result<QuantifierReport> {
    let wanted = options.sorted_quantities();
    let thermal = ThermalState::new(eigs, spec)?;
    let mut r = QuantifierReport::empty(eigs.n_fock_used(), wanted.clone());
    r.m_used = thermal.span();
    let has = |q: Quantity| wanted.contains(&q);

    if has(Quantity::G2) || has(Quantity::XExcitations) {
        let x = DressedJumpOperator::for_thermal(eigs, &thermal)?;
        let stats = dressed_g2_thermal(&thermal, &x)?;
        r.m_used = x.levels();
        if has(Quantity::G2) {
            r.g2 = stats.g2;
        }
        if has(Quantity::XExcitations) {
            r.x_excitations = Some(stats.x_excitations);
        }
    }
    if has(Quantity::Zeta2) || has(Quantity::NPhotons) {
        let s = squeezing_thermal(eigs, &thermal);
        if has(Quantity::Zeta2) {
            r.zeta2 = Some(s.zeta2);
        }
        if has(Quantity::NPhotons) {
            r.n_photons = Some(s.n_photons);
        }
    }
    if has(Quantity::NegativityQF) {
        r.negativity_q_f = Some(negativity_qubits_field(eigs, &thermal)?);
    }
    if wanted.iter().any(|q| q.needs_qubit_state()) {
        let qq = qubit_state(eigs, &thermal)?;
        for &q in &wanted {
            let v = match q {
                Quantity::NegativityQq => negativity(&qq, Bipartition::QubitQubit)?,
                Quantity::Concurrence => concurrence(&qq)?,
                Quantity::MutualInfo => mutual_information(&qq, &[Subsystem::Qubit1])?,
                Quantity::Discord => quantum_discord(&qq, options.discord_side)?,
                Quantity::CoherenceRe => coherence_re(&qq)?,
                Quantity::Lqu => lqu(&qq)?,
                _ => continue,
            };
            r.set(q, Some(v));
        }
    }
    if has(Quantity::P0) {
        r.p0 = Some(thermal.p0());
    }
    Ok(r)
}

fn targets(r: &QuantifierReport, p0: f64) -> Vec<f64> {
    if r.computed.is_empty() {
        return vec![p0];
    }
    r.computed
        .iter()
        .map(|&q| r.get(q).unwrap_or(f64::NAN))
        .collect()
}

fn point_label(params: &ModelParams, temperature: f64) -> String {
    format!("{params}, T = {temperature}")
}

/// Full evaluation at one parameter point: cutoff search on the requested
/// quantities, Gibbs state, quantifiers and optionally the Liouvillian gap
/// ratio at the bath temperature `temperature`.
pub fn evaluate_all(
    params: &ModelParams,
    bath: &BathParams,
    temperature: f64,
    options: &EvaluateOptions,
) -> Result<QuantifierReport> {
    let run = || -> Result<QuantifierReport> {
        params.validate()?;
        let spec = ThermalSpec::with_prune_tol(temperature, options.prune_tol)?;
        let bath = bath.with_temperature(temperature);
        if options.include_gap {
            bath.validate()?;
        }
        let conv = converge_cutoff(params, &options.policy, |n| {
            let eigs = diagonalize_model(params, HilbertSpace::new(n)?)?;
            let r = evaluate_eigensystem(&eigs, &spec, options)?;
            let p0 = ThermalState::new(&eigs, &spec)?.p0();
            Ok((targets(&r, p0), r))
        })?;
        let mut report = conv.value;
        if options.include_gap {
            report.gap_ratio = Some(gap_ratio(
                params,
                &bath,
                options.gap_levels,
                &options.policy,
                options.route,
            )?);
        }
        Ok(report)
    };
    run().map_err(|e| e.at_point(point_label(params, temperature)))
}

/// Converged Fock cutoff for a single target quantity.
pub fn choose_cutoff(
    params: &ModelParams,
    temperature: f64,
    target: Quantity,
    policy: &CutoffPolicy,
) -> Result<usize> {
    let options = EvaluateOptions {
        policy: *policy,
        ..EvaluateOptions::only(&[target])
    };
    let spec = ThermalSpec::with_prune_tol(temperature, options.prune_tol)?;
    let conv = converge_cutoff(params, policy, |n| {
        let eigs = diagonalize_model(params, HilbertSpace::new(n)?)?;
        let r = evaluate_eigensystem(&eigs, &spec, &options)?;
        Ok((targets(&r, 0.0), ()))
    })?;
    Ok(conv.n_fock)
}
