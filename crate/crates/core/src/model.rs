//! Problem data: level structure, drive, baths, and the rate coefficients
//! they induce.
//!
//! Energies and temperatures are dimensionless (ħ = k_B = 1). A bath coupled
//! to a transition of energy Δ at temperature T contributes a downward rate λ
//! and an upward rate λ̄ obeying detailed balance, λ̄ = e^(−Δ/T) · λ. Two
//! spectral models are supported:
//!
//! - white bath (constant mode density): λ = Λ,
//! - power-law bath (harmonic reservoir with spectral strength
//!   J(Δ) ≈ Λ·Δ^s at low energy): λ = Λ·Δ^s / (1 − e^(−Δ/T)).

use crate::error::{Error, Result};

/// Three-level energy structure, E1 = 0 by convention.
///
/// Only Δ31 and Δ21 are stored; Δ32 = Δ31 − Δ21 is always derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelStructure {
    delta31: f64,
    delta21: f64,
}

impl LevelStructure {
    pub fn new(delta31: f64, delta21: f64) -> Result<Self> {
        if !delta31.is_finite() || delta31 <= 0.0 {
            return Err(Error::invalid("levels.delta31", "must be positive"));
        }
        if !delta21.is_finite() || delta21 <= 0.0 {
            return Err(Error::invalid("levels.delta21", "must be positive"));
        }
        if delta21 >= delta31 {
            return Err(Error::invalid(
                "levels.delta21",
                "must be strictly below delta31",
            ));
        }
        Ok(Self { delta31, delta21 })
    }

    pub fn delta31(&self) -> f64 {
        self.delta31
    }

    pub fn delta21(&self) -> f64 {
        self.delta21
    }

    /// Transition energy of the driven 2↔3 transition.
    pub fn delta32(&self) -> f64 {
        self.delta31 - self.delta21
    }
}

/// The three transition energies (Δ31, Δ21, Δ32).
pub fn transition_energies(levels: &LevelStructure) -> (f64, f64, f64) {
    (levels.delta31(), levels.delta21(), levels.delta32())
}

/// Coherent drive on the 2↔3 transition.
///
/// The field frequency is not free: the cycle is analyzed at resonance, so
/// ω is always populated as Δ32 of the level structure it was built for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSpec {
    pub epsilon: f64,
    pub omega: f64,
}

impl DriveSpec {
    /// Resonant drive of strength `epsilon` (ω = Δ32).
    pub fn resonant(epsilon: f64, levels: &LevelStructure) -> Result<Self> {
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::invalid("drive.epsilon", "must be non-negative"));
        }
        Ok(Self {
            epsilon,
            omega: levels.delta32(),
        })
    }
}

/// Which reservoir a bath specification describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BathLabel {
    Hot,
    Cold,
    Env,
}

impl BathLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            BathLabel::Hot => "hot",
            BathLabel::Cold => "cold",
            BathLabel::Env => "env",
        }
    }
}

/// Spectral model of a reservoir.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BathModel {
    /// Constant density of energy modes: λ = Λ.
    White { coupling: f64 },
    /// Harmonic reservoir with J(Δ) ≈ Λ·Δ^s: λ = Λ·Δ^s / (1 − e^(−Δ/T)).
    PowerLaw { coupling: f64, exponent: f64 },
}

impl BathModel {
    pub fn coupling(&self) -> f64 {
        match *self {
            BathModel::White { coupling } => coupling,
            BathModel::PowerLaw { coupling, .. } => coupling,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BathModel::White { .. } => "white",
            BathModel::PowerLaw { .. } => "power_law",
        }
    }
}

/// One reservoir: label, absolute temperature and spectral model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec {
    pub label: BathLabel,
    pub temperature: f64,
    pub model: BathModel,
}

impl BathSpec {
    pub fn new(label: BathLabel, temperature: f64, model: BathModel) -> Self {
        Self {
            label,
            temperature,
            model,
        }
    }

    fn field(&self, name: &str) -> String {
        format!("bath.{}.{}", self.label.as_str(), name)
    }

    /// Check the bath invariants. The environmental bath may be decoupled
    /// entirely (Λ = 0); the hot and cold baths must couple.
    pub fn validate(&self) -> Result<()> {
        if !self.temperature.is_finite() || self.temperature <= 0.0 {
            return Err(Error::invalid(
                self.field("temperature"),
                "temperature must be positive",
            ));
        }
        let coupling = self.model.coupling();
        if !coupling.is_finite() || coupling < 0.0 {
            return Err(Error::invalid(
                self.field("coupling"),
                "must be non-negative",
            ));
        }
        if coupling == 0.0 && self.label != BathLabel::Env {
            return Err(Error::invalid(
                self.field("coupling"),
                "must be positive (only the environmental bath may be decoupled)",
            ));
        }
        if let BathModel::PowerLaw { exponent, .. } = self.model {
            if !exponent.is_finite() || exponent <= 0.0 {
                return Err(Error::invalid(
                    self.field("exponent"),
                    "power-law exponent must be positive",
                ));
            }
        }
        Ok(())
    }

    /// Rate pair (λ, λ̄) of this bath for a transition of energy `delta`.
    ///
    /// A decoupled environmental bath (Λ = 0) yields (0, 0).
    pub fn rates(&self, delta: f64) -> Result<(f64, f64)> {
        if self.model.coupling() == 0.0 {
            return Ok((0.0, 0.0));
        }
        match self.model {
            BathModel::White { coupling } => white_bath_rates(coupling, delta, self.temperature),
            BathModel::PowerLaw { coupling, exponent } => {
                power_law_bath_rates(coupling, exponent, delta, self.temperature)
            }
        }
    }
}

/// Rate pair of a white bath: λ = Λ, λ̄ = Λ·e^(−Δ/T).
pub fn white_bath_rates(coupling: f64, delta: f64, temperature: f64) -> Result<(f64, f64)> {
    if coupling <= 0.0 || delta <= 0.0 || temperature <= 0.0 {
        return Err(Error::domain(format!(
            "white bath rates need positive coupling, energy and temperature \
             (got Λ={coupling}, Δ={delta}, T={temperature})"
        )));
    }
    let lambda = coupling;
    let lambda_bar = coupling * (-delta / temperature).exp();
    Ok((lambda, lambda_bar))
}

/// Rate pair of a power-law bath:
/// λ = Λ·Δ^s / (1 − e^(−Δ/T)), λ̄ = Λ·Δ^s / (e^(Δ/T) − 1).
///
/// Δ = 0 is rejected: λ diverges for s < 1 and is finite only as a limit for
/// s = 1; the flows that consume these rates vanish there anyway through
/// their explicit Δ21 prefactor.
pub fn power_law_bath_rates(
    coupling: f64,
    exponent: f64,
    delta: f64,
    temperature: f64,
) -> Result<(f64, f64)> {
    if coupling <= 0.0 || exponent <= 0.0 || delta <= 0.0 || temperature <= 0.0 {
        return Err(Error::domain(format!(
            "power-law bath rates need positive coupling, exponent, energy and \
             temperature (got Λ={coupling}, s={exponent}, Δ={delta}, T={temperature})"
        )));
    }
    let x = delta / temperature;
    let strength = coupling * delta.powf(exponent);
    // 1 − e^(−x) and e^x − 1 via expm1 to stay accurate for Δ ≪ T.
    let lambda = strength / (-(-x).exp_m1());
    let lambda_bar = strength / x.exp_m1();
    Ok((lambda, lambda_bar))
}

/// Boltzmann factors of the three transitions against their own baths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumPopulations {
    /// e^(−Δ31/T_h)
    pub n_h: f64,
    /// e^(−Δ21/T_c)
    pub n_c: f64,
    /// e^(−Δ32/T_e)
    pub n_e: f64,
}

/// Equilibrium populations n_b = e^(−Δ_b/T_b) for the three transitions.
pub fn equilibrium_populations(
    levels: &LevelStructure,
    t_hot: f64,
    t_cold: f64,
    t_env: f64,
) -> Result<EquilibriumPopulations> {
    if t_hot <= 0.0 || t_cold <= 0.0 || t_env <= 0.0 {
        return Err(Error::domain(
            "equilibrium populations need positive temperatures",
        ));
    }
    Ok(EquilibriumPopulations {
        n_h: (-levels.delta31() / t_hot).exp(),
        n_c: (-levels.delta21() / t_cold).exp(),
        n_e: (-levels.delta32() / t_env).exp(),
    })
}

/// The six bath rate coefficients plus the drive strength: everything the
/// steady-state and flow computations consume.
///
/// λ̄_b = e^(−Δ_b/T_b)·λ_b holds by construction for each bath. The
/// environmental pair may be exactly zero (decoupled bath); the upward rates
/// may underflow to zero at very low temperatures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSet {
    pub lambda_h: f64,
    pub lambda_h_bar: f64,
    pub lambda_c: f64,
    pub lambda_c_bar: f64,
    pub lambda_e: f64,
    pub lambda_e_bar: f64,
    pub epsilon: f64,
}

impl RateSet {
    /// Sum of the coherence-damping rates; the ρ̃32 decay rate is Γ/2.
    pub fn gamma_total(&self) -> f64 {
        self.lambda_h + self.lambda_c + self.lambda_e + self.lambda_e_bar
    }

    /// Multiply every rate and the drive by a common positive factor.
    /// The steady state is invariant under this rescaling.
    pub fn scaled(&self, k: f64) -> RateSet {
        RateSet {
            lambda_h: k * self.lambda_h,
            lambda_h_bar: k * self.lambda_h_bar,
            lambda_c: k * self.lambda_c,
            lambda_c_bar: k * self.lambda_c_bar,
            lambda_e: k * self.lambda_e,
            lambda_e_bar: k * self.lambda_e_bar,
            epsilon: k * self.epsilon,
        }
    }
}

/// A validated problem statement: levels, resonant drive and the three baths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub levels: LevelStructure,
    pub drive: DriveSpec,
    pub hot: BathSpec,
    pub cold: BathSpec,
    pub env: BathSpec,
}

impl Scenario {
    /// Validate all invariants and populate the derived quantities (ω = Δ32).
    ///
    /// This is the single entry point used by the config parser, so every
    /// diagnostic names the offending field in config-key form.
    pub fn new(
        levels: LevelStructure,
        epsilon: f64,
        hot: BathSpec,
        cold: BathSpec,
        env: BathSpec,
    ) -> Result<Self> {
        let drive = DriveSpec::resonant(epsilon, &levels)?;
        for (bath, label) in [
            (&hot, BathLabel::Hot),
            (&cold, BathLabel::Cold),
            (&env, BathLabel::Env),
        ] {
            if bath.label != label {
                return Err(Error::invalid(
                    format!("bath.{}", label.as_str()),
                    format!("labeled as {}", bath.label.as_str()),
                ));
            }
            bath.validate()?;
        }
        Ok(Self {
            levels,
            drive,
            hot,
            cold,
            env,
        })
    }

    /// Assemble the rate coefficients: hot bath at Δ31, cold at Δ21,
    /// environmental at Δ32.
    pub fn rates(&self) -> RateSet {
        let (lambda_h, lambda_h_bar) = self
            .hot
            .rates(self.levels.delta31())
            .expect("validated scenario");
        let (lambda_c, lambda_c_bar) = self
            .cold
            .rates(self.levels.delta21())
            .expect("validated scenario");
        let (lambda_e, lambda_e_bar) = self
            .env
            .rates(self.levels.delta32())
            .expect("validated scenario");
        RateSet {
            lambda_h,
            lambda_h_bar,
            lambda_c,
            lambda_c_bar,
            lambda_e,
            lambda_e_bar,
            epsilon: self.drive.epsilon,
        }
    }

    pub fn equilibrium_populations(&self) -> EquilibriumPopulations {
        equilibrium_populations(
            &self.levels,
            self.hot.temperature,
            self.cold.temperature,
            self.env.temperature,
        )
        .expect("validated scenario")
    }

    /// Rebuild with a different cold-transition energy, revalidating.
    pub fn with_delta21(&self, delta21: f64) -> Result<Self> {
        let levels = LevelStructure::new(self.levels.delta31(), delta21)?;
        Scenario::new(levels, self.drive.epsilon, self.hot, self.cold, self.env)
    }

    /// Rebuild with a different drive strength.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Scenario::new(self.levels, epsilon, self.hot, self.cold, self.env)
    }

    /// Rebuild with a different cold-bath temperature.
    pub fn with_cold_temperature(&self, temperature: f64) -> Result<Self> {
        let cold = BathSpec {
            temperature,
            ..self.cold
        };
        Scenario::new(self.levels, self.drive.epsilon, self.hot, cold, self.env)
    }

    /// Rebuild with a different environmental-bath temperature.
    pub fn with_env_temperature(&self, temperature: f64) -> Result<Self> {
        let env = BathSpec {
            temperature,
            ..self.env
        };
        Scenario::new(self.levels, self.drive.epsilon, self.hot, self.cold, env)
    }

    /// Rebuild with a different environmental coupling strength.
    pub fn with_env_coupling(&self, coupling: f64) -> Result<Self> {
        let model = match self.env.model {
            BathModel::White { .. } => BathModel::White { coupling },
            BathModel::PowerLaw { exponent, .. } => BathModel::PowerLaw { coupling, exponent },
        };
        let env = BathSpec { model, ..self.env };
        Scenario::new(self.levels, self.drive.epsilon, self.hot, self.cold, env)
    }
}
