//! Cycle-averaged thermodynamic quantities of the stationary cycle.
//!
//! With energy flows into the system counted positive:
//!
//!   Ẇ   = 2 ε Δ32 · Im p32              (drive power input)
//!   Q̇_h = Δ31 (−λ_h p33 + λ̄_h p11)     (hot bath)
//!   Q̇_c = Δ21 (−λ_c p22 + λ̄_c p11)     (cold bath; > 0 means cooling)
//!   Q̇_e = Δ32 (−λ_e p33 + λ̄_e p22)     (environmental bath)
//!
//! These population-form expressions are the authoritative definitions. The
//! equivalent A/B/C form groups the same flows by driving mechanism,
//!
//!   Q̇_c = Δ21 { ε² A (n_c − n_h) + C (n_c n_e − n_h) },
//!
//! separating coherent driving (ε²A) from thermal driving through the
//! environmental bath (C). Both forms are evaluated here and cross-checked;
//! see [`abc_flow_form`].
//!
//! The entropy production rate Ṡ = −Σ_b Q̇_b/T_b is non-negative for every
//! valid scenario (each mechanism term is separately non-negative), which is
//! the Second-Law statement the acceptance suite verifies.

use crate::error::{Error, Result};
use crate::model::{EquilibriumPopulations, LevelStructure, RateSet, Scenario};
use crate::steady_state::{closed_form_coefficients, steady_state_closed_form, SteadyState};

/// The four cycle-averaged energy flows, positive into the system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyFlows {
    pub w_dot: f64,
    pub q_h: f64,
    pub q_c: f64,
    pub q_e: f64,
}

impl EnergyFlows {
    /// Ẇ + Q̇_h + Q̇_c + Q̇_e; vanishes at the steady state (First Law).
    pub fn first_law_residual(&self) -> f64 {
        self.w_dot + self.q_h + self.q_c + self.q_e
    }

    pub fn max_magnitude(&self) -> f64 {
        self.w_dot
            .abs()
            .max(self.q_h.abs())
            .max(self.q_c.abs())
            .max(self.q_e.abs())
    }
}

/// Characteristic magnitude of the one-way energy flows, Δ31 · max rate.
///
/// Near equilibrium the net flows cancel far below this scale, so residual
/// checks (First Law, reversible points) are taken relative to
/// max(net flows, this floor) rather than to the net flows alone.
pub fn flow_scale(rates: &RateSet, levels: &LevelStructure) -> f64 {
    let max_rate = rates
        .lambda_h
        .max(rates.lambda_h_bar)
        .max(rates.lambda_c)
        .max(rates.lambda_c_bar)
        .max(rates.lambda_e)
        .max(rates.lambda_e_bar)
        .max(rates.epsilon);
    levels.delta31() * max_rate
}

/// Population-form energy flows (the authoritative definition).
pub fn energy_flows(ss: &SteadyState, rates: &RateSet, levels: &LevelStructure) -> EnergyFlows {
    let (delta31, delta21, delta32) = crate::model::transition_energies(levels);
    EnergyFlows {
        w_dot: 2.0 * rates.epsilon * delta32 * ss.p32.im,
        q_h: delta31 * (-rates.lambda_h * ss.p33 + rates.lambda_h_bar * ss.p11),
        q_c: delta21 * (-rates.lambda_c * ss.p22 + rates.lambda_c_bar * ss.p11),
        q_e: delta32 * (-rates.lambda_e * ss.p33 + rates.lambda_e_bar * ss.p22),
    }
}

/// Coefficients of the mechanism-separated flow form.
///
/// A multiplies the coherent-drive term, B the drive-dissipation term, C the
/// thermal (absorption) term. All three are non-negative, strictly positive
/// once the environmental bath couples:
///
///   A = 4 λ_h λ_c / D
///   B = 4 (λ̄_h + λ̄_c)(λ_e − λ̄_e) / D
///   C = λ_h λ_c λ_e (λ_h + λ_c + λ_e + λ̄_e) / D
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowCoefficientsAbc {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Evaluate the A/B/C form of the energy flows and cross-check it against
/// the population form.
///
/// Errors when the two forms disagree beyond 1e-6 relative, which would mean
/// the coefficient definitions no longer reproduce the flows.
pub fn abc_flow_form(
    rates: &RateSet,
    pops: &EquilibriumPopulations,
    levels: &LevelStructure,
) -> Result<(EnergyFlows, FlowCoefficientsAbc)> {
    let coeffs = closed_form_coefficients(rates);
    let d = coeffs.d;
    let gamma = rates.gamma_total();
    let abc = FlowCoefficientsAbc {
        a: 4.0 * rates.lambda_h * rates.lambda_c / d,
        b: 4.0 * (rates.lambda_h_bar + rates.lambda_c_bar) * (rates.lambda_e - rates.lambda_e_bar)
            / d,
        c: rates.lambda_h * rates.lambda_c * rates.lambda_e * gamma / d,
    };

    let (delta31, delta21, delta32) = crate::model::transition_energies(levels);
    let eps2 = rates.epsilon * rates.epsilon;
    let coherent = eps2 * abc.a * (pops.n_c - pops.n_h);
    let thermal = abc.c * (pops.n_c * pops.n_e - pops.n_h);
    let flows = EnergyFlows {
        w_dot: delta32 * (coherent + eps2 * abc.b),
        q_h: -delta31 * (coherent + thermal),
        q_c: delta21 * (coherent + thermal),
        q_e: -delta32 * (eps2 * abc.b - thermal),
    };

    let reference = energy_flows(&steady_state_closed_form(&coeffs, rates)?, rates, levels);
    let max_rate = rates
        .lambda_h
        .max(rates.lambda_c)
        .max(rates.lambda_e)
        .max(rates.epsilon);
    let scale = flows
        .max_magnitude()
        .max(reference.max_magnitude())
        .max(delta31 * max_rate * 1e-9);
    for (ours, theirs) in [
        (flows.w_dot, reference.w_dot),
        (flows.q_h, reference.q_h),
        (flows.q_c, reference.q_c),
        (flows.q_e, reference.q_e),
    ] {
        if (ours - theirs).abs() > 1e-6 * scale {
            return Err(Error::domain(format!(
                "mechanism-form flows disagree with population-form flows \
                 ({ours:.6e} vs {theirs:.6e})"
            )));
        }
    }
    Ok((flows, abc))
}

/// Entropy production rate Ṡ = −(Q̇_h/T_h + Q̇_c/T_c + Q̇_e/T_e).
pub fn entropy_production(flows: &EnergyFlows, t_hot: f64, t_cold: f64, t_env: f64) -> f64 {
    -(flows.q_h / t_hot + flows.q_c / t_cold + flows.q_e / t_env)
}

/// Work-driven coefficient of performance Q̇_c/Ẇ; absent unless Ẇ > 0.
///
/// Outside the cooling window the ratio is negative and reported as-is; only
/// a non-positive power input makes the quantity meaningless.
pub fn cop_work(flows: &EnergyFlows) -> Option<f64> {
    (flows.w_dot > 0.0).then(|| flows.q_c / flows.w_dot)
}

/// Absorption-mode coefficient of performance Q̇_c/Q̇_e; absent unless the
/// environmental bath actually drives the cycle (Q̇_e > 0).
pub fn cop_absorption(flows: &EnergyFlows) -> Option<f64> {
    (flows.q_e > 0.0).then(|| flows.q_c / flows.q_e)
}

/// Reversible ceiling of the work-driven mode, T_c/(T_h − T_c).
pub fn carnot_cop_work(t_cold: f64, t_hot: f64) -> Result<f64> {
    if !(0.0 < t_cold && t_cold < t_hot) {
        return Err(Error::domain(format!(
            "work-mode Carnot COP needs 0 < T_c < T_h (got T_c={t_cold}, T_h={t_hot})"
        )));
    }
    Ok(t_cold / (t_hot - t_cold))
}

/// Reversible ceiling of the absorption mode,
/// (1/T_h − 1/T_e)/(1/T_c − 1/T_h).
pub fn carnot_cop_absorption(t_cold: f64, t_hot: f64, t_env: f64) -> Result<f64> {
    if !(0.0 < t_cold && t_cold < t_hot && t_hot < t_env) {
        return Err(Error::domain(format!(
            "absorption Carnot COP needs 0 < T_c < T_h < T_e \
             (got T_c={t_cold}, T_h={t_hot}, T_e={t_env})"
        )));
    }
    Ok((1.0 / t_hot - 1.0 / t_env) / (1.0 / t_cold - 1.0 / t_hot))
}

/// Everything the cycle does at its operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoReport {
    pub w_dot: f64,
    pub q_h: f64,
    pub q_c: f64,
    pub q_e: f64,
    pub s_dot: f64,
    pub first_law_residual: f64,
    pub cop_work: Option<f64>,
    pub cop_absorption: Option<f64>,
}

impl ThermoReport {
    pub fn flows(&self) -> EnergyFlows {
        EnergyFlows {
            w_dot: self.w_dot,
            q_h: self.q_h,
            q_c: self.q_c,
            q_e: self.q_e,
        }
    }
}

/// Run the full pipeline for a scenario: stationary state, flows, entropy
/// production and both coefficients of performance.
pub fn report(scenario: &Scenario) -> Result<ThermoReport> {
    let rates = scenario.rates();
    let ss = steady_state_closed_form(&closed_form_coefficients(&rates), &rates)?;
    let flows = energy_flows(&ss, &rates, &scenario.levels);
    let s_dot = entropy_production(
        &flows,
        scenario.hot.temperature,
        scenario.cold.temperature,
        scenario.env.temperature,
    );
    Ok(ThermoReport {
        w_dot: flows.w_dot,
        q_h: flows.q_h,
        q_c: flows.q_c,
        q_e: flows.q_e,
        s_dot,
        first_law_residual: flows.first_law_residual(),
        cop_work: cop_work(&flows),
        cop_absorption: cop_absorption(&flows),
    })
}

/// Cold-bath heat flow alone; the quantity every parameter study optimizes.
pub fn cooling_rate(scenario: &Scenario) -> Result<f64> {
    let rates = scenario.rates();
    let ss = steady_state_closed_form(&closed_form_coefficients(&rates), &rates)?;
    Ok(energy_flows(&ss, &rates, &scenario.levels).q_c)
}
