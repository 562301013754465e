//! Parameter studies: cooling window, minimum drive coupling, cooling-rate
//! maximization, the low-temperature closed-form approximation, scaling
//! exponents and generic sweeps.
//!
//! Every root and optimum is located through the full steady-state pipeline:
//! a coarse bracketing scan (256 points) followed by bisection or
//! golden-section refinement to 1e-12 absolute in the control variable.
//! Brute-force grid oracles live in the test suite, not here.

use crate::error::{Error, Result};
use crate::model::{RateSet, Scenario};
use crate::steady_state::closed_form_coefficients;
use crate::thermo::{self, ThermoReport};

const SCAN_POINTS: usize = 256;
const CONTROL_TOL: f64 = 1e-12;

/// Δ21 range over which the cycle actually cools (Q̇_c > 0).
///
/// The window always opens at Δ21 = 0 (open endpoint, the flow carries an
/// explicit Δ21 prefactor) and closes at `delta21_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoolingWindow {
    pub delta21_min: f64,
    pub delta21_max: f64,
    pub nonempty: bool,
}

/// Result of maximizing the cooling rate over Δ21.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumPoint {
    pub delta21_star: f64,
    pub q_c_max: f64,
}

/// Fitted low-temperature scaling of the maximum cooling rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    /// Least-squares slope of log Q̇_c^max against log T_c.
    pub alpha: f64,
    pub r_squared: f64,
    /// The (T_c, Q̇_c^max) pairs behind the fit.
    pub grid: Vec<(f64, f64)>,
}

/// Minimum drive coupling that produces cooling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonMin {
    /// Root of Q̇_c(ε) = 0 through the full pipeline; zero when no drive is
    /// needed. This is the authoritative value.
    pub numeric: f64,
    /// Closed-form estimate √(C(n_h − n_e)/(A(1 − n_h))) of the threshold;
    /// it reproduces the numeric root only in the Δ21 → 0 limit and is kept
    /// alongside it so the two can be compared. Absent when its radicand is
    /// negative (no drive needed).
    pub formula: Option<f64>,
}

fn require_refrigeration_ordering(scenario: &Scenario) -> Result<()> {
    if scenario.cold.temperature >= scenario.hot.temperature {
        return Err(Error::domain(format!(
            "refrigeration analysis needs T_c < T_h (got T_c={}, T_h={})",
            scenario.cold.temperature, scenario.hot.temperature
        )));
    }
    Ok(())
}

/// Logarithmically spaced grid, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (log_lo, log_hi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (log_lo + (log_hi - log_lo) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Minimum coupling strength with the driving field for Q̇_c > 0 at the
/// scenario's Δ21, found by bisection of the pipeline cooling rate.
///
/// Errors when Q̇_c(ε) never changes sign in the bracket (cooling impossible
/// at this Δ21 for any drive strength).
pub fn epsilon_min(scenario: &Scenario) -> Result<EpsilonMin> {
    require_refrigeration_ordering(scenario)?;
    let q_c_at = |eps: f64| -> Result<f64> { thermo::cooling_rate(&scenario.with_epsilon(eps)?) };

    let formula = {
        let rates = scenario.rates();
        let pops = scenario.equilibrium_populations();
        // C/A = λ_e Γ / 4 independent of ε; the denominator D cancels.
        let ratio = rates.lambda_e * rates.gamma_total() / 4.0;
        let radicand = ratio * (pops.n_h - pops.n_e) / (1.0 - pops.n_h);
        (radicand >= 0.0).then(|| radicand.sqrt())
    };

    if q_c_at(0.0)? >= 0.0 {
        return Ok(EpsilonMin {
            numeric: 0.0,
            formula,
        });
    }

    let mut hi = 1e-9 * scenario.levels.delta31();
    while q_c_at(hi)? <= 0.0 {
        hi *= 2.0;
        if hi > 1e3 * scenario.levels.delta31() {
            return Err(Error::domain(
                "cooling rate has no sign change in the drive-strength bracket",
            ));
        }
    }

    let mut lo = 0.0;
    while hi - lo > CONTROL_TOL {
        let mid = 0.5 * (lo + hi);
        if q_c_at(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(EpsilonMin {
        numeric: 0.5 * (lo + hi),
        formula,
    })
}

/// Locate the cooling window over Δ21 at fixed drive strength.
///
/// A 256-point logarithmic scan of (0, Δ31) brackets the closing edge, which
/// bisection then pins to 1e-12. An empty window is a flag, not an error.
pub fn cooling_window(scenario: &Scenario) -> Result<CoolingWindow> {
    require_refrigeration_ordering(scenario)?;
    let delta31 = scenario.levels.delta31();
    let q_c_at =
        |delta21: f64| -> Result<f64> { thermo::cooling_rate(&scenario.with_delta21(delta21)?) };

    let grid = log_grid(delta31 * 1e-9, delta31 * (1.0 - 1e-9), SCAN_POINTS);
    let mut last_positive: Option<usize> = None;
    let mut values = Vec::with_capacity(grid.len());
    for (i, &delta21) in grid.iter().enumerate() {
        let q = q_c_at(delta21)?;
        if q > 0.0 {
            last_positive = Some(i);
        }
        values.push(q);
    }

    let Some(i) = last_positive else {
        return Ok(CoolingWindow {
            delta21_min: 0.0,
            delta21_max: 0.0,
            nonempty: false,
        });
    };
    if i + 1 == grid.len() {
        return Err(Error::domain(
            "cooling window extends to the top of the Δ21 scan; \
             no closing edge inside (0, Δ31)",
        ));
    }

    let (mut lo, mut hi) = (grid[i], grid[i + 1]);
    while hi - lo > CONTROL_TOL {
        let mid = 0.5 * (lo + hi);
        if q_c_at(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CoolingWindow {
        delta21_min: 0.0,
        delta21_max: 0.5 * (lo + hi),
        nonempty: true,
    })
}

/// Closing edge of the purely thermal (ε = 0) refrigeration window:
/// Δ21^max = Δ31 · T_c (T_e − T_h) / (T_h (T_e − T_c)).
pub fn absorption_window_formula(t_cold: f64, t_hot: f64, t_env: f64, delta31: f64) -> Result<f64> {
    if !(0.0 < t_cold && t_cold < t_hot && t_hot < t_env) {
        return Err(Error::domain(format!(
            "absorption window needs 0 < T_c < T_h < T_e \
             (got T_c={t_cold}, T_h={t_hot}, T_e={t_env})"
        )));
    }
    Ok(delta31 * t_cold * (t_env - t_hot) / (t_hot * (t_env - t_cold)))
}

/// Maximize the cooling rate over Δ21 inside the cooling window.
///
/// Golden-section refinement of the best coarse-scan bracket; an empty
/// window propagates as an error.
pub fn maximize_cooling_rate(scenario: &Scenario) -> Result<OptimumPoint> {
    let window = cooling_window(scenario)?;
    if !window.nonempty {
        return Err(Error::domain(
            "cannot maximize the cooling rate: empty cooling window",
        ));
    }
    let q_c_at =
        |delta21: f64| -> Result<f64> { thermo::cooling_rate(&scenario.with_delta21(delta21)?) };

    let edge = window.delta21_max;
    let grid = log_grid(edge * 1e-6, edge * (1.0 - 1e-9), SCAN_POINTS);
    let mut best = 0;
    let mut best_q = f64::NEG_INFINITY;
    let mut values = Vec::with_capacity(grid.len());
    for (i, &delta21) in grid.iter().enumerate() {
        let q = q_c_at(delta21)?;
        if q > best_q {
            best_q = q;
            best = i;
        }
        values.push(q);
    }

    let mut a = if best == 0 {
        edge * 1e-7
    } else {
        grid[best - 1]
    };
    let mut b = if best + 1 == grid.len() {
        edge
    } else {
        grid[best + 1]
    };

    // Golden-section search for the maximum on [a, b].
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = q_c_at(x1)?;
    let mut f2 = q_c_at(x2)?;
    while b - a > CONTROL_TOL {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = q_c_at(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = q_c_at(x1)?;
        }
    }
    let (delta21_star, q_c_max) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    Ok(OptimumPoint {
        delta21_star,
        q_c_max,
    })
}

/// Closed-form low-T_c approximation of the cooling rate.
///
/// The hot and environmental coefficients are evaluated in the Δ21 → 0
/// limit (environmental rates at Δ31 instead of Δ32), where they depend on
/// neither T_c nor Δ21:
///
///   Q̇_c ≈ Δ21 · λ_c(Δ21) · (n_c c_10 − c_20) / c_d0,
///
/// which for a power-law cold bath is
/// Δ21^(s_c+1) · Λ_c/(1 − e^(−Δ21/T_c)) · (e^(−Δ21/T_c) c_10 − c_20)/c_d0.
pub fn approx_cooling_rate(scenario: &Scenario) -> f64 {
    let delta31 = scenario.levels.delta31();
    let delta21 = scenario.levels.delta21();
    let (lambda_h, lambda_h_bar) = scenario.hot.rates(delta31).expect("validated scenario");
    let (lambda_e, lambda_e_bar) = scenario.env.rates(delta31).expect("validated scenario");
    let limit_rates = RateSet {
        lambda_h,
        lambda_h_bar,
        lambda_c: 0.0,
        lambda_c_bar: 0.0,
        lambda_e,
        lambda_e_bar,
        epsilon: scenario.drive.epsilon,
    };
    let coeffs = closed_form_coefficients(&limit_rates);
    if coeffs.c_d0 == 0.0 {
        // No drive of either kind; the numerator vanishes identically too.
        return 0.0;
    }
    let (lambda_c, _) = scenario.cold.rates(delta21).expect("validated scenario");
    let n_c = (-delta21 / scenario.cold.temperature).exp();
    delta21 * lambda_c * (n_c * coeffs.c_10 - coeffs.c_20) / coeffs.c_d0
}

/// Fit the low-temperature scaling exponent Q̇_c^max ∝ T_c^α over a T_c grid.
///
/// Errors when any grid point has a non-positive maximum cooling rate or the
/// maxima fail to increase with T_c.
pub fn scaling_exponent(scenario: &Scenario, t_c_grid: &[f64]) -> Result<ScalingFit> {
    if t_c_grid.len() < 3 {
        return Err(Error::domain(
            "scaling fit needs at least three cold-bath temperatures",
        ));
    }
    let mut grid = Vec::with_capacity(t_c_grid.len());
    for &t_c in t_c_grid {
        let optimum = maximize_cooling_rate(&scenario.with_cold_temperature(t_c)?)?;
        if !(optimum.q_c_max > 0.0) {
            return Err(Error::domain(format!(
                "maximum cooling rate is not positive at T_c = {t_c}"
            )));
        }
        grid.push((t_c, optimum.q_c_max));
    }

    let mut sorted = grid.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    if sorted.windows(2).any(|w| w[1].1 <= w[0].1) {
        return Err(Error::domain(
            "maximum cooling rate is not monotone in T_c over the scaling grid",
        ));
    }

    let n = sorted.len() as f64;
    let xs: Vec<f64> = sorted.iter().map(|(t, _)| t.ln()).collect();
    let ys: Vec<f64> = sorted.iter().map(|(_, q)| q.ln()).collect();
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - x_mean).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (x - x_mean) * (y - y_mean))
        .sum();
    let syy: f64 = ys.iter().map(|y| (y - y_mean).powi(2)).sum();
    let alpha = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };

    Ok(ScalingFit {
        alpha,
        r_squared,
        grid,
    })
}

/// Which scenario parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Delta21,
    Epsilon,
    TCold,
    TEnv,
    LambdaEnv,
}

impl SweepVariable {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepVariable::Delta21 => "delta21",
            SweepVariable::Epsilon => "epsilon",
            SweepVariable::TCold => "t_c",
            SweepVariable::TEnv => "t_e",
            SweepVariable::LambdaEnv => "lambda_e",
        }
    }
}

impl std::str::FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta21" => Ok(SweepVariable::Delta21),
            "epsilon" => Ok(SweepVariable::Epsilon),
            "t_c" => Ok(SweepVariable::TCold),
            "t_e" => Ok(SweepVariable::TEnv),
            "lambda_e" => Ok(SweepVariable::LambdaEnv),
            other => Err(Error::domain(format!(
                "unknown sweep variable {other:?} \
                 (expected delta21, epsilon, t_c, t_e or lambda_e)"
            ))),
        }
    }
}

/// One full thermodynamic report per grid point.
///
/// Per-point failures are recorded in place and the sweep continues; the
/// output order is the grid order regardless of evaluation strategy.
#[derive(Debug)]
pub struct SweepResult {
    pub variable: SweepVariable,
    pub grid: Vec<f64>,
    pub points: Vec<Result<ThermoReport>>,
}

/// Evaluate the full pipeline at every grid value of the chosen variable.
pub fn sweep(scenario: &Scenario, variable: SweepVariable, grid: &[f64]) -> SweepResult {
    let points = grid
        .iter()
        .map(|&value| {
            let varied = match variable {
                SweepVariable::Delta21 => scenario.with_delta21(value),
                SweepVariable::Epsilon => scenario.with_epsilon(value),
                SweepVariable::TCold => scenario.with_cold_temperature(value),
                SweepVariable::TEnv => scenario.with_env_temperature(value),
                SweepVariable::LambdaEnv => scenario.with_env_coupling(value),
            }?;
            thermo::report(&varied)
        })
        .collect();
    SweepResult {
        variable,
        grid: grid.to_vec(),
        points,
    }
}
