//! Time integration of the rotating-frame master equation.
//!
//! The generator is time-independent at resonance, so the dynamics is a
//! linear ODE on the five-component state (ρ11, ρ22, ρ33, Re ρ̃32, Im ρ̃32).
//! A classical fourth-order Runge–Kutta step with step-doubling error
//! control is plenty at this dimension; the stationary state is an exact
//! fixed point of the update map, so the integrator converges onto the
//! algebraic steady state limited only by roundoff.
//!
//! Trace is conserved identically by the scheme (the trace functional
//! annihilates the generator, hence every Runge–Kutta stage), which the
//! stepper still verifies per step as a guard against inconsistent input.

use crate::error::{Error, Result};
use crate::steady_state::GeneratorMatrix;

/// Instantaneous state on a trajectory: populations plus the rotating-frame
/// coherence ρ̃32 = re_coh + i·im_coh.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub re_coh: f64,
    pub im_coh: f64,
    pub time: f64,
}

impl DensityState {
    pub fn new(rho11: f64, rho22: f64, rho33: f64, re_coh: f64, im_coh: f64) -> Self {
        Self {
            rho11,
            rho22,
            rho33,
            re_coh,
            im_coh,
            time: 0.0,
        }
    }

    /// Everything in the ground state.
    pub fn ground() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// Everything in the top level.
    pub fn excited() -> Self {
        Self::new(0.0, 0.0, 1.0, 0.0, 0.0)
    }

    /// Maximally mixed populations.
    pub fn mixed() -> Self {
        let third = 1.0 / 3.0;
        Self::new(third, third, third, 0.0, 0.0)
    }

    pub fn trace(&self) -> f64 {
        self.rho11 + self.rho22 + self.rho33
    }

    pub fn vector(&self) -> [f64; 5] {
        [self.rho11, self.rho22, self.rho33, self.re_coh, self.im_coh]
    }

    fn with_vector(v: [f64; 5], time: f64) -> Self {
        Self {
            rho11: v[0],
            rho22: v[1],
            rho33: v[2],
            re_coh: v[3],
            im_coh: v[4],
            time,
        }
    }
}

/// Fixed-step integrator controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationSettings {
    /// Base time step.
    pub dt: f64,
    /// Integration horizon; exceeding it is a convergence failure.
    pub t_max: f64,
    /// Steady-state threshold on the derivative norm, relative to ‖G‖.
    pub steady_tol: f64,
}

impl IntegrationSettings {
    /// Defaults scaled to a generator: dt = 0.1/‖G‖, a generous horizon, and
    /// a derivative threshold far below any physical rate.
    pub fn for_generator(gen: &GeneratorMatrix) -> Self {
        let norm = gen.norm_inf().max(f64::MIN_POSITIVE);
        Self {
            dt: 0.1 / norm,
            t_max: 1e6 / norm,
            steady_tol: 1e-11,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.t_max > 0.0 && self.steady_tol > 0.0) {
            return Err(Error::domain(
                "integration settings must have positive dt, t_max and steady_tol",
            ));
        }
        Ok(())
    }
}

fn rk4(gen: &GeneratorMatrix, v: &[f64; 5], dt: f64) -> [f64; 5] {
    let k1 = gen.apply(v);
    let mut stage = [0.0; 5];
    for i in 0..5 {
        stage[i] = v[i] + 0.5 * dt * k1[i];
    }
    let k2 = gen.apply(&stage);
    for i in 0..5 {
        stage[i] = v[i] + 0.5 * dt * k2[i];
    }
    let k3 = gen.apply(&stage);
    for i in 0..5 {
        stage[i] = v[i] + dt * k3[i];
    }
    let k4 = gen.apply(&stage);
    let mut out = [0.0; 5];
    for i in 0..5 {
        out[i] = v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn norm_inf_diff(a: &[f64; 5], b: &[f64; 5]) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Advance one Runge–Kutta step of size `dt`.
pub fn step(gen: &GeneratorMatrix, state: &DensityState, dt: f64) -> Result<DensityState> {
    if !(dt > 0.0) {
        return Err(Error::domain("time step must be positive"));
    }
    let next = rk4(gen, &state.vector(), dt);
    let out = DensityState::with_vector(next, state.time + dt);
    let drift = (out.trace() - state.trace()).abs();
    if drift > 1e-8 {
        return Err(Error::domain(format!(
            "trace drifted by {drift:.3e} in a single step"
        )));
    }
    Ok(out)
}

/// Integrate until the derivative norm falls below the steady threshold.
///
/// Returns the settled state, the elapsed time and the final relative
/// residual ‖G·v‖∞/‖G‖∞. Step size adapts by step-doubling: each macro step
/// is accepted from the half-step pair, and halved when the pair disagrees
/// with the full step beyond 1e-12.
pub fn evolve_to_steady(
    gen: &GeneratorMatrix,
    state0: &DensityState,
    settings: &IntegrationSettings,
) -> Result<(DensityState, f64, f64)> {
    settings.validate()?;
    const STEP_ERROR_TOL: f64 = 1e-12;

    let norm_g = gen.norm_inf().max(f64::MIN_POSITIVE);
    let dt_cap = 1.0 / norm_g;
    let dt_min = settings.dt * 2f64.powi(-40);
    let mut dt = settings.dt.min(dt_cap);
    let mut v = state0.vector();
    let trace0 = state0.trace();
    let mut elapsed = 0.0;

    let residual_of = |v: &[f64; 5]| -> f64 {
        let dv = gen.apply(v);
        dv.iter().map(|x| x.abs()).fold(0.0, f64::max) / norm_g
    };

    let mut residual = residual_of(&v);
    while residual >= settings.steady_tol {
        if elapsed > settings.t_max {
            return Err(Error::domain(format!(
                "no steady state within t_max = {:.3e} (residual {:.3e}, tolerance {:.3e})",
                settings.t_max, residual, settings.steady_tol
            )));
        }
        let full = rk4(gen, &v, dt);
        let mid = rk4(gen, &v, 0.5 * dt);
        let halved = rk4(gen, &mid, 0.5 * dt);
        let step_error = norm_inf_diff(&full, &halved);
        if step_error > STEP_ERROR_TOL && dt > dt_min {
            dt *= 0.5;
            continue;
        }
        v = halved;
        elapsed += dt;
        if step_error < STEP_ERROR_TOL / 64.0 {
            dt = (2.0 * dt).min(dt_cap);
        }
        let trace = v[0] + v[1] + v[2];
        if (trace - trace0).abs() > 1e-8 {
            return Err(Error::domain(format!(
                "trace drifted by {:.3e} during evolution",
                (trace - trace0).abs()
            )));
        }
        residual = residual_of(&v);
    }

    Ok((
        DensityState::with_vector(v, state0.time + elapsed),
        elapsed,
        residual,
    ))
}

/// Sample the trajectory at the requested times.
///
/// The grid must be non-decreasing and start at or after the initial time;
/// each segment is integrated with the base step, shortening the final
/// sub-step to land exactly on the sample time.
pub fn trajectory(
    gen: &GeneratorMatrix,
    state0: &DensityState,
    t_grid: &[f64],
    settings: &IntegrationSettings,
) -> Result<Vec<DensityState>> {
    settings.validate()?;
    if t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("trajectory time grid must be non-decreasing"));
    }
    if let Some(first) = t_grid.first() {
        if *first < state0.time {
            return Err(Error::domain(
                "trajectory time grid starts before the initial state",
            ));
        }
    }

    let mut samples = Vec::with_capacity(t_grid.len());
    let mut v = state0.vector();
    let mut time = state0.time;
    let trace0 = state0.trace();
    for &target in t_grid {
        while time < target {
            let dt = settings.dt.min(target - time);
            v = rk4(gen, &v, dt);
            time += dt;
        }
        let sample = DensityState::with_vector(v, target);
        if (sample.trace() - trace0).abs() > 1e-8 {
            return Err(Error::domain(format!(
                "trace drifted by {:.3e} along the trajectory",
                (sample.trace() - trace0).abs()
            )));
        }
        samples.push(sample);
    }
    Ok(samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BathLabel, BathModel, BathSpec, LevelStructure, RateSet, Scenario};
    use crate::steady_state::{
        build_generator, closed_form_coefficients, steady_state_closed_form,
    };

    fn fig5_scenario() -> Scenario {
        let levels = LevelStructure::new(1.0, 0.3).unwrap();
        Scenario::new(
            levels,
            0.001,
            BathSpec::new(BathLabel::Hot, 0.2, BathModel::White { coupling: 0.001 }),
            BathSpec::new(
                BathLabel::Cold,
                0.1,
                BathModel::PowerLaw {
                    coupling: 0.001,
                    exponent: 1.0,
                },
            ),
            BathSpec::new(BathLabel::Env, 0.2, BathModel::White { coupling: 0.001 }),
        )
        .unwrap()
    }

    fn steady_vector(rates: &RateSet) -> [f64; 5] {
        steady_state_closed_form(&closed_form_coefficients(rates), rates)
            .unwrap()
            .rotating_frame_vector()
    }

    #[test]
    fn steady_state_is_a_fixed_point_of_the_stepper() {
        let rates = fig5_scenario().rates();
        let gen = build_generator(&rates);
        let v = steady_vector(&rates);
        let state = DensityState::with_vector(v, 0.0);

        let derivative = gen.apply(&v);
        let derivative_norm = derivative.iter().map(|x| x.abs()).fold(0.0, f64::max);
        assert!(derivative_norm < 1e-12, "‖Gv‖ = {derivative_norm}");

        let stepped = step(&gen, &state, 10.0).unwrap();
        assert!(norm_inf_diff(&stepped.vector(), &v) < 1e-12);
    }

    #[test]
    fn undriven_coherence_decays_monotonically() {
        let mut rates = fig5_scenario().rates();
        rates.epsilon = 0.0;
        let gen = build_generator(&rates);
        let mut state = DensityState::new(0.4, 0.3, 0.3, 0.2, -0.1);
        let mut magnitude = (state.re_coh.powi(2) + state.im_coh.powi(2)).sqrt();
        for _ in 0..50 {
            state = step(&gen, &state, 20.0).unwrap();
            let next = (state.re_coh.powi(2) + state.im_coh.powi(2)).sqrt();
            assert!(next <= magnitude);
            magnitude = next;
        }
    }

    #[test]
    fn global_error_scales_at_fourth_order() {
        // Rates of order one make discretization error dominate roundoff.
        let rates = RateSet {
            lambda_h: 1.0,
            lambda_h_bar: 0.2,
            lambda_c: 0.8,
            lambda_c_bar: 0.3,
            lambda_e: 0.5,
            lambda_e_bar: 0.1,
            epsilon: 1.0,
        };
        let gen = build_generator(&rates);
        let v0 = DensityState::ground().vector();
        let horizon = 2.0;

        let integrate = |n_steps: usize| -> [f64; 5] {
            let dt = horizon / n_steps as f64;
            let mut v = v0;
            for _ in 0..n_steps {
                v = rk4(&gen, &v, dt);
            }
            v
        };

        let reference = integrate(1 << 12);
        let coarse = norm_inf_diff(&integrate(10), &reference);
        let fine = norm_inf_diff(&integrate(20), &reference);
        let ratio = coarse / fine;
        assert!(
            (10.0..26.0).contains(&ratio),
            "halving the step changed the error by {ratio:.2}, expected ≈ 16"
        );
    }

    #[test]
    fn evolution_reaches_the_algebraic_steady_state_from_any_start() {
        let rates = fig5_scenario().rates();
        let gen = build_generator(&rates);
        let settings = IntegrationSettings::for_generator(&gen);
        let target = steady_vector(&rates);

        for start in [
            DensityState::ground(),
            DensityState::excited(),
            DensityState::mixed(),
        ] {
            let (settled, elapsed, residual) = evolve_to_steady(&gen, &start, &settings).unwrap();
            assert!(residual < settings.steady_tol);
            assert!(elapsed > 0.0);
            assert!(
                norm_inf_diff(&settled.vector(), &target) < 1e-8,
                "settled {:?} vs target {:?}",
                settled.vector(),
                target
            );
        }
    }

    #[test]
    fn starting_at_the_steady_state_returns_immediately() {
        let rates = fig5_scenario().rates();
        let gen = build_generator(&rates);
        let settings = IntegrationSettings::for_generator(&gen);
        let state = DensityState::with_vector(steady_vector(&rates), 0.0);
        let (_, elapsed, residual) = evolve_to_steady(&gen, &state, &settings).unwrap();
        assert_eq!(elapsed, 0.0);
        assert!(residual < settings.steady_tol);
    }

    #[test]
    fn runaway_steps_trip_the_trace_guard() {
        // Far beyond the stability bound the update diverges; the trace sum
        // then carries rounding at the blown-up scale and the guard fires.
        let rates = RateSet {
            lambda_h: 1.0,
            lambda_h_bar: 0.2,
            lambda_c: 0.8,
            lambda_c_bar: 0.3,
            lambda_e: 0.5,
            lambda_e_bar: 0.1,
            epsilon: 1.0,
        };
        let gen = build_generator(&rates);
        let mut state = DensityState::ground();
        let mut tripped = false;
        for _ in 0..50 {
            match step(&gen, &state, 1e3) {
                Ok(next) => state = next,
                Err(e) => {
                    assert!(e.to_string().contains("trace drifted"), "{e}");
                    tripped = true;
                    break;
                }
            }
        }
        assert!(tripped, "divergent stepping never tripped the trace guard");
    }

    #[test]
    fn nonconvergence_is_reported_with_the_residual() {
        let rates = fig5_scenario().rates();
        let gen = build_generator(&rates);
        let settings = IntegrationSettings {
            t_max: 1.0,
            ..IntegrationSettings::for_generator(&gen)
        };
        let err = evolve_to_steady(&gen, &DensityState::ground(), &settings).unwrap_err();
        assert!(err.to_string().contains("residual"), "{err}");
    }

    #[test]
    fn trajectory_identity_and_invariants() {
        let rates = fig5_scenario().rates();
        let gen = build_generator(&rates);
        let settings = IntegrationSettings::for_generator(&gen);
        let start = DensityState::excited();

        let only_start = trajectory(&gen, &start, &[0.0], &settings).unwrap();
        assert_eq!(only_start, vec![start]);

        let grid: Vec<f64> = (0..60).map(|i| i as f64 * 137.0).collect();
        let samples = trajectory(&gen, &start, &grid, &settings).unwrap();
        for s in &samples {
            assert!((s.trace() - 1.0).abs() <= 1e-10);
            for p in [s.rho11, s.rho22, s.rho33] {
                assert!((-1e-10..=1.0 + 1e-10).contains(&p), "population {p}");
            }
        }

        let decreasing = [1.0, 0.5];
        assert!(trajectory(&gen, &start, &decreasing, &settings).is_err());
    }

    #[test]
    fn trajectories_stay_physical_on_varied_scenarios() {
        for (delta21, epsilon, t_c, t_e) in [
            (0.1, 5e-3, 0.05, 0.2),
            (0.7, 1e-4, 0.3, 0.05),
            (0.45, 2e-3, 0.01, 0.4),
        ] {
            let scenario = fig5_scenario()
                .with_delta21(delta21)
                .unwrap()
                .with_epsilon(epsilon)
                .unwrap()
                .with_cold_temperature(t_c)
                .unwrap()
                .with_env_temperature(t_e)
                .unwrap();
            let gen = build_generator(&scenario.rates());
            let settings = IntegrationSettings::for_generator(&gen);
            let grid: Vec<f64> = (0..40).map(|i| i as f64 * 40.0 * settings.dt).collect();
            let samples =
                trajectory(&gen, &DensityState::excited(), &grid, &settings).unwrap();
            for s in &samples {
                assert!((s.trace() - 1.0).abs() <= 1e-10);
                for p in [s.rho11, s.rho22, s.rho33] {
                    assert!((-1e-10..=1.0 + 1e-10).contains(&p), "population {p}");
                }
            }
        }
    }

    #[test]
    fn evolution_is_linear_in_the_initial_state() {
        let rates = fig5_scenario().rates();
        let gen = build_generator(&rates);
        let settings = IntegrationSettings::for_generator(&gen);
        let grid = [0.0, 250.0, 1500.0];

        let a = DensityState::ground();
        let b = DensityState::excited();
        let mixed = DensityState::new(0.6, 0.0, 0.4, 0.0, 0.0);

        let sa = trajectory(&gen, &a, &grid, &settings).unwrap();
        let sb = trajectory(&gen, &b, &grid, &settings).unwrap();
        let sm = trajectory(&gen, &mixed, &grid, &settings).unwrap();
        for ((xa, xb), xm) in sa.iter().zip(sb.iter()).zip(sm.iter()) {
            for i in 0..5 {
                let combined = 0.6 * xa.vector()[i] + 0.4 * xb.vector()[i];
                assert!((combined - xm.vector()[i]).abs() < 1e-12);
            }
        }
    }
}
