//! Stationary state of the driven three-level cycle, computed two
//! independent ways.
//!
//! In the frame rotating at the resonant drive frequency the master equation
//!
//!   dρ/dt = −i[εV, ρ] + Σ_b λ_b D[L_b](ρ) + λ̄_b D[L_b†](ρ),
//!   D[L](ρ) = L ρ L† − ½{L†L, ρ},
//!
//! is time-independent. The lowering operators are L_h = |1⟩⟨3|,
//! L_c = |1⟩⟨2|, L_e = |2⟩⟨3| and the drive couples V = |3⟩⟨2| + |2⟩⟨3|.
//! The populations and the driven 3↔2 coherence close among themselves, so
//! the state vector is five real numbers: (ρ11, ρ22, ρ33, Re ρ̃32, Im ρ̃32).
//!
//! Two routes to the stationary state are provided:
//!
//! - [`steady_state_closed_form`]: the explicit rational solution, a ratio of
//!   polynomials in the rates (see [`ClosedFormCoefficients`]);
//! - [`steady_state_nullspace`]: a direct linear solve of the generator with
//!   one balance row replaced by the trace condition.
//!
//! The generator is assembled numerically from the dissipators rather than
//! transcribed from the closed form, which keeps the two routes independent;
//! their agreement is part of the acceptance suite.
//!
//! Ref: Lindblad (1976), Commun. Math. Phys. 48, 119;
//! Breuer & Petruccione, "The Theory of Open Quantum Systems" (2002), Ch. 3.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::RateSet;

/// Stationary state: populations and the steady amplitude of the driven
/// coherence.
///
/// `p32` follows the transition-operator convention: it is the stationary
/// amplitude of ⟨P̂_32⟩ = ρ23 in the rotating frame, so the rotating-frame
/// density-matrix element is ρ̃32 = conj(p32) and p23 = conj(p32). At
/// resonance with a real drive amplitude, p32 is purely imaginary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub p11: f64,
    pub p22: f64,
    pub p33: f64,
    pub p32: Complex64,
}

impl SteadyState {
    pub fn trace(&self) -> f64 {
        self.p11 + self.p22 + self.p33
    }

    /// State vector (ρ11, ρ22, ρ33, Re ρ̃32, Im ρ̃32) acted on by
    /// [`GeneratorMatrix`]. Note Im ρ̃32 = −Im p32.
    pub fn rotating_frame_vector(&self) -> [f64; 5] {
        [self.p11, self.p22, self.p33, self.p32.re, -self.p32.im]
    }

    fn from_rotating_frame_vector(v: &[f64; 5]) -> Self {
        SteadyState {
            p11: v[0],
            p22: v[1],
            p33: v[2],
            p32: Complex64::new(v[3], -v[4]),
        }
    }
}

/// Coefficients of the closed-form stationary solution.
///
/// The populations and coherence are ratios of polynomials in the cold-bath
/// rates, with coefficients built from the hot/environmental rates and the
/// drive strength:
///
///   p11 = (c_10 + c_11 λ_c + c_12 λ_c²) / D
///   p22 = (c_20 + c_21 λ_c + c̄_21 λ̄_c + c̄_22 λ_c λ̄_c) / D
///   p33 = (c_30 + c_31 λ_c + c̄_31 λ̄_c + c_32 λ_c² + c̄_32 λ_c λ̄_c) / D
///   p32 = i (c_c0 + c_c1 λ_c + c̄_c1 λ̄_c) / D
///   D   = c_d0 + c_d1 λ_c + c̄_d1 λ̄_c + c_d2 λ_c² + c̄_d2 λ_c λ̄_c
///
/// Every coefficient is a sum of products of positive rates (the population
/// numerators are the spanning-tree weights of the effective rate graph), so
/// D > 0 for any valid rate set and the p_ii numerators sum to D identically.
/// Every c_c coefficient carries an explicit ε factor, so the coherence
/// vanishes with the drive.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(missing_docs)]
pub struct ClosedFormCoefficients {
    pub c_d0: f64,
    pub c_d1: f64,
    pub c_d1_bar: f64,
    pub c_d2: f64,
    pub c_d2_bar: f64,
    pub c_10: f64,
    pub c_11: f64,
    pub c_12: f64,
    pub c_20: f64,
    pub c_21: f64,
    pub c_21_bar: f64,
    pub c_22_bar: f64,
    pub c_30: f64,
    pub c_31: f64,
    pub c_31_bar: f64,
    pub c_32: f64,
    pub c_32_bar: f64,
    pub c_c0: f64,
    pub c_c1: f64,
    pub c_c1_bar: f64,
    /// Denominator evaluated at the rate set the coefficients were built for.
    pub d: f64,
}

/// Evaluate the closed-form coefficients for a rate set.
pub fn closed_form_coefficients(rates: &RateSet) -> ClosedFormCoefficients {
    let lh = rates.lambda_h;
    let lhb = rates.lambda_h_bar;
    let le = rates.lambda_e;
    let leb = rates.lambda_e_bar;
    let lc = rates.lambda_c;
    let lcb = rates.lambda_c_bar;
    let eps2_4 = 4.0 * rates.epsilon * rates.epsilon;

    // Recurring combination: total rate out of the driven manifold.
    let g = lh + le + leb;

    let c_d0 = g * ((lh + lhb) * leb + le * lhb) + eps2_4 * (lh + 2.0 * lhb);
    let c_d1 = g * (lh + lhb + le) + (lh + lhb) * leb + le * lhb + eps2_4;
    let c_d1_bar = g * g + 2.0 * eps2_4;
    let c_d2 = lh + lhb + le;
    let c_d2_bar = g;

    let c_10 = g * lh * leb + eps2_4 * lh;
    let c_11 = g * (lh + le) + lh * leb + eps2_4;
    let c_12 = lh + le;

    let c_20 = g * le * lhb + eps2_4 * lhb;
    let c_21 = le * lhb;
    let c_21_bar = g * (lh + le) + eps2_4;
    let c_22_bar = lh + le;

    let c_30 = g * leb * lhb + eps2_4 * lhb;
    let c_31 = g * lhb + leb * lhb;
    let c_31_bar = g * leb + eps2_4;
    let c_32 = lhb;
    let c_32_bar = leb;

    let c_c0 = 2.0 * rates.epsilon * lhb * (le - leb);
    let c_c1 = -2.0 * rates.epsilon * lhb;
    let c_c1_bar = 2.0 * rates.epsilon * (lh + le - leb);

    let d = c_d0 + c_d1 * lc + c_d1_bar * lcb + c_d2 * lc * lc + c_d2_bar * lc * lcb;

    ClosedFormCoefficients {
        c_d0,
        c_d1,
        c_d1_bar,
        c_d2,
        c_d2_bar,
        c_10,
        c_11,
        c_12,
        c_20,
        c_21,
        c_21_bar,
        c_22_bar,
        c_30,
        c_31,
        c_31_bar,
        c_32,
        c_32_bar,
        c_c0,
        c_c1,
        c_c1_bar,
        d,
    }
}

/// Evaluate the closed-form stationary state.
///
/// The population sum is verified rather than renormalized: a deviation of
/// the trace from one beyond 1e-8 would mean the closed-form coefficients
/// and the generator disagree, and must surface as an error instead of being
/// silently absorbed.
pub fn steady_state_closed_form(
    coeffs: &ClosedFormCoefficients,
    rates: &RateSet,
) -> Result<SteadyState> {
    let lc = rates.lambda_c;
    let lcb = rates.lambda_c_bar;
    let d = coeffs.d;
    if !(d > 0.0) {
        return Err(Error::domain(format!(
            "closed-form denominator is not positive (D = {d})"
        )));
    }

    let p11 = (coeffs.c_10 + coeffs.c_11 * lc + coeffs.c_12 * lc * lc) / d;
    let p22 =
        (coeffs.c_20 + coeffs.c_21 * lc + coeffs.c_21_bar * lcb + coeffs.c_22_bar * lc * lcb) / d;
    let p33 = (coeffs.c_30
        + coeffs.c_31 * lc
        + coeffs.c_31_bar * lcb
        + coeffs.c_32 * lc * lc
        + coeffs.c_32_bar * lc * lcb)
        / d;
    let coherence = (coeffs.c_c0 + coeffs.c_c1 * lc + coeffs.c_c1_bar * lcb) / d;

    let trace = p11 + p22 + p33;
    if (trace - 1.0).abs() > 1e-8 {
        return Err(Error::domain(format!(
            "closed-form populations do not sum to one (trace = {trace:.15}); \
             closed-form coefficients inconsistent with the generator"
        )));
    }

    Ok(SteadyState {
        p11,
        p22,
        p33,
        p32: Complex64::new(0.0, coherence),
    })
}

/// Real 5×5 generator acting on (ρ11, ρ22, ρ33, Re ρ̃32, Im ρ̃32).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorMatrix {
    m: [[f64; 5]; 5],
}

impl GeneratorMatrix {
    pub fn matrix(&self) -> &[[f64; 5]; 5] {
        &self.m
    }

    /// d(state)/dt for a state vector.
    pub fn apply(&self, v: &[f64; 5]) -> [f64; 5] {
        let mut out = [0.0; 5];
        for (o, row) in out.iter_mut().zip(self.m.iter()) {
            *o = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Max-row-sum (∞) norm; sets the integration time scale.
    pub fn norm_inf(&self) -> f64 {
        self.m
            .iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

const DIM: usize = 3;
type Cmat = [[Complex64; DIM]; DIM];

fn zeros() -> Cmat {
    [[Complex64::ZERO; DIM]; DIM]
}

/// |i⟩⟨j| on levels indexed 0, 1, 2 (= levels 1, 2, 3).
fn ketbra(i: usize, j: usize) -> Cmat {
    let mut m = zeros();
    m[i][j] = Complex64::ONE;
    m
}

fn matmul(a: &Cmat, b: &Cmat) -> Cmat {
    let mut out = zeros();
    for i in 0..DIM {
        for j in 0..DIM {
            let mut acc = Complex64::ZERO;
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] * bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn adjoint(a: &Cmat) -> Cmat {
    let mut out = zeros();
    for i in 0..DIM {
        for (j, aj) in a.iter().enumerate() {
            out[i][j] = aj[i].conj();
        }
    }
    out
}

fn add_scaled(target: &mut Cmat, source: &Cmat, factor: Complex64) {
    for (trow, srow) in target.iter_mut().zip(source.iter()) {
        for (t, s) in trow.iter_mut().zip(srow.iter()) {
            *t += factor * s;
        }
    }
}

/// γ (L ρ L† − ½{L†L, ρ}) accumulated into `out`.
fn add_dissipator(out: &mut Cmat, jump: &Cmat, rate: f64, rho: &Cmat) {
    if rate == 0.0 {
        return;
    }
    let jump_dag = adjoint(jump);
    let sandwich = matmul(&matmul(jump, rho), &jump_dag);
    let number_op = matmul(&jump_dag, jump);
    add_scaled(out, &sandwich, Complex64::from(rate));
    add_scaled(out, &matmul(&number_op, rho), Complex64::from(-0.5 * rate));
    add_scaled(out, &matmul(rho, &number_op), Complex64::from(-0.5 * rate));
}

/// Rotating-frame Liouvillian applied to a density-matrix direction.
fn liouvillian(rates: &RateSet, rho: &Cmat) -> Cmat {
    let mut out = zeros();

    // −i[εV, ρ] with V = |3⟩⟨2| + |2⟩⟨3| (resonant drive, rotating frame).
    let mut v = zeros();
    v[2][1] = Complex64::ONE;
    v[1][2] = Complex64::ONE;
    let commutator_term = {
        let vr = matmul(&v, rho);
        let rv = matmul(rho, &v);
        let mut c = zeros();
        add_scaled(&mut c, &vr, Complex64::ONE);
        add_scaled(&mut c, &rv, -Complex64::ONE);
        c
    };
    add_scaled(
        &mut out,
        &commutator_term,
        Complex64::new(0.0, -rates.epsilon),
    );

    // Hot bath on 3↔1, cold on 2↔1, environmental on 3↔2.
    add_dissipator(&mut out, &ketbra(0, 2), rates.lambda_h, rho);
    add_dissipator(&mut out, &ketbra(2, 0), rates.lambda_h_bar, rho);
    add_dissipator(&mut out, &ketbra(0, 1), rates.lambda_c, rho);
    add_dissipator(&mut out, &ketbra(1, 0), rates.lambda_c_bar, rho);
    add_dissipator(&mut out, &ketbra(1, 2), rates.lambda_e, rho);
    add_dissipator(&mut out, &ketbra(2, 1), rates.lambda_e_bar, rho);

    out
}

/// Assemble the 5×5 generator by applying the rotating-frame Liouvillian to
/// the five Hermitian basis directions of the closed (population, driven
/// coherence) subspace.
pub fn build_generator(rates: &RateSet) -> GeneratorMatrix {
    // Basis directions for (ρ11, ρ22, ρ33, Re ρ̃32, Im ρ̃32).
    let mut basis: [Cmat; 5] = [ketbra(0, 0), ketbra(1, 1), ketbra(2, 2), zeros(), zeros()];
    basis[3][2][1] = Complex64::ONE;
    basis[3][1][2] = Complex64::ONE;
    basis[4][2][1] = Complex64::new(0.0, 1.0);
    basis[4][1][2] = Complex64::new(0.0, -1.0);

    let mut m = [[0.0; 5]; 5];
    for (col, direction) in basis.iter().enumerate() {
        let image = liouvillian(rates, direction);
        m[0][col] = image[0][0].re;
        m[1][col] = image[1][1].re;
        m[2][col] = image[2][2].re;
        m[3][col] = image[2][1].re;
        m[4][col] = image[2][1].im;
    }
    GeneratorMatrix { m }
}

/// Stationary state as the null vector of the generator.
///
/// One population-balance row (they are linearly dependent) is replaced by
/// the trace condition ρ11 + ρ22 + ρ33 = 1 and the resulting system is solved
/// directly. Signals a near-singular augmented system and populations more
/// negative than −1e-12.
pub fn steady_state_nullspace(gen: &GeneratorMatrix) -> Result<SteadyState> {
    let mut a = *gen.matrix();
    a[0] = [1.0, 1.0, 1.0, 0.0, 0.0];
    let b = [1.0, 0.0, 0.0, 0.0, 0.0];

    let solved = linalg::solve_refined(&a, &b)
        .ok_or_else(|| Error::domain("stationary system is singular"))?;
    if solved.condition > 1e14 {
        return Err(Error::domain(format!(
            "stationary system is near-singular (condition estimate {:.3e})",
            solved.condition
        )));
    }
    let v = solved.solution;
    for (index, population) in v[..3].iter().enumerate() {
        if *population < -1e-12 {
            return Err(Error::domain(format!(
                "stationary population p{0}{0} = {1:.3e} is negative beyond tolerance",
                index + 1,
                population
            )));
        }
    }
    Ok(SteadyState::from_rotating_frame_vector(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BathLabel, BathModel, BathSpec, LevelStructure, Scenario};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn white_scenario(
        delta21: f64,
        epsilon: f64,
        t_h: f64,
        t_c: f64,
        t_e: f64,
        lambda_e: f64,
    ) -> Scenario {
        let levels = LevelStructure::new(1.0, delta21).unwrap();
        Scenario::new(
            levels,
            epsilon,
            BathSpec::new(BathLabel::Hot, t_h, BathModel::White { coupling: 0.001 }),
            BathSpec::new(BathLabel::Cold, t_c, BathModel::White { coupling: 0.001 }),
            BathSpec::new(BathLabel::Env, t_e, BathModel::White { coupling: lambda_e }),
        )
        .unwrap()
    }

    fn fig5_rates() -> RateSet {
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
        .rates()
    }

    fn max_rel_diff(a: &SteadyState, b: &SteadyState) -> f64 {
        let pairs = [
            (a.p11, b.p11),
            (a.p22, b.p22),
            (a.p33, b.p33),
            (a.p32.re, b.p32.re),
            (a.p32.im, b.p32.im),
        ];
        pairs
            .iter()
            .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1e-12))
            .fold(0.0, f64::max)
    }

    #[test]
    fn undriven_uniform_temperature_gives_gibbs_state() {
        let scenario = white_scenario(0.5, 0.0, 0.2, 0.2, 0.2, 0.001);
        let rates = scenario.rates();
        let w2 = (-2.5f64).exp();
        let w3 = (-5.0f64).exp();
        let z = 1.0 + w2 + w3;

        let coeffs = closed_form_coefficients(&rates);
        let closed = steady_state_closed_form(&coeffs, &rates).unwrap();
        let null = steady_state_nullspace(&build_generator(&rates)).unwrap();

        for ss in [closed, null] {
            assert!((ss.p11 - 1.0 / z).abs() < 1e-12, "p11 = {}", ss.p11);
            assert!((ss.p22 - w2 / z).abs() < 1e-12);
            assert!((ss.p33 - w3 / z).abs() < 1e-12);
            assert_eq!(ss.p32, Complex64::ZERO);
        }
        // Rounded reference values for the same fixed point.
        assert!((closed.p11 - 0.918423).abs() < 5e-7);
        assert!((closed.p22 - 0.075389).abs() < 5e-7);
        assert!((closed.p33 - 0.006188).abs() < 5e-7);
    }

    #[test]
    fn coherence_coefficients_vanish_without_drive() {
        let mut rates = fig5_rates();
        rates.epsilon = 0.0;
        let coeffs = closed_form_coefficients(&rates);
        assert_eq!(coeffs.c_c0, 0.0);
        assert_eq!(coeffs.c_c1, 0.0);
        assert_eq!(coeffs.c_c1_bar, 0.0);
        let ss = steady_state_closed_form(&coeffs, &rates).unwrap();
        assert_eq!(ss.p32, Complex64::ZERO);
    }

    #[test]
    fn denominator_reduces_without_environmental_bath() {
        let mut rates = fig5_rates();
        rates.lambda_e = 0.0;
        rates.lambda_e_bar = 0.0;
        let coeffs = closed_form_coefficients(&rates);
        let expected =
            4.0 * rates.epsilon * rates.epsilon * (rates.lambda_h + 2.0 * rates.lambda_h_bar);
        assert!((coeffs.c_d0 - expected).abs() <= 1e-18);
    }

    #[test]
    fn denominator_is_positive_on_random_rate_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_d001);
        let mut log_uniform = |lo: f64, hi: f64| -> f64 {
            let u: f64 = rng.gen();
            (lo.ln() + u * (hi.ln() - lo.ln())).exp()
        };
        for _ in 0..10_000 {
            let rates = RateSet {
                lambda_h: log_uniform(1e-5, 1e-1),
                lambda_h_bar: log_uniform(1e-5, 1e-1),
                lambda_c: log_uniform(1e-5, 1e-1),
                lambda_c_bar: log_uniform(1e-5, 1e-1),
                lambda_e: log_uniform(1e-5, 1e-1),
                lambda_e_bar: log_uniform(1e-5, 1e-1),
                epsilon: log_uniform(1e-5, 1e-1),
            };
            let coeffs = closed_form_coefficients(&rates);
            assert!(coeffs.d > 0.0, "D must stay positive, got {}", coeffs.d);
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn generator_population_columns_sum_to_zero() {
        let gen = build_generator(&fig5_rates());
        let m = gen.matrix();
        for col in 0..5 {
            let sum = m[0][col] + m[1][col] + m[2][col];
            assert!(
                sum.abs() < 1e-16 * gen.norm_inf().max(1.0),
                "column {col} sums to {sum}"
            );
        }
    }

    #[test]
    fn coherence_damping_rate_matches_half_gamma() {
        let rates = fig5_rates();
        let gen = build_generator(&rates);
        let expected = -0.5 * rates.gamma_total();
        assert!((gen.matrix()[3][3] - expected).abs() < 1e-18);
        assert!((gen.matrix()[4][4] - expected).abs() < 1e-18);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn coherence_block_decouples_without_drive() {
        let mut rates = fig5_rates();
        rates.epsilon = 0.0;
        let m = *build_generator(&rates).matrix();
        for row in 0..3 {
            assert_eq!(m[row][3], 0.0);
            assert_eq!(m[row][4], 0.0);
        }
        for row in 3..5 {
            for col in 0..3 {
                assert_eq!(m[row][col], 0.0);
            }
        }
    }

    #[test]
    fn nullspace_agrees_with_closed_form_on_characteristic_parameters() {
        let rates = fig5_rates();
        let closed = steady_state_closed_form(&closed_form_coefficients(&rates), &rates).unwrap();
        let null = steady_state_nullspace(&build_generator(&rates)).unwrap();
        assert!(max_rel_diff(&closed, &null) < 1e-9);
        assert!((closed.trace() - 1.0).abs() < 1e-10);
        assert!(closed.p32.re.abs() < 1e-10);
    }

    #[test]
    fn fully_decoupled_system_is_reported_singular() {
        let rates = RateSet {
            lambda_h: 0.0,
            lambda_h_bar: 0.0,
            lambda_c: 0.0,
            lambda_c_bar: 0.0,
            lambda_e: 0.0,
            lambda_e_bar: 0.0,
            epsilon: 0.0,
        };
        let err = steady_state_nullspace(&build_generator(&rates)).unwrap_err();
        assert!(err.to_string().contains("singular"), "{err}");
    }

    #[test]
    fn steady_state_is_invariant_under_rate_rescaling() {
        let rates = fig5_rates();
        let reference =
            steady_state_closed_form(&closed_form_coefficients(&rates), &rates).unwrap();

        // Powers of two rescale the rate polynomials exactly.
        let doubled = rates.scaled(2.0);
        let ss2 = steady_state_closed_form(&closed_form_coefficients(&doubled), &doubled).unwrap();
        assert_eq!(reference, ss2);

        let scaled = rates.scaled(3.7);
        let ss37 = steady_state_closed_form(&closed_form_coefficients(&scaled), &scaled).unwrap();
        assert!(max_rel_diff(&reference, &ss37) < 1e-12);

        let null_scaled = steady_state_nullspace(&build_generator(&scaled)).unwrap();
        assert!(max_rel_diff(&reference, &null_scaled) < 1e-9);
    }

    proptest! {
        #[test]
        fn routes_agree_on_random_scenarios(
            u21 in 0.01f64..0.99,
            log_eps in -5.0f64..-1.0,
            log_th in -3.0f64..0.0,
            log_tc in -3.0f64..0.0,
            log_te in -3.0f64..0.0,
            log_le in -5.0f64..-1.0,
        ) {
            let scenario = white_scenario(
                u21,
                10f64.powf(log_eps),
                10f64.powf(log_th),
                10f64.powf(log_tc),
                10f64.powf(log_te),
                10f64.powf(log_le),
            );
            let rates = scenario.rates();
            let closed =
                steady_state_closed_form(&closed_form_coefficients(&rates), &rates).unwrap();
            let null = steady_state_nullspace(&build_generator(&rates)).unwrap();
            prop_assert!(max_rel_diff(&closed, &null) < 1e-9);
            prop_assert!(closed.p11 >= -1e-12 && closed.p22 >= -1e-12 && closed.p33 >= -1e-12);
            prop_assert!((closed.trace() - 1.0).abs() < 1e-10);
            prop_assert!(closed.p32.re.abs() < 1e-10);
        }
    }
}
