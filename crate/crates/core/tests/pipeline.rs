//! Cross-module pipeline tests with frozen reference values.
//!
//! The numeric goldens below were produced once by the null-space oracle
//! pipeline (generator assembly → trace-replaced linear solve → population
//! flows) and are asserted against both stationary-state routes.

use tricool::analysis;
use tricool::figures;
use tricool::model::{BathLabel, BathModel, BathSpec, LevelStructure, Scenario};
use tricool::steady_state::{
    build_generator, closed_form_coefficients, steady_state_closed_form, steady_state_nullspace,
};
use tricool::thermo;

fn assert_rel(actual: f64, frozen: f64, tol: f64, what: &str) {
    let scale = actual.abs().max(frozen.abs()).max(1e-300);
    assert!(
        (actual - frozen).abs() <= tol * scale,
        "{what}: actual {actual:.17e}, frozen {frozen:.17e}"
    );
}

/// Characteristic-plot operating point (Δ21 = 0.3, environmental coupling
/// 0.001): stationary state frozen from the null-space pipeline.
#[test]
fn characteristic_point_steady_state_matches_frozen_values() {
    const P11: f64 = 9.611_058_635_313_645e-1;
    const P22: f64 = 2.529_794_835_769_210_2e-2;
    const P33: f64 = 1.359_618_811_094_339_4e-2;
    const IM_P32: f64 = 9.976_282_003_273_471e-3;

    let scenario = figures::fig5_scenario(0.001);
    let rates = scenario.rates();
    let null = steady_state_nullspace(&build_generator(&rates)).unwrap();
    let closed = steady_state_closed_form(&closed_form_coefficients(&rates), &rates).unwrap();

    for (ss, route) in [(null, "null-space"), (closed, "closed-form")] {
        assert_rel(ss.p11, P11, 1e-9, route);
        assert_rel(ss.p22, P22, 1e-9, route);
        assert_rel(ss.p33, P33, 1e-9, route);
        assert_rel(ss.p32.im, IM_P32, 1e-9, route);
        assert!(ss.p32.re.abs() < 1e-10);
    }
}

/// Energy flows and entropy production at the same operating point.
#[test]
fn characteristic_point_flows_match_frozen_values() {
    const W_DOT: f64 = 1.396_679_480_458_286e-5;
    const Q_H: f64 = -7.120_307_741_958_789e-6;
    const Q_C: f64 = 2.136_092_322_587_638_5e-6;
    const Q_E: f64 = -8.982_579_385_211_706e-6;
    const S_DOT: f64 = 5.915_351_240_997_609e-5;

    let scenario = figures::fig5_scenario(0.001);
    let report = thermo::report(&scenario).unwrap();
    assert_rel(report.w_dot, W_DOT, 1e-9, "w_dot");
    assert_rel(report.q_h, Q_H, 1e-9, "q_h");
    assert_rel(report.q_c, Q_C, 1e-9, "q_c");
    assert_rel(report.q_e, Q_E, 1e-9, "q_e");
    assert_rel(report.s_dot, S_DOT, 1e-9, "s_dot");

    // Inside the cooling window the cycle draws power and rejects into the
    // hot bath.
    assert!(report.q_c > 0.0 && report.w_dot > 0.0 && report.q_h < 0.0);
    let cop = report.cop_work.unwrap();
    assert_rel(cop, Q_C / W_DOT, 1e-12, "cop_work");
}

/// Minimum drive coupling for the all-white-bath operating point, frozen
/// from the pipeline bisection and checked against the analytic numerator
/// root.
#[test]
fn epsilon_min_matches_frozen_value() {
    const EPS_MIN: f64 = 3.035_017_807_617_187_5e-4;

    let scenario = Scenario::new(
        LevelStructure::new(1.0, 0.3).unwrap(),
        0.001,
        BathSpec::new(BathLabel::Hot, 0.2, BathModel::White { coupling: 0.001 }),
        BathSpec::new(BathLabel::Cold, 0.1, BathModel::White { coupling: 0.001 }),
        BathSpec::new(BathLabel::Env, 0.2, BathModel::White { coupling: 0.001 }),
    )
    .unwrap();
    let result = analysis::epsilon_min(&scenario).unwrap();
    assert!((result.numeric - EPS_MIN).abs() <= 1e-11);

    let rates = scenario.rates();
    let pops = scenario.equilibrium_populations();
    let analytic = (rates.lambda_e * rates.gamma_total() * (pops.n_h - pops.n_c * pops.n_e)
        / (4.0 * (pops.n_c - pops.n_h)))
        .sqrt();
    assert_rel(result.numeric, analytic, 1e-9, "eps_min vs analytic root");
}

/// Deep-cold optima frozen from the pipeline, cross-checked against a
/// 10⁴-point dense-grid brute force.
#[test]
fn deep_cold_optima_match_frozen_values_and_brute_force() {
    const FROZEN: [(f64, f64, f64); 3] = [
        (0.005, 7.930_388_467_333_708e-3, 1.577_779_337_711_038_8e-8),
        (0.01, 1.578_920_165_965_576_3e-2, 6.153_782_940_601_903e-8),
        (0.02, 3.131_269_273_780_63e-2, 2.344_007_527_406_427e-7),
    ];

    for (t_c, delta21_star, q_c_max) in FROZEN {
        let scenario = figures::fig4_scenario(t_c);
        let optimum = analysis::maximize_cooling_rate(&scenario).unwrap();
        assert!(
            (optimum.delta21_star - delta21_star).abs() <= 1e-9,
            "t_c={t_c}: delta21* {} vs frozen {delta21_star}",
            optimum.delta21_star
        );
        assert_rel(optimum.q_c_max, q_c_max, 1e-9, "q_c_max");

        // Independent brute-force oracle over the window.
        let window = analysis::cooling_window(&scenario).unwrap();
        let mut brute_best = f64::NEG_INFINITY;
        for i in 1..=10_000 {
            let delta21 = window.delta21_max * i as f64 / 1e4;
            let q = thermo::cooling_rate(&scenario.with_delta21(delta21).unwrap()).unwrap();
            brute_best = brute_best.max(q);
        }
        assert_rel(
            optimum.q_c_max,
            brute_best,
            1e-6,
            "golden section vs brute force",
        );
        assert!(optimum.q_c_max >= brute_best);
    }
}

/// The mechanism-separated flow form agrees with the population form at the
/// frozen operating point, and its thermal term alone reproduces the
/// undriven cooling rate.
#[test]
fn mechanism_form_cross_checks_at_the_characteristic_point() {
    let scenario = figures::fig5_scenario(0.001);
    let (flows, abc) = thermo::abc_flow_form(
        &scenario.rates(),
        &scenario.equilibrium_populations(),
        &scenario.levels,
    )
    .unwrap();
    let report = thermo::report(&scenario).unwrap();
    assert_rel(flows.q_c, report.q_c, 1e-12, "abc q_c");
    assert_rel(flows.w_dot, report.w_dot, 1e-12, "abc w_dot");
    assert!(abc.a > 0.0 && abc.b > 0.0 && abc.c > 0.0);

    // Without the drive, only the thermal term survives: Q̇_c = Δ21·C·(n_c n_e − n_h).
    let undriven = scenario.with_epsilon(0.0).unwrap();
    let (flows0, abc0) = thermo::abc_flow_form(
        &undriven.rates(),
        &undriven.equilibrium_populations(),
        &undriven.levels,
    )
    .unwrap();
    let pops = undriven.equilibrium_populations();
    let expected = 0.3 * abc0.c * (pops.n_c * pops.n_e - pops.n_h);
    assert_rel(flows0.q_c, expected, 1e-12, "undriven q_c");
}

/// Gibbs fixed point reference: uniform temperatures, no drive.
#[test]
fn gibbs_reference_populations() {
    let scenario = Scenario::new(
        LevelStructure::new(1.0, 0.5).unwrap(),
        0.0,
        BathSpec::new(BathLabel::Hot, 0.2, BathModel::White { coupling: 0.001 }),
        BathSpec::new(BathLabel::Cold, 0.2, BathModel::White { coupling: 0.001 }),
        BathSpec::new(BathLabel::Env, 0.2, BathModel::White { coupling: 0.001 }),
    )
    .unwrap();
    let rates = scenario.rates();
    let ss = steady_state_nullspace(&build_generator(&rates)).unwrap();
    let z = 1.0 + (-2.5f64).exp() + (-5.0f64).exp();
    assert_rel(ss.p11, 1.0 / z, 1e-12, "p11");
    assert_rel(ss.p22, (-2.5f64).exp() / z, 1e-12, "p22");
    assert_rel(ss.p33, (-5.0f64).exp() / z, 1e-12, "p33");
}
