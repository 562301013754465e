//! Canned parameter studies (`fig2` … `fig7`), each emitting a plot-ready
//! dataset with the producing parameters embedded in the header.
//!
//! The study parameters are baked in. Where a study needs a family of curve
//! values that is not pinned down elsewhere, the toolkit defaults below are
//! used and recorded in the dataset header:
//!
//! - `fig2`, `fig3`: environmental couplings Λ_e ∈ {0, 0.001, 0.01}
//! - `fig4`: cold temperatures T_c ∈ {0.005, 0.01, 0.02}
//! - `fig5`, `fig6`: Λ_e ∈ {0, 0.001} (with and without the extra bath)
//! - `fig7`: environmental temperatures T_e ∈ {0.25, 0.3, 0.4}
//!
//! `fig7` characterizes the purely thermally driven (absorption) mode, so
//! its scenarios run with the coherent drive off (ε = 0); the environmental
//! bath is the sole driving force there.

use crate::analysis::{self, SweepVariable};
use crate::config;
use crate::error::{Error, Result};
use crate::model::{BathLabel, BathModel, BathSpec, LevelStructure, Scenario};
use crate::output::Dataset;
use crate::thermo;

/// The available canned studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Minimum drive coupling against environmental temperature.
    Fig2,
    /// Cooling-window edge against cold-bath temperature.
    Fig3,
    /// Cooling rate against Δ21 with its closed-form approximation.
    Fig4,
    /// Characteristic chiller curve: COP against cooling rate.
    Fig5,
    /// Entropy production rate against Δ21.
    Fig6,
    /// Absorption-mode characteristic curve at three drive temperatures.
    Fig7,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
        FigureId::Fig7,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
            FigureId::Fig7 => "fig7",
        }
    }
}

impl std::str::FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown figure {s:?} (expected fig2…fig7)")))
    }
}

fn white(label: BathLabel, temperature: f64, coupling: f64) -> BathSpec {
    BathSpec::new(label, temperature, BathModel::White { coupling })
}

fn ohmic_cold(temperature: f64, coupling: f64, exponent: f64) -> BathSpec {
    BathSpec::new(
        BathLabel::Cold,
        temperature,
        BathModel::PowerLaw { coupling, exponent },
    )
}

/// Minimum-coupling study: T_c=0.1, T_h=0.2, Δ31=1, Λ_h=Λ_c=0.001, ohmic
/// cold bath (s_c=1). Δ21 is probed at 10⁻³·Δ31, the small-Δ21 edge of the
/// cooling window where the threshold is least demanding.
pub fn fig2_scenario(lambda_e: f64) -> Scenario {
    Scenario::new(
        LevelStructure::new(1.0, 1e-3).unwrap(),
        0.001,
        white(BathLabel::Hot, 0.2, 0.001),
        ohmic_cold(0.1, 0.001, 1.0),
        white(BathLabel::Env, 0.15, lambda_e),
    )
    .unwrap()
}

/// Window-vs-T_c study: T_h=T_e=0.2, Δ31=1, Λ_h=Λ_c=ε=0.001, s_c=1.
pub fn fig3_scenario(lambda_e: f64) -> Scenario {
    Scenario::new(
        LevelStructure::new(1.0, 0.3).unwrap(),
        0.001,
        white(BathLabel::Hot, 0.2, 0.001),
        ohmic_cold(0.1, 0.001, 1.0),
        white(BathLabel::Env, 0.2, lambda_e),
    )
    .unwrap()
}

/// Cooling-rate study at deep cold: T_h=T_e=0.03, Δ31=1, all couplings and
/// the drive at 0.001, s_c=1.
pub fn fig4_scenario(t_cold: f64) -> Scenario {
    fig4_scenario_custom(t_cold, 1.0, 0.001)
}

/// Same study with a configurable cold-bath exponent and environmental
/// coupling; the scaling and linearity analyses reuse it.
pub fn fig4_scenario_custom(t_cold: f64, exponent: f64, lambda_e: f64) -> Scenario {
    Scenario::new(
        LevelStructure::new(1.0, 0.3).unwrap(),
        0.001,
        white(BathLabel::Hot, 0.03, 0.001),
        ohmic_cold(t_cold, 0.001, exponent),
        white(BathLabel::Env, 0.03, lambda_e),
    )
    .unwrap()
}

/// Characteristic-curve study: T_c=0.1, T_h=T_e=0.2, Δ31=1,
/// Λ_h=Λ_c=ε=0.001, s_c=1; Δ21 fixed at 0.3 until a sweep varies it.
pub fn fig5_scenario(lambda_e: f64) -> Scenario {
    Scenario::new(
        LevelStructure::new(1.0, 0.3).unwrap(),
        0.001,
        white(BathLabel::Hot, 0.2, 0.001),
        ohmic_cold(0.1, 0.001, 1.0),
        white(BathLabel::Env, 0.2, lambda_e),
    )
    .unwrap()
}

/// Absorption-mode study: thermally driven (ε = 0), T_c=0.1, T_h=0.2,
/// Δ31=1, Λ_h=Λ_c=Λ_e=0.001, s_c=1, environmental bath at `t_env` > T_h.
pub fn fig7_scenario(t_env: f64) -> Scenario {
    Scenario::new(
        LevelStructure::new(1.0, 0.1).unwrap(),
        0.0,
        white(BathLabel::Hot, 0.2, 0.001),
        ohmic_cold(0.1, 0.001, 1.0),
        white(BathLabel::Env, t_env, 0.001),
    )
    .unwrap()
}

fn curve_label(name: &str, value: f64) -> String {
    format!("{name}={value}")
}

fn base_parameters(dataset: &mut Dataset, figure: FigureId, scenario: &Scenario, n: usize) {
    dataset.parameter("command", format!("figure {}", figure.as_str()));
    dataset.parameter("grid", n);
    dataset.parameters_from(config::parameter_list(scenario));
}

/// Linearly spaced grid over (0, edge]: edge·1/n, …, edge.
fn open_linear_grid(edge: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| edge * i as f64 / n as f64).collect()
}

/// Run a canned study with `n` grid points per curve.
pub fn run_figure(figure: FigureId, n: usize) -> Result<Dataset> {
    if n < 8 {
        return Err(Error::domain("figure grids need at least 8 points"));
    }
    match figure {
        FigureId::Fig2 => fig2(n),
        FigureId::Fig3 => fig3(n),
        FigureId::Fig4 => fig4(n),
        FigureId::Fig5 => fig5(n),
        FigureId::Fig6 => fig6(n),
        FigureId::Fig7 => fig7(n),
    }
}

fn fig2(n: usize) -> Result<Dataset> {
    let mut ds = Dataset::new(&["curve", "t_e", "eps_min", "eps_min_formula"]);
    base_parameters(&mut ds, FigureId::Fig2, &fig2_scenario(0.001), n);
    ds.parameter("curves.lambda_e", "0, 0.001, 0.01 (toolkit defaults)");
    ds.parameter(
        "note",
        "eps_min probed at delta21 = 1e-3; eps_min_formula is the closed-form \
         small-delta21 estimate, empty where its radicand is negative",
    );

    let t_grid: Vec<f64> = (0..n)
        .map(|i| 0.10 + (0.25 - 0.10) * i as f64 / (n - 1) as f64)
        .collect();
    for lambda_e in [0.0, 0.001, 0.01] {
        let label = curve_label("lambda_e", lambda_e);
        let base = fig2_scenario(lambda_e);
        for &t_e in &t_grid {
            let scenario = base.with_env_temperature(t_e)?;
            let result = analysis::epsilon_min(&scenario)?;
            ds.push_row(vec![
                label.as_str().into(),
                t_e.into(),
                result.numeric.into(),
                result.formula.into(),
            ]);
        }
    }
    Ok(ds)
}

fn fig3(n: usize) -> Result<Dataset> {
    let mut ds = Dataset::new(&["curve", "t_c", "delta21_max"]);
    base_parameters(&mut ds, FigureId::Fig3, &fig3_scenario(0.001), n);
    ds.parameter("curves.lambda_e", "0, 0.001, 0.01 (toolkit defaults)");
    ds.parameter("note", "delta21_max = 0 marks an empty cooling window");

    let t_grid = analysis::log_grid(1e-3, 0.19, n);
    for lambda_e in [0.0, 0.001, 0.01] {
        let label = curve_label("lambda_e", lambda_e);
        let base = fig3_scenario(lambda_e);
        for &t_c in &t_grid {
            let window = analysis::cooling_window(&base.with_cold_temperature(t_c)?)?;
            ds.push_row(vec![
                label.as_str().into(),
                t_c.into(),
                window.delta21_max.into(),
            ]);
        }
    }
    Ok(ds)
}

fn fig4(n: usize) -> Result<Dataset> {
    let mut ds = Dataset::new(&["curve", "delta21", "qdot_c", "qdot_c_approx"]);
    base_parameters(&mut ds, FigureId::Fig4, &fig4_scenario(0.01), n);
    ds.parameter("curves.t_c", "0.005, 0.01, 0.02 (toolkit defaults)");

    for t_c in [0.005, 0.01, 0.02] {
        let label = curve_label("t_c", t_c);
        let base = fig4_scenario(t_c);
        let window = analysis::cooling_window(&base)?;
        if !window.nonempty {
            return Err(Error::domain(format!(
                "empty cooling window at T_c = {t_c}"
            )));
        }
        for delta21 in open_linear_grid(window.delta21_max, n) {
            let varied = base.with_delta21(delta21)?;
            let q_c = thermo::cooling_rate(&varied)?;
            let q_c_approx = analysis::approx_cooling_rate(&varied);
            ds.push_row(vec![
                label.as_str().into(),
                delta21.into(),
                q_c.into(),
                q_c_approx.into(),
            ]);
        }
    }
    Ok(ds)
}

fn fig5(n: usize) -> Result<Dataset> {
    let mut ds = Dataset::new(&["curve", "delta21", "qdot_c", "cop_work"]);
    base_parameters(&mut ds, FigureId::Fig5, &fig5_scenario(0.001), n);
    ds.parameter("curves.lambda_e", "0, 0.001 (toolkit defaults)");

    for lambda_e in [0.0, 0.001] {
        let label = curve_label("lambda_e", lambda_e);
        let base = fig5_scenario(lambda_e);
        let window = analysis::cooling_window(&base)?;
        let sweep = analysis::sweep(
            &base,
            SweepVariable::Delta21,
            &open_linear_grid(window.delta21_max, n),
        );
        for (delta21, point) in sweep.grid.iter().zip(sweep.points.iter()) {
            let report = point.as_ref().map_err(|e| Error::domain(e.to_string()))?;
            ds.push_row(vec![
                label.as_str().into(),
                (*delta21).into(),
                report.q_c.into(),
                report.cop_work.into(),
            ]);
        }
    }
    Ok(ds)
}

fn fig6(n: usize) -> Result<Dataset> {
    let mut ds = Dataset::new(&["curve", "delta21", "entropy_rate", "qdot_c"]);
    base_parameters(&mut ds, FigureId::Fig6, &fig5_scenario(0.001), n);
    ds.parameter("curves.lambda_e", "0, 0.001 (toolkit defaults)");

    for lambda_e in [0.0, 0.001] {
        let label = curve_label("lambda_e", lambda_e);
        let base = fig5_scenario(lambda_e);
        let window = analysis::cooling_window(&base)?;
        for delta21 in open_linear_grid(window.delta21_max, n) {
            let report = thermo::report(&base.with_delta21(delta21)?)?;
            ds.push_row(vec![
                label.as_str().into(),
                delta21.into(),
                report.s_dot.into(),
                report.q_c.into(),
            ]);
        }
    }
    Ok(ds)
}

fn fig7(n: usize) -> Result<Dataset> {
    let mut ds = Dataset::new(&["curve", "delta21", "qdot_c", "cop_absorption"]);
    base_parameters(&mut ds, FigureId::Fig7, &fig7_scenario(0.3), n);
    ds.parameter("curves.t_e", "0.25, 0.3, 0.4 (toolkit defaults)");
    ds.parameter(
        "note",
        "absorption mode: coherent drive off, cycle driven by the hot \
         environmental bath",
    );

    for t_e in [0.25, 0.3, 0.4] {
        let label = curve_label("t_e", t_e);
        let base = fig7_scenario(t_e);
        let window = analysis::cooling_window(&base)?;
        for delta21 in open_linear_grid(window.delta21_max, n) {
            let report = thermo::report(&base.with_delta21(delta21)?)?;
            ds.push_row(vec![
                label.as_str().into(),
                delta21.into(),
                report.q_c.into(),
                report.cop_absorption.into(),
            ]);
        }
    }
    Ok(ds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::Field;

    #[test]
    fn figure_names_round_trip() {
        for figure in FigureId::ALL {
            assert_eq!(figure.as_str().parse::<FigureId>().unwrap(), figure);
        }
        assert!("fig8".parse::<FigureId>().is_err());
    }

    #[test]
    fn minimum_coupling_is_nonincreasing_in_env_temperature() {
        let ds = run_figure(FigureId::Fig2, 16).unwrap();
        let mut per_curve: std::collections::BTreeMap<String, Vec<f64>> = Default::default();
        for row in &ds.rows {
            let (Field::Text(curve), Field::Number(eps)) = (&row[0], &row[2]) else {
                panic!("unexpected row layout");
            };
            per_curve.entry(curve.clone()).or_default().push(*eps);
        }
        assert_eq!(per_curve.len(), 3);
        for (curve, values) in per_curve {
            for pair in values.windows(2) {
                assert!(
                    pair[1] <= pair[0] + 1e-12,
                    "{curve}: eps_min increased from {} to {}",
                    pair[0],
                    pair[1]
                );
            }
        }
    }

    #[test]
    fn window_study_reports_shrinking_windows() {
        let ds = run_figure(FigureId::Fig3, 12).unwrap();
        // Rows are curve-major in grid order; T_c grid ascends, so the last
        // row of each curve has the largest window.
        let edges: Vec<f64> = ds
            .rows
            .iter()
            .filter_map(|row| match (&row[0], &row[2]) {
                (Field::Text(c), Field::Number(x)) if c == "lambda_e=0.001" => Some(*x),
                _ => None,
            })
            .collect();
        assert_eq!(edges.len(), 12);
        assert!(edges.first().unwrap() < edges.last().unwrap());
        assert!(edges.first().unwrap() < &0.02);
    }

    #[test]
    fn deep_cold_study_carries_the_approximation_column() {
        let ds = run_figure(FigureId::Fig4, 64).unwrap();
        assert_eq!(
            ds.columns,
            vec!["curve", "delta21", "qdot_c", "qdot_c_approx"]
        );
        // At the maximum of the coldest curve the approximation tracks the
        // exact rate closely.
        let coldest: Vec<(f64, f64)> = ds
            .rows
            .iter()
            .filter_map(|row| match (&row[0], &row[2], &row[3]) {
                (Field::Text(c), Field::Number(q), Field::Number(a)) if c == "t_c=0.005" => {
                    Some((*q, *a))
                }
                _ => None,
            })
            .collect();
        let (q_max, approx_at_max) = coldest
            .iter()
            .copied()
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .unwrap();
        assert!(q_max > 0.0);
        assert!((approx_at_max - q_max).abs() <= 0.05 * q_max);
    }

    #[test]
    fn entropy_study_windows_differ_between_curves() {
        let ds = run_figure(FigureId::Fig6, 16).unwrap();
        let edge_of = |label: &str| -> f64 {
            ds.rows
                .iter()
                .filter_map(|row| match (&row[0], &row[1]) {
                    (Field::Text(c), Field::Number(d)) if c == label => Some(*d),
                    _ => None,
                })
                .fold(0.0, f64::max)
        };
        let without = edge_of("lambda_e=0");
        let with = edge_of("lambda_e=0.001");
        assert!(with > 0.0 && without > 0.0);
        assert!(with < without - 1e-6, "with {with} vs without {without}");
        // Entropy production stays non-negative along both curves.
        for row in &ds.rows {
            if let Field::Number(s_dot) = row[2] {
                assert!(s_dot >= -1e-12);
            }
        }
    }

    #[test]
    fn absorption_study_respects_the_reversible_ceiling() {
        let ds = run_figure(FigureId::Fig7, 24).unwrap();
        let limits = [
            (
                "t_e=0.25",
                (1.0 / 0.2 - 1.0 / 0.25) / (1.0 / 0.1 - 1.0 / 0.2),
            ),
            ("t_e=0.3", (1.0 / 0.2 - 1.0 / 0.3) / (1.0 / 0.1 - 1.0 / 0.2)),
            ("t_e=0.4", (1.0 / 0.2 - 1.0 / 0.4) / (1.0 / 0.1 - 1.0 / 0.2)),
        ];
        let mut seen = 0;
        for row in &ds.rows {
            let Field::Text(curve) = &row[0] else {
                panic!()
            };
            let limit = limits
                .iter()
                .find(|(label, _)| label == curve)
                .map(|(_, l)| *l)
                .unwrap();
            if let Field::Number(cop) = row[3] {
                assert!(cop <= limit + 1e-9, "{curve}: cop {cop} above {limit}");
                seen += 1;
            }
        }
        assert!(
            seen > 30,
            "expected mostly present absorption COPs, saw {seen}"
        );
    }

    #[test]
    fn characteristic_curve_reports_cop_and_cooling() {
        let ds = run_figure(FigureId::Fig5, 32).unwrap();
        assert_eq!(ds.columns, vec!["curve", "delta21", "qdot_c", "cop_work"]);
        assert_eq!(ds.rows.len(), 64);
        // Interior rows of the dissipative curve must report a COP.
        let with_env: Vec<&Vec<Field>> = ds
            .rows
            .iter()
            .filter(|row| matches!(&row[0], Field::Text(c) if c == "lambda_e=0.001"))
            .collect();
        assert!(matches!(with_env[10][3], Field::Number(_)));
    }
}
