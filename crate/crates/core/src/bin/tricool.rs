//! Command-line front end: scenario solves, sweeps, optimizations and the
//! canned figure datasets.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use tricool::analysis::{self, SweepVariable};
use tricool::config;
use tricool::dynamics::{self, DensityState, IntegrationSettings};
use tricool::error::Error;
use tricool::figures::{self, FigureId};
use tricool::model::Scenario;
use tricool::output::{format_number, Dataset, Field, OutputFormat};
use tricool::steady_state::{build_generator, closed_form_coefficients, steady_state_closed_form};
use tricool::thermo;

#[derive(Parser)]
#[command(
    name = "tricool",
    version,
    about = "Driven three-level quantum cooling cycle: solves, sweeps and datasets",
    after_help = "Exit codes: 0 success, 1 usage or configuration error, \
                  2 domain error (empty window, non-convergence), 3 I/O error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output path; stdout when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (csv or json). Scalar reports print plain text when
    /// omitted; datasets default to csv.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Stationary populations and coherence of a scenario.
    Steady {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Power, heat flows, entropy production and COPs of a scenario.
    Flows {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep one variable over a linear grid, reporting the full
    /// thermodynamics per point.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Variable to sweep: delta21, epsilon, t_c, t_e or lambda_e.
        #[arg(long)]
        var: String,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Locate the cooling window over delta21.
    Window {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximize the cooling rate over delta21 inside the window.
    Optimize {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit the low-temperature scaling exponent of the maximum cooling rate.
    Scaling {
        #[arg(long)]
        config: PathBuf,
        /// Lowest cold-bath temperature of the log-spaced grid.
        #[arg(long, default_value_t = 1e-4)]
        from: f64,
        /// Highest cold-bath temperature of the log-spaced grid.
        #[arg(long, default_value_t = 1e-2)]
        to: f64,
        /// Number of grid points (log-spaced).
        #[arg(long, default_value_t = 17)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Integrate the master equation from the ground state to the steady
    /// state and sample the trajectory.
    Evolve {
        #[arg(long)]
        config: PathBuf,
        /// Number of trajectory samples.
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Steady-state threshold on the derivative norm.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit a canned parameter-study dataset (fig2 … fig7).
    Figure {
        /// One of fig2, fig3, fig4, fig5, fig6, fig7.
        name: String,
        /// Grid points per curve.
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        let code = match e {
            Error::InvalidScenario { .. } | Error::Config { .. } => 1,
            Error::Domain(_) => 2,
            Error::Io(_) => 3,
        };
        std::process::exit(code);
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Steady { config, output } => steady(&config, &output),
        Command::Flows { config, output } => flows(&config, &output),
        Command::Sweep {
            config,
            var,
            from,
            to,
            grid,
            output,
        } => sweep(&config, &var, from, to, grid, &output),
        Command::Window { config, output } => window(&config, &output),
        Command::Optimize { config, output } => optimize(&config, &output),
        Command::Scaling {
            config,
            from,
            to,
            grid,
            output,
        } => scaling(&config, from, to, grid, &output),
        Command::Evolve {
            config,
            grid,
            tol,
            output,
        } => evolve(&config, grid, tol, &output),
        Command::Figure { name, grid, output } => figure(&name, grid, &output),
    }
}

fn parse_format(output: &OutputArgs) -> Result<Option<OutputFormat>, Error> {
    output.format.as_deref().map(str::parse).transpose()
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) if path.as_os_str() != "-" => std::fs::write(path, text).map_err(|e| {
            Error::Io(std::io::Error::new(
                e.kind(),
                format!("{}: {e}", path.display()),
            ))
        }),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Scalar report: plain `key = value` text by default, a one-row dataset
/// when a format is requested.
fn emit_report(
    scenario: Option<&Scenario>,
    command: &str,
    fields: &[(&str, Field)],
    output: &OutputArgs,
) -> Result<(), Error> {
    let rendered = match parse_format(output)? {
        None => {
            let mut text = String::new();
            for (key, field) in fields {
                let value = match field {
                    Field::Number(x) => format_number(*x),
                    Field::Text(s) => s.clone(),
                    Field::Absent => "absent".to_owned(),
                };
                text.push_str(&format!("{key} = {value}\n"));
            }
            text
        }
        Some(format) => {
            let columns: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let mut ds = Dataset::new(&columns);
            ds.parameter("command", command);
            if let Some(scenario) = scenario {
                ds.parameters_from(config::parameter_list(scenario));
            }
            ds.push_row(fields.iter().map(|(_, f)| f.clone()).collect());
            ds.render(format)
        }
    };
    emit(&rendered, &output.out)
}

fn steady(path: &PathBuf, output: &OutputArgs) -> Result<(), Error> {
    let scenario = config::parse_file(path)?;
    let rates = scenario.rates();
    let ss = steady_state_closed_form(&closed_form_coefficients(&rates), &rates)?;
    emit_report(
        Some(&scenario),
        "steady",
        &[
            ("p11", ss.p11.into()),
            ("p22", ss.p22.into()),
            ("p33", ss.p33.into()),
            ("re_p32", ss.p32.re.into()),
            ("im_p32", ss.p32.im.into()),
        ],
        output,
    )
}

fn flows(path: &PathBuf, output: &OutputArgs) -> Result<(), Error> {
    let scenario = config::parse_file(path)?;
    let report = thermo::report(&scenario)?;
    emit_report(
        Some(&scenario),
        "flows",
        &[
            ("wdot", report.w_dot.into()),
            ("qdot_h", report.q_h.into()),
            ("qdot_c", report.q_c.into()),
            ("qdot_e", report.q_e.into()),
            ("entropy_rate", report.s_dot.into()),
            ("first_law_residual", report.first_law_residual.into()),
            ("cop_work", report.cop_work.into()),
            ("cop_absorption", report.cop_absorption.into()),
        ],
        output,
    )
}

fn sweep(
    path: &PathBuf,
    var: &str,
    from: f64,
    to: f64,
    grid_n: usize,
    output: &OutputArgs,
) -> Result<(), Error> {
    if grid_n < 2 || !(from.is_finite() && to.is_finite()) || to <= from {
        return Err(Error::domain(
            "sweep needs finite --from < --to and --grid of at least 2",
        ));
    }
    let scenario = config::parse_file(path)?;
    let variable: SweepVariable = var.parse()?;
    let grid: Vec<f64> = (0..grid_n)
        .map(|i| from + (to - from) * i as f64 / (grid_n - 1) as f64)
        .collect();
    let result = analysis::sweep(&scenario, variable, &grid);

    let mut ds = Dataset::new(&[
        variable.as_str(),
        "qdot_c",
        "qdot_h",
        "qdot_e",
        "wdot",
        "cop_work",
        "cop_absorption",
        "entropy_rate",
        "curve",
    ]);
    ds.parameter("command", format!("sweep {}", variable.as_str()));
    ds.parameter("from", from);
    ds.parameter("to", to);
    ds.parameter("grid", grid_n);
    ds.parameters_from(config::parameter_list(&scenario));

    for (value, point) in result.grid.iter().zip(result.points.iter()) {
        match point {
            Ok(r) => ds.push_row(vec![
                (*value).into(),
                r.q_c.into(),
                r.q_h.into(),
                r.q_e.into(),
                r.w_dot.into(),
                r.cop_work.into(),
                r.cop_absorption.into(),
                r.s_dot.into(),
                "sweep".into(),
            ]),
            Err(e) => {
                eprintln!("warning: {} = {value}: {e}", variable.as_str());
                ds.push_row(vec![
                    (*value).into(),
                    Field::Absent,
                    Field::Absent,
                    Field::Absent,
                    Field::Absent,
                    Field::Absent,
                    Field::Absent,
                    Field::Absent,
                    "sweep".into(),
                ]);
            }
        }
    }
    let format = parse_format(output)?.unwrap_or(OutputFormat::Csv);
    emit(&ds.render(format), &output.out)
}

fn window(path: &PathBuf, output: &OutputArgs) -> Result<(), Error> {
    let scenario = config::parse_file(path)?;
    let window = analysis::cooling_window(&scenario)?;
    emit_report(
        Some(&scenario),
        "window",
        &[
            ("delta21_min", window.delta21_min.into()),
            ("delta21_max", window.delta21_max.into()),
            ("nonempty", window.nonempty.to_string().into()),
        ],
        output,
    )
}

fn optimize(path: &PathBuf, output: &OutputArgs) -> Result<(), Error> {
    let scenario = config::parse_file(path)?;
    let optimum = analysis::maximize_cooling_rate(&scenario)?;
    emit_report(
        Some(&scenario),
        "optimize",
        &[
            ("delta21_star", optimum.delta21_star.into()),
            ("qdot_c_max", optimum.q_c_max.into()),
        ],
        output,
    )
}

fn scaling(
    path: &PathBuf,
    from: f64,
    to: f64,
    grid_n: usize,
    output: &OutputArgs,
) -> Result<(), Error> {
    if grid_n < 3 || !(from > 0.0 && to > from) {
        return Err(Error::domain(
            "scaling needs 0 < --from < --to and --grid of at least 3",
        ));
    }
    let scenario = config::parse_file(path)?;
    let t_grid = analysis::log_grid(from, to, grid_n);
    let fit = analysis::scaling_exponent(&scenario, &t_grid)?;

    match parse_format(output)? {
        None => {
            let mut text = format!(
                "alpha = {}\nr_squared = {}\n",
                format_number(fit.alpha),
                format_number(fit.r_squared)
            );
            for (t_c, q_max) in &fit.grid {
                text.push_str(&format!(
                    "t_c = {}  qdot_c_max = {}\n",
                    format_number(*t_c),
                    format_number(*q_max)
                ));
            }
            emit(&text, &output.out)
        }
        Some(format) => {
            let mut ds = Dataset::new(&["t_c", "qdot_c_max"]);
            ds.parameter("command", "scaling");
            ds.parameter("alpha", format_number(fit.alpha));
            ds.parameter("r_squared", format_number(fit.r_squared));
            ds.parameters_from(config::parameter_list(&scenario));
            for (t_c, q_max) in &fit.grid {
                ds.push_row(vec![(*t_c).into(), (*q_max).into()]);
            }
            emit(&ds.render(format), &output.out)
        }
    }
}

fn evolve(
    path: &PathBuf,
    grid_n: usize,
    tol: Option<f64>,
    output: &OutputArgs,
) -> Result<(), Error> {
    if grid_n < 2 {
        return Err(Error::domain("evolve needs --grid of at least 2"));
    }
    let scenario = config::parse_file(path)?;
    let rates = scenario.rates();
    let generator = build_generator(&rates);
    let mut settings = IntegrationSettings::for_generator(&generator);
    if let Some(tol) = tol {
        settings.steady_tol = tol;
    }

    let start = DensityState::ground();
    let (settled, elapsed, residual) = dynamics::evolve_to_steady(&generator, &start, &settings)?;
    let algebraic = steady_state_closed_form(&closed_form_coefficients(&rates), &rates)?;
    let target = algebraic.rotating_frame_vector();
    let deviation = settled
        .vector()
        .iter()
        .zip(target.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let t_grid: Vec<f64> = (0..grid_n)
        .map(|i| elapsed * i as f64 / (grid_n - 1) as f64)
        .collect();
    let samples = dynamics::trajectory(&generator, &start, &t_grid, &settings)?;

    let mut ds = Dataset::new(&["time", "rho11", "rho22", "rho33", "re_coh", "im_coh"]);
    ds.parameter("command", "evolve");
    ds.parameter("initial_state", "ground");
    ds.parameter("elapsed", format_number(elapsed));
    ds.parameter("residual", format_number(residual));
    ds.parameter("deviation_from_closed_form", format_number(deviation));
    ds.parameters_from(config::parameter_list(&scenario));
    for s in &samples {
        ds.push_row(vec![
            s.time.into(),
            s.rho11.into(),
            s.rho22.into(),
            s.rho33.into(),
            s.re_coh.into(),
            s.im_coh.into(),
        ]);
    }
    let format = parse_format(output)?.unwrap_or(OutputFormat::Csv);
    emit(&ds.render(format), &output.out)
}

fn figure(name: &str, grid_n: usize, output: &OutputArgs) -> Result<(), Error> {
    let id: FigureId = name.parse()?;
    let ds = figures::run_figure(id, grid_n)?;
    let format = parse_format(output)?.unwrap_or(OutputFormat::Csv);
    emit(&ds.render(format), &output.out)
}
