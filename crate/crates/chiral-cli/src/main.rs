//! Command line for the chiral oscillator engine.
//!
//! Subcommands: `simulate` any of the four Hamiltonian formulations,
//! `reduce` a full trajectory to the dual oscillator algebra,
//! `reconstruct` a configuration curve from a reduced run, `verify` the
//! algebraic and dynamical check suites, `plot` static SVG diagnostics,
//! and `sweep` a batch of chirality values concurrently.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or config
//! error, 3 numeric failure.

mod config;
mod io;
mod report;
mod svg;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chiral_core::dynamics::{
    conservation_summary, integrate, project_full_to_reduced, reconstruct, regularity_warnings,
    ConfigCurve, Formulation, InvariantTriple, Trajectory,
};
use chiral_core::state::{FULL_COORDS, REDUCED_COORDS};
use chiral_core::verify::{run_suite, Suite};
use chiral_core::{Error as CoreError, Params, Vec2};

use config::{OutputFormat, OutputSpec, RunConfig};

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    fn checks(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParams(_) | CoreError::DimensionMismatch { .. } => {
                Self::usage(e.to_string())
            }
            _ => Self::numeric(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "chiral", version, about = "Geometric mechanics of the planar chiral oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one formulation and write the trajectory.
    Simulate(SimArgs),
    /// Project a full-space trajectory onto the dual oscillator algebra.
    Reduce(ReduceArgs),
    /// Rebuild the configuration curve from a reduced trajectory.
    Reconstruct(ReconstructArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Render a static SVG diagnostic from a trajectory file.
    Plot(PlotArgs),
    /// Simulate a list of chirality values concurrently.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct SimArgs {
    /// Formulation: canonical-dirac, dirac-canonical, darboux, reduced.
    #[arg(long)]
    formulation: Option<String>,
    /// Chirality coefficient.
    #[arg(long)]
    lambda: Option<f64>,
    /// Mass.
    #[arg(long)]
    mass: Option<f64>,
    /// Initial state, comma separated, in the formulation's coordinate
    /// order (8 reals for the full formulations).
    #[arg(long)]
    z0: Option<String>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    /// Integrator: rk4 or implicit-midpoint.
    #[arg(long)]
    method: Option<String>,
    /// Output path; format from the extension (.csv or .json).
    #[arg(long)]
    out: Option<String>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct ReduceArgs {
    /// Full-space trajectory CSV.
    #[arg(long)]
    input: String,
    /// Invariant triple: canonical or dirac.
    #[arg(long, value_enum, default_value_t = TripleArg::Dirac)]
    triple: TripleArg,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long)]
    out: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum TripleArg {
    Canonical,
    Dirac,
}

#[derive(Args)]
struct ReconstructArgs {
    /// Reduced trajectory CSV.
    #[arg(long)]
    input: String,
    /// Conserved linear momenta, as `p0x,p0y`; |p0|^2 must match the
    /// trajectory's l^2 column.
    #[arg(long)]
    p0: String,
    /// Anchor position at t = 0, as `x,y`.
    #[arg(long, default_value = "0,0")]
    x0: String,
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: algebra, brackets, hamiltonians, dynamics, reduction, all.
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Suppress the JSON lines and print only the summary table.
    #[arg(long)]
    table_only: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotKind {
    /// Configuration-space curve y against x.
    #[value(name = "xy-curve", alias = "xy_curve")]
    XyCurve,
    /// Coadjoint orbit trace in the (J_X, J_Y) plane.
    #[value(name = "orbit-jxjy", alias = "orbit_JXJY", alias = "orbit_jxjy")]
    OrbitJxJy,
    /// Paraboloid residual along a reduced trajectory (log scale).
    #[value(name = "paraboloid-residual", alias = "paraboloid_residual")]
    ParaboloidResidual,
    /// Conserved-quantity drift along any trajectory (log scale).
    #[value(name = "invariant-drift", alias = "invariant_drift")]
    InvariantDrift,
}

#[derive(Args)]
struct PlotArgs {
    /// Trajectory CSV produced by simulate, reduce, or reconstruct.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum)]
    kind: PlotKind,
    #[arg(long)]
    out: String,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated chirality values, one run per value.
    #[arg(long)]
    lambdas: String,
    #[command(flatten)]
    sim: SimArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Reduce(args) => cmd_reduce(&args),
        Command::Reconstruct(args) => cmd_reconstruct(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Plot(args) => cmd_plot(&args),
        Command::Sweep(args) => cmd_sweep(&args),
    }
}

fn parse_reals(field: &str, text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| CliError::usage(format!("{field}: bad number {s:?}: {e}")))
        })
        .collect()
}

fn parse_vec2(field: &str, text: &str) -> Result<Vec2, CliError> {
    let v = parse_reals(field, text)?;
    if v.len() != 2 {
        return Err(CliError::usage(format!(
            "{field}: expected 2 comma-separated reals, got {}",
            v.len()
        )));
    }
    Ok(Vec2::new(v[0], v[1]))
}

fn assemble_config(args: &SimArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig {
            formulation: String::new(),
            lambda: 1.0,
            mass: 1.0,
            initial: Vec::new(),
            dt: 1e-3,
            t_end: 10.0,
            method: "rk4".into(),
            outputs: Vec::new(),
        },
    };
    if let Some(f) = &args.formulation {
        cfg.formulation = f.clone();
    }
    if cfg.formulation.is_empty() {
        return Err(CliError::usage(
            "formulation: missing (flag --formulation or config field)",
        ));
    }
    if let Some(l) = args.lambda {
        cfg.lambda = l;
    }
    if let Some(m) = args.mass {
        cfg.mass = m;
    }
    if let Some(z0) = &args.z0 {
        cfg.initial = parse_reals("initial", z0)?;
    }
    if cfg.initial.is_empty() {
        return Err(CliError::usage("initial: missing (flag --z0 or config field)"));
    }
    if let Some(dt) = args.dt {
        cfg.dt = dt;
    }
    if let Some(t) = args.t_end {
        cfg.t_end = t;
    }
    if let Some(m) = &args.method {
        cfg.method = m.clone();
    }
    if let Some(out) = &args.out {
        let format = if out.ends_with(".json") {
            OutputFormat::Json
        } else {
            OutputFormat::Csv
        };
        cfg.outputs.push(OutputSpec {
            path: out.clone(),
            format,
        });
    }
    Ok(cfg)
}

fn run_simulation(cfg: &RunConfig) -> Result<Trajectory, CliError> {
    let run = cfg.resolve()?;
    if run.formulation.dim() == 8 {
        let mut arr = [0.0; 8];
        arr.copy_from_slice(&run.initial);
        for warning in regularity_warnings(&chiral_core::FullState::unflatten(&arr)) {
            eprintln!("warning: {warning}");
        }
    }
    integrate(
        run.formulation,
        &run.initial,
        &run.params,
        run.dt,
        run.t_end,
        run.method,
    )
    .map_err(CliError::from_core)
}

fn print_summary(traj: &Trajectory) -> Result<(), CliError> {
    let s = conservation_summary(traj).map_err(CliError::from_core)?;
    println!(
        "conservation summary ({} samples, t in [0, {:.6}]):",
        traj.times.len(),
        traj.times.last().copied().unwrap_or(0.0)
    );
    println!("  |dH|       = {:.3e}", s.dh);
    if let Some(v) = s.dmu {
        println!("  |dmu|      = {v:.3e}");
    }
    if let Some(v) = s.dp0 {
        println!("  |dp0|      = {v:.3e}");
    }
    if let Some(v) = s.max_phi {
        println!("  max|phi|   = {v:.3e}");
    }
    if let Some(v) = s.dlsq {
        println!("  |dl^2|     = {v:.3e}");
    }
    if let Some(v) = s.max_paraboloid {
        println!("  paraboloid = {v:.3e}");
    }
    if let Some(v) = s.dcylinder {
        println!("  |dC_cyl|   = {v:.3e}");
    }
    Ok(())
}

fn write_outputs(traj: &Trajectory, outputs: &[OutputSpec]) -> Result<(), CliError> {
    for spec in outputs {
        match spec.format {
            OutputFormat::Csv => io::write_trajectory_csv(&spec.path, traj)?,
            OutputFormat::Json => io::write_file(&spec.path, io::trajectory_json(traj).as_bytes())?,
        }
        println!("wrote {}", spec.path);
    }
    Ok(())
}

fn cmd_simulate(args: &SimArgs) -> Result<(), CliError> {
    let cfg = assemble_config(args)?;
    let traj = run_simulation(&cfg)?;
    write_outputs(&traj, &cfg.outputs)?;
    print_summary(&traj)
}

fn table_to_trajectory(
    table: &io::TableData,
    expected: &[&str],
    formulation: Formulation,
    params: Params,
    path: &str,
) -> Result<Trajectory, CliError> {
    if table.columns != expected {
        return Err(CliError::usage(format!(
            "input: {path} columns {:?} do not match the expected chart {:?}",
            table.columns, expected
        )));
    }
    Ok(Trajectory {
        times: table.times.clone(),
        states: table.states.clone(),
        formulation,
        params,
    })
}

fn cmd_reduce(args: &ReduceArgs) -> Result<(), CliError> {
    let params = Params::new(args.lambda, args.mass).map_err(CliError::from_core)?;
    let table = io::read_trajectory_csv(&args.input)?;
    let traj = table_to_trajectory(
        &table,
        &FULL_COORDS,
        Formulation::DiracBracketCanonicalH,
        params,
        &args.input,
    )?;
    let triple = match args.triple {
        TripleArg::Canonical => InvariantTriple::Canonical,
        TripleArg::Dirac => InvariantTriple::Dirac,
    };
    let reduced = project_full_to_reduced(&traj, triple, &params).map_err(CliError::from_core)?;
    io::write_trajectory_csv(&args.out, &reduced)?;
    println!("wrote {}", args.out);
    print_summary(&reduced)
}

fn cmd_reconstruct(args: &ReconstructArgs) -> Result<(), CliError> {
    let p0 = parse_vec2("p0", &args.p0)?;
    let x0 = parse_vec2("x0", &args.x0)?;
    let table = io::read_trajectory_csv(&args.input)?;
    let traj = table_to_trajectory(
        &table,
        &REDUCED_COORDS,
        Formulation::ReducedLiePoisson,
        Params::default(),
        &args.input,
    )?;
    let curve = reconstruct(&traj, p0, x0).map_err(CliError::from_core)?;
    io::write_file(&args.out, config_curve_csv(&curve).as_bytes())?;
    println!("wrote {} ({} samples)", args.out, curve.times.len());
    Ok(())
}

fn config_curve_csv(curve: &ConfigCurve) -> String {
    let states: Vec<Vec<f64>> = curve
        .positions
        .iter()
        .zip(&curve.velocities)
        .map(|(p, v)| vec![p.x, p.y, v.x, v.y])
        .collect();
    io::trajectory_csv(&["x", "y", "xdot", "ydot"], &curve.times, &states)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let suite = Suite::from_name(&args.suite)
        .ok_or_else(|| CliError::usage(format!("suite: unknown suite {:?}", args.suite)))?;
    let params = Params::new(args.lambda, args.mass).map_err(CliError::from_core)?;
    let results = run_suite(suite, args.seed, &params);
    if !args.table_only {
        for r in &results {
            println!("{}", report::json_line(r));
        }
    }
    print!("{}", report::summary_table(&results));
    let unexpected: Vec<&str> = results
        .iter()
        .filter(|r| !r.as_expected())
        .map(|r| r.name.as_str())
        .collect();
    if unexpected.is_empty() {
        Ok(())
    } else {
        Err(CliError::checks(format!(
            "verification failed: {}",
            unexpected.join(", ")
        )))
    }
}

fn cmd_plot(args: &PlotArgs) -> Result<(), CliError> {
    let params = Params::new(args.lambda, args.mass).map_err(CliError::from_core)?;
    let table = io::read_trajectory_csv(&args.input)?;
    let plot = match args.kind {
        PlotKind::XyCurve => plot_xy(&table, &args.input)?,
        PlotKind::OrbitJxJy => plot_orbit(&table, &args.input)?,
        PlotKind::ParaboloidResidual => plot_paraboloid(&table, &params, &args.input)?,
        PlotKind::InvariantDrift => plot_drift(&table, &params, &args.input)?,
    };
    io::write_file(&args.out, plot.render().as_bytes())?;
    println!("wrote {}", args.out);
    Ok(())
}

fn need_columns(table: &io::TableData, names: &[&str], path: &str) -> Result<Vec<usize>, CliError> {
    names
        .iter()
        .map(|n| {
            table.column(n).ok_or_else(|| {
                CliError::usage(format!("input: {path} is missing column {n:?}"))
            })
        })
        .collect()
}

fn plot_xy(table: &io::TableData, path: &str) -> Result<svg::Plot, CliError> {
    let idx = need_columns(table, &["x", "y"], path)?;
    let pts: Vec<(f64, f64)> = table
        .states
        .iter()
        .map(|s| (s[idx[0]], s[idx[1]]))
        .collect();
    Ok(svg::Plot {
        title: "configuration-space curve".into(),
        x_label: "x".into(),
        y_label: "y".into(),
        series: vec![svg::Series {
            label: "trajectory".into(),
            points: svg::collapse_if_degenerate(&pts, 1e-12),
            color: svg::color(0),
        }],
        guides: vec![],
        log_y: false,
    })
}

fn plot_orbit(table: &io::TableData, path: &str) -> Result<svg::Plot, CliError> {
    let idx = need_columns(table, &["jx", "jy"], path)?;
    let pts: Vec<(f64, f64)> = table
        .states
        .iter()
        .map(|s| (s[idx[0]], s[idx[1]]))
        .collect();
    Ok(svg::Plot {
        title: "coadjoint orbit trace".into(),
        x_label: "J_X".into(),
        y_label: "J_Y".into(),
        series: vec![svg::Series {
            label: "orbit".into(),
            points: svg::collapse_if_degenerate(&pts, 1e-12),
            color: svg::color(1),
        }],
        guides: vec![],
        log_y: false,
    })
}

fn plot_paraboloid(
    table: &io::TableData,
    params: &Params,
    path: &str,
) -> Result<svg::Plot, CliError> {
    let idx = need_columns(table, &["jr", "jx", "jy", "lsq"], path)?;
    let pts: Vec<(f64, f64)> = table
        .times
        .iter()
        .zip(&table.states)
        .map(|(t, s)| {
            let r = chiral_core::hamiltonians::paraboloid(
                &chiral_core::ReducedState::new(s[idx[0]], s[idx[1]], s[idx[2]], s[idx[3]]),
                params,
            );
            (*t, r.abs())
        })
        .collect();
    Ok(svg::Plot {
        title: "paraboloid residual".into(),
        x_label: "t".into(),
        y_label: "|J_X^2 + J_Y^2 + (2 l^2/lambda) J_R|".into(),
        series: vec![svg::Series {
            label: "residual".into(),
            points: pts,
            color: svg::color(2),
        }],
        guides: vec![(1e-8, "tolerance 1e-8".into())],
        log_y: true,
    })
}

fn plot_drift(table: &io::TableData, params: &Params, path: &str) -> Result<svg::Plot, CliError> {
    let is_full = table.columns == FULL_COORDS;
    let is_reduced = table.columns == REDUCED_COORDS;
    if !is_full && !is_reduced {
        return Err(CliError::usage(format!(
            "input: {path} must be a full or reduced trajectory for invariant-drift"
        )));
    }
    let mut series = Vec::new();
    if is_full {
        let h0 = full_h_dirac(&table.states[0], params);
        let mu0 = full_mu(&table.states[0]);
        let drift = |f: &dyn Fn(&[f64]) -> f64, v0: f64| -> Vec<(f64, f64)> {
            table
                .times
                .iter()
                .zip(&table.states)
                .map(|(t, s)| (*t, (f(s) - v0).abs()))
                .collect()
        };
        series.push(svg::Series {
            label: "|dH|".into(),
            points: drift(&|s| full_h_dirac(s, params), h0),
            color: svg::color(0),
        });
        series.push(svg::Series {
            label: "|dmu|".into(),
            points: drift(&full_mu, mu0),
            color: svg::color(1),
        });
        series.push(svg::Series {
            label: "max|phi|".into(),
            points: table
                .times
                .iter()
                .zip(&table.states)
                .map(|(t, s)| {
                    let phi = chiral_core::dynamics::full_state_from_slice(s)
                        .constraint_values(params.lambda);
                    (*t, phi.x.abs().max(phi.y.abs()))
                })
                .collect(),
            color: svg::color(2),
        });
    } else {
        let c0 = reduced_cylinder(&table.states[0], params);
        series.push(svg::Series {
            label: "|dC_cyl|".into(),
            points: table
                .times
                .iter()
                .zip(&table.states)
                .map(|(t, s)| (*t, (reduced_cylinder(s, params) - c0).abs()))
                .collect(),
            color: svg::color(0),
        });
        series.push(svg::Series {
            label: "|paraboloid|".into(),
            points: table
                .times
                .iter()
                .zip(&table.states)
                .map(|(t, s)| {
                    let r = chiral_core::hamiltonians::paraboloid(
                        &chiral_core::ReducedState::new(s[0], s[1], s[2], s[3]),
                        params,
                    );
                    (*t, r.abs())
                })
                .collect(),
            color: svg::color(1),
        });
    }
    Ok(svg::Plot {
        title: "invariant drift".into(),
        x_label: "t".into(),
        y_label: "absolute drift".into(),
        series,
        guides: vec![(1e-8, "tolerance 1e-8".into())],
        log_y: true,
    })
}

fn full_h_dirac(s: &[f64], params: &Params) -> f64 {
    chiral_core::hamiltonians::h_dirac(&chiral_core::dynamics::full_state_from_slice(s), params)
}

fn full_mu(s: &[f64]) -> f64 {
    chiral_core::symmetry::momentum_map_full(&chiral_core::dynamics::full_state_from_slice(s))[0]
}

fn reduced_cylinder(s: &[f64], params: &Params) -> f64 {
    chiral_core::hamiltonians::casimir_cylinder(
        &chiral_core::ReducedState::new(s[0], s[1], s[2], s[3]),
        params,
    )
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let lambdas = parse_reals("lambdas", &args.lambdas)?;
    if lambdas.is_empty() {
        return Err(CliError::usage("lambdas: empty list"));
    }
    let base = assemble_config(&args.sim)?;
    let out = args
        .sim
        .out
        .clone()
        .ok_or_else(|| CliError::usage("out: sweep needs --out as a filename stem"))?;
    let (stem, ext) = match out.rsplit_once('.') {
        Some((s, e)) => (s.to_string(), format!(".{e}")),
        None => (out.clone(), ".csv".to_string()),
    };
    // validate everything up front so worker threads cannot hit usage errors
    let mut jobs = Vec::new();
    for lambda in &lambdas {
        let mut cfg = base.clone();
        cfg.lambda = *lambda;
        cfg.outputs = vec![OutputSpec {
            path: format!("{stem}_lambda_{lambda}{ext}"),
            format: if ext == ".json" {
                OutputFormat::Json
            } else {
                OutputFormat::Csv
            },
        }];
        cfg.resolve()?;
        jobs.push(cfg);
    }
    let results: Vec<Result<String, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|cfg| {
                scope.spawn(move || {
                    let traj = run_simulation(cfg)?;
                    let spec = &cfg.outputs[0];
                    match spec.format {
                        OutputFormat::Csv => io::write_trajectory_csv(&spec.path, &traj)?,
                        OutputFormat::Json => {
                            io::write_file(&spec.path, io::trajectory_json(&traj).as_bytes())?
                        }
                    }
                    Ok(spec.path.clone())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    for r in results {
        println!("wrote {}", r?);
    }
    Ok(())
}
