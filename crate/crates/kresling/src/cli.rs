//! Command-line front end. Subcommands: `analyze` (single-module summary),
//! `sweep` (closed-form design grids), `curve` (equilibrium pressure–angle),
//! `torque` (torque/rigidity over operating length), `chain` (stack pose),
//! `fit-material` (Yeoh fit), `compare` (published-actuator table), `check`
//! (internal cross-check suite). Every command emits comma-delimited text
//! with one header row, optionally preceded by `# key: value` metadata
//! lines, and identical inputs produce byte-identical output.

pub mod config;
mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::angle::Angle;
use crate::geometry::GeometryError;
use crate::kinematics::{self, HeightModel, KinematicsError, SweepQuantity};
use crate::materials::{self, MaterialsError, StressStrainCurve};
use crate::oracles;
use crate::quasistatics::{self, QuasistaticsError};
use config::{ConfigError, ResolvedConfig};
use report::{Report, fixed, sci};

#[derive(Debug, Error)]
pub(crate) enum CliError {
    #[error("bad grid axis {text:?}: expected start:stop:count with finite bounds and count ≥ 1")]
    BadGrid { text: String },
    #[error("--grid needs exactly {want} comma-separated axes ({description}), got {got}")]
    GridAxisCount {
        want: usize,
        description: &'static str,
        got: usize,
    },
    #[error("--theta-deg needs one value or one per module ({modules}), got {got}")]
    ThetaCount { modules: usize, got: usize },
    #[error("give exactly one of --theta-deg or --pressure")]
    ChainInputChoice,
    #[error("give exactly one of --material or --data")]
    FitInputChoice,
    #[error("report has no rows")]
    EmptyReport,
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Materials(#[from] MaterialsError),
    #[error(transparent)]
    Quasistatics(#[from] QuasistaticsError),
}

#[derive(Debug, Parser)]
#[command(
    name = "kresling",
    version,
    about = "Kresling twisting-actuator design toolkit"
)]
struct Cli {
    /// Config file with patterns/actuators/materials; defaults to the bundled set.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Omit the `# key: value` metadata lines.
    #[arg(long, global = true)]
    no_meta: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Single-module kinematics summary for one actuator.
    Analyze {
        /// Actuator name from the config.
        #[arg(long)]
        actuator: String,
    },
    /// Closed-form rotation angles over a (delta0, b/a) design grid.
    Sweep {
        /// Two axes, delta0 in degrees then b/a: "start:stop:count,start:stop:count".
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Skeleton thickness ratio t_s/b; adds the skeleton-limited rotation column.
        #[arg(long)]
        skeleton_ratio: Option<f64>,
    },
    /// Equilibrium pressure–angle curve on the default branch.
    Curve {
        /// Actuator name from the config.
        #[arg(long)]
        actuator: String,
        /// Pressure axis in kPa: "start:stop:count".
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Output torque and torsional rigidity over operating length at fixed pressure.
    Torque {
        /// Actuator name from the config.
        #[arg(long)]
        actuator: String,
        /// Differential pressure in kPa.
        #[arg(long, allow_negative_numbers = true)]
        pressure: f64,
        /// Operating-length axis in mm: "start:stop:count".
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Free-end pose of a module stack from per-module angles or one shared pressure.
    #[command(group(ArgGroup::new("drive").required(true).args(["theta_deg", "pressure"])))]
    Chain {
        /// Actuator name from the config.
        #[arg(long)]
        actuator: String,
        /// Rotation magnitudes in degrees: one value for all modules, or one per module.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        theta_deg: Option<Vec<f64>>,
        /// Shared differential pressure in kPa; every module sits at its equilibrium angle.
        #[arg(long, allow_negative_numbers = true)]
        pressure: Option<f64>,
        /// Axial height model.
        #[arg(long, value_enum, default_value_t = HeightModelArg::Exact)]
        model: HeightModelArg,
    },
    /// Fit Yeoh coefficients to a uniaxial stress–stretch curve.
    #[command(group(ArgGroup::new("source").required(true).args(["material", "data"])))]
    FitMaterial {
        /// Material name from the config.
        #[arg(long)]
        material: Option<String>,
        /// Path to a lambda,stress_mpa file.
        #[arg(long, value_name = "PATH")]
        data: Option<PathBuf>,
    },
    /// Published twisting-actuator comparison table with recomputed rotation ratios.
    Compare,
    /// Run the internal cross-check suite.
    Check {
        /// Include the slow Monte-Carlo volume gauntlet.
        #[arg(long)]
        heavy: bool,
    },
}

/// `--model` choices, mapped onto [`HeightModel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HeightModelArg {
    /// Closed-form truss height.
    Exact,
    /// Linearized height profile; approximate away from 60°-max patterns.
    Linear,
}

impl From<HeightModelArg> for HeightModel {
    fn from(arg: HeightModelArg) -> Self {
        match arg {
            HeightModelArg::Exact => HeightModel::Exact,
            HeightModelArg::Linear => HeightModel::Linear,
        }
    }
}

/// Parses argv-style arguments (program name first) and runs the command;
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return report_clap_error(e),
    };
    match execute(cli.command, cli.config.as_deref()) {
        Ok((report, code)) => {
            let text = match report.render(!cli.no_meta) {
                Ok(text) => text,
                Err(e) => return report_runtime_error(e),
            };
            if let Err(e) = report::write_output(&text, cli.out.as_deref()) {
                return report_runtime_error(e);
            }
            code
        }
        Err(e) => report_runtime_error(e),
    }
}

/// [`run`] on the process arguments.
pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}

fn report_clap_error(e: clap::Error) -> i32 {
    use clap::error::ErrorKind;
    use std::io::Write;
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        // Ignore write failures (e.g. the pipe closing under `--help | head`).
        let _ = std::io::stdout().write_all(e.to_string().as_bytes());
        return 0;
    }
    // Flatten the message portion (everything before the usage block) onto
    // one machine-parsable line.
    let rendered = e.render().to_string();
    let message = rendered
        .lines()
        .take_while(|line| !line.trim_start().starts_with("Usage:"))
        .map(str::trim)
        .filter(|line| !line.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    if message.is_empty() {
        eprintln!("error: invalid arguments");
    } else {
        eprintln!("{message}");
    }
    2
}

fn report_runtime_error(e: CliError) -> i32 {
    eprintln!("error: {}", e.to_string().replace('\n', " "));
    1
}

fn execute(command: Command, config: Option<&Path>) -> Result<(Report, i32), CliError> {
    // An explicit --config is validated up front even for subcommands that
    // never consult it; a broken file must not pass silently.
    let cfg = match config {
        Some(path) => ResolvedConfig::load(path)?,
        None => ResolvedConfig::bundled(),
    };
    match command {
        Command::Analyze { actuator } => Ok((cmd_analyze(&cfg, &actuator)?, 0)),
        Command::Sweep {
            grid,
            skeleton_ratio,
        } => Ok((cmd_sweep(&grid, skeleton_ratio)?, 0)),
        Command::Curve { actuator, grid } => Ok((cmd_curve(&cfg, &actuator, &grid)?, 0)),
        Command::Torque {
            actuator,
            pressure,
            grid,
        } => Ok((cmd_torque(&cfg, &actuator, pressure, &grid)?, 0)),
        Command::Chain {
            actuator,
            theta_deg,
            pressure,
            model,
        } => Ok((
            cmd_chain(&cfg, &actuator, theta_deg.as_deref(), pressure, model)?,
            0,
        )),
        Command::FitMaterial { material, data } => {
            let (label, curve) = match (material, data) {
                (Some(name), None) => {
                    let curve = cfg.material_curve(&name)?;
                    (name, curve)
                }
                (None, Some(path)) => {
                    let label = path
                        .file_name()
                        .map(|n| n.to_string_lossy().into_owned())
                        .unwrap_or_else(|| path.display().to_string());
                    (label, materials::read_curve_csv(&path)?)
                }
                _ => return Err(CliError::FitInputChoice),
            };
            Ok((cmd_fit(&label, &curve)?, 0))
        }
        Command::Compare => Ok((cmd_compare(&cfg)?, 0)),
        Command::Check { heavy } => Ok(cmd_check(heavy)),
    }
}

fn cmd_analyze(cfg: &ResolvedConfig, name: &str) -> Result<Report, CliError> {
    let actuator = cfg.actuator(name)?;
    let spec = actuator.spec();
    let pattern = spec.uniform_pattern()?;
    let theta_u0 = pattern.rest_rotation();
    let theta_f = kinematics::folding_rotation(pattern.delta0(), pattern.ratio())?;
    let rest_height = pattern.rest_height();
    let rest_volume = pattern.chamber_volume(theta_u0)?;
    let count = spec.module_count();

    let mut out = Report::new(["quantity", "value", "unit"]);
    out.push_meta("command", "analyze");
    out.push_meta("actuator", name);
    out.push_meta("pattern", actuator.pattern_name());
    out.push_meta("type", spec.type_label().to_string());
    let mut push = |quantity: &str, value: String, unit: &str| {
        out.push_row(vec![quantity.to_owned(), value, unit.to_owned()]);
    };
    push("theta_u0", fixed(theta_u0.degrees(), 2), "deg");
    push("theta_f", fixed(theta_f.degrees(), 2), "deg");
    push("theta_max", fixed(pattern.theta_max().degrees(), 2), "deg");
    if spec.skeleton_ratio() > 0.0 {
        let theta_ts = kinematics::skeleton_max_rotation(
            pattern.ratio(),
            spec.skeleton_ratio(),
            pattern.delta0(),
        )?;
        push("theta_ts", fixed(theta_ts.degrees(), 2), "deg");
    }
    push("rest_height", fixed(rest_height, 2), "mm");
    push("rest_length", fixed(count as f64 * rest_height, 2), "mm");
    push("rest_volume", fixed(rest_volume, 2), "mm3");
    push("module_count", count.to_string(), "");
    Ok(out)
}

fn cmd_sweep(grid: &str, skeleton_ratio: Option<f64>) -> Result<Report, CliError> {
    let (deltas_deg, ratios) = parse_grid2(grid, "delta0 in degrees, then b/a")?;
    if let Some(k) = skeleton_ratio
        && (!(k >= 0.0) || !k.is_finite())
    {
        return Err(KinematicsError::NegativeSkeletonRatio { k }.into());
    }
    let deltas: Vec<Angle> = deltas_deg
        .iter()
        .copied()
        .map(Angle::from_degrees)
        .collect();
    let mut quantities = vec![
        SweepQuantity::ThetaU,
        SweepQuantity::ThetaF,
        SweepQuantity::ThetaMax,
    ];
    if skeleton_ratio.is_some() {
        quantities.push(SweepQuantity::ThetaTs);
    }
    let grids = quantities
        .iter()
        .map(|&q| kinematics::parametric_sweep(q, &deltas, &ratios, skeleton_ratio))
        .collect::<Result<Vec<_>, _>>()?;

    let mut header = vec!["delta0_deg".to_owned(), "b_over_a".to_owned()];
    header.extend(quantities.iter().map(|q| q.column().to_owned()));
    let mut out = Report::new(header);
    out.push_meta("command", "sweep");
    out.push_meta("grid", grid);
    if let Some(k) = skeleton_ratio {
        out.push_meta("skeleton_ratio", format!("{k}"));
    }
    for (i, delta) in deltas.iter().enumerate() {
        for (j, ratio) in ratios.iter().enumerate() {
            let mut row = vec![fixed(delta.degrees(), 2), fixed(*ratio, 2)];
            row.extend(grids.iter().map(|g| {
                g.value(i, j)
                    .map(|v| fixed(v.degrees(), 2))
                    .unwrap_or_default()
            }));
            out.push_row(row);
        }
    }
    Ok(out)
}

fn cmd_curve(cfg: &ResolvedConfig, name: &str, grid: &str) -> Result<Report, CliError> {
    let pressures = parse_grid1(grid, "pressure in kPa")?;
    let actuator = cfg.actuator(name)?;
    let curve = quasistatics::pressure_angle_curve(actuator.spec(), &pressures)?;
    let branch = curve.branch();
    let (p_min, p_max) = branch.pressure_range();

    let mut out = Report::new([
        "pressure_kpa",
        "theta_u_deg",
        "volume_mm3",
        "torque_residual_nmm",
    ]);
    out.push_meta("command", "curve");
    out.push_meta("actuator", name);
    out.push_meta(
        "branch_theta_deg",
        format!(
            "{} to {}",
            fixed(branch.lo().degrees(), 2),
            fixed(branch.hi().degrees(), 2)
        ),
    );
    out.push_meta(
        "branch_pressure_kpa",
        format!("{} to {}", fixed(p_min, 3), fixed(p_max, 3)),
    );
    for sample in curve.samples() {
        let (theta, volume, residual) = match sample.solution {
            Some(point) => (
                fixed(point.theta_u.degrees(), 2),
                fixed(point.volume_mm3, 2),
                sci(point.torque_residual_nmm, 3),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        out.push_row(vec![fixed(sample.pressure_kpa, 3), theta, volume, residual]);
    }
    Ok(out)
}

fn cmd_torque(
    cfg: &ResolvedConfig,
    name: &str,
    pressure_kpa: f64,
    grid: &str,
) -> Result<Report, CliError> {
    let lengths = parse_grid1(grid, "operating length in mm")?;
    let actuator = cfg.actuator(name)?;
    let samples = quasistatics::torque_vs_operating_length(actuator.spec(), pressure_kpa, &lengths)?;

    let mut out = Report::new([
        "length_mm",
        "theta_u_deg",
        "torque_nmm",
        "rigidity_nmm2_per_deg",
    ]);
    out.push_meta("command", "torque");
    out.push_meta("actuator", name);
    out.push_meta("pressure_kpa", fixed(pressure_kpa, 3));
    for s in &samples {
        out.push_row(vec![
            fixed(s.length_mm, 2),
            fixed(s.theta_u.degrees(), 2),
            fixed(s.torque_nmm, 3),
            s.rigidity_nmm2_per_deg
                .map(|k| fixed(k, 3))
                .unwrap_or_default(),
        ]);
    }
    Ok(out)
}

fn cmd_chain(
    cfg: &ResolvedConfig,
    name: &str,
    theta_deg: Option<&[f64]>,
    pressure: Option<f64>,
    model: HeightModelArg,
) -> Result<Report, CliError> {
    let actuator = cfg.actuator(name)?;
    let spec = actuator.spec();
    let count = spec.module_count();

    let mut out = Report::new([
        "module",
        "handedness",
        "rotation_deg",
        "height_mm",
        "cum_rotation_deg",
        "cum_length_mm",
    ]);
    out.push_meta("command", "chain");
    out.push_meta("actuator", name);
    out.push_meta(
        "model",
        match model {
            HeightModelArg::Exact => "exact",
            HeightModelArg::Linear => "linear",
        },
    );

    let thetas: Vec<Angle> = match (theta_deg, pressure) {
        (Some(list), None) => {
            let magnitudes: Vec<f64> = match list.len() {
                1 => vec![list[0]; count],
                n if n == count => list.to_vec(),
                got => return Err(CliError::ThetaCount {
                    modules: count,
                    got,
                }),
            };
            out.push_meta(
                "drive",
                format!(
                    "theta_deg {}",
                    list.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            );
            spec.modules()
                .iter()
                .zip(&magnitudes)
                .map(|(m, &deg)| {
                    if deg < 0.0 {
                        Err(KinematicsError::NegativeMagnitude { theta_deg: deg }.into())
                    } else {
                        Ok(Angle::from_degrees(deg) * m.handedness().sign())
                    }
                })
                .collect::<Result<_, CliError>>()?
        }
        (None, Some(p)) => {
            let magnitude = quasistatics::equilibrium_rotation(spec, p)?;
            out.push_meta("drive", format!("pressure {p} kPa"));
            out.push_meta("equilibrium_theta_deg", fixed(magnitude.degrees(), 2));
            spec.signed_rotations(magnitude)?
        }
        _ => return Err(CliError::ChainInputChoice),
    };

    let (poses, warnings) = kinematics::chain_partial_poses(spec, &thetas, model.into())?;
    for warning in &warnings {
        out.push_meta("warning", warning.to_string());
    }
    let mut previous = 0.0;
    for (index, (pose, (module, theta))) in poses
        .iter()
        .zip(spec.modules().iter().zip(&thetas))
        .enumerate()
    {
        let height = pose.translation() - previous;
        previous = pose.translation();
        out.push_row(vec![
            (index + 1).to_string(),
            module.handedness().to_string(),
            fixed(theta.degrees(), 2),
            fixed(height, 2),
            fixed(pose.rotation().degrees(), 2),
            fixed(pose.translation(), 2),
        ]);
    }
    Ok(out)
}

fn cmd_fit(label: &str, curve: &StressStrainCurve) -> Result<Report, CliError> {
    let fit = materials::fit_yeoh(curve)?;
    let c = fit.coefficients;
    let max_error = fit
        .per_point_errors
        .iter()
        .fold(0.0_f64, |acc, e| acc.max(e.abs()));

    let mut out = Report::new(["quantity", "value", "unit"]);
    out.push_meta("command", "fit-material");
    out.push_meta("source", label);
    out.push_row(vec!["c10".into(), sci(c.c10(), 6), "MPa".into()]);
    out.push_row(vec!["c20".into(), sci(c.c20(), 6), "MPa".into()]);
    out.push_row(vec!["c30".into(), sci(c.c30(), 6), "MPa".into()]);
    out.push_row(vec![
        "residual_norm".into(),
        sci(fit.residual_norm, 3),
        "MPa".into(),
    ]);
    out.push_row(vec![
        "max_abs_error".into(),
        sci(max_error, 3),
        "MPa".into(),
    ]);
    out.push_row(vec!["samples".into(), curve.len().to_string(), "".into()]);
    Ok(out)
}

fn cmd_compare(cfg: &ResolvedConfig) -> Result<Report, CliError> {
    let rows = cfg.comparison_rows()?;
    let mut out = Report::new([
        "name",
        "rotation_deg",
        "rotation_qualifier",
        "aspect_ratio",
        "aspect_qualifier",
        "pressure_change_kpa",
        "pressure_qualifier",
        "pressure_note",
        "rotation_ratio_deg",
    ]);
    out.push_meta("command", "compare");
    out.push_meta("rotation_ratio_deg", "rotation_deg / aspect_ratio, recomputed");
    for row in &rows {
        out.push_row(vec![
            row.name.clone(),
            fixed(row.rotation_deg, 2),
            row.rotation_qualifier.clone(),
            fixed(row.aspect_ratio, 2),
            row.aspect_qualifier.clone(),
            row.pressure_change_kpa
                .map(|p| fixed(p, 3))
                .unwrap_or_default(),
            row.pressure_qualifier.clone(),
            row.pressure_note.clone(),
            fixed(row.rotation_ratio_deg(), 1),
        ]);
    }
    Ok(out)
}

fn cmd_check(heavy: bool) -> (Report, i32) {
    let reports = oracles::run_all(heavy);
    let mut out = Report::new(["oracle", "status", "detail"]);
    out.push_meta("command", "check");
    out.push_meta("suite", if heavy { "heavy" } else { "light" });
    let mut failed = false;
    for r in &reports {
        failed |= !r.passed;
        out.push_row(vec![
            r.name.to_owned(),
            if r.passed { "pass" } else { "fail" }.to_owned(),
            r.detail.replace(',', ";"),
        ]);
    }
    (out, if failed { 1 } else { 0 })
}

/// Parses one "start:stop:count" axis into an inclusive linear grid.
fn parse_axis(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::BadGrid {
        text: text.to_owned(),
    };
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                stop
            } else {
                start + step * i as f64
            }
        })
        .collect())
}

fn parse_grid1(text: &str, description: &'static str) -> Result<Vec<f64>, CliError> {
    let axes: Vec<&str> = text.split(',').collect();
    if axes.len() != 1 {
        return Err(CliError::GridAxisCount {
            want: 1,
            description,
            got: axes.len(),
        });
    }
    parse_axis(axes[0])
}

fn parse_grid2(text: &str, description: &'static str) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let axes: Vec<&str> = text.split(',').collect();
    if axes.len() != 2 {
        return Err(CliError::GridAxisCount {
            want: 2,
            description,
            got: axes.len(),
        });
    }
    Ok((parse_axis(axes[0])?, parse_axis(axes[1])?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing_covers_endpoints_and_rejects_malformed_text() {
        assert_eq!(parse_axis("0:10:5").unwrap(), [0.0, 2.5, 5.0, 7.5, 10.0]);
        assert_eq!(parse_axis("-30:0:4").unwrap(), [-30.0, -20.0, -10.0, 0.0]);
        assert_eq!(parse_axis("7:99:1").unwrap(), [7.0]);
        for bad in ["", "1:2", "1:2:3:4", "a:2:3", "1:b:3", "1:2:x", "1:2:0", "nan:2:3"] {
            assert!(matches!(parse_axis(bad), Err(CliError::BadGrid { .. })), "{bad}");
        }
        assert!(matches!(
            parse_grid1("1:2:3,4:5:6", "demo"),
            Err(CliError::GridAxisCount { want: 1, got: 2, .. })
        ));
        assert!(matches!(
            parse_grid2("1:2:3", "demo"),
            Err(CliError::GridAxisCount { want: 2, got: 1, .. })
        ));
    }

    #[test]
    fn analyze_reports_the_closed_form_summary() {
        let text = cmd_analyze(&ResolvedConfig::bundled(), "ib")
            .unwrap()
            .render(false)
            .unwrap();
        assert!(text.contains("theta_u0,74.00,deg"), "{text}");
        assert!(text.contains("theta_f,106.00,deg"), "{text}");
        assert!(text.contains("theta_max,180.00,deg"), "{text}");
        assert!(text.contains("rest_height,31.95,mm"), "{text}");
        assert!(text.contains("rest_length,127.78,mm"), "{text}");
        assert!(text.contains("module_count,4,"), "{text}");
    }

    #[test]
    fn one_by_one_sweep_matches_the_analyze_scalars() {
        let text = cmd_sweep("53:53:1,2:2:1", None).unwrap().render(false).unwrap();
        assert_eq!(
            text,
            "delta0_deg,b_over_a,theta_u_deg,theta_f_deg,theta_max_deg\n\
             53.00,2.00,74.00,106.00,180.00\n"
        );
    }

    #[test]
    fn sweep_leaves_out_of_domain_cells_empty() {
        // b/a = 2.5 exceeds the b ≤ 2a closure bound, so every angle there
        // is undefined while the in-domain row stays populated.
        let text = cmd_sweep("53:53:1,2:2.5:2", None).unwrap().render(false).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "53.00,2.00,74.00,106.00,180.00");
        assert_eq!(lines[2], "53.00,2.50,,,");
    }

    #[test]
    fn opposed_halves_cancel_in_the_chain_command() {
        let report = cmd_chain(
            &ResolvedConfig::bundled(),
            "ii",
            Some(&[30.0]),
            None,
            HeightModelArg::Exact,
        )
        .unwrap();
        let text = report.render(false).unwrap();
        let last = text.lines().last().unwrap();
        let cells: Vec<&str> = last.split(',').collect();
        assert_eq!(cells[0], "8");
        assert_eq!(cells[4], "0.00", "net rotation cancels: {text}");
    }

    #[test]
    fn compare_prints_recomputed_rotation_ratios() {
        let text = cmd_compare(&ResolvedConfig::bundled())
            .unwrap()
            .render(false)
            .unwrap();
        assert!(
            text.contains("Kresling OSPA,435.00,,3.19,approx,12.000,approx,-10 to 2,136.4"),
            "{text}"
        );
        assert!(text.contains("Jiao et al.,80.00,approx,1.33,approx,70.000,approx,,60.0"), "{text}");
        assert!(text.contains("Martinez et al.,415.00,approx,5.76,approx,12.000,approx,,72.0"), "{text}");
        assert!(text.contains("Sanan et al.,45.00,approx,2.00,min,,,,22.5"), "{text}");
    }

    #[test]
    fn light_check_suite_passes_and_exits_zero() {
        let (report, code) = cmd_check(false);
        assert_eq!(code, 0);
        let text = report.render(true).unwrap();
        assert!(text.contains("# suite: light"));
        assert!(!text.contains(",fail,"), "{text}");
    }
}
