//! `conic`: solve, predict, certify and plot minimal conic configurations.
//!
//! Exit codes: 0 success, 2 parse or I/O error, 3 input not in general
//! position (or a degenerate special case), 4 unsupported point/line count,
//! 5 certification failure.

mod config;
mod error;
mod plot;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use conic_core::conic::angular_distance;
use conic_core::oracle::certify;
use conic_core::{ConicMatrix, MinimalConfiguration, MinimalSolver, SolverRegistry, Tolerances};

use config::{parse_viewport, ConfigFile, Format};
use error::CliError;
use plot::Viewport;
use report::{BatchEntry, CheckReport, PredictReport, Report, SolveReport};

/// Golden conics must match the solved ones to this angular distance.
const GOLDEN_ANGLE: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "conic",
    version,
    about = "Conics through points and tangent to lines"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Collinearity and incidence tolerance (relative).
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write the output to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Solver name, e.g. 5p, 4p1l, 3p2l, 2p3l, 1p4l, 5l; chosen from the
    /// configuration's shape by default.
    #[arg(long)]
    solver: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a configuration and report every real conic.
    Solve {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Predict the number of real conics from sign tests alone.
    Predict {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Solve, then verify the solutions independently.
    Check {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Draw the configuration and its real conics as SVG.
    Plot {
        config: PathBuf,
        /// xmin,ymin,xmax,ymax
        #[arg(long, value_parser = parse_viewport, allow_hyphen_values = true)]
        viewport: Option<[f64; 4]>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve and check every `.json` file in a directory.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

struct Session {
    file: ConfigFile,
    config: MinimalConfiguration,
    tol: Tolerances,
    format: Format,
}

impl Session {
    fn open(path: &Path, common: &Common) -> Result<Self, CliError> {
        let file = ConfigFile::load(path)?;
        if let Some(t) = common.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Parse(
                    "--tolerance must be a positive number".into(),
                ));
            }
        }
        let config = file.configuration()?;
        let mut tol = Tolerances::default();
        if let Some(t) = common.tolerance.or(file.options.tolerance) {
            tol = tol.with_incidence(t);
        }
        let format = common
            .format
            .or(file.options.format)
            .unwrap_or(Format::Text);
        Ok(Self {
            file,
            config,
            tol,
            format,
        })
    }

    fn solver<'a>(
        &self,
        registry: &'a SolverRegistry,
        common: &Common,
    ) -> Result<&'a dyn MinimalSolver, CliError> {
        Ok(match &common.solver {
            Some(name) => registry.get(name)?,
            None => registry.for_config(&self.config)?,
        })
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    }
    Ok(())
}

fn solve_report(
    s: &Session,
    solver: &dyn MinimalSolver,
) -> Result<(SolveReport, conic_core::SolutionSet), CliError> {
    let out = solver.solve(&s.config, &s.tol)?;
    let prediction = solver.predict(&s.config, &s.tol)?;
    Ok((
        SolveReport::new(solver.name(), &out, &prediction, &s.tol),
        out,
    ))
}

/// Certification plus the golden values of the file, if any.
fn check_report(s: &Session, out: &conic_core::SolutionSet) -> CheckReport {
    let mut report = CheckReport::new(&certify(&s.config, out, &s.tol));
    let Some(expected) = &s.file.expected else {
        return report;
    };
    let status = |ok: bool| if ok { "pass" } else { "fail" };
    if let Some(real) = expected.real {
        let got = out.real_count();
        report.push(
            "golden real count",
            status(got == real),
            got as f64,
            real as f64,
            "",
        );
    }
    if let Some(complex) = expected.complex {
        let got = out.complex_count;
        report.push(
            "golden complex count",
            status(got == complex),
            got as f64,
            complex as f64,
            "",
        );
    }
    for (i, k) in expected.conics.iter().enumerate() {
        let golden = ConicMatrix::from_coefficients(*k);
        let best = out
            .real_conics
            .iter()
            .map(|c| angular_distance(c, &golden))
            .fold(f64::INFINITY, f64::min);
        let name = format!("golden conic {}", i + 1);
        report.push(
            &name,
            status(best <= GOLDEN_ANGLE),
            best,
            GOLDEN_ANGLE,
            "angular distance to nearest solution",
        );
    }
    report
}

fn run_solve(path: &Path, common: &Common) -> Result<(), CliError> {
    let s = Session::open(path, common)?;
    let registry = SolverRegistry::with_builtin();
    let (report, _) = solve_report(&s, s.solver(&registry, common)?)?;
    emit(
        &Report::Solve(report).render(s.format),
        common.out.as_deref(),
    )
}

fn run_predict(path: &Path, common: &Common) -> Result<(), CliError> {
    let s = Session::open(path, common)?;
    let registry = SolverRegistry::with_builtin();
    let solver = s.solver(&registry, common)?;
    let p = solver.predict(&s.config, &s.tol)?;
    let report = PredictReport::new(solver.name(), &p);
    emit(
        &Report::Predict(report).render(s.format),
        common.out.as_deref(),
    )
}

fn run_check(path: &Path, common: &Common) -> Result<(), CliError> {
    let s = Session::open(path, common)?;
    let registry = SolverRegistry::with_builtin();
    let (solve, out) = solve_report(&s, s.solver(&registry, common)?)?;
    let check = check_report(&s, &out);
    let failed = check.failed_names().join(", ");
    emit(
        &Report::Check(solve, check).render(s.format),
        common.out.as_deref(),
    )?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Certification(failed))
    }
}

fn run_plot(path: &Path, viewport: Option<[f64; 4]>, common: &Common) -> Result<(), CliError> {
    let s = Session::open(path, common)?;
    let registry = SolverRegistry::with_builtin();
    let out = s.solver(&registry, common)?.solve(&s.config, &s.tol)?;
    let (points, lines) = (s.file.points(), s.file.lines());
    let view = match viewport.or(s.file.options.viewport) {
        Some(v) => Viewport::new(v),
        None => Viewport::around(&points, &lines),
    };
    let svg = plot::render(&points, &lines, &out.real_conics, &view, s.tol.rank);
    match &common.out {
        Some(p) => std::fs::write(p, svg).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => emit(&svg, None),
    }
}

fn batch_entry(path: &Path, common: &Common) -> BatchEntry {
    let mut entry = BatchEntry {
        file: path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default(),
        exit_code: 0,
        real: None,
        complex: None,
        predicted_real: None,
        certified: None,
        error: None,
    };
    let result = (|| {
        let s = Session::open(path, common)?;
        let registry = SolverRegistry::with_builtin();
        let (report, out) = solve_report(&s, s.solver(&registry, common)?)?;
        entry.real = Some(report.real_count);
        entry.complex = Some(report.complex_count);
        entry.predicted_real = Some(report.prediction.real);
        let check = check_report(&s, &out);
        entry.certified = Some(check.passed);
        if !check.passed {
            return Err(CliError::Certification(check.failed_names().join(", ")));
        }
        Ok(())
    })();
    if let Err(e) = result {
        entry.exit_code = e.exit_code();
        if !matches!(e, CliError::Certification(_)) {
            entry.error = Some(e.to_string());
        }
    }
    entry
}

fn run_batch(dir: &Path, common: &Common) -> Result<i32, CliError> {
    let listing = std::fs::read_dir(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
    let mut files: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let entries: Vec<BatchEntry> = files.iter().map(|f| batch_entry(f, common)).collect();
    let code = entries
        .iter()
        .map(|e| e.exit_code)
        .find(|&c| c != 0)
        .unwrap_or(0);
    let format = common.format.unwrap_or(Format::Text);
    emit(
        &Report::Batch(entries).render(format),
        common.out.as_deref(),
    )?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve { config, common } => run_solve(config, common).map(|_| 0),
        Command::Predict { config, common } => run_predict(config, common).map(|_| 0),
        Command::Check { config, common } => run_check(config, common).map(|_| 0),
        Command::Plot {
            config,
            viewport,
            common,
        } => run_plot(config, *viewport, common).map(|_| 0),
        Command::Batch { dir, common } => run_batch(dir, common),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
