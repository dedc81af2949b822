//! Configurations with more lines than points, solved in the dual plane.
//!
//! Lines become points and points become lines; the conic found there is the dual
//! conic `C*`, and the conic itself is `adj(C*)`. A line through the
//! origin has no finite dual point, so the primal plane is first translated
//! away from every line when one comes close.

use super::{
    shape_name, CountPrediction, CountRule, MinimalConfiguration, MinimalSolver, SolutionSet,
};
use crate::conic::{adjugate, ConicMatrix};
use crate::error::{ConicError, GeneralPositionClause, Result};
use crate::projective::{normalize_point, Mat3, ProjectiveLine};
use crate::tolerance::Tolerances;

/// Lines whose distance to the origin is below this fraction of the scene
/// scale trigger a translation before dualizing.
const ORIGIN_CLEARANCE: f64 = 1e-3;

fn translation(ox: f64, oy: f64) -> Mat3 {
    Mat3::new(1.0, 0.0, -ox, 0.0, 1.0, -oy, 0.0, 0.0, 1.0)
}

/// Distance from `(x, y)` to the line, or infinity for the line at infinity.
fn distance(l: &ProjectiveLine, x: f64, y: f64) -> f64 {
    let v = l.vector();
    let n = v[0].hypot(v[1]);
    if n == 0.0 {
        return f64::INFINITY;
    }
    (v[0] * x + v[1] * y + v[2]).abs() / n
}

/// Point map moving the origin away from every line of `config`.
fn clearing_translation(config: &MinimalConfiguration) -> Mat3 {
    let lines = config.lines();
    let points = config.points();
    let scale = points
        .iter()
        .flat_map(|p| [p.x().abs(), p.y().abs()])
        .chain(
            lines
                .iter()
                .map(|l| distance(l, 0.0, 0.0))
                .filter(|d| d.is_finite()),
        )
        .fold(1.0f64, f64::max);
    let clearance = |x: f64, y: f64| {
        lines
            .iter()
            .map(|l| distance(l, x, y))
            .fold(f64::INFINITY, f64::min)
    };
    if clearance(0.0, 0.0) >= ORIGIN_CLEARANCE * scale {
        return Mat3::identity();
    }
    let mut best = (0.0, 0.0, clearance(0.0, 0.0));
    for ring in [0.5, 1.0, 2.0] {
        for k in 0..12 {
            let angle = 0.3 + k as f64 * std::f64::consts::TAU / 12.0;
            let (x, y) = (ring * scale * angle.cos(), ring * scale * angle.sin());
            let c = clearance(x, y);
            if c > best.2 {
                best = (x, y, c);
            }
        }
    }
    translation(best.0, best.1)
}

/// The dual of `config` and the point map `h` applied before dualizing.
///
/// Dual points are the input lines (in order) and dual lines the input
/// points. A conic `C'` solved for the dual configuration maps back as
/// `hᵀ adj(C') h`.
pub fn dual_configuration(
    config: &MinimalConfiguration,
    tol: &Tolerances,
) -> Result<(MinimalConfiguration, Mat3)> {
    let h = clearing_translation(config);
    let moved = config.transformed(&h, tol.infinity)?;
    let points = moved
        .lines()
        .iter()
        .map(|l| normalize_point(l.vector(), tol.infinity))
        .collect::<Result<Vec<_>>>()?;
    let lines = moved
        .points()
        .iter()
        .map(|p| ProjectiveLine::from_vector(*p.vector()))
        .collect::<Result<Vec<_>>>()?;
    Ok((MinimalConfiguration::from_parts(points, lines)?, h))
}

fn dual_error(e: ConicError) -> ConicError {
    match e {
        ConicError::GeneralPosition(clause) => {
            ConicError::GeneralPosition(GeneralPositionClause::Dual(Box::new(clause)))
        }
        other => other,
    }
}

/// Solves `config` by running `inner` on its dual.
pub fn solve_dual(
    config: &MinimalConfiguration,
    inner: &dyn MinimalSolver,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    let (dual, h) = dual_configuration(config, tol)?;
    let mut out = inner.solve(&dual, tol).map_err(dual_error)?;
    out.real_conics = out
        .real_conics
        .iter()
        .map(|c| {
            let primal = adjugate(c);
            ConicMatrix::from_matrix(h.transpose() * primal.matrix() * h)
        })
        .collect();
    out.case_label = format!("dual:{}", out.case_label);
    out.refine(&config.points(), &config.lines());
    out.record_residuals(&config.points(), &config.lines());
    Ok(out)
}

/// Wraps a point-heavy solver to handle the dual shape.
pub struct DualSolver {
    inner: Box<dyn MinimalSolver>,
    name: &'static str,
    shape: (usize, usize),
}

impl DualSolver {
    pub fn new(inner: Box<dyn MinimalSolver>) -> Self {
        let (p, l) = inner.shape();
        Self {
            inner,
            name: shape_name((l, p)),
            shape: (l, p),
        }
    }

    pub fn inner(&self) -> &dyn MinimalSolver {
        self.inner.as_ref()
    }
}

impl MinimalSolver for DualSolver {
    fn name(&self) -> &'static str {
        self.name
    }

    fn shape(&self) -> (usize, usize) {
        self.shape
    }

    fn solve(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<SolutionSet> {
        if config.shape() != self.shape {
            return Err(self.shape_error());
        }
        solve_dual(config, self.inner.as_ref(), tol)
    }

    fn predict(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<CountPrediction> {
        if config.shape() != self.shape {
            return Err(self.shape_error());
        }
        let (dual, _) = dual_configuration(config, tol)?;
        let inner = self.inner.predict(&dual, tol).map_err(dual_error)?;
        Ok(CountPrediction {
            rule: CountRule::Dual(Box::new(inner.rule)),
            ..inner
        })
    }
}
