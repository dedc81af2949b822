//! Minimal solvers: one strategy per configuration shape, all behind
//! [`MinimalSolver`] and looked up by name in a [`SolverRegistry`].
//!
//! | name   | configuration          | conics over ℂ |
//! |--------|------------------------|---------------|
//! | `5p`   | five points            | 1             |
//! | `4p1l` | four points, one line  | 2 (1 in special position) |
//! | `3p2l` | three points, two lines| 4 (1 or 2 in special position) |
//! | `2p3l`, `1p4l`, `5l` | duals of the above | as their duals |

mod dual;
mod five_points;
mod four_points_line;
mod registry;
mod three_points_two_lines;

pub use dual::{dual_configuration, solve_dual, DualSolver};
pub use five_points::{solve_five_points, FivePointSolver};
pub use four_points_line::{
    four_point_line_discriminant, predict_count_4p1l, solve_four_points_line, FourPointLineSolver,
};
pub use registry::SolverRegistry;
pub use three_points_two_lines::{
    case5_conics, classify_3p2l_case, predict_count_3p2l, solve_case5,
    solve_three_points_two_lines, CaseContext, FourthPointParameterization, ThreePointTwoLineCase,
    ThreePointTwoLineSolver,
};

use crate::conic::{point_residual, refine_conic, tangency_residual, ConicMatrix};
use crate::error::{ConicError, Result};
use crate::projective::{HomogeneousPoint, Mat3, ProjectiveLine};
use crate::tolerance::Tolerances;

/// A configuration of `p` points and `l` lines with `p + l = 5`.
#[derive(Debug, Clone, PartialEq)]
pub enum MinimalConfiguration {
    FivePoints([HomogeneousPoint; 5]),
    FourPointsOneLine([HomogeneousPoint; 4], ProjectiveLine),
    ThreePointsTwoLines([HomogeneousPoint; 3], [ProjectiveLine; 2]),
    TwoPointsThreeLines([HomogeneousPoint; 2], [ProjectiveLine; 3]),
    OnePointFourLines(HomogeneousPoint, [ProjectiveLine; 4]),
    FiveLines([ProjectiveLine; 5]),
}

impl MinimalConfiguration {
    pub fn from_parts(points: Vec<HomogeneousPoint>, lines: Vec<ProjectiveLine>) -> Result<Self> {
        let unsupported = ConicError::UnsupportedCount {
            points: points.len(),
            lines: lines.len(),
        };
        let p = points.as_slice();
        let l = lines.as_slice();
        Ok(match (p.len(), l.len()) {
            (5, 0) => Self::FivePoints([p[0], p[1], p[2], p[3], p[4]]),
            (4, 1) => Self::FourPointsOneLine([p[0], p[1], p[2], p[3]], l[0]),
            (3, 2) => Self::ThreePointsTwoLines([p[0], p[1], p[2]], [l[0], l[1]]),
            (2, 3) => Self::TwoPointsThreeLines([p[0], p[1]], [l[0], l[1], l[2]]),
            (1, 4) => Self::OnePointFourLines(p[0], [l[0], l[1], l[2], l[3]]),
            (0, 5) => Self::FiveLines([l[0], l[1], l[2], l[3], l[4]]),
            _ => return Err(unsupported),
        })
    }

    pub fn points(&self) -> Vec<HomogeneousPoint> {
        match self {
            Self::FivePoints(p) => p.to_vec(),
            Self::FourPointsOneLine(p, _) => p.to_vec(),
            Self::ThreePointsTwoLines(p, _) => p.to_vec(),
            Self::TwoPointsThreeLines(p, _) => p.to_vec(),
            Self::OnePointFourLines(p, _) => vec![*p],
            Self::FiveLines(_) => Vec::new(),
        }
    }

    pub fn lines(&self) -> Vec<ProjectiveLine> {
        match self {
            Self::FivePoints(_) => Vec::new(),
            Self::FourPointsOneLine(_, l) => vec![*l],
            Self::ThreePointsTwoLines(_, l) => l.to_vec(),
            Self::TwoPointsThreeLines(_, l) => l.to_vec(),
            Self::OnePointFourLines(_, l) => l.to_vec(),
            Self::FiveLines(l) => l.to_vec(),
        }
    }

    /// `(points, lines)`.
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Self::FivePoints(_) => (5, 0),
            Self::FourPointsOneLine(..) => (4, 1),
            Self::ThreePointsTwoLines(..) => (3, 2),
            Self::TwoPointsThreeLines(..) => (2, 3),
            Self::OnePointFourLines(..) => (1, 4),
            Self::FiveLines(_) => (0, 5),
        }
    }

    /// Registry key of the solver for this shape.
    pub fn shape_name(&self) -> &'static str {
        shape_name(self.shape())
    }

    /// Number of conics over ℂ in the generic case.
    pub fn generic_solution_count(&self) -> usize {
        match self.shape() {
            (5, 0) | (0, 5) => 1,
            (4, 1) | (1, 4) => 2,
            _ => 4,
        }
    }

    /// Image under the point map `h`; points transform by `h`, lines by `h⁻ᵀ`.
    pub fn transformed(&self, h: &Mat3, infinity_tol: f64) -> Result<Self> {
        let points = self
            .points()
            .iter()
            .map(|p| p.transformed(h, infinity_tol))
            .collect::<Result<Vec<_>>>()?;
        let lines = self
            .lines()
            .iter()
            .map(|l| l.transformed(h))
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(points, lines)
    }
}

pub(crate) fn shape_name(shape: (usize, usize)) -> &'static str {
    match shape {
        (5, 0) => "5p",
        (4, 1) => "4p1l",
        (3, 2) => "3p2l",
        (2, 3) => "2p3l",
        (1, 4) => "1p4l",
        (0, 5) => "5l",
        _ => "unsupported",
    }
}

/// Side information recorded while solving.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Discriminant of the quadratic that decided realness, if any.
    pub discriminant: Option<f64>,
    /// Pencil parameters of the real solutions, in output order.
    pub s_values: Vec<f64>,
    /// Fourth-point parameters of the real solutions (three points, two lines).
    pub t_values: Vec<f64>,
    pub pencil_eigenvalues: Option<[f64; 3]>,
    /// Set when a double root was reported as a single conic.
    pub double_root: bool,
    pub branch: Option<String>,
    pub case_context: Option<CaseContext>,
    pub max_incidence_residual: f64,
    pub max_tangency_residual: f64,
}

/// Real conics of a configuration and the number of complex ones.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    pub real_conics: Vec<ConicMatrix>,
    pub complex_count: usize,
    pub case_label: String,
    pub diagnostics: Diagnostics,
}

impl SolutionSet {
    pub fn real_count(&self) -> usize {
        self.real_conics.len()
    }

    /// Real plus complex solutions, counting a reported double root once.
    pub fn total_count(&self) -> usize {
        self.real_conics.len() + self.complex_count
    }

    /// Polishes every real conic against the constraints.
    pub(crate) fn refine(&mut self, points: &[HomogeneousPoint], lines: &[ProjectiveLine]) {
        let x: Vec<_> = points.iter().map(|p| *p.vector()).collect();
        let l: Vec<_> = lines.iter().map(|l| *l.vector()).collect();
        for c in &mut self.real_conics {
            *c = refine_conic(c, &x, &l, 3);
        }
    }

    /// Fills in the residual maxima against the given constraints.
    pub(crate) fn record_residuals(
        &mut self,
        points: &[HomogeneousPoint],
        lines: &[ProjectiveLine],
    ) {
        let mut inc = 0.0f64;
        let mut tan = 0.0f64;
        for c in &self.real_conics {
            for p in points {
                inc = inc.max(point_residual(c, p.vector()));
            }
            for l in lines {
                tan = tan.max(tangency_residual(c, l.vector()));
            }
        }
        self.diagnostics.max_incidence_residual = inc;
        self.diagnostics.max_tangency_residual = tan;
    }
}

/// Which sign rule produced a [`CountPrediction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CountRule {
    /// Five points in general position: one real conic.
    FivePointsUnique,
    /// The line passes through one of the four points (zero-based index).
    LineThroughPoint(usize),
    /// The line passes through diagonal-triangle vertex 1, 2 or 3.
    LineThroughDiagonalVertex(usize),
    /// Parity of clockwise quadrangle triangles against parity of points on
    /// the negative side of the line.
    OrientationSideParity,
    /// Two points lie on the two lines respectively.
    TwoTangencyPoints,
    /// Two points are collinear with `l₁ × l₂` and the third lies on a line.
    CollinearPairWithTangencyPoint,
    /// Two points are collinear with `l₁ × l₂`: signs of `(x̂₁ᵀlᵢ)(x̂₃ᵀlᵢ)`.
    CollinearPairSides,
    /// Exactly one point on a line: sign of
    /// `|p x̂₂ x̂₃|·|x̂₁ p x̂₃|·(x̂₁ᵀl₂)(x̂₂ᵀl₂)`.
    SingleTangencyPointSign,
    /// Generic three points and two lines: signs of `(x̂ₖᵀl₁)(x̂ₖᵀl₂)`.
    SideProductSigns,
    /// Rule applied to the dual configuration.
    Dual(Box<CountRule>),
}

impl CountRule {
    pub fn describe(&self) -> String {
        match self {
            Self::FivePointsUnique => "five points in general position".into(),
            Self::LineThroughPoint(k) => format!("line through point #{}", k + 1),
            Self::LineThroughDiagonalVertex(i) => {
                format!("line through diagonal-triangle vertex {i}")
            }
            Self::OrientationSideParity => "orientation/side parity".into(),
            Self::TwoTangencyPoints => "two points on the two lines".into(),
            Self::CollinearPairWithTangencyPoint => {
                "collinear pair through line intersection, third point on a line".into()
            }
            Self::CollinearPairSides => {
                "collinear pair through line intersection, side signs".into()
            }
            Self::SingleTangencyPointSign => "single point on a line, determinant-side sign".into(),
            Self::SideProductSigns => "side-product signs".into(),
            Self::Dual(inner) => format!("dual: {}", inner.describe()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    UniqueReal,
    TwoReal,
    TwoComplex,
    FourReal,
    FourComplex,
}

/// Predicted number of real and complex conics, from sign predicates only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPrediction {
    pub real: usize,
    pub complex: usize,
    pub rule: CountRule,
}

impl CountPrediction {
    pub fn kind(&self) -> CountKind {
        match (self.real, self.complex) {
            (1, 0) => CountKind::UniqueReal,
            (2, 0) => CountKind::TwoReal,
            (0, 2) => CountKind::TwoComplex,
            (4, 0) => CountKind::FourReal,
            (0, 4) => CountKind::FourComplex,
            other => unreachable!("no rule predicts {other:?}"),
        }
    }
}

/// A closed-form solver for one configuration shape.
pub trait MinimalSolver: Send + Sync {
    /// Registry key, e.g. `"4p1l"`.
    fn name(&self) -> &'static str;

    /// `(points, lines)` accepted by this solver.
    fn shape(&self) -> (usize, usize);

    fn solve(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<SolutionSet>;

    fn predict(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<CountPrediction>;

    fn shape_error(&self) -> ConicError {
        let (expected_points, expected_lines) = self.shape();
        ConicError::ShapeMismatch {
            solver: self.name().to_string(),
            expected_points,
            expected_lines,
        }
    }
}

/// Stable quadratic roots of `a x² + b x + c = 0` for a positive discriminant.
pub(crate) fn real_quadratic_roots(a: f64, b: f64, c: f64, disc: f64) -> [f64; 2] {
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return [0.0, 0.0];
    }
    [q / a, c / q]
}
