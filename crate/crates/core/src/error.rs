use std::fmt;

pub type Result<T, E = ConicError> = std::result::Result<T, E>;

/// Which general-position requirement an input violates.
///
/// Indices are zero-based positions in the caller's input; `Display` prints
/// them one-based.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneralPositionClause {
    CollinearPoints([usize; 3]),
    /// The line joins two of the given points (a side or diagonal line).
    LineThroughTwoPoints {
        line: usize,
        points: [usize; 2],
    },
    /// The line is a side of the diagonal triangle.
    LineIsDiagonalTriangleSide {
        line: usize,
        vertices: [usize; 2],
    },
    CoincidentLines {
        lines: [usize; 2],
    },
    /// The two lines meet at one of the given points.
    LinesMeetAtPoint {
        point: usize,
    },
    /// A clause violated by the dual configuration (points and lines swapped).
    Dual(Box<GeneralPositionClause>),
}

impl fmt::Display for GeneralPositionClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CollinearPoints([a, b, c]) => {
                write!(f, "points #{}, #{}, #{} are collinear", a + 1, b + 1, c + 1)
            }
            Self::LineThroughTwoPoints { line, points } => write!(
                f,
                "line #{} passes through points #{} and #{}",
                line + 1,
                points[0] + 1,
                points[1] + 1
            ),
            Self::LineIsDiagonalTriangleSide { line, vertices } => write!(
                f,
                "line #{} joins diagonal-triangle vertices {} and {}",
                line + 1,
                vertices[0] + 1,
                vertices[1] + 1
            ),
            Self::CoincidentLines { lines } => {
                write!(f, "lines #{} and #{} coincide", lines[0] + 1, lines[1] + 1)
            }
            Self::LinesMeetAtPoint { point } => {
                write!(f, "the two lines meet at point #{}", point + 1)
            }
            Self::Dual(inner) => write!(
                f,
                "dual configuration: {inner} (dual points are the input lines, dual lines the input points)"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConicError {
    #[error("point ({0}, {1}, {2}) is at infinity")]
    PointAtInfinity(f64, f64, f64),
    #[error("line coefficients are all zero")]
    ZeroLine,
    #[error("input is not in general position: {0}")]
    GeneralPosition(GeneralPositionClause),
    #[error("pencil parameter s = {0} yields a line pair, not a conic")]
    DegenerateParameter(f64),
    #[error("degenerate case: {0}")]
    DegenerateCase(String),
    #[error("degenerate conic is a pair of complex conjugate lines")]
    ComplexLinePair,
    #[error("degenerate conic is a double line")]
    RankOne,
    #[error("matrix has rank {0}, expected a line pair of rank 2")]
    NotLinePair(usize),
    #[error("inconsistent conic pencil: {0}")]
    InconsistentPencil(String),
    #[error("design matrix has rank {0}, need 5")]
    RankDeficient(usize),
    #[error("unsupported configuration: {points} points + {lines} lines (need 5 in total)")]
    UnsupportedCount { points: usize, lines: usize },
    #[error("no solver registered under '{0}'")]
    UnknownSolver(String),
    #[error("solver '{solver}' expects {expected_points} points + {expected_lines} lines")]
    ShapeMismatch {
        solver: String,
        expected_points: usize,
        expected_lines: usize,
    },
    #[error("non-finite value in input")]
    NonFinite,
}

impl From<GeneralPositionClause> for ConicError {
    fn from(clause: GeneralPositionClause) -> Self {
        Self::GeneralPosition(clause)
    }
}
