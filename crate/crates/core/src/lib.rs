//! Closed-form conics from minimal configurations of points and tangent lines.
//!
//! Every non-degenerate conic through `p` points and tangent to `l` lines with
//! `p + l = 5` is built from the diagonal triangle of a quadrangle, which is
//! self-polar for every conic through the quadrangle's four vertices. The
//! one-parameter pencil through four points then reduces each configuration to
//! a small polynomial system in the pencil parameter `s` (and, for three
//! points and two lines, a second parameter `t` that slides a virtual fourth
//! point along a line).
//!
//! The crate also predicts, from orientation and side-of-line signs alone, how
//! many of the solutions are real.
//!
//! Layout:
//! - [`projective`]: homogeneous primitives and sign predicates.
//! - [`selfpolar`]: diagonal triangle, self-polar basis, pencil through four points.
//! - [`conic`]: conic matrices, classification, duality, line-pair splitting,
//!   conic/conic intersection.
//! - [`solvers`]: the minimal solvers behind the [`solvers::MinimalSolver`]
//!   trait and the name-keyed [`solvers::SolverRegistry`].
//! - [`oracle`]: independent brute-force checks.
//!
//! ```
//! use conic_core::{HomogeneousPoint, MinimalConfiguration, SolverRegistry, Tolerances};
//!
//! let points = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (2f64.sqrt(), 0.0)]
//!     .map(|(x, y)| HomogeneousPoint::new(x, y))
//!     .to_vec();
//! let config = MinimalConfiguration::from_parts(points, Vec::new())?;
//! let registry = SolverRegistry::with_builtin();
//! let tol = Tolerances::default();
//!
//! let prediction = registry.predict(&config, &tol)?;
//! let solutions = registry.solve(&config, &tol)?;
//! assert_eq!(prediction.real, 1);
//! assert_eq!(solutions.real_count(), 1);
//! // x² + y² - 2 = 0, up to scale and sign.
//! let k = solutions.real_conics[0].normalized_coefficients();
//! assert!((k[0] - k[2]).abs() < 1e-12 && (k[5] + 2.0 * k[0]).abs() < 1e-12);
//! # Ok::<(), conic_core::ConicError>(())
//! ```

#![forbid(unsafe_code)]

pub mod conic;
mod error;
pub mod oracle;
pub mod projective;
pub mod selfpolar;
pub mod solvers;
mod tolerance;

pub use conic::{ConicClass, ConicMatrix};
pub use error::{ConicError, GeneralPositionClause, Result};
pub use projective::{HomogeneousPoint, Mat3, Orientation, ProjectiveLine, Vec3};
pub use solvers::{
    CountPrediction, CountRule, MinimalConfiguration, MinimalSolver, SolutionSet, SolverRegistry,
};
pub use tolerance::Tolerances;
