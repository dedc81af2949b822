use super::{CountPrediction, CountRule, MinimalConfiguration, MinimalSolver, SolutionSet};
use crate::conic::ConicMatrix;
use crate::error::{GeneralPositionClause, Result};
use crate::projective::{collinear, HomogeneousPoint, Mat3, Vec3};
use crate::selfpolar::diagonal_triangle;
use crate::tolerance::Tolerances;

fn check_five_points(pts: &[HomogeneousPoint; 5], tol: f64) -> Result<()> {
    for i in 0..5 {
        for j in (i + 1)..5 {
            for k in (j + 1)..5 {
                if collinear(pts[i].vector(), pts[j].vector(), pts[k].vector(), tol) {
                    return Err(GeneralPositionClause::CollinearPoints([i, j, k]).into());
                }
            }
        }
    }
    Ok(())
}

/// The unique conic through five points.
///
/// With `β = Ξ⁻¹ x̂₅` for the diagonal triangle of the first four points,
/// `C = Ξ⁻ᵀ Diag(β₃² − β₂², β₁² − β₃², β₂² − β₁²) Ξ⁻¹`.
pub fn solve_five_points(pts: &[HomogeneousPoint; 5], tol: &Tolerances) -> Result<ConicMatrix> {
    check_five_points(pts, tol.incidence)?;
    let t = diagonal_triangle(&pts[0], &pts[1], &pts[2], &pts[3], tol.incidence)?;
    let inv = t.inverse();
    let beta = inv * pts[4].vector();
    let sq = beta.map(|b| b * b);
    let d = Vec3::new(sq[2] - sq[1], sq[0] - sq[2], sq[1] - sq[0]);
    Ok(ConicMatrix::from_matrix(
        inv.transpose() * Mat3::from_diagonal(&d) * inv,
    ))
}

#[derive(Debug, Default, Clone, Copy)]
pub struct FivePointSolver;

impl MinimalSolver for FivePointSolver {
    fn name(&self) -> &'static str {
        "5p"
    }

    fn shape(&self) -> (usize, usize) {
        (5, 0)
    }

    fn solve(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<SolutionSet> {
        let MinimalConfiguration::FivePoints(pts) = config else {
            return Err(self.shape_error());
        };
        let conic = solve_five_points(pts, tol)?;
        let t = diagonal_triangle(&pts[0], &pts[1], &pts[2], &pts[3], tol.incidence)?;
        let beta = t.coordinates_of(pts[4].vector()).map(|b| b * b);
        let mut out = SolutionSet {
            real_conics: vec![conic],
            complex_count: 0,
            case_label: "5p".into(),
            diagnostics: Default::default(),
        };
        out.diagnostics.s_values = vec![(beta[1] - beta[2]) / (beta[1] - beta[0])];
        out.record_residuals(pts, &[]);
        Ok(out)
    }

    fn predict(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<CountPrediction> {
        let MinimalConfiguration::FivePoints(pts) = config else {
            return Err(self.shape_error());
        };
        check_five_points(pts, tol.incidence)?;
        Ok(CountPrediction {
            real: 1,
            complex: 0,
            rule: CountRule::FivePointsUnique,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::{angular_distance, point_residual};

    fn pt(x: f64, y: f64) -> HomogeneousPoint {
        HomogeneousPoint::new(x, y)
    }

    #[test]
    fn square_plus_fifth_point_is_circle() {
        let s2 = 2f64.sqrt();
        let pts = [
            pt(1.0, 1.0),
            pt(-1.0, 1.0),
            pt(-1.0, -1.0),
            pt(1.0, -1.0),
            pt(s2, 0.0),
        ];
        let c = solve_five_points(&pts, &Tolerances::default()).unwrap();
        assert!(angular_distance(&c, &ConicMatrix::diagonal(1.0, 1.0, -2.0)) < 1e-15);
    }

    #[test]
    fn unit_circle_from_five_points() {
        let h = 2f64.sqrt() / 2.0;
        let pts = [
            pt(1.0, 0.0),
            pt(0.0, 1.0),
            pt(-1.0, 0.0),
            pt(0.0, -1.0),
            pt(h, h),
        ];
        let c = solve_five_points(&pts, &Tolerances::default()).unwrap();
        assert!(angular_distance(&c, &ConicMatrix::diagonal(1.0, 1.0, -1.0)) < 1e-15);
        for p in &pts {
            assert!(point_residual(&c, p.vector()) < 1e-15);
        }
    }

    #[test]
    fn collinear_triple_rejected() {
        let pts = [
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(2.0, 0.0),
            pt(0.0, 1.0),
            pt(1.0, 1.0),
        ];
        assert_eq!(
            solve_five_points(&pts, &Tolerances::default()),
            Err(GeneralPositionClause::CollinearPoints([0, 1, 2]).into())
        );
        // a triple involving the fifth point is also caught
        let pts = [
            pt(0.0, 0.0),
            pt(1.0, 0.0),
            pt(0.0, 1.0),
            pt(1.0, 2.0),
            pt(2.0, 4.0),
        ];
        assert_eq!(
            solve_five_points(&pts, &Tolerances::default()),
            Err(GeneralPositionClause::CollinearPoints([0, 3, 4]).into())
        );
    }
}
