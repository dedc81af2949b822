//! The diagonal triangle of a quadrangle and the conics it is self-polar for.
//!
//! For four points `x̂₁..x̂₄` in general position the diagonal triangle has
//! vertices
//!
//! ```text
//! ξ₁ = (x̂₁ × x̂₂) × (x̂₃ × x̂₄)
//! ξ₂ = (x̂₁ × x̂₃) × (x̂₂ × x̂₄)
//! ξ₃ = (x̂₁ × x̂₄) × (x̂₂ × x̂₃)
//! ```
//!
//! and every conic through the four points is `Ξ⁻ᵀ Diag(−s, s−1, 1) Ξ⁻¹`
//! with `Ξ = [ξ₁ ξ₂ ξ₃]`. The vertices are kept at exactly this scale: in
//! these coordinates the four points map to `(∓1, 1, ±1)` patterns, and the
//! pencil formula only holds for that normalization.

use crate::conic::ConicMatrix;
use crate::error::{ConicError, GeneralPositionClause, Result};
use crate::projective::{
    adjugate3, collinear, cross, det3, det_columns, HomogeneousPoint, Mat3, Vec3,
};

/// Index triples of a quadrangle, in the order they are checked.
pub(crate) const QUADRANGLE_TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalTriangle {
    xi: [Vec3; 3],
    source: [Vec3; 4],
}

impl DiagonalTriangle {
    pub fn vertices(&self) -> &[Vec3; 3] {
        &self.xi
    }

    /// Vertex `i` in 1..=3.
    pub fn xi(&self, i: usize) -> &Vec3 {
        &self.xi[i - 1]
    }

    /// The four generating points as given (the fourth may be unnormalized).
    pub fn source_points(&self) -> &[Vec3; 4] {
        &self.source
    }

    /// `Ξ = [ξ₁ ξ₂ ξ₃]` with the vertices as columns.
    pub fn matrix(&self) -> Mat3 {
        Mat3::from_columns(&self.xi)
    }

    pub fn det(&self) -> f64 {
        det_columns(&self.xi[0], &self.xi[1], &self.xi[2])
    }

    /// `Ξ⁻¹` through the adjugate.
    pub fn inverse(&self) -> Mat3 {
        adjugate3(&self.matrix()) / self.det()
    }

    /// Solves `Ξ β = x`.
    pub fn coordinates_of(&self, x: &Vec3) -> Vec3 {
        adjugate3(&self.matrix()) * x / self.det()
    }

    /// `ξᵢᵀ l` for the three vertices.
    pub fn pairings(&self, l: &Vec3) -> [f64; 3] {
        [self.xi[0].dot(l), self.xi[1].dot(l), self.xi[2].dot(l)]
    }
}

/// Diagonal triangle of four normalized points.
pub fn diagonal_triangle(
    x1: &HomogeneousPoint,
    x2: &HomogeneousPoint,
    x3: &HomogeneousPoint,
    x4: &HomogeneousPoint,
    tol: f64,
) -> Result<DiagonalTriangle> {
    diagonal_triangle_raw(
        [*x1.vector(), *x2.vector(), *x3.vector(), *x4.vector()],
        tol,
    )
}

/// Diagonal triangle of four homogeneous vectors at whatever scale they come in.
///
/// The three-points-two-lines solver places its fourth point at `t·x̂₁ + p`,
/// which is generally not normalized (and may be at infinity); scaling one
/// input scales all three vertices alike, so the pencil is unaffected.
pub fn diagonal_triangle_raw(points: [Vec3; 4], tol: f64) -> Result<DiagonalTriangle> {
    if let Some(triple) = QUADRANGLE_TRIPLES
        .iter()
        .find(|t| collinear(&points[t[0]], &points[t[1]], &points[t[2]], tol))
    {
        return Err(ConicError::GeneralPosition(
            GeneralPositionClause::CollinearPoints(*triple),
        ));
    }
    let [x1, x2, x3, x4] = &points;
    let xi = [
        cross(&cross(x1, x2), &cross(x3, x4)),
        cross(&cross(x1, x3), &cross(x2, x4)),
        cross(&cross(x1, x4), &cross(x2, x3)),
    ];
    Ok(DiagonalTriangle { xi, source: points })
}

/// The same vertices written as determinant combinations of the points:
/// `ξ₁ = |x₁x₂x₄| x₃ − |x₁x₂x₃| x₄`, `ξ₂ = |x₁x₃x₄| x₂ + |x₁x₂x₃| x₄`,
/// `ξ₃ = |x₁x₂x₄| x₃ − |x₁x₃x₄| x₂`.
pub fn diagonal_vertices_by_determinants(points: &[Vec3; 4]) -> [Vec3; 3] {
    let [x1, x2, x3, x4] = points;
    let d123 = det_columns(x1, x2, x3);
    let d124 = det_columns(x1, x2, x4);
    let d134 = det_columns(x1, x3, x4);
    [
        x3 * d124 - x4 * d123,
        x2 * d134 + x4 * d123,
        x3 * d124 - x2 * d134,
    ]
}

/// Basis `B₁, B₂, B₃` of the symmetric matrices with `ξᵢᵀ B ξⱼ = 0` for `i ≠ j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfPolarBasis {
    pub b1: ConicMatrix,
    pub b2: ConicMatrix,
    pub b3: ConicMatrix,
}

impl SelfPolarBasis {
    pub fn members(&self) -> [&ConicMatrix; 3] {
        [&self.b1, &self.b2, &self.b3]
    }

    /// `λ₁B₁ + λ₂B₂ + λ₃B₃`.
    pub fn combine(&self, lambda: [f64; 3]) -> ConicMatrix {
        ConicMatrix::from_matrix(
            self.b1.matrix() * lambda[0]
                + self.b2.matrix() * lambda[1]
                + self.b3.matrix() * lambda[2],
        )
    }
}

/// `Bᵢ = det(Ξ) Ξ⁻ᵀ Diag(eᵢ) Ξ⁻¹`.
pub fn self_polar_basis(t: &DiagonalTriangle) -> SelfPolarBasis {
    let inv = t.inverse();
    let det = t.det();
    let member = |i: usize| {
        let mut e = Vec3::zeros();
        e[i] = 1.0;
        ConicMatrix::from_matrix(inv.transpose() * Mat3::from_diagonal(&e) * inv * det)
    };
    SelfPolarBasis {
        b1: member(0),
        b2: member(1),
        b3: member(2),
    }
}

/// Coordinates `β` with `Ξ β = x̂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleCoords {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

impl TriangleCoords {
    pub fn values(&self) -> [f64; 3] {
        [self.beta1, self.beta2, self.beta3]
    }
}

pub fn triangle_coords(t: &DiagonalTriangle, x: &HomogeneousPoint) -> TriangleCoords {
    let b = t.coordinates_of(x.vector());
    TriangleCoords {
        beta1: b[0],
        beta2: b[1],
        beta3: b[2],
    }
}

/// True when `x` lies on one of the six lines joining the four generating
/// points, detected as two of `|β₁|, |β₂|, |β₃|` being equal.
///
/// `tol` is relative to `max |βᵢ|`.
pub fn lies_on_quadrangle_side(t: &DiagonalTriangle, x: &HomogeneousPoint, tol: f64) -> bool {
    let b = triangle_coords(t, x).values().map(f64::abs);
    let max = b.iter().fold(0.0f64, |m, &v| m.max(v));
    if max == 0.0 {
        return true;
    }
    (0..3).any(|i| ((i + 1)..3).any(|j| (b[i] - b[j]).abs() <= tol * max))
}

/// Free parameter of the pencil through four points; `0` and `1` give the
/// two line pairs `x̂₁x̂₃ ∪ x̂₂x̂₄`-style degenerate members.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PencilParameter(pub f64);

impl PencilParameter {
    pub fn is_degenerate(&self, tol: f64) -> bool {
        self.0.abs() <= tol || (self.0 - 1.0).abs() <= tol
    }
}

/// `C = Ξ⁻ᵀ Diag(−s, s−1, 1) Ξ⁻¹`, the member of the pencil through the
/// four generating points.
pub fn pencil_conic(t: &DiagonalTriangle, s: PencilParameter, tol: f64) -> Result<ConicMatrix> {
    if s.is_degenerate(tol) {
        return Err(ConicError::DegenerateParameter(s.0));
    }
    Ok(pencil_member(t, s.0))
}

/// `Ξ⁻ᵀ Diag(w) Ξ⁻¹` for a weight vector `w ∝ (−s, s−1, 1)`.
///
/// Solvers that find `s` as a ratio pass the numerator and denominator
/// through `w` unscaled, so a parameter very close to 0 or 1 keeps its
/// relative precision. Fails only when a weight is lost in rounding.
pub(crate) fn pencil_member_weighted(t: &DiagonalTriangle, w: Vec3) -> Result<ConicMatrix> {
    if w.iter().any(|v| v.abs() <= 8.0 * f64::EPSILON * w.amax()) {
        return Err(ConicError::DegenerateParameter(-w[0] / w[2]));
    }
    let inv = t.inverse();
    Ok(ConicMatrix::from_matrix(
        inv.transpose() * Mat3::from_diagonal(&w) * inv,
    ))
}

/// [`pencil_conic`] without the degeneracy check.
pub(crate) fn pencil_member(t: &DiagonalTriangle, s: f64) -> ConicMatrix {
    let inv = t.inverse();
    let d = Mat3::from_diagonal(&Vec3::new(-s, s - 1.0, 1.0));
    ConicMatrix::from_matrix(inv.transpose() * d * inv)
}

/// Whether `det(Ξ)` is clear of zero relative to the vertex norms.
pub fn triangle_is_proper(t: &DiagonalTriangle) -> bool {
    let m = t.matrix();
    let scale = t.xi.iter().map(|v| v.norm()).product::<f64>();
    det3(&m).abs() > 1e-12 * scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conic::point_residual;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const TOL: f64 = 1e-10;

    fn pt(x: f64, y: f64) -> HomogeneousPoint {
        HomogeneousPoint::new(x, y)
    }

    pub(crate) fn square() -> [HomogeneousPoint; 4] {
        [pt(1.0, 1.0), pt(-1.0, 1.0), pt(-1.0, -1.0), pt(1.0, -1.0)]
    }

    fn square_triangle() -> DiagonalTriangle {
        let [a, b, c, d] = square();
        diagonal_triangle(&a, &b, &c, &d, TOL).unwrap()
    }

    fn assert_proportional(v: Vec3, expected: Vec3) {
        assert!(
            cross(&v, &expected).norm() <= 1e-12 * v.norm() * expected.norm(),
            "{v:?} is not proportional to {expected:?}"
        );
    }

    #[test]
    fn square_diagonal_triangle() {
        let t = square_triangle();
        assert_eq!(*t.xi(1), Vec3::new(-8.0, 0.0, 0.0));
        assert_eq!(*t.xi(2), Vec3::new(0.0, 0.0, 8.0));
        assert_eq!(*t.xi(3), Vec3::new(0.0, -8.0, 0.0));
        assert!(triangle_is_proper(&t));
    }

    #[test]
    fn unit_quadrangle_diagonal_triangle() {
        let t = diagonal_triangle(
            &pt(0.0, 0.0),
            &pt(1.0, 0.0),
            &pt(1.0, 1.0),
            &pt(0.0, 1.0),
            TOL,
        )
        .unwrap();
        assert_proportional(*t.xi(1), Vec3::new(1.0, 0.0, 0.0));
        assert_proportional(*t.xi(2), Vec3::new(1.0, 1.0, 2.0));
        assert_proportional(*t.xi(3), Vec3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn collinear_triple_rejected() {
        let err = diagonal_triangle(
            &pt(0.0, 0.0),
            &pt(1.0, 0.0),
            &pt(2.0, 0.0),
            &pt(0.0, 1.0),
            TOL,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ConicError::GeneralPosition(GeneralPositionClause::CollinearPoints([0, 1, 2]))
        );
    }

    #[test]
    fn identity_triangle_basis() {
        let t = DiagonalTriangle {
            xi: [Vec3::x(), Vec3::y(), Vec3::z()],
            source: [Vec3::zeros(); 4],
        };
        let basis = self_polar_basis(&t);
        assert_eq!(
            *basis.b1.matrix(),
            Mat3::from_diagonal(&Vec3::new(1.0, 0.0, 0.0))
        );
        assert_eq!(
            *basis.b2.matrix(),
            Mat3::from_diagonal(&Vec3::new(0.0, 1.0, 0.0))
        );
        assert_eq!(
            *basis.b3.matrix(),
            Mat3::from_diagonal(&Vec3::new(0.0, 0.0, 1.0))
        );
    }

    #[test]
    fn square_basis_is_diagonal_rank_one() {
        let t = square_triangle();
        let basis = self_polar_basis(&t);
        for b in basis.members() {
            let m = b.matrix();
            assert_eq!(*m, m.transpose());
            assert!(m.iter().enumerate().all(|(k, v)| k % 4 == 0 || *v == 0.0));
            assert_eq!(m.iter().filter(|v| **v != 0.0).count(), 1);
            assert_eq!(t.xi(1).dot(&(m * t.xi(3))), 0.0);
        }
    }

    #[test]
    fn square_triangle_coords() {
        let t = square_triangle();
        let b = triangle_coords(&t, &pt(1.0, 1.0)).values();
        assert_proportional(Vec3::from(b), Vec3::new(-1.0, 1.0, -1.0));
        let b = triangle_coords(&t, &pt(2f64.sqrt(), 0.0));
        assert_relative_eq!(b.beta1, -(2f64.sqrt()) / 8.0, epsilon = 1e-15);
        assert_relative_eq!(b.beta2, 0.125, epsilon = 1e-15);
        assert_eq!(b.beta3, 0.0);
        let b = triangle_coords(&t, &pt(-1.0, -1.0)).values();
        assert_proportional(Vec3::from(b), Vec3::new(1.0, 1.0, 1.0));
    }

    #[test]
    fn side_membership() {
        let t = square_triangle();
        assert!(lies_on_quadrangle_side(&t, &pt(0.0, 1.0), 1e-8));
        assert!(!lies_on_quadrangle_side(&t, &pt(2f64.sqrt(), 0.0), 1e-8));
        assert!(lies_on_quadrangle_side(&t, &pt(1.0, 1.0), 1e-8));
        // a diagonal line
        assert!(lies_on_quadrangle_side(&t, &pt(0.3, 0.3), 1e-8));
    }

    #[test]
    fn square_pencil_members() {
        let t = square_triangle();
        let c = pencil_conic(&t, PencilParameter(-1.0), TOL).unwrap();
        assert!(crate::conic::angular_distance(&c, &ConicMatrix::diagonal(1.0, 1.0, -2.0)) < 1e-15);
        let c = pencil_conic(&t, PencilParameter(2.0), TOL).unwrap();
        assert!(crate::conic::angular_distance(&c, &ConicMatrix::diagonal(-2.0, 1.0, 1.0)) < 1e-15);
        assert!(c.evaluate(&Vec3::new(1.0, 1.0, 1.0)).abs() < 1e-15);
        assert_eq!(
            pencil_conic(&t, PencilParameter(0.0), TOL),
            Err(ConicError::DegenerateParameter(0.0))
        );
        assert_eq!(
            pencil_conic(&t, PencilParameter(1.0), TOL),
            Err(ConicError::DegenerateParameter(1.0))
        );
    }

    fn point() -> impl Strategy<Value = HomogeneousPoint> {
        (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(x, y)| pt(x, y))
    }

    fn quad() -> impl Strategy<Value = [HomogeneousPoint; 4]> {
        proptest::array::uniform4(point()).prop_filter("general position", |q| {
            QUADRANGLE_TRIPLES.iter().all(|t| {
                let (a, b, c) = (q[t[0]].vector(), q[t[1]].vector(), q[t[2]].vector());
                det_columns(a, b, c).abs() > 1e-3 * a.norm() * b.norm() * c.norm()
            })
        })
    }

    proptest! {
        #[test]
        fn determinant_form_agrees(q in quad()) {
            let t = diagonal_triangle(&q[0], &q[1], &q[2], &q[3], TOL).unwrap();
            let raw = [*q[0].vector(), *q[1].vector(), *q[2].vector(), *q[3].vector()];
            let alt = diagonal_vertices_by_determinants(&raw);
            for (a, b) in t.vertices().iter().zip(&alt) {
                prop_assert!((a - b).norm() <= 1e-10 * a.norm().max(b.norm()));
            }
        }

        #[test]
        fn generating_points_have_unit_pattern_coords(q in quad()) {
            let t = diagonal_triangle(&q[0], &q[1], &q[2], &q[3], TOL).unwrap();
            let patterns = [
                Vec3::new(-1.0, 1.0, -1.0),
                Vec3::new(1.0, 1.0, -1.0),
                Vec3::new(1.0, 1.0, 1.0),
                Vec3::new(-1.0, 1.0, 1.0),
            ];
            for (x, pattern) in q.iter().zip(&patterns) {
                let b = t.coordinates_of(x.vector());
                prop_assert!(cross(&b, pattern).norm() <= 1e-9 * b.norm() * pattern.norm());
            }
        }

        #[test]
        fn basis_is_self_polar(q in quad()) {
            let t = diagonal_triangle(&q[0], &q[1], &q[2], &q[3], TOL).unwrap();
            for b in self_polar_basis(&t).members() {
                let m = b.matrix();
                for i in 0..3 {
                    for j in 0..3 {
                        if i != j {
                            let (u, v) = (&t.vertices()[i], &t.vertices()[j]);
                            prop_assert!(u.dot(&(m * v)).abs() <= 1e-9 * m.norm() * u.norm() * v.norm());
                        }
                    }
                }
            }
        }

        #[test]
        fn pencil_passes_through_generators(q in quad(), s in -20.0..20.0f64) {
            prop_assume!(s.abs() > 1e-3 && (s - 1.0).abs() > 1e-3);
            let t = diagonal_triangle(&q[0], &q[1], &q[2], &q[3], TOL).unwrap();
            let c = pencil_conic(&t, PencilParameter(s), TOL).unwrap();
            for x in &q {
                prop_assert!(point_residual(&c, x.vector()) <= 1e-9);
            }
            prop_assert!(c.det() != 0.0);
        }

        #[test]
        fn side_test_matches_five_point_degeneracy(q in quad(), x5 in point()) {
            let t = diagonal_triangle(&q[0], &q[1], &q[2], &q[3], TOL).unwrap();
            let b = triangle_coords(&t, &x5).values();
            let sq = b.map(|v| v * v);
            let max = sq.iter().fold(0.0f64, |m, &v| m.max(v));
            let diag = [sq[2] - sq[1], sq[0] - sq[2], sq[1] - sq[0]];
            // |βᵢ| ≈ |βⱼ| ⇔ βᵢ² ≈ βⱼ²; compare on the squared scale with a margin
            let has_zero = diag.iter().any(|d| d.abs() <= 1e-8 * max);
            let clear = diag.iter().all(|d| d.abs() > 1e-6 * max);
            if clear || has_zero {
                prop_assert_eq!(lies_on_quadrangle_side(&t, &x5, 1e-8), has_zero);
            }
        }
    }
}
