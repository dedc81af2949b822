//! Homogeneous coordinates of the real projective plane and the sign
//! predicates used for case dispatch.
//!
//! Every predicate takes an explicit relative tolerance. A value within the
//! band is reported as zero (incident, collinear), never as a sign.

use nalgebra::{Matrix3, Vector3};

use crate::error::{ConicError, Result};

pub type Vec3 = Vector3<f64>;
pub type Mat3 = Matrix3<f64>;

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    Vec3::new(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
}

/// Determinant by cofactor expansion along the first row.
pub fn det3(m: &Mat3) -> f64 {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

/// `det([a, b, c])` with the vectors as columns.
pub fn det_columns(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    a.dot(&cross(b, c))
}

/// Classical adjugate: `adjugate(m) * m = det(m) * I`.
pub fn adjugate3(m: &Mat3) -> Mat3 {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| {
        m[(r0, c0)] * m[(r1, c1)] - m[(r0, c1)] * m[(r1, c0)]
    };
    // adj[i][j] = cofactor[j][i]
    Mat3::new(
        c(1, 2, 1, 2),
        -c(0, 2, 1, 2),
        c(0, 1, 1, 2),
        -c(1, 2, 0, 2),
        c(0, 2, 0, 2),
        -c(0, 1, 0, 2),
        c(1, 2, 0, 1),
        -c(0, 2, 0, 1),
        c(0, 1, 0, 1),
    )
}

/// Solves `m * x = b` by Cramer's rule. Returns `None` when `det(m)` is zero.
pub fn solve3(m: &Mat3, b: &Vec3) -> Option<Vec3> {
    let d = det3(m);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    Some(adjugate3(m) * b / d)
}

/// `|det([a, b, c])|` is within `tol` of zero, relative to `‖a‖‖b‖‖c‖`.
pub fn collinear(a: &Vec3, b: &Vec3, c: &Vec3, tol: f64) -> bool {
    det_columns(a, b, c).abs() <= tol * a.norm() * b.norm() * c.norm()
}

/// `|xᵀl|` is within `tol` of zero, relative to `‖x‖‖l‖`.
pub fn incident(x: &Vec3, l: &Vec3, tol: f64) -> bool {
    x.dot(l).abs() <= tol * x.norm() * l.norm()
}

/// A finite point stored with its third coordinate equal to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomogeneousPoint(Vec3);

impl HomogeneousPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self(Vec3::new(x, y, 1.0))
    }

    pub fn x(&self) -> f64 {
        self.0[0]
    }

    pub fn y(&self) -> f64 {
        self.0[1]
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }

    /// Image under a projective map; fails if the image is at infinity.
    pub fn transformed(&self, h: &Mat3, infinity_tol: f64) -> Result<Self> {
        normalize_point(&(h * self.0), infinity_tol)
    }
}

/// Divides through by `w`.
///
/// Rejects `|w| <= infinity_tol * ‖v‖` as a point at infinity.
pub fn normalize_point(v: &Vec3, infinity_tol: f64) -> Result<HomogeneousPoint> {
    if !v.iter().all(|c| c.is_finite()) {
        return Err(ConicError::NonFinite);
    }
    let w = v[2];
    if w.abs() <= infinity_tol * v.norm() {
        return Err(ConicError::PointAtInfinity(v[0], v[1], v[2]));
    }
    Ok(HomogeneousPoint(Vec3::new(v[0] / w, v[1] / w, 1.0)))
}

/// The line `a x + b y + c w = 0`, up to nonzero scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveLine(Vec3);

impl ProjectiveLine {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::from_vector(Vec3::new(a, b, c))
    }

    pub fn from_vector(v: Vec3) -> Result<Self> {
        if !v.iter().all(|c| c.is_finite()) {
            return Err(ConicError::NonFinite);
        }
        if v.iter().all(|&c| c == 0.0) {
            return Err(ConicError::ZeroLine);
        }
        Ok(Self(v))
    }

    /// The line through two distinct points.
    pub fn through(p: &HomogeneousPoint, q: &HomogeneousPoint) -> Result<Self> {
        Self::from_vector(cross(p.vector(), q.vector()))
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }

    /// Image of the line under the point map `h` (transforms by `h⁻ᵀ`).
    pub fn transformed(&self, h: &Mat3) -> Result<Self> {
        let inv_t = h
            .try_inverse()
            .ok_or_else(|| ConicError::DegenerateCase("singular transform".into()))?
            .transpose();
        Self::from_vector(inv_t * self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Anticlockwise,
    Collinear,
}

impl Orientation {
    fn from_det(det: f64, band: f64) -> Self {
        if det > band {
            Self::Anticlockwise
        } else if det < -band {
            Self::Clockwise
        } else {
            Self::Collinear
        }
    }
}

/// Turning direction of `p1 → p2 → p3`, from the sign of `det([p1 p2 p3])`.
pub fn orientation(
    p1: &HomogeneousPoint,
    p2: &HomogeneousPoint,
    p3: &HomogeneousPoint,
    tol: f64,
) -> Orientation {
    orientation_raw(p1.vector(), p2.vector(), p3.vector(), tol)
}

/// [`orientation`] on raw homogeneous vectors; the sign depends on their scales.
pub fn orientation_raw(a: &Vec3, b: &Vec3, c: &Vec3, tol: f64) -> Orientation {
    let band = tol * a.norm() * b.norm() * c.norm();
    Orientation::from_det(det_columns(a, b, c), band)
}

/// Which side of `l` the point lies on: the sign of `x̂ᵀl`, or 0 on the line.
pub fn side_sign(p: &HomogeneousPoint, l: &ProjectiveLine, tol: f64) -> i8 {
    signed_band(
        p.vector().dot(l.vector()),
        tol * p.vector().norm() * l.vector().norm(),
    )
}

pub(crate) fn signed_band(value: f64, band: f64) -> i8 {
    if value > band {
        1
    } else if value < -band {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const TOL: f64 = 1e-10;

    fn pt(x: f64, y: f64) -> HomogeneousPoint {
        HomogeneousPoint::new(x, y)
    }

    #[test]
    fn cross_examples() {
        assert_eq!(
            cross(&Vec3::new(1.0, 0.0, 0.0), &Vec3::new(0.0, 1.0, 0.0)),
            Vec3::new(0.0, 0.0, 1.0)
        );
        assert_eq!(
            cross(&Vec3::new(1.0, 1.0, 1.0), &Vec3::new(-1.0, 1.0, 1.0)),
            Vec3::new(0.0, -2.0, 2.0)
        );
        let v = Vec3::new(3.0, -2.0, 7.5);
        assert_eq!(cross(&v, &v), Vec3::zeros());
    }

    #[test]
    fn det3_examples() {
        assert_eq!(det3(&Mat3::identity()), 1.0);
        let m = Mat3::from_columns(&[
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(-1.0, 1.0, 1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ]);
        assert_eq!(det3(&m), 4.0);
        let c = Vec3::new(2.0, -1.0, 0.5);
        let m = Mat3::from_columns(&[c, Vec3::new(0.3, 9.0, 1.0), c]);
        assert_eq!(det3(&m), 0.0);
    }

    #[test]
    fn normalize_point_examples() {
        let p = normalize_point(&Vec3::new(2.0, 4.0, 2.0), 1e-12).unwrap();
        assert_eq!(*p.vector(), Vec3::new(1.0, 2.0, 1.0));
        let p = normalize_point(&Vec3::new(1.0, 0.0, 1.0), 1e-12).unwrap();
        assert_eq!(*p.vector(), Vec3::new(1.0, 0.0, 1.0));
        assert!(matches!(
            normalize_point(&Vec3::new(1.0, 0.0, 0.0), 1e-12),
            Err(ConicError::PointAtInfinity(..))
        ));
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(
            orientation(&pt(0.0, 0.0), &pt(1.0, 0.0), &pt(0.0, 1.0), TOL),
            Orientation::Anticlockwise
        );
        assert_eq!(
            orientation(&pt(0.0, 0.0), &pt(0.0, 1.0), &pt(1.0, 0.0), TOL),
            Orientation::Clockwise
        );
        assert_eq!(
            orientation(&pt(0.0, 0.0), &pt(1.0, 1.0), &pt(2.0, 2.0), TOL),
            Orientation::Collinear
        );
    }

    #[test]
    fn side_sign_examples() {
        let l = ProjectiveLine::new(1.0, 1.0, -3.0).unwrap();
        assert_eq!(side_sign(&pt(1.0, 1.0), &l, TOL), -1);
        assert_eq!(side_sign(&pt(3.0, 3.0), &l, TOL), 1);
        assert_eq!(side_sign(&pt(1.0, 2.0), &l, TOL), 0);
    }

    #[test]
    fn zero_line_rejected() {
        assert_eq!(
            ProjectiveLine::new(0.0, 0.0, 0.0),
            Err(ConicError::ZeroLine)
        );
    }

    #[test]
    fn adjugate_identity() {
        let m = Mat3::new(2.0, -1.0, 0.5, 3.0, 4.0, -2.0, 0.25, 1.0, 7.0);
        let lhs = adjugate3(&m) * m;
        let rhs = Mat3::identity() * det3(&m);
        assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn vec3() -> impl Strategy<Value = Vec3> {
        (coord(), coord(), coord()).prop_map(|(a, b, c)| Vec3::new(a, b, c))
    }

    proptest! {
        #[test]
        fn cross_is_orthogonal(a in vec3(), b in vec3()) {
            let c = cross(&a, &b);
            let scale = a.norm() * b.norm() * (a.norm() + b.norm()) + 1e-300;
            prop_assert!(c.dot(&a).abs() <= 1e-13 * scale);
            prop_assert!(c.dot(&b).abs() <= 1e-13 * scale);
        }

        #[test]
        fn det_alternates_under_column_swap(a in vec3(), b in vec3(), c in vec3()) {
            let d = det_columns(&a, &b, &c);
            let scale = a.norm() * b.norm() * c.norm() + 1e-300;
            prop_assert!((det_columns(&b, &a, &c) + d).abs() <= 1e-13 * scale);
            prop_assert!((det_columns(&b, &c, &a) - d).abs() <= 1e-13 * scale);
        }

        #[test]
        fn orientation_permutation_parity(
            a in (coord(), coord()), b in (coord(), coord()), c in (coord(), coord())
        ) {
            let (p, q, r) = (pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1));
            let o = orientation(&p, &q, &r, TOL);
            prop_assert_eq!(orientation(&q, &r, &p, TOL), o);
            prop_assert_eq!(orientation(&r, &p, &q, TOL), o);
            let flipped = match o {
                Orientation::Clockwise => Orientation::Anticlockwise,
                Orientation::Anticlockwise => Orientation::Clockwise,
                Orientation::Collinear => Orientation::Collinear,
            };
            prop_assert_eq!(orientation(&q, &p, &r, TOL), flipped);
        }

        #[test]
        fn side_sign_scales_with_line(
            p in (coord(), coord()), l in vec3(), k in 0.01..100.0f64
        ) {
            prop_assume!(l.norm() > 1e-3);
            let p = pt(p.0, p.1);
            let line = ProjectiveLine::from_vector(l).unwrap();
            let s = side_sign(&p, &line, TOL);
            let pos = ProjectiveLine::from_vector(l * k).unwrap();
            let neg = ProjectiveLine::from_vector(l * -k).unwrap();
            prop_assert_eq!(side_sign(&p, &pos, TOL), s);
            prop_assert_eq!(side_sign(&p, &neg, TOL), -s);
        }
    }
}
