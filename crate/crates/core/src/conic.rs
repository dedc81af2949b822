//! Conic matrices and the operations the solvers need on them: duality,
//! affine classification, residuals, degenerate-conic splitting and the
//! intersection of two conics through their degenerate pencil members.

use nalgebra::{SMatrix, SVector, SymmetricEigen};

use crate::error::{ConicError, Result};
use crate::projective::{adjugate3, cross, det3, HomogeneousPoint, Mat3, ProjectiveLine, Vec3};

/// A real symmetric 3×3 matrix `C`, the conic `xᵀ C x = 0`.
///
/// The coefficient vector is `(a, b, c, d, e, f)` for
/// `a x² + b xy + c y² + d xw + e yw + f w² = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicMatrix(Mat3);

impl ConicMatrix {
    /// Symmetrizes `m`.
    pub fn from_matrix(m: Mat3) -> Self {
        Self((m + m.transpose()) * 0.5)
    }

    pub fn from_coefficients(k: [f64; 6]) -> Self {
        let [a, b, c, d, e, f] = k;
        Self(Mat3::new(
            a,
            b / 2.0,
            d / 2.0,
            b / 2.0,
            c,
            e / 2.0,
            d / 2.0,
            e / 2.0,
            f,
        ))
    }

    pub fn diagonal(a: f64, b: f64, c: f64) -> Self {
        Self(Mat3::from_diagonal(&Vec3::new(a, b, c)))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn coefficients(&self) -> [f64; 6] {
        let m = &self.0;
        [
            m[(0, 0)],
            2.0 * m[(0, 1)],
            m[(1, 1)],
            2.0 * m[(0, 2)],
            2.0 * m[(1, 2)],
            m[(2, 2)],
        ]
    }

    pub fn det(&self) -> f64 {
        det3(&self.0)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self(self.0 * k)
    }

    /// Output normalization: unit Euclidean norm of the coefficient vector,
    /// with the first component of largest magnitude made positive.
    ///
    /// Magnitudes within a relative 1e-9 of the maximum count as tied, so
    /// rounding noise cannot flip the sign of a conic like `x² + y² - w²`.
    pub fn normalized(&self) -> Self {
        let k = self.coefficients();
        let norm = k.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return *self;
        }
        let max = k.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let lead = k
            .iter()
            .find(|v| v.abs() >= max * (1.0 - 1e-9))
            .copied()
            .unwrap_or(1.0);
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        self.scaled(sign / norm)
    }

    /// Normalized coefficient vector.
    pub fn normalized_coefficients(&self) -> [f64; 6] {
        self.normalized().coefficients()
    }

    pub fn evaluate(&self, x: &Vec3) -> f64 {
        x.dot(&(self.0 * x))
    }

    /// Image under the point map `h`: `h⁻ᵀ C h⁻¹`.
    pub fn transformed(&self, h: &Mat3) -> Option<Self> {
        let inv = h.try_inverse()?;
        Some(Self::from_matrix(inv.transpose() * self.0 * inv))
    }
}

/// Angle between two normalized coefficient vectors, treating `k` and `-k`
/// as the same conic.
pub fn angular_distance(a: &ConicMatrix, b: &ConicMatrix) -> f64 {
    let ka = a.normalized_coefficients();
    let kb = b.normalized_coefficients();
    let norm = |sign: f64| {
        ka.iter()
            .zip(&kb)
            .map(|(x, y)| (x - sign * y).powi(2))
            .sum::<f64>()
            .sqrt()
    };
    let (minus, plus) = (norm(1.0), norm(-1.0));
    2.0 * minus.min(plus).atan2(minus.max(plus))
}

/// `adj(C)`, the dual conic of a non-degenerate `C` up to scale.
pub fn adjugate(c: &ConicMatrix) -> ConicMatrix {
    ConicMatrix::from_matrix(adjugate3(c.matrix()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConicClass {
    RealEllipse,
    ImaginaryEllipse,
    Parabola,
    Hyperbola,
    DegenerateLinePair,
    DegenerateDoubleLine,
    /// Two conjugate complex lines through one real point.
    DegeneratePoint,
}

impl ConicClass {
    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            Self::DegenerateLinePair | Self::DegenerateDoubleLine | Self::DegeneratePoint
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::RealEllipse => "RealEllipse",
            Self::ImaginaryEllipse => "ImaginaryEllipse",
            Self::Parabola => "Parabola",
            Self::Hyperbola => "Hyperbola",
            Self::DegenerateLinePair => "DegenerateLinePair",
            Self::DegenerateDoubleLine => "DegenerateDoubleLine",
            Self::DegeneratePoint => "DegeneratePoint",
        }
    }
}

/// Rank and signature of a symmetric matrix, with eigenvalues below
/// `rank_tol` times the spectral radius treated as zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }
}

pub fn inertia(m: &Mat3, rank_tol: f64) -> Inertia {
    inertia_with_scale(m, rank_tol, None)
}

fn inertia_with_scale(m: &Mat3, rank_tol: f64, scale: Option<f64>) -> Inertia {
    let eig = SymmetricEigen::new((m + m.transpose()) * 0.5).eigenvalues;
    let radius = eig.iter().fold(0.0f64, |r, v| r.max(v.abs()));
    let band = rank_tol * scale.unwrap_or(radius).max(radius);
    Inertia {
        positive: eig.iter().filter(|&&v| v > band).count(),
        negative: eig.iter().filter(|&&v| v < -band).count(),
    }
}

/// Affine type of the conic, from `det(C)` and the leading 2×2 minor.
///
/// Zero tests are relative to the spectral radius `ρ` of `C`: `det` against
/// `tol·ρ³`, the minor against `tol·ρ²`.
pub fn classify(c: &ConicMatrix, tol: f64) -> ConicClass {
    let m = c.matrix();
    let eig = SymmetricEigen::new(*m).eigenvalues;
    let radius = eig.iter().fold(0.0f64, |r, v| r.max(v.abs()));
    if radius == 0.0 {
        return ConicClass::DegenerateDoubleLine;
    }
    let det = det3(m);
    let minor = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let det_zero = det.abs() <= tol * radius.powi(3);
    let minor_zero = minor.abs() <= tol * radius * radius;

    if det_zero {
        let inertia = inertia(m, tol);
        return match inertia.rank() {
            0 | 1 => ConicClass::DegenerateDoubleLine,
            2 if inertia.positive == 1 => ConicClass::DegenerateLinePair,
            2 => ConicClass::DegeneratePoint,
            // det is tiny but the spectrum says full rank: trust the spectrum
            _ => classify_nondegenerate(det, minor, minor_zero, m),
        };
    }
    classify_nondegenerate(det, minor, minor_zero, m)
}

fn classify_nondegenerate(det: f64, minor: f64, minor_zero: bool, m: &Mat3) -> ConicClass {
    if minor_zero {
        ConicClass::Parabola
    } else if minor < 0.0 {
        ConicClass::Hyperbola
    } else if det * (m[(0, 0)] + m[(1, 1)]) < 0.0 {
        ConicClass::RealEllipse
    } else {
        ConicClass::ImaginaryEllipse
    }
}

/// `|xᵀCx| / (‖C‖·‖x‖²)` with the Frobenius norm.
pub fn point_residual(c: &ConicMatrix, x: &Vec3) -> f64 {
    let denom = c.matrix().norm() * x.norm_squared();
    if denom == 0.0 {
        return 0.0;
    }
    c.evaluate(x).abs() / denom
}

/// `|lᵀ adj(C) l| / (‖adj(C)‖·‖l‖²)`; zero means `l` is tangent to `C`.
pub fn tangency_residual(c: &ConicMatrix, l: &Vec3) -> f64 {
    let adj = adjugate3(c.matrix());
    let denom = adj.norm() * l.norm_squared();
    if denom == 0.0 {
        return 0.0;
    }
    l.dot(&(adj * l)).abs() / denom
}

/// Worst point and tangency residual of `c` against the constraints.
pub fn max_residual(c: &ConicMatrix, points: &[Vec3], lines: &[Vec3]) -> f64 {
    let inc = points.iter().map(|x| point_residual(c, x));
    let tan = lines.iter().map(|l| tangency_residual(c, l));
    inc.chain(tan).fold(0.0, f64::max)
}

/// Gauss-Newton refinement of a conic meeting exactly five point and
/// tangency constraints. Steps stay orthogonal to `c` and are kept only while
/// they lower [`max_residual`].
pub fn refine_conic(c: &ConicMatrix, points: &[Vec3], lines: &[Vec3], steps: usize) -> ConicMatrix {
    if points.len() + lines.len() != 5 {
        return *c;
    }
    let basis: [Mat3; 6] = [(0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2)].map(|(i, j)| {
        let mut e = Mat3::zeros();
        e[(i, j)] = 1.0;
        e[(j, i)] = 1.0;
        e
    });
    let tangency = |m: &Mat3, l: &Vec3| l.dot(&(adjugate3(m) * l)) / l.norm_squared();
    let mut best = c.normalized();
    let mut merit = max_residual(&best, points, lines);
    for _ in 0..steps {
        let m = *best.matrix();
        let mut jac = SMatrix::<f64, 6, 6>::zeros();
        let mut rhs = SVector::<f64, 6>::zeros();
        for (row, x) in points.iter().enumerate() {
            let n = x.norm_squared();
            rhs[row] = -x.dot(&(m * x)) / n;
            for (k, e) in basis.iter().enumerate() {
                jac[(row, k)] = x.dot(&(e * x)) / n;
            }
        }
        for (i, l) in lines.iter().enumerate() {
            let row = points.len() + i;
            rhs[row] = -tangency(&m, l);
            for (k, e) in basis.iter().enumerate() {
                // exact: the adjugate is quadratic in the entries
                jac[(row, k)] = (tangency(&(m + e), l) - tangency(&(m - e), l)) / 2.0;
            }
        }
        for (k, e) in basis.iter().enumerate() {
            jac[(5, k)] = m.component_mul(e).sum();
        }
        let Some(delta) = jac.lu().solve(&rhs) else {
            break;
        };
        let step = basis
            .iter()
            .zip(delta.iter())
            .fold(m, |acc, (e, d)| acc + e * *d);
        let next = ConicMatrix::from_matrix(step).normalized();
        let next_merit = max_residual(&next, points, lines);
        if next_merit.is_nan() || next_merit >= merit {
            break;
        }
        best = next;
        merit = next_merit;
    }
    best
}

/// The three values `λ` for which `λ·C⁽¹⁾ − C⁽²⁾` is degenerate, where
/// `C⁽¹⁾`, `C⁽²⁾` are the tangency conics in the `(s, t)` plane for three
/// points and two lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PencilEigenvalues {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl PencilEigenvalues {
    pub fn values(&self) -> [f64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }
}

/// Closed-form pencil eigenvalues from side products.
///
/// With `aₖ = x̂ₖᵀl₁` and `bₖ = x̂ₖᵀl₂`:
/// `λ₁ = b₁b₂/(a₁a₂)`, `λ₂ = b₁b₃/(a₁a₃)`, `λ₃ = b₂b₃/(a₂a₃)`.
///
/// Two equal values mean `l₁ × l₂` lies on a side of the triangle, which
/// is reported as [`ConicError::DegenerateCase`].
pub fn pencil_eigenvalues(
    pts: &[HomogeneousPoint; 3],
    l1: &ProjectiveLine,
    l2: &ProjectiveLine,
    equality_tol: f64,
) -> Result<PencilEigenvalues> {
    let a: Vec<f64> = pts.iter().map(|p| p.vector().dot(l1.vector())).collect();
    let b: Vec<f64> = pts.iter().map(|p| p.vector().dot(l2.vector())).collect();
    if a.iter().chain(&b).any(|&v| v == 0.0) {
        return Err(ConicError::DegenerateCase(
            "a point lies on one of the lines".into(),
        ));
    }
    let ev = PencilEigenvalues {
        lambda1: b[0] * b[1] / (a[0] * a[1]),
        lambda2: b[0] * b[2] / (a[0] * a[2]),
        lambda3: b[1] * b[2] / (a[1] * a[2]),
    };
    let v = ev.values();
    let sides = [(0, 1, "#2-#3"), (0, 2, "#1-#3"), (1, 2, "#1-#2")];
    for (i, j, side) in sides {
        if (v[i] - v[j]).abs() <= equality_tol * v[i].abs().max(v[j].abs()) {
            return Err(ConicError::DegenerateCase(format!(
                "pencil eigenvalues {} and {} coincide: the lines meet on triangle side {side}",
                i + 1,
                j + 1
            )));
        }
    }
    Ok(ev)
}

/// Splits a rank-2 degenerate conic into its two real lines.
///
/// The singular point `p` comes from the largest diagonal entry of `adj(C)`
/// (for `C = l mᵀ + m lᵀ`, `adj(C) = −(l×m)(l×m)ᵀ`). Adding the cross-product
/// matrix of `p` turns `C` into the rank-one `l mᵀ`, whose dominant row and
/// column are the two lines.
pub fn split_line_pair(c: &ConicMatrix, rank_tol: f64) -> Result<(ProjectiveLine, ProjectiveLine)> {
    split_line_pair_scaled(c, rank_tol, None)
}

fn split_line_pair_scaled(
    c: &ConicMatrix,
    rank_tol: f64,
    scale: Option<f64>,
) -> Result<(ProjectiveLine, ProjectiveLine)> {
    let m = c.matrix();
    let inertia = inertia_with_scale(m, rank_tol, scale);
    match inertia.rank() {
        2 => {}
        1 => return Err(ConicError::RankOne),
        r => return Err(ConicError::NotLinePair(r)),
    }
    if inertia.positive != 1 {
        return Err(ConicError::ComplexLinePair);
    }

    let b = adjugate3(m);
    let i = (0..3)
        .max_by(|&x, &y| b[(x, x)].abs().total_cmp(&b[(y, y)].abs()))
        .unwrap();
    let beta = (-b[(i, i)]).max(0.0).sqrt();
    if beta == 0.0 {
        return Err(ConicError::RankOne);
    }
    let p = b.column(i) / beta;
    let cross_matrix = Mat3::new(0.0, p[2], -p[1], -p[2], 0.0, p[0], p[1], -p[0], 0.0);
    let a = m + cross_matrix;
    let (mut r, mut col) = (0, 0);
    for ii in 0..3 {
        for jj in 0..3 {
            if a[(ii, jj)].abs() > a[(r, col)].abs() {
                r = ii;
                col = jj;
            }
        }
    }
    let first = a.row(r).transpose();
    let second = a.column(col).into_owned();
    Ok((
        ProjectiveLine::from_vector(first)?,
        ProjectiveLine::from_vector(second)?,
    ))
}

/// Real intersection points of two conics plus the number of complex ones.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilIntersection {
    /// Homogeneous points, each scaled to unit norm.
    pub real_points: Vec<Vec3>,
    pub complex_count: usize,
}

/// Intersects `c1` and `c2` through the degenerate members `λ c1 − c2`.
///
/// Every supplied `λ` must make `λ c1 − c2` a line pair (rank 2).
///
/// With all three real values of `λ` supplied, only the member whose `λ`
/// lies furthest from the other two is split; the others can be close to a
/// double line when two values nearly coincide. Four real points make every
/// member a real line pair, two conjugate pairs of points make exactly one
/// member real, so a complex split means four complex points. A real split
/// is intersected with `c1`; its two lines must agree on real or complex,
/// and real points must also lie on the two remaining members.
///
/// With fewer values supplied the first real line pair is used: its lines
/// are intersected with `c1`, or with two real pairs the lines are crossed.
pub fn intersect_conic_pencil(
    c1: &ConicMatrix,
    c2: &ConicMatrix,
    lambdas: &[f64],
    rank_tol: f64,
) -> Result<PencilIntersection> {
    if lambdas.is_empty() {
        return Err(ConicError::InconsistentPencil(
            "no pencil values supplied".into(),
        ));
    }
    let member = |lambda: f64| ConicMatrix::from_matrix(c1.matrix() * lambda - c2.matrix());
    let split = |lambda: f64| match split_line_pair_scaled(
        &member(lambda),
        rank_tol,
        Some(lambda.abs() * c1.matrix().norm() + c2.matrix().norm()),
    ) {
        Ok(pair) => Ok(Some(pair)),
        Err(ConicError::ComplexLinePair) => Ok(None),
        Err(ConicError::NotLinePair(rank)) => Err(ConicError::InconsistentPencil(format!(
            "λ = {lambda} gives a member of rank {rank}, not a line pair"
        ))),
        Err(e) => Err(e),
    };

    if lambdas.len() == 3 {
        let i = isolated(lambdas);
        let Some((l, m)) = split(lambdas[i])? else {
            return Ok(PencilIntersection {
                real_points: Vec::new(),
                complex_count: 4,
            });
        };
        let (pl, cl) = intersect_line_conic(c1, l.vector());
        let (pm, cm) = intersect_line_conic(c1, m.vector());
        if cl + cm == 4 {
            return Ok(PencilIntersection {
                real_points: Vec::new(),
                complex_count: 4,
            });
        }
        if cl + cm != 0 {
            return Err(ConicError::InconsistentPencil(
                "a real line pair meets the conic in both real and complex points".into(),
            ));
        }
        let points: Vec<Vec3> = pl.into_iter().chain(pm).map(|x| x / x.norm()).collect();
        check_distinct(&points)?;
        for (j, &lambda) in lambdas.iter().enumerate().filter(|&(j, _)| j != i) {
            let other = member(lambda);
            let worst = points
                .iter()
                .map(|x| point_residual(&other, x))
                .fold(0.0f64, f64::max);
            if worst > 1e-6 {
                return Err(ConicError::InconsistentPencil(format!(
                    "pencil member {} misses the intersection points (residual {worst:e})",
                    j + 1
                )));
            }
        }
        return Ok(PencilIntersection {
            real_points: points,
            complex_count: 0,
        });
    }

    let mut real_pairs = Vec::new();
    for &lambda in lambdas {
        if let Some(pair) = split(lambda)? {
            real_pairs.push(pair);
        }
    }
    match real_pairs.as_slice() {
        [] => Err(ConicError::InconsistentPencil(
            "no supplied pencil value gives a real line pair".into(),
        )),
        [(l, m)] => {
            let mut out = PencilIntersection {
                real_points: Vec::new(),
                complex_count: 0,
            };
            for line in [l, m] {
                let (points, complex) = intersect_line_conic(c1, line.vector());
                out.real_points.extend(points);
                out.complex_count += complex;
            }
            Ok(out)
        }
        [(a1, a2), (b1, b2), ..] => {
            let mut points = Vec::with_capacity(4);
            for a in [a1, a2] {
                for b in [b1, b2] {
                    let x = cross(a.vector(), b.vector());
                    let n = x.norm();
                    if n == 0.0 {
                        return Err(ConicError::InconsistentPencil(
                            "line pairs share a line".into(),
                        ));
                    }
                    points.push(x / n);
                }
            }
            check_distinct(&points)?;
            Ok(PencilIntersection {
                real_points: points,
                complex_count: 0,
            })
        }
    }
}

/// Index of the value furthest, relatively, from its nearest neighbour.
fn isolated(lambdas: &[f64]) -> usize {
    let gap = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    (0..lambdas.len())
        .map(|i| {
            let nearest = (0..lambdas.len())
                .filter(|&j| j != i)
                .map(|j| gap(lambdas[i], lambdas[j]))
                .fold(f64::INFINITY, f64::min);
            (i, nearest)
        })
        .fold((0, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        })
        .0
}

fn check_distinct(points: &[Vec3]) -> Result<()> {
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if cross(&points[i], &points[j]).norm() <= 1e-9 {
                return Err(ConicError::InconsistentPencil(
                    "fewer than four distinct intersection points".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Intersections of the line `l` with `c`: real points and the number of
/// complex ones. A tangent line yields its touching point twice.
pub fn intersect_line_conic(c: &ConicMatrix, l: &Vec3) -> (Vec<Vec3>, usize) {
    // two orthonormal points spanning the line
    let k = (0..3)
        .min_by(|&a, &b| l[a].abs().total_cmp(&l[b].abs()))
        .unwrap();
    let mut e = Vec3::zeros();
    e[k] = 1.0;
    let a = cross(l, &e).normalize();
    let b = cross(l, &a).normalize();
    let m = c.matrix();
    let qa = a.dot(&(m * a));
    let qab = a.dot(&(m * b));
    let qb = b.dot(&(m * b));
    let disc = qab * qab - qa * qb;
    let scale = qa.abs().max(qb.abs()).max(qab.abs());
    if disc < -1e-12 * scale * scale {
        return (Vec::new(), 2);
    }
    let root = disc.max(0.0).sqrt();
    // roots of qa α² + 2 qab α β + qb β² = 0 in homogeneous (α, β)
    let (r1, r2) = if qa.abs() >= qb.abs() {
        let q = -(qab + qab.signum() * root);
        if q == 0.0 {
            ((0.0, 1.0), (0.0, 1.0))
        } else {
            ((q, qa), (qb, q))
        }
    } else {
        let q = -(qab + qab.signum() * root);
        if q == 0.0 {
            ((1.0, 0.0), (1.0, 0.0))
        } else {
            ((qb, q), (q, qa))
        }
    };
    let pts = [r1, r2]
        .iter()
        .map(|&(alpha, beta)| (a * alpha + b * beta).normalize())
        .collect();
    (pts, 0)
}
