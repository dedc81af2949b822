//! Conics through three points and tangent to two lines.
//!
//! The fourth pencil point is placed on a line through `p = l₁ × l₂`,
//! normally `x₄ = t·x̂₁ + p`. Writing
//!
//! ```text
//! D = |x̂₁ x̂₂ x̂₃|   P = |p x̂₂ x̂₃|   Q = |x̂₁ p x̂₃|   R = |x̂₁ x̂₂ p|
//! Lₖ = x̂ₖᵀ lᵢ
//! ```
//!
//! tangency to `lᵢ` becomes the conic `(s, t, 1) Cᵢ (s, t, 1)ᵀ = 0` with
//!
//! ```text
//!      ⎡ P²L₁²            (RL₃ − QL₂)DL₁   PRL₁L₃  ⎤
//! Cᵢ = ⎢ (RL₃ − QL₂)DL₁   D²L₁²            −DRL₁L₃ ⎥
//!      ⎣ PRL₁L₃           −DRL₁L₃          R²L₃²   ⎦
//! ```
//!
//! Incidences between the points, the lines and `p` collapse this system to
//! a closed form in every special case; the generic case intersects the two
//! conics through their three degenerate pencil members.

use super::{
    real_quadratic_roots, CountPrediction, CountRule, MinimalConfiguration, MinimalSolver,
    SolutionSet,
};
use crate::conic::{adjugate, intersect_conic_pencil, pencil_eigenvalues, ConicMatrix};
use crate::error::{ConicError, GeneralPositionClause, Result};
use crate::projective::{
    collinear, cross, det_columns, incident, signed_band, HomogeneousPoint, Mat3, ProjectiveLine,
    Vec3,
};
use crate::selfpolar::{
    diagonal_triangle_raw, pencil_conic, pencil_member_weighted, DiagonalTriangle, PencilParameter,
};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThreePointTwoLineCase {
    /// Two of the points lie on the two lines respectively.
    Case1,
    /// Two points are collinear with `p`; the third lies on a line.
    Case2,
    /// Two points are collinear with `p`; the third lies on neither line.
    Case3,
    /// Exactly one point lies on a line and no pair is collinear with `p`.
    Case4,
    /// No incidences and no pair collinear with `p`.
    Case5,
}

impl ThreePointTwoLineCase {
    pub fn label(self) -> &'static str {
        match self {
            Self::Case1 => "3p2l/case1",
            Self::Case2 => "3p2l/case2",
            Self::Case3 => "3p2l/case3",
            Self::Case4 => "3p2l/case4",
            Self::Case5 => "3p2l/case5",
        }
    }
}

/// How the fourth pencil point depends on `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourthPointParameterization {
    /// `x₄ = t·x̂₁ + p`
    FirstPointPlusMeet,
    /// `x₄ = t·p + q` with `q = p × l₂`
    MeetPlusSecondLinePoint,
}

/// Auxiliary points of a solve, in the relabeled frame.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseContext {
    /// `l₁ × l₂`, unnormalized (at infinity for parallel lines).
    pub p: Vec3,
    /// `p × l₂`, only for [`ThreePointTwoLineCase::Case2`].
    pub q: Option<Vec3>,
    pub parameterization: FourthPointParameterization,
    /// Input indices of the relabeled `x̂₁, x̂₂, x̂₃`.
    pub point_order: [usize; 3],
    /// Whether the relabeled `l₁` is the second input line.
    pub lines_swapped: bool,
}

/// The configuration after relabeling for its case.
struct Frame {
    case: ThreePointTwoLineCase,
    x: [Vec3; 3],
    l: [Vec3; 2],
    p: Vec3,
    order: [usize; 3],
    swapped: bool,
}

impl Frame {
    fn new(
        case: ThreePointTwoLineCase,
        pts: &[HomogeneousPoint; 3],
        lines: &[ProjectiveLine; 2],
        order: [usize; 3],
        swapped: bool,
    ) -> Self {
        let (a, b) = if swapped { (1, 0) } else { (0, 1) };
        let l = [*lines[a].vector(), *lines[b].vector()];
        Self {
            case,
            x: order.map(|k| *pts[k].vector()),
            l,
            p: cross(&l[0], &l[1]),
            order,
            swapped,
        }
    }

    /// `x̂ₖᵀ lᵢ` with 1-based `k` and `i`.
    fn side(&self, k: usize, i: usize) -> f64 {
        self.x[k - 1].dot(&self.l[i - 1])
    }

    fn d(&self) -> f64 {
        det_columns(&self.x[0], &self.x[1], &self.x[2])
    }

    fn big_p(&self) -> f64 {
        det_columns(&self.p, &self.x[1], &self.x[2])
    }

    fn big_q(&self) -> f64 {
        det_columns(&self.x[0], &self.p, &self.x[2])
    }

    fn big_r(&self) -> f64 {
        det_columns(&self.x[0], &self.x[1], &self.p)
    }

    fn context(&self, q: Option<Vec3>) -> CaseContext {
        CaseContext {
            p: self.p,
            q,
            parameterization: if q.is_some() {
                FourthPointParameterization::MeetPlusSecondLinePoint
            } else {
                FourthPointParameterization::FirstPointPlusMeet
            },
            point_order: self.order,
            lines_swapped: self.swapped,
        }
    }

    fn triangle(&self, x4: Vec3, tol: f64) -> Result<DiagonalTriangle> {
        diagonal_triangle_raw([self.x[0], self.x[1], self.x[2], x4], tol).map_err(|_| {
            ConicError::DegenerateCase(
                "fourth pencil point is collinear with two of the points".into(),
            )
        })
    }

    /// The pencil member at `s`. A computed `x₄` that lands almost on a side
    /// of the triangle leaves the diagonal triangle singular even though the
    /// conic is well defined, so that case is rebuilt from line pairs.
    fn conic_at(&self, x4: Vec3, s: f64, tol: f64) -> Result<ConicMatrix> {
        match self.triangle(x4, tol) {
            Ok(tri) => pencil_conic(&tri, PencilParameter(s), tol),
            Err(e) => tangent_member([self.x[0], self.x[1], self.x[2], x4], &self.l).ok_or(e),
        }
    }
}

fn line_pair(a: &Vec3, b: &Vec3) -> Mat3 {
    a * b.transpose() + b * a.transpose()
}

/// The conic through four points tangent to both lines, taken from the pencil
/// `α·(x₁x₂)(x₃x₄) + β·(x₁x₃)(x₂x₄)`. Tangency to either line is a binary
/// quadratic in `(α, β)`; among the roots of both the member closest to
/// tangent to the two lines is kept. A point lying on a line makes its
/// quadratic a double root, so a discriminant just below zero counts as zero.
/// `None` if two of the points coincide.
fn tangent_member(x: [Vec3; 4], l: &[Vec3; 2]) -> Option<ConicMatrix> {
    let a = line_pair(&cross(&x[0], &x[1]), &cross(&x[2], &x[3]));
    let b = line_pair(&cross(&x[0], &x[2]), &cross(&x[1], &x[3]));
    let (a, b) = (a / a.norm(), b / b.norm());
    if !(a.iter().chain(b.iter()).all(|v| v.is_finite())) {
        return None;
    }
    let member = |al: f64, be: f64| ConicMatrix::from_matrix(a * al + b * be);
    let raw = |c: &ConicMatrix, l: &Vec3| (l.transpose() * adjugate(c).matrix() * l)[0];
    let tangency = |c: &ConicMatrix| {
        let adj = adjugate(c);
        l.iter()
            .map(|l| raw(c, l).abs() / (adj.matrix().norm() * l.norm_squared()))
            .fold(0.0, f64::max)
    };
    let mut candidates = Vec::new();
    for line in l {
        // lᵀ adj(αA + βB) l = qa·α² + qb·αβ + qc·β²
        let (qa, qc) = (raw(&member(1.0, 0.0), line), raw(&member(0.0, 1.0), line));
        let qb = raw(&member(1.0, 1.0), line) - qa - qc;
        let mut disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            if disc < -1e-6 * (qb * qb + 4.0 * (qa * qc).abs()) {
                continue;
            }
            disc = 0.0;
        }
        let w = if qb >= 0.0 {
            -qb - disc.sqrt()
        } else {
            -qb + disc.sqrt()
        };
        // α/β = w / (2qa) and 2qc / w
        candidates.extend([(w, 2.0 * qa), (2.0 * qc, w)]);
    }
    candidates
        .into_iter()
        .filter(|&(al, be)| al != 0.0 || be != 0.0)
        .map(|(al, be)| member(al, be))
        .min_by(|c, d| tangency(c).total_cmp(&tangency(d)))
}

fn check_general_position(
    pts: &[HomogeneousPoint; 3],
    lines: &[ProjectiveLine; 2],
    tol: f64,
) -> Result<()> {
    let x = pts.map(|p| *p.vector());
    if collinear(&x[0], &x[1], &x[2], tol) {
        return Err(GeneralPositionClause::CollinearPoints([0, 1, 2]).into());
    }
    let (l1, l2) = (lines[0].vector(), lines[1].vector());
    if cross(l1, l2).norm() <= tol * l1.norm() * l2.norm() {
        return Err(GeneralPositionClause::CoincidentLines { lines: [0, 1] }.into());
    }
    if let Some(k) = (0..3).find(|&k| incident(&x[k], l1, tol) && incident(&x[k], l2, tol)) {
        return Err(GeneralPositionClause::LinesMeetAtPoint { point: k }.into());
    }
    for (i, l) in [l1, l2].into_iter().enumerate() {
        let on: Vec<usize> = (0..3).filter(|&k| incident(&x[k], l, tol)).collect();
        if on.len() >= 2 {
            return Err(GeneralPositionClause::LineThroughTwoPoints {
                line: i,
                points: [on[0], on[1]],
            }
            .into());
        }
    }
    Ok(())
}

/// Checks general position, picks the case and relabels points and lines
/// the way that case's closed form expects.
fn frame(pts: &[HomogeneousPoint; 3], lines: &[ProjectiveLine; 2], tol: f64) -> Result<Frame> {
    use ThreePointTwoLineCase::*;
    check_general_position(pts, lines, tol)?;
    let x = pts.map(|p| *p.vector());
    let p = cross(lines[0].vector(), lines[1].vector());
    let on = |i: usize| (0..3).find(|&k| incident(&x[k], lines[i].vector(), tol));
    let pair = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .find(|&(j, k)| collinear(&x[j], &x[k], &p, tol));

    let f = match (on(0), on(1), pair) {
        (Some(a), Some(b), _) => Frame::new(Case1, pts, lines, [3 - a - b, a, b], false),
        (a, b, Some((j, k))) if a.is_some() || b.is_some() => {
            let m = 3 - j - k;
            Frame::new(Case2, pts, lines, [j, k, m], a.is_none())
        }
        (None, None, Some((j, k))) => Frame::new(Case3, pts, lines, [3 - j - k, j, k], false),
        (Some(m), None, None) | (None, Some(m), None) => {
            let others: Vec<usize> = (0..3).filter(|&k| k != m).collect();
            Frame::new(
                Case4,
                pts,
                lines,
                [others[0], others[1], m],
                on(0).is_none(),
            )
        }
        (None, None, None) => Frame::new(Case5, pts, lines, [0, 1, 2], false),
        _ => unreachable!("incidence patterns are exhausted above"),
    };
    Ok(f)
}

/// Which of the five special-position cases the configuration falls in.
pub fn classify_3p2l_case(
    pts: &[HomogeneousPoint; 3],
    lines: &[ProjectiveLine; 2],
    tol: &Tolerances,
) -> Result<ThreePointTwoLineCase> {
    Ok(frame(pts, lines, tol.incidence)?.case)
}

/// The two tangency conics `C₁`, `C₂` in `(s, t, 1)` for `x₄ = t·x̂₁ + p`,
/// with points and lines in the given order.
pub fn case5_conics(pts: &[HomogeneousPoint; 3], lines: &[ProjectiveLine; 2]) -> [ConicMatrix; 2] {
    let f = Frame::new(ThreePointTwoLineCase::Case5, pts, lines, [0, 1, 2], false);
    tangency_conics(&f)
}

fn tangency_conics(f: &Frame) -> [ConicMatrix; 2] {
    let (d, p, q, r) = (f.d(), f.big_p(), f.big_q(), f.big_r());
    [1, 2].map(|i| {
        let (l1, l2, l3) = (f.side(1, i), f.side(2, i), f.side(3, i));
        let c1 = p * p * l1 * l1;
        let c2 = (r * l3 - q * l2) * d * l1;
        let c3 = p * r * l1 * l3;
        let c4 = d * d * l1 * l1;
        let c5 = -d * r * l1 * l3;
        let c6 = r * r * l3 * l3;
        ConicMatrix::from_matrix(Mat3::new(c1, c2, c3, c2, c4, c5, c3, c5, c6))
    })
}

fn empty(f: &Frame, q: Option<Vec3>) -> SolutionSet {
    let mut out = SolutionSet {
        real_conics: Vec::new(),
        complex_count: 0,
        case_label: f.case.label().into(),
        diagnostics: Default::default(),
    };
    out.diagnostics.case_context = Some(f.context(q));
    out.diagnostics.branch = Some(format!(
        "x̂₁, x̂₂, x̂₃ = input points #{}, #{}, #{}; l₁ = input line #{}",
        f.order[0] + 1,
        f.order[1] + 1,
        f.order[2] + 1,
        if f.swapped { 2 } else { 1 }
    ));
    out
}

fn push(out: &mut SolutionSet, conic: ConicMatrix, s: f64, t: f64) {
    out.real_conics.push(conic);
    out.diagnostics.s_values.push(s);
    out.diagnostics.t_values.push(t);
}

fn solve_case1(f: &Frame, tol: &Tolerances) -> Result<SolutionSet> {
    let mut out = empty(f, None);
    let t = -f.big_p() / (2.0 * f.d());
    let s = 0.5;
    push(
        &mut out,
        f.conic_at(f.x[0] * t + f.p, s, tol.incidence)?,
        s,
        t,
    );
    Ok(out)
}

fn solve_case2(f: &Frame, tol: &Tolerances) -> Result<SolutionSet> {
    let q = cross(&f.p, &f.l[1]);
    let mut out = empty(f, Some(q));
    let num = det_columns(&q, &f.x[1], &f.x[2]) * f.side(1, 2)
        - det_columns(&f.x[0], &q, &f.x[2]) * f.side(2, 2);
    let t = num / (2.0 * f.big_q() * f.side(2, 2));
    let s = 2.0;
    let conic = match f.triangle(f.p * t + q, tol.incidence) {
        Ok(tri) => pencil_conic(&tri, PencilParameter(s), tol.incidence)?,
        Err(e) => case2_line_pairs(f).ok_or(e)?,
    };
    push(&mut out, conic, s, t);
    Ok(out)
}

/// The Case 2 conic without the fourth point, for when `x₄` lands almost on
/// a side of the triangle. Conics through `x̂₁`, `x̂₂` touching `l₁` at `x̂₃`
/// form the pencil `α·(x̂₁x̂₃)(x̂₂x̂₃) + β·(x̂₁x̂₂)l₁`. The line pair at `α = 0`
/// is singular at `p`, which is on `l₂`, so tangency to `l₂` reads
/// `α(qa·α + qb·β) = 0` and the conic is `(α, β) = (qb, −qa)`.
fn case2_line_pairs(f: &Frame) -> Option<ConicMatrix> {
    let [x1, x2, x3] = &f.x;
    let a = line_pair(&cross(x1, x3), &cross(x2, x3));
    let b = line_pair(&cross(x1, x2), &f.l[0]);
    let (a, b) = (a / a.norm(), b / b.norm());
    let raw = |m: Mat3| {
        let l = &f.l[1];
        (l.transpose() * adjugate(&ConicMatrix::from_matrix(m)).matrix() * l)[0]
    };
    let qa = raw(a);
    let qb = raw(a + b) - qa - raw(b);
    let c = a * qb - b * qa;
    (c.iter().all(|v| v.is_finite()) && c.norm() > 0.0).then(|| ConicMatrix::from_matrix(c))
}

fn solve_case3(f: &Frame, tol: &Tolerances) -> Result<SolutionSet> {
    let mut out = empty(f, None);
    let (d, r) = (f.d(), f.big_r());
    let t_squared = r * r * f.side(3, 1) * f.side(3, 2) / (d * d * f.side(1, 1) * f.side(1, 2));
    // discriminant of t² − t_squared = 0
    out.diagnostics.discriminant = Some(4.0 * t_squared);
    if t_squared <= 0.0 {
        out.complex_count = 2;
        return Ok(out);
    }
    let root = t_squared.sqrt();
    for t in [root, -root] {
        let x4 = f.x[0] * t + f.p;
        let tri = f.triangle(x4, tol.incidence)?;
        let [k1, k2, _] = tri.pairings(&f.l[0]);
        let w = Vec3::new(-k1 * k1, k2 * k2, (k1 - k2) * (k1 + k2));
        push(&mut out, pencil_member_weighted(&tri, w)?, -w[0] / w[2], t);
    }
    Ok(out)
}

fn solve_case4(f: &Frame, tol: &Tolerances) -> Result<SolutionSet> {
    let mut out = empty(f, None);
    let (d, p, r) = (f.d(), f.big_p(), f.big_r());
    let a = 4.0 * d * d * f.side(1, 2);
    let b = 4.0 * d * p * f.side(1, 2);
    let c = -p * r * f.side(3, 2);
    let disc = b * b - 4.0 * a * c;
    out.diagnostics.discriminant = Some(disc);
    let band = tol.incidence * (b * b + 4.0 * (a * c).abs());
    let roots = if disc > band {
        real_quadratic_roots(a, b, c, disc).to_vec()
    } else if disc < -band {
        out.complex_count = 2;
        return Ok(out);
    } else {
        out.diagnostics.double_root = true;
        vec![-b / (2.0 * a)]
    };
    for t in roots {
        let tri = f.triangle(f.x[0] * t + f.p, tol.incidence)?;
        let w = Vec3::new(d * t, -d * t - p, p);
        push(&mut out, pencil_member_weighted(&tri, w)?, -d * t / p, t);
    }
    Ok(out)
}

/// The tangency conics in `(s, u, 1)` with `t = (P/D)·u`, which clears `D`
/// from every coefficient. When the points are nearly collinear `t` runs to
/// millions while `u` stays of order one.
fn balanced_tangency_conics(f: &Frame) -> [ConicMatrix; 2] {
    let (p, q, r) = (f.big_p(), f.big_q(), f.big_r());
    [1, 2].map(|i| {
        let (l1, l2, l3) = (f.side(1, i), f.side(2, i), f.side(3, i));
        let c1 = p * p * l1 * l1;
        let c2 = (r * l3 - q * l2) * p * l1;
        let c3 = p * r * l1 * l3;
        let c5 = -p * r * l1 * l3;
        let c6 = r * r * l3 * l3;
        ConicMatrix::from_matrix(Mat3::new(c1, c2, c3, c2, c1, c5, c3, c5, c6))
    })
}

/// Refines an `(s, t)` intersection of the two tangency conics with Newton
/// steps, keeping a step only if it lowers the residual.
fn polish(conics: &[ConicMatrix; 2], mut st: [f64; 2]) -> [f64; 2] {
    let residual = |st: [f64; 2]| {
        let v = Vec3::new(st[0], st[1], 1.0);
        conics
            .each_ref()
            .map(|c| c.evaluate(&v) / c.matrix().norm())
    };
    for _ in 0..3 {
        let f = residual(st);
        let v = Vec3::new(st[0], st[1], 1.0);
        let g = conics
            .each_ref()
            .map(|c| (c.matrix() * v) * (2.0 / c.matrix().norm()));
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        if det == 0.0 {
            break;
        }
        let ds = (f[0] * g[1][1] - f[1] * g[0][1]) / det;
        let dt = (g[0][0] * f[1] - g[1][0] * f[0]) / det;
        let next = [st[0] - ds, st[1] - dt];
        let norm = |r: [f64; 2]| r[0].abs().max(r[1].abs());
        if norm(residual(next)) < norm(f) {
            st = next;
        } else {
            break;
        }
    }
    st
}

fn solve_case5_frame(
    f: &Frame,
    pts: &[HomogeneousPoint; 3],
    lines: &[ProjectiveLine; 2],
    tol: &Tolerances,
) -> Result<SolutionSet> {
    let mut out = empty(f, None);
    let ev = pencil_eigenvalues(pts, &lines[0], &lines[1], tol.eigenvalue_equality)?;
    out.diagnostics.pencil_eigenvalues = Some(ev.values());
    let conics = balanced_tangency_conics(f);
    let hit = intersect_conic_pencil(&conics[0], &conics[1], &ev.values(), tol.rank)?;
    out.complex_count = hit.complex_count;
    let (d, p) = (f.d(), f.big_p());
    for v in hit.real_points {
        if v[2].abs() <= tol.infinity * v.norm() {
            return Err(ConicError::DegenerateCase(
                "tangency conics meet at infinity in the (s, t) plane".into(),
            ));
        }
        let [s, u] = polish(&conics, [v[0] / v[2], v[1] / v[2]]);
        let x4 = f.x[0] * (p * u) + f.p * d;
        push(&mut out, f.conic_at(x4, s, tol.incidence)?, s, p * u / d);
    }
    Ok(out)
}

/// Solves with the generic intersection route, points and lines in input
/// order, skipping case dispatch beyond the general-position checks.
///
/// Fails with [`ConicError::DegenerateCase`] when two pencil eigenvalues
/// coincide, i.e. when `l₁ × l₂` lies on a side of the triangle.
pub fn solve_case5(
    pts: &[HomogeneousPoint; 3],
    lines: &[ProjectiveLine; 2],
    tol: &Tolerances,
) -> Result<SolutionSet> {
    check_general_position(pts, lines, tol.incidence)?;
    let f = Frame::new(ThreePointTwoLineCase::Case5, pts, lines, [0, 1, 2], false);
    let mut out = solve_case5_frame(&f, pts, lines, tol)?;
    out.refine(pts, lines);
    out.record_residuals(pts, lines);
    Ok(out)
}

pub fn solve_three_points_two_lines(
    pts: &[HomogeneousPoint; 3],
    lines: &[ProjectiveLine; 2],
    tol: &Tolerances,
) -> Result<SolutionSet> {
    let f = frame(pts, lines, tol.incidence)?;
    let mut out = match f.case {
        ThreePointTwoLineCase::Case1 => solve_case1(&f, tol),
        ThreePointTwoLineCase::Case2 => solve_case2(&f, tol),
        ThreePointTwoLineCase::Case3 => solve_case3(&f, tol),
        ThreePointTwoLineCase::Case4 => solve_case4(&f, tol),
        ThreePointTwoLineCase::Case5 => solve_case5_frame(&f, pts, lines, tol),
    }?;
    out.refine(pts, lines);
    out.record_residuals(pts, lines);
    Ok(out)
}

/// Number of real conics from side and orientation signs.
///
/// Cases 1 and 2 have one real conic. Case 3 has two real conics when
/// `(x̂₁ᵀl₁)(x̂₃ᵀl₁)` and `(x̂₁ᵀl₂)(x̂₃ᵀl₂)` agree in sign, Case 4 when
/// `|p x̂₂ x̂₃|·|x̂₁ p x̂₃|·(x̂₁ᵀl₂)(x̂₂ᵀl₂) < 0`, and Case 5 has four when
/// the three products `(x̂ₖᵀl₁)(x̂ₖᵀl₂)` agree in sign. Otherwise all
/// solutions are complex.
pub fn predict_count_3p2l(
    pts: &[HomogeneousPoint; 3],
    lines: &[ProjectiveLine; 2],
    tol: &Tolerances,
) -> Result<CountPrediction> {
    let f = frame(pts, lines, tol.incidence)?;
    let side = |k: usize, i: usize| {
        let band = tol.incidence * f.x[k - 1].norm() * f.l[i - 1].norm();
        signed_band(f.side(k, i), band)
    };
    let det_sign = |a: &Vec3, b: &Vec3, c: &Vec3| {
        signed_band(
            det_columns(a, b, c),
            tol.incidence * a.norm() * b.norm() * c.norm(),
        )
    };
    let (real, complex, rule) = match f.case {
        ThreePointTwoLineCase::Case1 => (1, 0, CountRule::TwoTangencyPoints),
        ThreePointTwoLineCase::Case2 => (1, 0, CountRule::CollinearPairWithTangencyPoint),
        ThreePointTwoLineCase::Case3 => {
            let agree = side(1, 1) * side(3, 1) == side(1, 2) * side(3, 2);
            if agree {
                (2, 0, CountRule::CollinearPairSides)
            } else {
                (0, 2, CountRule::CollinearPairSides)
            }
        }
        ThreePointTwoLineCase::Case4 => {
            let sign = det_sign(&f.p, &f.x[1], &f.x[2])
                * det_sign(&f.x[0], &f.p, &f.x[2])
                * side(1, 2)
                * side(2, 2);
            if sign < 0 {
                (2, 0, CountRule::SingleTangencyPointSign)
            } else {
                (0, 2, CountRule::SingleTangencyPointSign)
            }
        }
        ThreePointTwoLineCase::Case5 => {
            let products = [1, 2, 3].map(|k| side(k, 1) * side(k, 2));
            if products.iter().all(|&v| v == products[0]) {
                (4, 0, CountRule::SideProductSigns)
            } else {
                (0, 4, CountRule::SideProductSigns)
            }
        }
    };
    Ok(CountPrediction {
        real,
        complex,
        rule,
    })
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ThreePointTwoLineSolver;

impl MinimalSolver for ThreePointTwoLineSolver {
    fn name(&self) -> &'static str {
        "3p2l"
    }

    fn shape(&self) -> (usize, usize) {
        (3, 2)
    }

    fn solve(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<SolutionSet> {
        let MinimalConfiguration::ThreePointsTwoLines(pts, lines) = config else {
            return Err(self.shape_error());
        };
        solve_three_points_two_lines(pts, lines, tol)
    }

    fn predict(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<CountPrediction> {
        let MinimalConfiguration::ThreePointsTwoLines(pts, lines) = config else {
            return Err(self.shape_error());
        };
        predict_count_3p2l(pts, lines, tol)
    }
}
