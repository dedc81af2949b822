//! Conics through four points and tangent to one line.
//!
//! Along the pencil `C(s) = Ξ⁻ᵀ Diag(−s, s−1, 1) Ξ⁻¹` the tangency condition
//! `lᵀ C(s)⁻¹ l = 0` becomes, with `kᵢ = ξᵢᵀl`,
//!
//! ```text
//! k₃² s² − (k₁² − k₂² + k₃²) s + k₁² = 0
//! ```
//!
//! whose discriminant factors as
//! `16 |x̂₁x̂₂x̂₃||x̂₁x̂₂x̂₄||x̂₁x̂₃x̂₄||x̂₂x̂₃x̂₄| (x̂₁ᵀl)(x̂₂ᵀl)(x̂₃ᵀl)(x̂₄ᵀl)`.
//! A line through one of the points makes it vanish (one real conic); a line
//! through a diagonal-triangle vertex pushes one root to `s ∈ {0, 1}` or to
//! infinity, again leaving one conic.

use super::{
    real_quadratic_roots, CountPrediction, CountRule, MinimalConfiguration, MinimalSolver,
    SolutionSet,
};
use crate::error::{GeneralPositionClause, Result};
use crate::projective::{
    det_columns, incident, orientation, side_sign, HomogeneousPoint, Orientation, ProjectiveLine,
};
use crate::selfpolar::{
    diagonal_triangle, pencil_conic, DiagonalTriangle, PencilParameter, QUADRANGLE_TRIPLES,
};
use crate::tolerance::Tolerances;

/// Coefficients of the tangency quadratic in `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyQuadratic {
    pub quadratic: f64,
    pub linear: f64,
    pub constant: f64,
}

impl TangencyQuadratic {
    pub fn from_triangle(t: &DiagonalTriangle, l: &ProjectiveLine) -> Self {
        let [k1, k2, k3] = t.pairings(l.vector()).map(|k| k * k);
        Self {
            quadratic: k3,
            linear: -(k1 - k2 + k3),
            constant: k1,
        }
    }

    pub fn discriminant(&self) -> f64 {
        self.linear * self.linear - 4.0 * self.quadratic * self.constant
    }

    /// Scale for deciding whether the discriminant is zero.
    fn magnitude(&self) -> f64 {
        self.linear * self.linear + 4.0 * (self.quadratic * self.constant).abs()
    }
}

/// The discriminant written as the product of the four quadrangle
/// determinants and the four point/line pairings.
pub fn four_point_line_discriminant(pts: &[HomogeneousPoint; 4], l: &ProjectiveLine) -> f64 {
    let v = pts.map(|p| *p.vector());
    let dets: f64 = QUADRANGLE_TRIPLES
        .iter()
        .map(|t| det_columns(&v[t[0]], &v[t[1]], &v[t[2]]))
        .product();
    let sides: f64 = v.iter().map(|x| x.dot(l.vector())).product();
    16.0 * dets * sides
}

/// General position for four points and a line: the points have no collinear
/// triple, the line does not join two of them, and it does not join two
/// diagonal-triangle vertices.
fn check_general_position(
    pts: &[HomogeneousPoint; 4],
    l: &ProjectiveLine,
    tol: f64,
) -> Result<DiagonalTriangle> {
    let t = diagonal_triangle(&pts[0], &pts[1], &pts[2], &pts[3], tol)?;
    let on_line: Vec<usize> = (0..4)
        .filter(|&k| incident(pts[k].vector(), l.vector(), tol))
        .collect();
    if on_line.len() >= 2 {
        return Err(GeneralPositionClause::LineThroughTwoPoints {
            line: 0,
            points: [on_line[0], on_line[1]],
        }
        .into());
    }
    let on_xi: Vec<usize> = (0..3)
        .filter(|&i| incident(&t.vertices()[i], l.vector(), tol))
        .collect();
    if on_xi.len() >= 2 {
        return Err(GeneralPositionClause::LineIsDiagonalTriangleSide {
            line: 0,
            vertices: [on_xi[0], on_xi[1]],
        }
        .into());
    }
    Ok(t)
}

enum Incidence {
    Point(usize),
    /// Diagonal vertex, 1-based.
    DiagonalVertex(usize),
    None,
}

fn special_incidence(
    pts: &[HomogeneousPoint; 4],
    t: &DiagonalTriangle,
    l: &ProjectiveLine,
    tol: f64,
) -> Incidence {
    if let Some(k) = (0..4).find(|&k| incident(pts[k].vector(), l.vector(), tol)) {
        return Incidence::Point(k);
    }
    if let Some(i) = (0..3).find(|&i| incident(&t.vertices()[i], l.vector(), tol)) {
        return Incidence::DiagonalVertex(i + 1);
    }
    Incidence::None
}

pub fn solve_four_points_line(
    pts: &[HomogeneousPoint; 4],
    l: &ProjectiveLine,
    tol: &Tolerances,
) -> Result<SolutionSet> {
    let t = check_general_position(pts, l, tol.incidence)?;
    let quad = TangencyQuadratic::from_triangle(&t, l);
    let [k1, k2, k3] = t.pairings(l.vector()).map(|k| k * k);
    let disc = quad.discriminant();

    let mut out = SolutionSet {
        real_conics: Vec::new(),
        complex_count: 0,
        case_label: String::new(),
        diagnostics: Default::default(),
    };
    out.diagnostics.discriminant = Some(disc);

    let s_values = match special_incidence(pts, &t, l, tol.incidence) {
        Incidence::Point(k) => {
            out.case_label = "4p1l/through-point".into();
            out.diagnostics.branch = Some(format!("double root, line through point #{}", k + 1));
            vec![(k1 - k2 + k3) / (2.0 * k3)]
        }
        Incidence::DiagonalVertex(i) => {
            out.case_label = "4p1l/through-diagonal-vertex".into();
            out.diagnostics.branch = Some(format!("diagonal vertex ξ{i} incidence"));
            // the other root is s = 0, s = 1, or at infinity
            let s = match i {
                1 => 1.0 - k2 / k3,
                2 => k1 / k3,
                _ => k1 / (k1 - k2),
            };
            vec![s]
        }
        Incidence::None => {
            out.case_label = "4p1l/generic".into();
            let band = tol.incidence * quad.magnitude();
            if disc > band {
                real_quadratic_roots(quad.quadratic, quad.linear, quad.constant, disc).to_vec()
            } else if disc < -band {
                out.complex_count = 2;
                Vec::new()
            } else {
                out.diagnostics.double_root = true;
                vec![-quad.linear / (2.0 * quad.quadratic)]
            }
        }
    };

    for s in &s_values {
        out.real_conics
            .push(pencil_conic(&t, PencilParameter(*s), tol.incidence)?);
    }
    out.diagnostics.s_values = s_values;
    out.record_residuals(pts, std::slice::from_ref(l));
    Ok(out)
}

/// Number of real conics through four points tangent to `l`, from
/// orientation and side signs only.
///
/// One real conic when `l` passes through one of the four points or one of
/// the three diagonal vertices. Otherwise two real conics exactly when the
/// four triangle orientations and the four point sides both split evenly
/// (all alike or two against two) or both split three against one; else a
/// complex pair.
pub fn predict_count_4p1l(
    pts: &[HomogeneousPoint; 4],
    l: &ProjectiveLine,
    tol: &Tolerances,
) -> Result<CountPrediction> {
    let t = check_general_position(pts, l, tol.incidence)?;
    match special_incidence(pts, &t, l, tol.incidence) {
        Incidence::Point(k) => {
            return Ok(CountPrediction {
                real: 1,
                complex: 0,
                rule: CountRule::LineThroughPoint(k),
            })
        }
        Incidence::DiagonalVertex(i) => {
            return Ok(CountPrediction {
                real: 1,
                complex: 0,
                rule: CountRule::LineThroughDiagonalVertex(i),
            })
        }
        Incidence::None => {}
    }

    let clockwise = QUADRANGLE_TRIPLES
        .iter()
        .filter(|tr| {
            orientation(&pts[tr[0]], &pts[tr[1]], &pts[tr[2]], tol.incidence)
                == Orientation::Clockwise
        })
        .count();
    let negative = pts
        .iter()
        .filter(|p| side_sign(p, l, tol.incidence) < 0)
        .count();

    let dets_even = matches!(clockwise, 0 | 2 | 4);
    let sides_even = matches!(negative, 0 | 2 | 4);
    let dets_three_one = matches!(clockwise, 1 | 3);
    let sides_three_one = matches!(negative, 1 | 3);
    let two_real = (dets_even && sides_even) || (dets_three_one && sides_three_one);

    Ok(CountPrediction {
        real: if two_real { 2 } else { 0 },
        complex: if two_real { 0 } else { 2 },
        rule: CountRule::OrientationSideParity,
    })
}

#[derive(Debug, Default, Clone, Copy)]
pub struct FourPointLineSolver;

impl MinimalSolver for FourPointLineSolver {
    fn name(&self) -> &'static str {
        "4p1l"
    }

    fn shape(&self) -> (usize, usize) {
        (4, 1)
    }

    fn solve(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<SolutionSet> {
        let MinimalConfiguration::FourPointsOneLine(pts, l) = config else {
            return Err(self.shape_error());
        };
        solve_four_points_line(pts, l, tol)
    }

    fn predict(&self, config: &MinimalConfiguration, tol: &Tolerances) -> Result<CountPrediction> {
        let MinimalConfiguration::FourPointsOneLine(pts, l) = config else {
            return Err(self.shape_error());
        };
        predict_count_4p1l(pts, l, tol)
    }
}
