//! SVG rendering of a configuration and its real conics.
//!
//! Conics are sampled in their canonical frame: the quadratic part is
//! diagonalized, ellipses are traced by angle, hyperbola branches by `cosh`
//! and `sinh`, parabolas along their axis. Each branch gets 512 samples and is
//! cut where it leaves the viewport.

use std::fmt::Write as _;

use conic_core::conic::{classify, ConicClass};
use conic_core::{ConicMatrix, HomogeneousPoint, ProjectiveLine};
use nalgebra::{Matrix2, SymmetricEigen, Vector2};

pub const SIZE: f64 = 800.0;
pub const SAMPLES: usize = 512;
const COLORS: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Viewport {
    pub fn new([x0, y0, x1, y1]: [f64; 4]) -> Self {
        Self { x0, y0, x1, y1 }
    }

    /// A square around the points, padded by half their extent.
    /// Square viewport around the points and the feet of the perpendiculars
    /// dropped on each line from their centre.
    pub fn around(points: &[HomogeneousPoint], lines: &[ProjectiveLine]) -> Self {
        let mut pts: Vec<Vector2<f64>> =
            points.iter().map(|p| Vector2::new(p.x(), p.y())).collect();
        let centre = if pts.is_empty() {
            Vector2::zeros()
        } else {
            pts.iter().sum::<Vector2<f64>>() / pts.len() as f64
        };
        for l in lines {
            let v = l.vector();
            let n = Vector2::new(v.x, v.y);
            if n.norm_squared() > 0.0 {
                pts.push(centre - n * ((n.dot(&centre) + v.z) / n.norm_squared()));
            }
        }
        if pts.is_empty() {
            return Self::new([-5.0, -5.0, 5.0, 5.0]);
        }
        let (mut x0, mut y0, mut x1, mut y1) = (
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        );
        for p in &pts {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
        let half = ((x1 - x0).max(y1 - y0) * 0.5).max(1.0) * 1.5;
        let (cx, cy) = ((x0 + x1) * 0.5, (y0 + y1) * 0.5);
        Self::new([cx - half, cy - half, cx + half, cy + half])
    }

    fn contains(&self, p: Vector2<f64>, margin: f64) -> bool {
        let (mx, my) = ((self.x1 - self.x0) * margin, (self.y1 - self.y0) * margin);
        p.x >= self.x0 - mx && p.x <= self.x1 + mx && p.y >= self.y0 - my && p.y <= self.y1 + my
    }

    fn radius(&self) -> f64 {
        (self.x1 - self.x0).hypot(self.y1 - self.y0)
    }

    fn to_px(self, p: Vector2<f64>) -> (f64, f64) {
        (
            (p.x - self.x0) / (self.x1 - self.x0) * SIZE,
            (self.y1 - p.y) / (self.y1 - self.y0) * SIZE,
        )
    }
}

/// Polylines tracing the real points of `c`, one per branch.
pub fn conic_branches(c: &ConicMatrix, view: &Viewport, rank_tol: f64) -> Vec<Vec<Vector2<f64>>> {
    let m = c.normalized();
    let m = m.matrix();
    let a = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let b = Vector2::new(m[(0, 2)], m[(1, 2)]);
    let f = m[(2, 2)];
    let eig = SymmetricEigen::new(a);
    let (l, r) = (eig.eigenvalues, eig.eigenvectors);
    let axes = [r.column(0).into_owned(), r.column(1).into_owned()];
    let reach = view.radius() + view.x0.abs().max(view.x1.abs()) + view.y0.abs().max(view.y1.abs());
    match classify(c, rank_tol) {
        ConicClass::RealEllipse | ConicClass::Hyperbola => {
            let Some(inv) = a.try_inverse() else {
                return Vec::new();
            };
            let center = -(inv * b);
            // l₀u² + l₁v² = k in the eigenframe around the centre
            let k = -(f + b.dot(&center));
            if l[0] * l[1] > 0.0 {
                let (ru, rv) = ((k / l[0]).sqrt(), (k / l[1]).sqrt());
                let closed: Vec<_> = (0..=SAMPLES)
                    .map(|i| {
                        let th = std::f64::consts::TAU * i as f64 / SAMPLES as f64;
                        center + axes[0] * (ru * th.cos()) + axes[1] * (rv * th.sin())
                    })
                    .collect();
                return vec![closed];
            }
            // transverse axis where l·k > 0
            let (tr, cj) = if l[0] * k > 0.0 { (0, 1) } else { (1, 0) };
            let (ra, rb) = ((k / l[tr]).sqrt(), (-k / l[cj]).sqrt());
            let tau = (reach / ra.min(rb)).asinh();
            [1.0, -1.0]
                .iter()
                .flat_map(|&sign| {
                    let branch: Vec<_> = (0..SAMPLES)
                        .map(|i| {
                            let s = -tau + 2.0 * tau * i as f64 / (SAMPLES - 1) as f64;
                            center + axes[tr] * (sign * ra * s.cosh()) + axes[cj] * (rb * s.sinh())
                        })
                        .collect();
                    clip(branch, view)
                })
                .collect()
        }
        ConicClass::Parabola => {
            // λ(e·x)² + 2b·x + f = 0 with e the eigenvector of the nonzero eigenvalue
            let (i, j) = if l[0].abs() > l[1].abs() {
                (0, 1)
            } else {
                (1, 0)
            };
            let (lam, e, g) = (l[i], axes[i], axes[j]);
            let (be, bg) = (b.dot(&e), b.dot(&g));
            if bg == 0.0 {
                return Vec::new();
            }
            let vertex = -be / lam;
            let half = (2.0 * bg.abs() * reach / lam.abs()).sqrt() + reach;
            let branch: Vec<_> = (0..SAMPLES)
                .map(|k| {
                    let u = vertex - half + 2.0 * half * k as f64 / (SAMPLES - 1) as f64;
                    let v = -(lam * u * u + 2.0 * be * u + f) / (2.0 * bg);
                    e * u + g * v
                })
                .collect();
            clip(branch, view)
        }
        _ => Vec::new(),
    }
}

/// Splits a polyline into the runs that stay near the viewport.
fn clip(points: Vec<Vector2<f64>>, view: &Viewport) -> Vec<Vec<Vector2<f64>>> {
    let mut runs = Vec::new();
    let mut run = Vec::new();
    for p in points {
        if view.contains(p, 0.1) {
            run.push(p);
        } else if !run.is_empty() {
            runs.push(std::mem::take(&mut run));
        }
    }
    if !run.is_empty() {
        runs.push(run);
    }
    runs.retain(|r| r.len() > 1);
    runs
}

/// The part of `l` inside the viewport.
pub fn clip_line(l: &ProjectiveLine, view: &Viewport) -> Option<(Vector2<f64>, Vector2<f64>)> {
    let v = l.vector();
    let (a, b, c) = (v[0], v[1], v[2]);
    let mut hits = Vec::new();
    for x in [view.x0, view.x1] {
        if b != 0.0 {
            let y = -(a * x + c) / b;
            if (view.y0..=view.y1).contains(&y) {
                hits.push(Vector2::new(x, y));
            }
        }
    }
    for y in [view.y0, view.y1] {
        if a != 0.0 {
            let x = -(b * y + c) / a;
            if (view.x0..=view.x1).contains(&x) {
                hits.push(Vector2::new(x, y));
            }
        }
    }
    let first = *hits.first()?;
    let far = hits
        .iter()
        .copied()
        .max_by(|p, q| (p - first).norm().total_cmp(&(q - first).norm()))?;
    ((far - first).norm() > 0.0).then_some((first, far))
}

pub fn render(
    points: &[HomogeneousPoint],
    lines: &[ProjectiveLine],
    conics: &[ConicMatrix],
    view: &Viewport,
    rank_tol: f64,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    for l in lines {
        if let Some((p, q)) = clip_line(l, view) {
            let ((x1, y1), (x2, y2)) = (view.to_px(p), view.to_px(q));
            let _ = writeln!(
                s,
                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="black" stroke-width="1.5"/>"#
            );
        }
    }
    for (i, c) in conics.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut d = String::new();
        for branch in conic_branches(c, view, rank_tol) {
            for (k, p) in branch.iter().enumerate() {
                let (x, y) = view.to_px(*p);
                let _ = write!(d, "{}{x:.3},{y:.3}", if k == 0 { " M" } else { " L" });
            }
            if branch.len() == SAMPLES + 1 {
                d.push_str(" Z");
            }
        }
        if !d.is_empty() {
            let _ = writeln!(
                s,
                r#"<path d="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                &d[1..]
            );
        }
    }
    for (i, p) in points.iter().enumerate() {
        let (x, y) = view.to_px(Vector2::new(p.x(), p.y()));
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="14">{}</text>"#,
            x + 6.0,
            y - 6.0,
            i + 1
        );
    }
    if conics.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="20" y="30" font-family="sans-serif" font-size="20">0 real solutions</text>"#
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_conic(c: &ConicMatrix, p: &Vector2<f64>) -> f64 {
        let v = nalgebra::Vector3::new(p.x, p.y, 1.0);
        c.normalized().evaluate(&v).abs()
    }

    #[test]
    fn branches_lie_on_their_conics() {
        let view = Viewport::new([-5.0, -5.0, 5.0, 5.0]);
        let cases = [
            // ellipse x²/4 + y² = 1 shifted to (1, 1)
            (
                ConicMatrix::from_coefficients([1.0, 0.0, 4.0, -2.0, -8.0, 1.0]),
                1,
            ),
            // hyperbola xy = 1
            (
                ConicMatrix::from_coefficients([0.0, 1.0, 0.0, 0.0, 0.0, -1.0]),
                2,
            ),
            // parabola y = x² − 2
            (
                ConicMatrix::from_coefficients([1.0, 0.0, 0.0, 0.0, -1.0, -2.0]),
                1,
            ),
        ];
        for (c, n) in cases {
            let branches = conic_branches(&c, &view, 1e-9);
            assert_eq!(branches.len(), n, "{c:?}");
            for b in &branches {
                assert!(b.len() > 10);
                for p in b {
                    assert!(on_conic(&c, p) < 1e-9, "{p:?}");
                }
            }
        }
        let ellipse = conic_branches(&cases[0].0, &view, 1e-9);
        assert_eq!(ellipse[0].len(), SAMPLES + 1);
        let circle = ConicMatrix::diagonal(1.0, 1.0, 1.0);
        assert!(conic_branches(&circle, &view, 1e-9).is_empty());
    }

    #[test]
    fn lines_are_clipped_to_the_viewport() {
        let view = Viewport::new([-2.0, -2.0, 2.0, 2.0]);
        let l = ProjectiveLine::new(1.0, 0.0, -1.0).unwrap();
        let (p, q) = clip_line(&l, &view).unwrap();
        assert_eq!((p.x, q.x), (1.0, 1.0));
        assert_eq!((p.y - q.y).abs(), 4.0);
        assert!(clip_line(&ProjectiveLine::new(1.0, 0.0, -3.0).unwrap(), &view).is_none());
        assert!(clip_line(&ProjectiveLine::new(0.0, 0.0, 1.0).unwrap(), &view).is_none());
    }

    #[test]
    fn empty_solution_banner() {
        let view = Viewport::around(&[], &[]);
        let svg = render(&[HomogeneousPoint::new(0.0, 0.0)], &[], &[], &view, 1e-9);
        assert!(svg.contains("0 real solutions"));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<path").count(), 0);
    }
}
