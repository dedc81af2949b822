//! Brute-force cross-checks that share no code path with the closed forms:
//! a null-space conic fit, a sampled root scan of the tangency function, and
//! residual certification of solver output.

use crate::conic::{adjugate, inertia, point_residual, tangency_residual, ConicMatrix};
use crate::error::{ConicError, Result};
use crate::projective::{adjugate3, collinear, HomogeneousPoint, ProjectiveLine, Vec3};
use crate::selfpolar::{diagonal_triangle_raw, pencil_member, DiagonalTriangle};
use crate::solvers::{MinimalConfiguration, SolutionSet, SolverRegistry};
use crate::tolerance::Tolerances;

/// Diagonal entries of `R` below this fraction of the first are zero.
const QR_RANK_TOL: f64 = 1e-12;

/// Column-pivoted Householder QR of a `5 × 6` matrix, in place.
///
/// Returns the column permutation and the numerical rank.
#[allow(clippy::needless_range_loop)]
fn pivoted_qr(a: &mut [[f64; 6]; 5]) -> ([usize; 6], usize) {
    let mut perm = [0, 1, 2, 3, 4, 5];
    let mut rank = 5;
    let mut lead = 0.0;
    for k in 0..5 {
        let col_norm = |a: &[[f64; 6]; 5], j: usize| (k..5).map(|i| a[i][j] * a[i][j]).sum::<f64>();
        let pivot = (k..6)
            .max_by(|&x, &y| col_norm(a, x).total_cmp(&col_norm(a, y)))
            .unwrap();
        if pivot != k {
            for row in a.iter_mut() {
                row.swap(k, pivot);
            }
            perm.swap(k, pivot);
        }

        let norm = col_norm(a, k).sqrt();
        if k == 0 {
            lead = norm;
        }
        if norm <= QR_RANK_TOL * lead || norm == 0.0 {
            rank = k;
            break;
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v = [0.0; 5];
        for i in k..5 {
            v[i] = a[i][k];
        }
        v[k] -= alpha;
        let vv: f64 = (k..5).map(|i| v[i] * v[i]).sum();
        for j in k..6 {
            let dot: f64 = (k..5).map(|i| v[i] * a[i][j]).sum();
            let f = 2.0 * dot / vv;
            for i in k..5 {
                a[i][j] -= f * v[i];
            }
        }
    }
    (perm, rank)
}

/// The conic through five points as the null vector of the design matrix
/// with rows `(x², xy, y², xw, yw, w²)`.
pub fn nullspace_five_point(pts: &[HomogeneousPoint; 5]) -> Result<ConicMatrix> {
    let mut a = [[0.0; 6]; 5];
    for (row, p) in a.iter_mut().zip(pts) {
        let v = p.vector();
        let (x, y, w) = (v[0], v[1], v[2]);
        *row = [x * x, x * y, y * y, x * w, y * w, w * w];
    }
    let (perm, rank) = pivoted_qr(&mut a);
    if rank < 5 {
        return Err(ConicError::RankDeficient(rank));
    }
    // back-substitute R₁₁ z = −r₁₂ with the last pivoted coordinate set to 1
    let mut z = [0.0; 6];
    z[5] = 1.0;
    for i in (0..5).rev() {
        let s: f64 = ((i + 1)..6).map(|j| a[i][j] * z[j]).sum();
        z[i] = -s / a[i][i];
    }
    let mut k = [0.0; 6];
    for (slot, &col) in perm.iter().enumerate() {
        k[col] = z[slot];
    }
    Ok(ConicMatrix::from_coefficients(k))
}

/// `lᵀ adj(C(s)) l` along the pencil, evaluated numerically.
fn tangency_function(t: &DiagonalTriangle, l: &Vec3, s: f64) -> f64 {
    let c = pencil_member(t, s);
    l.dot(&(adjugate3(c.matrix()) * l))
}

/// Roots of `s ↦ lᵀ adj(C(s)) l` in `[lo, hi]`, found by sign changes on a
/// uniform grid of `samples` points and refined by bisection to a relative
/// width of `1e-12`.
///
/// Roots where the function touches zero without changing sign are missed.
pub fn scan_tangency_roots(
    t: &DiagonalTriangle,
    l: &ProjectiveLine,
    range: (f64, f64),
    samples: usize,
) -> Vec<f64> {
    let (lo, hi) = range;
    let n = samples.max(2);
    let g = |s: f64| tangency_function(t, l.vector(), s);
    let grid: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let mut roots = Vec::new();
    let mut prev = (grid[0], g(grid[0]));
    if prev.1 == 0.0 {
        roots.push(prev.0);
    }
    for &s in &grid[1..] {
        let cur = (s, g(s));
        if cur.1 == 0.0 {
            roots.push(s);
        } else if prev.1 != 0.0 && prev.1.signum() != cur.1.signum() {
            let (mut a, mut b, mut ga) = (prev.0, cur.0, prev.1);
            while b - a > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let gm = g(m);
                if gm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if gm.signum() == ga.signum() {
                    a = m;
                    ga = gm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
        }
        prev = cur;
    }
    roots
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check does not apply to this input.
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

impl Check {
    fn bound(name: String, value: f64, threshold: f64) -> Self {
        Self {
            name,
            status: if value <= threshold {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            value,
            threshold,
            detail: String::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CertificationReport {
    pub checks: Vec<Check>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

/// Four points on `c` forming a quadrangle: input points first, then the
/// tangency points `adj(C) l` of the input lines.
fn quadrangle_on(c: &ConicMatrix, config: &MinimalConfiguration, tol: f64) -> Option<[Vec3; 4]> {
    let adj = adjugate(c);
    let candidates: Vec<Vec3> = config
        .points()
        .iter()
        .map(|p| *p.vector())
        .chain(config.lines().iter().map(|l| adj.matrix() * l.vector()))
        .filter(|v| v.norm() > 0.0)
        .collect();
    let n = candidates.len();
    for a in 0..n {
        for b in (a + 1)..n {
            for d in (b + 1)..n {
                for e in (d + 1)..n {
                    let q = [candidates[a], candidates[b], candidates[d], candidates[e]];
                    let ok = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
                        .iter()
                        .all(|t| !collinear(&q[t[0]], &q[t[1]], &q[t[2]], 1e3 * tol));
                    if ok {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

/// Largest `|ξᵢᵀ C ξⱼ|`, `i ≠ j`, relative to `‖ξᵢ‖‖ξⱼ‖‖C‖`.
fn self_polarity_residual(c: &ConicMatrix, t: &DiagonalTriangle) -> f64 {
    let xi = t.vertices();
    let norm = c.matrix().norm();
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let r = xi[i].dot(&(c.matrix() * xi[j])).abs() / (xi[i].norm() * xi[j].norm() * norm);
            worst = worst.max(r);
        }
    }
    worst
}

/// Recomputes residuals, non-degeneracy, self-polarity and solution counts
/// for `solutions` against `config`.
pub fn certify(
    config: &MinimalConfiguration,
    solutions: &SolutionSet,
    tol: &Tolerances,
) -> CertificationReport {
    let mut report = CertificationReport::default();
    let points = config.points();
    let lines = config.lines();

    for (i, c) in solutions.real_conics.iter().enumerate() {
        let n = i + 1;
        let inc = points
            .iter()
            .map(|p| point_residual(c, p.vector()))
            .fold(0.0f64, f64::max);
        report.checks.push(Check::bound(
            format!("conic {n} incidence"),
            inc,
            tol.residual,
        ));
        let tan = lines
            .iter()
            .map(|l| tangency_residual(c, l.vector()))
            .fold(0.0f64, f64::max);
        report.checks.push(Check::bound(
            format!("conic {n} tangency"),
            tan,
            tol.residual,
        ));

        let eig = c.matrix().symmetric_eigen().eigenvalues;
        let max = eig.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let min = eig.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        let margin = if max > 0.0 { min / max } else { 0.0 };
        let rank = inertia(c.matrix(), tol.rank).rank();
        report.checks.push(Check {
            name: format!("conic {n} non-degeneracy"),
            status: if rank == 3 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            value: margin,
            threshold: tol.rank,
            detail: format!("rank {rank}"),
        });

        let name = format!("conic {n} self-polarity");
        match quadrangle_on(c, config, tol.incidence)
            .and_then(|q| diagonal_triangle_raw(q, tol.incidence).ok())
        {
            Some(t) => report.checks.push(Check::bound(
                name,
                self_polarity_residual(c, &t),
                tol.residual,
            )),
            None => report.checks.push(Check {
                name,
                status: CheckStatus::Skipped,
                value: 0.0,
                threshold: tol.residual,
                detail: "no quadrangle of known points on the conic".into(),
            }),
        }
    }

    match SolverRegistry::with_builtin().predict(config, tol) {
        Ok(pred) => {
            let matches =
                pred.real == solutions.real_count() && pred.complex == solutions.complex_count;
            report.checks.push(Check {
                name: "count consistency".into(),
                status: if matches {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                value: solutions.real_count() as f64,
                threshold: pred.real as f64,
                detail: format!(
                    "predicted {} real + {} complex ({}), solved {} real + {} complex",
                    pred.real,
                    pred.complex,
                    pred.rule.describe(),
                    solutions.real_count(),
                    solutions.complex_count
                ),
            });
            let expected = pred.real + pred.complex;
            let total = solutions.total_count();
            report.checks.push(Check {
                name: "solution cardinality".into(),
                status: if total == expected {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                value: total as f64,
                threshold: expected as f64,
                detail: format!("{total} solutions over ℂ, expected {expected}"),
            });
        }
        Err(e) => report.checks.push(Check {
            name: "count consistency".into(),
            status: CheckStatus::Fail,
            value: f64::NAN,
            threshold: f64::NAN,
            detail: format!("prediction failed: {e}"),
        }),
    }
    report
}
