//! Seeded random configurations for the integration tests.
//!
//! Coordinates are uniform in [-10, 10]. A sample is kept only if every
//! predicate that decides its case is either exact by construction
//! (relative value below `EXACT`) or clear of zero by `MARGIN`, ten times
//! the default incidence tolerance.

#![allow(dead_code)]

use conic_core::projective::{cross, det_columns};
use conic_core::selfpolar::diagonal_triangle;
use conic_core::solvers::{classify_3p2l_case, dual_configuration, ThreePointTwoLineCase};
use conic_core::{HomogeneousPoint, MinimalConfiguration, ProjectiveLine, Tolerances, Vec3};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MARGIN: f64 = 1e-9;
pub const EXACT: f64 = 1e-12;
pub const BOX: f64 = 10.0;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point(rng: &mut impl Rng) -> HomogeneousPoint {
    HomogeneousPoint::new(rng.gen_range(-BOX..BOX), rng.gen_range(-BOX..BOX))
}

/// A line through two random points of the box.
pub fn line(rng: &mut impl Rng) -> ProjectiveLine {
    loop {
        let (a, b) = (point(rng), point(rng));
        if let Ok(l) = ProjectiveLine::through(&a, &b) {
            return l;
        }
    }
}

fn line_through(v: &Vec3, rng: &mut impl Rng) -> Option<ProjectiveLine> {
    ProjectiveLine::from_vector(cross(v, point(rng).vector())).ok()
}

fn rel_det(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    det_columns(a, b, c).abs() / (a.norm() * b.norm() * c.norm())
}

fn rel_inc(x: &Vec3, l: &Vec3) -> f64 {
    x.dot(l).abs() / (x.norm() * l.norm())
}

/// Every value is exact or clearly nonzero.
fn separated(values: impl IntoIterator<Item = f64>) -> bool {
    values.into_iter().all(|v| v <= EXACT || v > MARGIN)
}

fn all_clear(values: impl IntoIterator<Item = f64>) -> bool {
    values.into_iter().all(|v| v > MARGIN)
}

fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn points_clear(pts: &[HomogeneousPoint]) -> bool {
    all_clear(
        triples(pts.len())
            .into_iter()
            .map(|[i, j, k]| rel_det(pts[i].vector(), pts[j].vector(), pts[k].vector())),
    )
}

pub fn five_points(rng: &mut impl Rng) -> [HomogeneousPoint; 5] {
    loop {
        let pts = [(); 5].map(|_| point(rng));
        if points_clear(&pts) {
            return pts;
        }
    }
}

pub fn four_points(rng: &mut impl Rng) -> [HomogeneousPoint; 4] {
    loop {
        let pts = [(); 4].map(|_| point(rng));
        if points_clear(&pts) {
            return pts;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineKind {
    Generic,
    ThroughPoint,
    ThroughDiagonalVertex,
}

/// Four points and a line; the line passes through one point or one
/// diagonal vertex when asked, and is clear of everything else.
pub fn four_points_line(
    rng: &mut impl Rng,
    kind: LineKind,
) -> ([HomogeneousPoint; 4], ProjectiveLine) {
    loop {
        let pts = four_points(rng);
        let t = diagonal_triangle(&pts[0], &pts[1], &pts[2], &pts[3], 1e-10).unwrap();
        let l = match kind {
            LineKind::Generic => Some(line(rng)),
            LineKind::ThroughPoint => line_through(pts[rng.gen_range(0..4)].vector(), rng),
            LineKind::ThroughDiagonalVertex => {
                line_through(&t.vertices()[rng.gen_range(0..3)], rng)
            }
        };
        let Some(l) = l else { continue };
        let wanted = if kind == LineKind::Generic { 0 } else { 1 };
        if four_line_clear(&pts, &l, wanted) {
            return (pts, l);
        }
    }
}

/// The line is clear of the points and diagonal vertices except for
/// `exact` incidences that hold by construction.
fn four_line_clear(pts: &[HomogeneousPoint; 4], l: &ProjectiveLine, exact: usize) -> bool {
    let Ok(t) = diagonal_triangle(&pts[0], &pts[1], &pts[2], &pts[3], 1e-10) else {
        return false;
    };
    let pv: Vec<f64> = pts
        .iter()
        .map(|p| rel_inc(p.vector(), l.vector()))
        .collect();
    let xv: Vec<f64> = t
        .vertices()
        .iter()
        .map(|x| rel_inc(x, l.vector()))
        .collect();
    let found = pv.iter().chain(&xv).filter(|&&v| v <= EXACT).count();
    found == exact && separated(pv.iter().chain(&xv).copied())
}

/// Three points and two lines that fall in `case`, with shuffled input order.
pub fn three_points_two_lines(
    rng: &mut impl Rng,
    case: ThreePointTwoLineCase,
) -> ([HomogeneousPoint; 3], [ProjectiveLine; 2]) {
    use ThreePointTwoLineCase::*;
    loop {
        let p = point(rng);
        let along = |rng: &mut dyn rand::RngCore, from: &HomogeneousPoint| {
            let u: f64 = rng.gen_range(-1.5..2.5);
            let v = p.vector() + (from.vector() - p.vector()) * u;
            HomogeneousPoint::new(v[0], v[1])
        };
        let (pts, lines) = match case {
            Case1 => {
                let pts = [point(rng), point(rng), point(rng)];
                let (Some(l1), Some(l2)) = (
                    line_through(pts[1].vector(), rng),
                    line_through(pts[2].vector(), rng),
                ) else {
                    continue;
                };
                (pts, [l1, l2])
            }
            Case2 => {
                let x1 = point(rng);
                let x2 = along(rng, &x1);
                let q = point(rng);
                let x3 = along(rng, &q);
                let (Ok(l1), Some(l2)) = (
                    ProjectiveLine::through(&p, &q),
                    line_through(p.vector(), rng),
                ) else {
                    continue;
                };
                ([x1, x2, x3], [l1, l2])
            }
            Case3 => {
                let x2 = point(rng);
                let x3 = along(rng, &x2);
                let (Some(l1), Some(l2)) =
                    (line_through(p.vector(), rng), line_through(p.vector(), rng))
                else {
                    continue;
                };
                ([point(rng), x2, x3], [l1, l2])
            }
            Case4 => {
                let x3 = point(rng);
                let Some(l1) = line_through(x3.vector(), rng) else {
                    continue;
                };
                ([point(rng), point(rng), x3], [l1, line(rng)])
            }
            Case5 => ([point(rng), point(rng), point(rng)], [line(rng), line(rng)]),
        };
        if !three_two_separated(&pts, &lines) {
            continue;
        }
        let mut pts = pts;
        let mut lines = lines;
        pts.shuffle(rng);
        lines.shuffle(rng);
        match classify_3p2l_case(&pts, &lines, &Tolerances::default()) {
            Ok(c) if c == case => return (pts, lines),
            _ => continue,
        }
    }
}

fn three_two_separated(pts: &[HomogeneousPoint; 3], lines: &[ProjectiveLine; 2]) -> bool {
    let x = pts.map(|p| *p.vector());
    let (l1, l2) = (lines[0].vector(), lines[1].vector());
    let p = cross(l1, l2);
    if p.norm() <= MARGIN * l1.norm() * l2.norm() || rel_det(&x[0], &x[1], &x[2]) <= MARGIN {
        return false;
    }
    let incidences = x.iter().flat_map(|v| [rel_inc(v, l1), rel_inc(v, l2)]);
    let pairs = [(0, 1), (0, 2), (1, 2)].map(|(j, k)| rel_det(&x[j], &x[k], &p));
    separated(incidences.chain(pairs))
}

/// Whether the configuration handed to the inner solver of a dual shape
/// clears the same margins as the primal families.
fn dual_clear(config: &MinimalConfiguration) -> bool {
    let Ok((dual, _)) = dual_configuration(config, &Tolerances::default()) else {
        return false;
    };
    match &dual {
        MinimalConfiguration::FivePoints(p) => points_clear(p),
        MinimalConfiguration::FourPointsOneLine(p, l) => {
            points_clear(p) && four_line_clear(p, l, 0)
        }
        MinimalConfiguration::ThreePointsTwoLines(p, l) => {
            three_two_separated(p, l)
                && classify_3p2l_case(p, l, &Tolerances::default())
                    == Ok(ThreePointTwoLineCase::Case5)
        }
        _ => false,
    }
}

/// A named generator of configurations.
pub struct Family {
    pub name: &'static str,
    pub generate: fn(&mut ChaCha8Rng) -> MinimalConfiguration,
}

/// `points` points and `5 - points` lines, all drawn from the box.
fn dual_shape(rng: &mut ChaCha8Rng, points: usize) -> MinimalConfiguration {
    loop {
        let p = (0..points).map(|_| point(rng)).collect();
        let l = (0..5 - points).map(|_| line(rng)).collect();
        let config = MinimalConfiguration::from_parts(p, l).unwrap();
        if dual_clear(&config) {
            return config;
        }
    }
}

fn gen_5p(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    MinimalConfiguration::FivePoints(five_points(rng))
}
fn gen_4p1l(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    let (p, l) = four_points_line(rng, LineKind::Generic);
    MinimalConfiguration::FourPointsOneLine(p, l)
}
fn gen_4p1l_point(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    let (p, l) = four_points_line(rng, LineKind::ThroughPoint);
    MinimalConfiguration::FourPointsOneLine(p, l)
}
fn gen_4p1l_vertex(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    let (p, l) = four_points_line(rng, LineKind::ThroughDiagonalVertex);
    MinimalConfiguration::FourPointsOneLine(p, l)
}
fn gen_3p2l(rng: &mut ChaCha8Rng, case: ThreePointTwoLineCase) -> MinimalConfiguration {
    let (p, l) = three_points_two_lines(rng, case);
    MinimalConfiguration::ThreePointsTwoLines(p, l)
}
fn gen_case1(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    gen_3p2l(rng, ThreePointTwoLineCase::Case1)
}
fn gen_case2(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    gen_3p2l(rng, ThreePointTwoLineCase::Case2)
}
fn gen_case3(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    gen_3p2l(rng, ThreePointTwoLineCase::Case3)
}
fn gen_case4(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    gen_3p2l(rng, ThreePointTwoLineCase::Case4)
}
fn gen_case5(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    gen_3p2l(rng, ThreePointTwoLineCase::Case5)
}
fn gen_2p3l(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    dual_shape(rng, 2)
}
fn gen_1p4l(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    dual_shape(rng, 1)
}
fn gen_5l(rng: &mut ChaCha8Rng) -> MinimalConfiguration {
    dual_shape(rng, 0)
}

pub fn families() -> Vec<Family> {
    vec![
        Family {
            name: "5p",
            generate: gen_5p,
        },
        Family {
            name: "4p1l generic",
            generate: gen_4p1l,
        },
        Family {
            name: "4p1l line through a point",
            generate: gen_4p1l_point,
        },
        Family {
            name: "4p1l line through a diagonal vertex",
            generate: gen_4p1l_vertex,
        },
        Family {
            name: "3p2l case 1",
            generate: gen_case1,
        },
        Family {
            name: "3p2l case 2",
            generate: gen_case2,
        },
        Family {
            name: "3p2l case 3",
            generate: gen_case3,
        },
        Family {
            name: "3p2l case 4",
            generate: gen_case4,
        },
        Family {
            name: "3p2l case 5",
            generate: gen_case5,
        },
        Family {
            name: "2p3l",
            generate: gen_2p3l,
        },
        Family {
            name: "1p4l",
            generate: gen_1p4l,
        },
        Family {
            name: "5l",
            generate: gen_5l,
        },
    ]
}
