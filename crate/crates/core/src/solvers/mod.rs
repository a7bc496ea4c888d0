//! Constructive solvers for circle instances.

pub mod axis;
pub mod general;
pub mod wedge;

use crate::arcs::{strictly_inside, AngleKey};
use crate::decomposition::{CircleDecomposition, Switch};
use crate::geometry::{circle_parameter, circle_point_from_parameter, Axis, ColoredPoint};
use crate::rational::{int, Rational};

pub use axis::{build_l0, refine_step, repair_large_cell, solve_axis, AxisSolution, AxisTrace, Provenance, Step};
pub use general::{solve_general, GeneralSolution};
pub use wedge::wedge_baseline;

/// Rational circle point strictly inside the open switch arc that satisfies
/// `accept`.
pub fn switch_interior_point(
    dec: &CircleDecomposition,
    s: &Switch,
    accept: impl FnMut(&Rational, &Rational) -> bool,
) -> (Rational, Rational) {
    arc_interior_point(dec.point(s.start), dec.point(s.end), accept)
}

/// Rational point strictly inside the counterclockwise arc from `p` to `q`
/// (distinct circle points) that satisfies `accept`. Candidates are drawn
/// along the parameter `t = y / (1 + x)`.
pub fn arc_interior_point(
    p: &ColoredPoint,
    q: &ColoredPoint,
    mut accept: impl FnMut(&Rational, &Rational) -> bool,
) -> (Rational, Rational) {
    let (pk, qk) = (AngleKey::of_point(&p.x, &p.y), AngleKey::of_point(&q.x, &q.y));
    let tp = circle_parameter(&p.x, &p.y);
    let tq = circle_parameter(&q.x, &q.y);
    let west = AngleKey::turning(2);
    let mut candidates: Box<dyn Iterator<Item = Rational>> = match (tp, tq) {
        (Some(a), Some(b)) if !strictly_inside(&pk, &qk, &west) => Box::new(fractions().map(move |f| &a + (&b - &a) * f)),
        (Some(a), _) => Box::new((1..).map(move |k: i64| &a + int(k))),
        (None, Some(b)) => Box::new((1..).map(move |k: i64| &b - int(k))),
        (None, None) => unreachable!("switch endpoints are distinct"),
    };
    loop {
        let t = candidates.next().expect("candidate stream is infinite");
        let (x, y) = circle_point_from_parameter(&t);
        if accept(&x, &y) {
            return (x, y);
        }
    }
}

/// `1/2, 1/3, 2/3, 1/4, 3/4, ...` (reduced fractions in `(0, 1)`).
fn fractions() -> impl Iterator<Item = Rational> {
    (2i64..).flat_map(|n| (1..n).map(move |a| Rational::new(a.into(), n.into()))).filter({
        let mut seen = std::collections::HashSet::new();
        move |f| seen.insert(f.clone())
    })
}

/// Whether `v` avoids the given coordinate of every point.
pub(crate) fn avoids(points: &[ColoredPoint], axis: Axis, v: &Rational) -> bool {
    points.iter().all(|p| p.coord(axis) != v)
}
