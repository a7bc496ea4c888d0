//! Exact angular bookkeeping on the unit circle and the arcs an axis
//! arrangement cuts out of it.
//!
//! Positions are compared without angles: a position is a quadrant plus the
//! squared `y` coordinate, which is rational both for rational circle points
//! and for the crossings of rational axis lines (`y^2 = c^2` or `1 - d^2`).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{check_strict, AxisArrangement, CellSignature, Color, ColoredPoint, Line, Orientation};
use crate::rational::{int, Rational};

/// Angular position on the unit circle, ordered counterclockwise from `(1, 0)`.
///
/// Quadrants are half-open: `0: x>0,y>=0`, `1: x<=0,y>0`, `2: x<0,y<=0`,
/// `3: x>=0,y<0`. Within quadrants 0 and 2 the angle grows with `y^2`, within
/// 1 and 3 it shrinks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AngleKey {
    pub quadrant: u8,
    pub ysq: Rational,
}

impl Ord for AngleKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.quadrant.cmp(&other.quadrant).then_with(|| {
            if self.quadrant.is_multiple_of(2) {
                self.ysq.cmp(&other.ysq)
            } else {
                other.ysq.cmp(&self.ysq)
            }
        })
    }
}

impl PartialOrd for AngleKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn quadrant(x_pos: bool, x_zero: bool, y_pos: bool, y_zero: bool) -> u8 {
    match (x_pos, x_zero, y_pos, y_zero) {
        (true, _, _, true) | (true, _, true, _) => 0,
        (_, _, true, _) => 1,
        (false, false, _, _) => 2,
        _ => 3,
    }
}

impl AngleKey {
    pub fn of_point(x: &Rational, y: &Rational) -> AngleKey {
        AngleKey {
            quadrant: quadrant(x.is_positive(), x.is_zero(), y.is_positive(), y.is_zero()),
            ysq: y * y,
        }
    }

    /// Angle 0, pi/2, pi, 3pi/2: the points `(1,0)`, `(0,1)`, `(-1,0)`, `(0,-1)`.
    pub fn turning(k: u8) -> AngleKey {
        AngleKey { quadrant: k, ysq: if k.is_multiple_of(2) { int(0) } else { int(1) } }
    }
}

/// Exact description of a position on the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CirclePos {
    Point { x: Rational, y: Rational },
    /// Crossing of the horizontal line `y`; `x = ±sqrt(1 - y^2)`.
    OnHorizontal { y: Rational, x_positive: bool },
    /// Crossing of the vertical line `x`; `y = ±sqrt(1 - x^2)`.
    OnVertical { x: Rational, y_positive: bool },
}

impl CirclePos {
    pub fn key(&self) -> AngleKey {
        match self {
            CirclePos::Point { x, y } => AngleKey::of_point(x, y),
            CirclePos::OnHorizontal { y, x_positive } => AngleKey {
                quadrant: quadrant(*x_positive, false, y.is_positive(), y.is_zero()),
                ysq: y * y,
            },
            CirclePos::OnVertical { x, y_positive } => AngleKey {
                quadrant: quadrant(x.is_positive(), x.is_zero(), *y_positive, false),
                ysq: int(1) - x * x,
            },
        }
    }

    /// Approximate coordinates for display.
    pub fn approx(&self) -> (f64, f64) {
        use crate::rational::to_f64;
        match self {
            CirclePos::Point { x, y } => (to_f64(x), to_f64(y)),
            CirclePos::OnHorizontal { y, x_positive } => {
                let yv = to_f64(y);
                let xv = (1.0 - yv * yv).max(0.0).sqrt();
                (if *x_positive { xv } else { -xv }, yv)
            }
            CirclePos::OnVertical { x, y_positive } => {
                let xv = to_f64(x);
                let yv = (1.0 - xv * xv).max(0.0).sqrt();
                (xv, if *y_positive { yv } else { -yv })
            }
        }
    }
}

/// Whether `theta` lies strictly inside the counterclockwise arc from
/// `start` to `end`. Equal endpoints denote the circle minus that point.
pub fn strictly_inside(start: &AngleKey, end: &AngleKey, theta: &AngleKey) -> bool {
    match start.cmp(end) {
        Ordering::Less => start < theta && theta < end,
        Ordering::Greater => theta > start || theta < end,
        Ordering::Equal => theta != start,
    }
}

/// The proper crossings of an axis line with the unit circle (`|c| < 1`).
pub fn crossings(line: &Line) -> Vec<CirclePos> {
    let Line::Axis { orientation, coord } = line else {
        return Vec::new();
    };
    if coord.abs() >= int(1) {
        return Vec::new();
    }
    match orientation {
        Orientation::Horizontal => [true, false]
            .into_iter()
            .map(|s| CirclePos::OnHorizontal { y: coord.clone(), x_positive: s })
            .collect(),
        Orientation::Vertical => [true, false]
            .into_iter()
            .map(|s| CirclePos::OnVertical { x: coord.clone(), y_positive: s })
            .collect(),
    }
}

/// A maximal open arc of the unit circle inside one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellArc {
    pub signature: CellSignature,
    /// `None` for both ends when no line crosses the circle.
    pub start: Option<CirclePos>,
    pub end: Option<CirclePos>,
    pub points: Vec<usize>,
    pub colors: Vec<Color>,
}

impl CellArc {
    pub fn is_full_circle(&self) -> bool {
        self.start.is_none()
    }

    pub fn is_monochromatic(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }

    pub fn color(&self) -> Option<Color> {
        self.colors.first().copied().filter(|_| self.is_monochromatic())
    }

    /// Quadrants met by the arc, walking counterclockwise from its start.
    pub fn quadrants(&self) -> Vec<u8> {
        match (&self.start, &self.end) {
            (Some(s), Some(e)) => {
                let (qs, qe) = (s.key().quadrant, e.key().quadrant);
                if qs == qe && s.key() >= e.key() {
                    return vec![0, 1, 2, 3];
                }
                let mut out = vec![qs];
                let mut q = qs;
                while q != qe {
                    q = (q + 1) % 4;
                    out.push(q);
                }
                out
            }
            _ => vec![0, 1, 2, 3],
        }
    }
}

enum Event {
    Point(usize),
    Crossing(usize),
}

/// Walks the circle counterclockwise and cuts it at every proper crossing of
/// the arrangement, producing one arc per maximal run with a constant cell
/// signature. Points of `points` must lie on the unit circle.
pub fn cell_arcs(points: &[ColoredPoint], lines: &[Line]) -> Result<Vec<CellArc>> {
    let arr = AxisArrangement::from_lines(lines)?;
    check_strict(points, lines)?;
    let mut events: Vec<(AngleKey, Event, Option<CirclePos>)> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        events.push((AngleKey::of_point(&p.x, &p.y), Event::Point(i), None));
    }
    for (li, l) in lines.iter().enumerate() {
        for c in crossings(l) {
            events.push((c.key(), Event::Crossing(li), Some(c)));
        }
    }
    events.sort_by(|a, b| a.0.cmp(&b.0));

    // Sides just before angle 0, i.e. at (1, -eps).
    let mut above: Vec<bool> = Vec::with_capacity(lines.len());
    let mut row = 0usize;
    let mut col = 0usize;
    for l in lines {
        let (o, c) = (l.orientation().expect("axis"), l.coord().expect("axis"));
        let positive = match o {
            Orientation::Horizontal => c.is_negative(),
            Orientation::Vertical => *c < int(1),
        };
        above.push(positive);
        if positive {
            match o {
                Orientation::Horizontal => row += 1,
                Orientation::Vertical => col += 1,
            }
        }
    }
    debug_assert_eq!(arr.horizontal.iter().filter(|c| c.is_negative()).count(), row);

    let mut arcs: Vec<CellArc> = Vec::new();
    let mut current = CellArc {
        signature: CellSignature { row, col },
        start: None,
        end: None,
        points: Vec::new(),
        colors: Vec::new(),
    };
    let mut i = 0;
    while i < events.len() {
        let key = events[i].0.clone();
        let mut j = i;
        while j < events.len() && events[j].0 == key {
            j += 1;
        }
        let group = &events[i..j];
        let crossing = group.iter().find_map(|e| match (&e.1, &e.2) {
            (Event::Crossing(li), Some(pos)) => Some((*li, pos.clone())),
            _ => None,
        });
        if let Some((li, pos)) = crossing {
            if let Some(p) = group.iter().find_map(|e| match e.1 {
                Event::Point(pi) => Some(pi),
                _ => None,
            }) {
                return Err(Error::PointOnLine { point: points[p].id, line: lines[li].to_string() });
            }
            current.end = Some(pos.clone());
            let next_start = Some(pos);
            for e in group {
                if let Event::Crossing(li) = e.1 {
                    let o = lines[li].orientation().expect("axis");
                    let (counter, was) = match o {
                        Orientation::Horizontal => (&mut row, above[li]),
                        Orientation::Vertical => (&mut col, above[li]),
                    };
                    if was {
                        *counter -= 1;
                    } else {
                        *counter += 1;
                    }
                    above[li] = !was;
                }
            }
            let finished = std::mem::replace(
                &mut current,
                CellArc {
                    signature: CellSignature { row, col },
                    start: next_start,
                    end: None,
                    points: Vec::new(),
                    colors: Vec::new(),
                },
            );
            arcs.push(finished);
        } else {
            for e in group {
                if let Event::Point(pi) = e.1 {
                    current.points.push(points[pi].id);
                    current.colors.push(points[pi].color);
                }
            }
        }
        i = j;
    }

    if arcs.is_empty() {
        return Ok(vec![current]);
    }
    // The run before the first crossing continues the run after the last one.
    let head = arcs.remove(0);
    debug_assert_eq!(head.signature, current.signature);
    current.end = head.end;
    current.points.extend(head.points);
    current.colors.extend(head.colors);
    arcs.push(current);
    Ok(arcs)
}

/// Arcs grouped by the cell that contains them.
pub fn arcs_by_cell(arcs: &[CellArc]) -> BTreeMap<CellSignature, Vec<&CellArc>> {
    let mut m: BTreeMap<CellSignature, Vec<&CellArc>> = BTreeMap::new();
    for a in arcs {
        m.entry(a.signature).or_default().push(a);
    }
    m
}
