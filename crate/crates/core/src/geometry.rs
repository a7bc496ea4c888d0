//! Exact planar primitives: colored points, lines, side tests, and
//! separation checks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPoint {
    pub id: usize,
    pub color: Color,
    pub x: Rational,
    pub y: Rational,
}

impl ColoredPoint {
    pub fn new(id: usize, color: Color, x: Rational, y: Rational) -> Self {
        Self { id, color, x, y }
    }

    pub fn coord(&self, axis: Axis) -> &Rational {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }

    pub fn on_unit_circle(&self) -> bool {
        &self.x * &self.x + &self.y * &self.y == int(1)
    }
}

/// Maps `t` to the unit circle point `((1-t^2)/(1+t^2), 2t/(1+t^2))`.
pub fn circle_point_from_parameter(t: &Rational) -> (Rational, Rational) {
    let t2 = t * t;
    let den = int(1) + &t2;
    ((int(1) - &t2) / &den, (t * int(2)) / den)
}

/// Inverse of [`circle_point_from_parameter`]; `None` for `(-1, 0)`.
pub fn circle_parameter(x: &Rational, y: &Rational) -> Option<Rational> {
    let den = int(1) + x;
    if den.is_zero() {
        None
    } else {
        Some(y / den)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "H")]
    Horizontal,
    #[serde(rename = "V")]
    Vertical,
}

impl Orientation {
    /// The coordinate a line of this orientation fixes.
    pub fn axis(self) -> Axis {
        match self {
            Orientation::Horizontal => Axis::Y,
            Orientation::Vertical => Axis::X,
        }
    }

    pub fn perpendicular(self) -> Orientation {
        match self {
            Orientation::Horizontal => Orientation::Vertical,
            Orientation::Vertical => Orientation::Horizontal,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Orientation::Horizontal => "H",
            Orientation::Vertical => "V",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Negative,
    Zero,
    Positive,
}

impl Side {
    fn of(v: &Rational) -> Side {
        if v.is_zero() {
            Side::Zero
        } else if v.is_positive() {
            Side::Positive
        } else {
            Side::Negative
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Line {
    Axis { orientation: Orientation, coord: Rational },
    /// `a*x + b*y + c = 0`, kept in canonical form (see [`Line::general`]).
    General { a: Rational, b: Rational, c: Rational },
}

impl Line {
    pub fn horizontal(y: Rational) -> Line {
        Line::Axis { orientation: Orientation::Horizontal, coord: y }
    }

    pub fn vertical(x: Rational) -> Line {
        Line::Axis { orientation: Orientation::Vertical, coord: x }
    }

    pub fn axis(orientation: Orientation, coord: Rational) -> Line {
        Line::Axis { orientation, coord }
    }

    /// Builds `a*x + b*y + c = 0` scaled to coprime integers with the first
    /// nonzero of `(a, b)` positive, so equal lines compare equal.
    pub fn general(a: Rational, b: Rational, c: Rational) -> Result<Line> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateLine);
        }
        let l = rational::denominator_lcm([&a, &b, &c]);
        let scale = Rational::from_integer(l);
        let (a, b, c) = (a * &scale, b * &scale, c * &scale);
        let g = [a.numer(), b.numer(), c.numer()]
            .into_iter()
            .fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut g = Rational::from_integer(g);
        let lead = if a.is_zero() { &b } else { &a };
        if lead.is_negative() {
            g = -g;
        }
        Ok(Line::General { a: a / &g, b: b / &g, c: c / g })
    }

    /// The line through two distinct points.
    pub fn through(p: (&Rational, &Rational), q: (&Rational, &Rational)) -> Result<Line> {
        let a = q.1 - p.1;
        let b = p.0 - q.0;
        let c = -(&a * p.0 + &b * p.1);
        // a*x + b*y + c with a = dy, b = -dx vanishes at p and q
        Line::general(a, b, c)
    }

    pub fn is_axis(&self) -> bool {
        matches!(self, Line::Axis { .. })
    }

    pub fn orientation(&self) -> Option<Orientation> {
        match self {
            Line::Axis { orientation, .. } => Some(*orientation),
            Line::General { .. } => None,
        }
    }

    pub fn coord(&self) -> Option<&Rational> {
        match self {
            Line::Axis { coord, .. } => Some(coord),
            Line::General { .. } => None,
        }
    }

    /// Same line with the positive and negative sides exchanged.
    pub fn negated(&self) -> NegatedLine {
        NegatedLine(self.clone())
    }

    fn value(&self, x: &Rational, y: &Rational) -> Rational {
        match self {
            Line::Axis { orientation: Orientation::Horizontal, coord } => y - coord,
            Line::Axis { orientation: Orientation::Vertical, coord } => x - coord,
            Line::General { a, b, c } => a * x + b * y + c,
        }
    }

    pub fn side_of(&self, x: &Rational, y: &Rational) -> Side {
        Side::of(&self.value(x, y))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Axis { orientation: Orientation::Horizontal, coord } => write!(f, "y={coord}"),
            Line::Axis { orientation: Orientation::Vertical, coord } => write!(f, "x={coord}"),
            Line::General { a, b, c } => write!(f, "({a})x+({b})y+({c})=0"),
        }
    }
}

/// A line whose side test is reversed; only used to state antisymmetry.
#[derive(Debug, Clone)]
pub struct NegatedLine(pub Line);

impl NegatedLine {
    pub fn side_of(&self, x: &Rational, y: &Rational) -> Side {
        Side::of(&-self.0.value(x, y))
    }
}

pub fn line_side(line: &Line, p: &ColoredPoint) -> Side {
    line.side_of(&p.x, &p.y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    Separated,
    Violation { red: usize, blue: usize },
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated)
    }
}

pub fn check_strict(points: &[ColoredPoint], lines: &[Line]) -> Result<()> {
    for p in points {
        for l in lines {
            if line_side(l, p) == Side::Zero {
                return Err(Error::PointOnLine { point: p.id, line: l.to_string() });
            }
        }
    }
    Ok(())
}

/// Separated iff no red and blue point share a sign vector over `lines`.
pub fn verify_separation(points: &[ColoredPoint], lines: &[Line]) -> Result<Separation> {
    check_strict(points, lines)?;
    let mut groups: HashMap<Vec<Side>, (Option<usize>, Option<usize>)> = HashMap::new();
    let mut first: Option<(usize, usize)> = None;
    for p in points {
        let key: Vec<Side> = lines.iter().map(|l| line_side(l, p)).collect();
        let entry = groups.entry(key).or_default();
        match p.color {
            Color::Red => {
                entry.0.get_or_insert(p.id);
            }
            Color::Blue => {
                entry.1.get_or_insert(p.id);
            }
        }
        if let (Some(r), Some(b)) = *entry {
            if first.is_none_or(|f| (r, b) < f) {
                first = Some((r, b));
            }
        }
    }
    Ok(match first {
        None => Separation::Separated,
        Some((red, blue)) => Separation::Violation { red, blue },
    })
}

/// Cell of an axis-parallel arrangement: the number of horizontal lines
/// below the point and the number of vertical lines to its left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellSignature {
    pub row: usize,
    pub col: usize,
}

/// Horizontal and vertical coordinates of an axis arrangement, each sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxisArrangement {
    pub horizontal: Vec<Rational>,
    pub vertical: Vec<Rational>,
}

impl AxisArrangement {
    pub fn from_lines(lines: &[Line]) -> Result<Self> {
        let mut arr = AxisArrangement::default();
        for l in lines {
            match l {
                Line::Axis { orientation: Orientation::Horizontal, coord } => {
                    arr.horizontal.push(coord.clone())
                }
                Line::Axis { orientation: Orientation::Vertical, coord } => {
                    arr.vertical.push(coord.clone())
                }
                Line::General { .. } => return Err(Error::NotAxisParallel),
            }
        }
        arr.horizontal.sort();
        arr.vertical.sort();
        Ok(arr)
    }

    pub fn signature(&self, x: &Rational, y: &Rational) -> CellSignature {
        CellSignature {
            row: self.horizontal.partition_point(|c| c < y),
            col: self.vertical.partition_point(|c| c < x),
        }
    }

    /// Bounds `(lo, hi)` of a row or column; `None` means unbounded.
    pub fn band(&self, orientation: Orientation, index: usize) -> (Option<&Rational>, Option<&Rational>) {
        let coords = match orientation {
            Orientation::Horizontal => &self.horizontal,
            Orientation::Vertical => &self.vertical,
        };
        let lo = index.checked_sub(1).and_then(|i| coords.get(i));
        (lo, coords.get(index))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub points: Vec<usize>,
    pub reds: usize,
    pub blues: usize,
}

impl Cell {
    pub fn is_corrupt(&self) -> bool {
        self.reds > 0 && self.blues > 0
    }

    pub fn color(&self) -> Option<Color> {
        match (self.reds, self.blues) {
            (0, 0) => None,
            (_, 0) => Some(Color::Red),
            (0, _) => Some(Color::Blue),
            _ => None,
        }
    }
}

/// Nonempty cells of an axis arrangement keyed by signature.
pub fn cell_map(points: &[ColoredPoint], lines: &[Line]) -> Result<BTreeMap<CellSignature, Cell>> {
    let arr = AxisArrangement::from_lines(lines)?;
    check_strict(points, lines)?;
    let mut cells: BTreeMap<CellSignature, Cell> = BTreeMap::new();
    for p in points {
        let cell = cells
            .entry(arr.signature(&p.x, &p.y))
            .or_insert(Cell { points: Vec::new(), reds: 0, blues: 0 });
        cell.points.push(p.id);
        match p.color {
            Color::Red => cell.reds += 1,
            Color::Blue => cell.blues += 1,
        }
    }
    Ok(cells)
}

/// Sorted distinct values of one coordinate.
pub fn distinct_coords(points: &[ColoredPoint], axis: Axis) -> Vec<Rational> {
    let mut v: Vec<Rational> = points.iter().map(|p| p.coord(axis).clone()).collect();
    v.sort();
    v.dedup();
    v
}

/// Midpoints between consecutive distinct coordinates: every axis line of
/// the given orientation is equivalent to exactly one of these (or to none
/// when it lies outside the point range).
pub fn candidate_positions(points: &[ColoredPoint], orientation: Orientation) -> Vec<Rational> {
    let c = distinct_coords(points, orientation.axis());
    c.windows(2).map(|w| rational::midpoint(&w[0], &w[1])).collect()
}
