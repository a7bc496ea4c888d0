//! Angular order, chunks and switches of a circle instance, projection
//! intervals of switch arcs, the facing relation and the switch graph.

use std::cmp::Ordering;

use serde_json::json;

use crate::arcs::{strictly_inside, AngleKey};
use crate::error::{Error, Result};
use crate::geometry::{Axis, Color, ColoredPoint, Orientation};
use crate::instance::Instance;
use crate::matching::{minimum_edge_cover, SimpleGraph};
use crate::rational::{int, pick_between, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chunk {
    pub color: Color,
    pub points: Vec<usize>,
}

/// Open arc from the last point of chunk `index` to the first point of the
/// next chunk, counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Switch {
    pub index: usize,
    pub start: usize,
    pub end: usize,
    pub start_key: AngleKey,
    pub end_key: AngleKey,
}

impl Switch {
    pub fn contains(&self, theta: &AngleKey) -> bool {
        strictly_inside(&self.start_key, &self.end_key, theta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleDecomposition {
    pub points: Vec<ColoredPoint>,
    /// Point ids counterclockwise from angle 0.
    pub order: Vec<usize>,
    pub chunks: Vec<Chunk>,
    pub switches: Vec<Switch>,
}

impl CircleDecomposition {
    pub fn w(&self) -> usize {
        self.switches.len()
    }

    pub fn point(&self, id: usize) -> &ColoredPoint {
        &self.points[id]
    }

    /// Chunk following switch `i` (the switch precedes it).
    pub fn next_chunk(&self, i: usize) -> usize {
        (i + 1) % self.chunks.len()
    }
}

pub fn decompose(inst: &Instance) -> Result<CircleDecomposition> {
    if inst.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if let Some(p) = inst.points.iter().find(|p| !p.on_unit_circle()) {
        return Err(Error::PointOffCircle(p.id));
    }
    let points = inst.points.clone();
    let keys: Vec<AngleKey> = points.iter().map(|p| AngleKey::of_point(&p.x, &p.y)).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));

    let mut runs: Vec<Chunk> = Vec::new();
    for &id in &order {
        match runs.last_mut() {
            Some(c) if c.color == points[id].color => c.points.push(id),
            _ => runs.push(Chunk { color: points[id].color, points: vec![id] }),
        }
    }
    if runs.len() > 1 && runs[0].color == runs[runs.len() - 1].color {
        let first = runs.remove(0);
        runs.last_mut().unwrap().points.extend(first.points);
    }
    if runs.len() == 1 {
        return Ok(CircleDecomposition { points, order, chunks: runs, switches: Vec::new() });
    }
    let w = runs.len();
    let switches = (0..w)
        .map(|i| {
            let start = *runs[i].points.last().unwrap();
            let end = runs[(i + 1) % w].points[0];
            Switch { index: i, start, end, start_key: keys[start].clone(), end_key: keys[end].clone() }
        })
        .collect();
    Ok(CircleDecomposition { points, order, chunks: runs, switches })
}

/// Interval of rationals with independent endpoint openness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionInterval {
    pub axis: Axis,
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl ProjectionInterval {
    pub fn contains(&self, v: &Rational) -> bool {
        let above = if self.lo_closed { v >= &self.lo } else { v > &self.lo };
        let below = if self.hi_closed { v <= &self.hi } else { v < &self.hi };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn intersect(&self, other: &ProjectionInterval) -> ProjectionInterval {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        ProjectionInterval { axis: self.axis, lo, hi, lo_closed, hi_closed }
    }

    /// A member avoiding `forbidden`, if any.
    pub fn witness(&self, forbidden: &[Rational]) -> Option<Rational> {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => pick_between(&self.lo, &self.hi, forbidden),
            Ordering::Equal if self.lo_closed && self.hi_closed && !forbidden.contains(&self.lo) => {
                Some(self.lo.clone())
            }
            _ => None,
        }
    }
}

/// Exact image of the open switch arc under projection onto `axis`.
pub fn projection_interval(dec: &CircleDecomposition, s: &Switch, axis: Axis) -> ProjectionInterval {
    let (p, q) = (dec.point(s.start), dec.point(s.end));
    let (a, b) = (p.coord(axis), q.coord(axis));
    let (top, bottom) = match axis {
        Axis::Y => (AngleKey::turning(1), AngleKey::turning(3)),
        Axis::X => (AngleKey::turning(0), AngleKey::turning(2)),
    };
    let (hi, hi_closed) = if s.contains(&top) { (int(1), true) } else { (a.max(b).clone(), false) };
    let (lo, lo_closed) = if s.contains(&bottom) { (int(-1), true) } else { (a.min(b).clone(), false) };
    ProjectionInterval { axis, lo, hi, lo_closed, hi_closed }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacingWitness {
    pub interval: ProjectionInterval,
    pub coord: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Facing {
    pub horizontal: Option<FacingWitness>,
    pub vertical: Option<FacingWitness>,
}

impl Facing {
    pub fn is_none(&self) -> bool {
        self.horizontal.is_none() && self.vertical.is_none()
    }

    pub fn label(&self) -> &'static str {
        match (&self.horizontal, &self.vertical) {
            (Some(_), Some(_)) => "HV",
            (Some(_), None) => "H",
            (None, Some(_)) => "V",
            (None, None) => "",
        }
    }

    pub fn get(&self, o: Orientation) -> Option<&FacingWitness> {
        match o {
            Orientation::Horizontal => self.horizontal.as_ref(),
            Orientation::Vertical => self.vertical.as_ref(),
        }
    }
}

fn coords(points: &[ColoredPoint], axis: Axis) -> Vec<Rational> {
    points.iter().map(|p| p.coord(axis).clone()).collect()
}

/// Axis lines stabbing both switches while missing every input point.
pub fn faces(dec: &CircleDecomposition, a: &Switch, b: &Switch) -> Facing {
    let side = |axis: Axis| {
        let interval = projection_interval(dec, a, axis).intersect(&projection_interval(dec, b, axis));
        let coord = interval.witness(&coords(&dec.points, axis))?;
        Some(FacingWitness { interval, coord })
    };
    Facing { horizontal: side(Axis::Y), vertical: side(Axis::X) }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchEdge {
    pub i: usize,
    pub j: usize,
    pub facing: Facing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchGraph {
    pub w: usize,
    pub edges: Vec<SwitchEdge>,
    pub isolated: Vec<usize>,
    /// Minimum edge cover of the non-isolated part, as indices into `edges`.
    pub cover: Vec<usize>,
    pub kappa: usize,
}

impl SwitchGraph {
    pub fn edge(&self, i: usize, j: usize) -> Option<&SwitchEdge> {
        let (i, j) = (i.min(j), i.max(j));
        self.edges.iter().find(|e| e.i == i && e.j == j)
    }
}

pub fn build_switch_graph(dec: &CircleDecomposition) -> Result<SwitchGraph> {
    let w = dec.w();
    let mut edges = Vec::new();
    for i in 0..w {
        for j in i + 1..w {
            let facing = faces(dec, &dec.switches[i], &dec.switches[j]);
            if !facing.is_none() {
                edges.push(SwitchEdge { i, j, facing });
            }
        }
    }
    let mut degree = vec![0usize; w];
    for e in &edges {
        degree[e.i] += 1;
        degree[e.j] += 1;
    }
    let isolated: Vec<usize> = (0..w).filter(|&v| degree[v] == 0).collect();
    let mut compact = vec![usize::MAX; w];
    let mut next = 0;
    for v in (0..w).filter(|&v| degree[v] > 0) {
        compact[v] = next;
        next += 1;
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (compact[e.i], compact[e.j])).collect();
    let h = SimpleGraph::new(next, pairs)?;
    let mec = minimum_edge_cover(&h)?;
    let cover: Vec<usize> = mec
        .iter()
        .map(|&(u, v)| {
            edges
                .iter()
                .position(|e| {
                    let (a, b) = (compact[e.i], compact[e.j]);
                    (a, b) == (u, v) || (b, a) == (u, v)
                })
                .expect("cover edge comes from the graph")
        })
        .collect();
    let kappa = isolated.len() + cover.len();
    Ok(SwitchGraph { w, edges, isolated, cover, kappa })
}

/// Diagnostics document for the `kappa` command.
pub fn diagnostics_json(dec: &CircleDecomposition, g: &SwitchGraph) -> serde_json::Value {
    json!({
        "w": dec.w(),
        "chunks": dec.chunks.iter().map(|c| json!({"color": c.color, "points": c.points})).collect::<Vec<_>>(),
        "switch_graph": {
            "edges": g.edges.iter().map(|e| json!({"i": e.i, "j": e.j, "orient": e.facing.label()})).collect::<Vec<_>>(),
            "isolated": g.isolated,
            "cover": g.cover.iter().map(|&k| [g.edges[k].i, g.edges[k].j]).collect::<Vec<_>>(),
            "kappa": g.kappa,
        }
    })
}
