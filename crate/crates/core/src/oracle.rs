//! Exhaustive baselines: minimum axis-parallel and general-line separation,
//! `(p, q)` feasibility, over finite candidate sets.

use std::collections::HashMap;

use crate::arcs::AngleKey;
use crate::bitset::{Bits, PairSpace};
use crate::error::{Error, Result};
use crate::geometry::{candidate_positions, distinct_coords, Color, ColoredPoint, Line, Orientation};
use crate::instance::{Instance, Kind};
use crate::solvers::arc_interior_point;

pub const AXIS_BOUND: usize = 16;
pub const GENERAL_BOUND: usize = 10;
pub const PQ_BOUND: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub lines: Vec<Line>,
}

/// Every axis line is sep-equivalent to one of these: horizontals by
/// ascending `y`, then verticals by ascending `x`.
pub fn axis_candidates(points: &[ColoredPoint]) -> Vec<Line> {
    let mut out = Vec::new();
    for o in [Orientation::Horizontal, Orientation::Vertical] {
        out.extend(candidate_positions(points, o).into_iter().map(|c| Line::axis(o, c)));
    }
    out
}

/// Optimum size of a cover of all pairs, by branch and bound.
fn optimum_size(universe: usize, cands: &[Bits]) -> Option<usize> {
    fn go(cur: &Bits, cands: &[Bits], order: &[usize], used: usize, best: &mut usize) {
        let Some(pair) = cur.first_unset() else {
            *best = (*best).min(used);
            return;
        };
        let missing = cur.len() - cur.count();
        let gain = order.iter().map(|&k| cands[k].count_minus(cur)).max().unwrap_or(0);
        if gain == 0 || used + missing.div_ceil(gain) >= *best {
            return;
        }
        for &k in order {
            if cands[k].get(pair) {
                go(&cur.union(&cands[k]), cands, order, used + 1, best);
            }
        }
    }
    let mut all = Bits::new(universe);
    for c in cands {
        all.union_with(c);
    }
    if !all.is_full() {
        return None;
    }
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(cands[k].count()));
    let mut best = cands.len() + 1;
    go(&Bits::new(universe), cands, &order, 0, &mut best);
    Some(best)
}

/// Lexicographically least index set of size `k` covering everything.
fn least_cover(universe: usize, cands: &[Bits], k: usize) -> Option<Vec<usize>> {
    let mut suffix = vec![Bits::new(universe); cands.len() + 1];
    for i in (0..cands.len()).rev() {
        suffix[i] = suffix[i + 1].union(&cands[i]);
    }
    fn go(cur: &Bits, cands: &[Bits], suffix: &[Bits], start: usize, left: usize, out: &mut Vec<usize>) -> bool {
        if cur.is_full() {
            return true;
        }
        if left == 0 || !cur.union(&suffix[start]).is_full() {
            return false;
        }
        for i in start..cands.len() {
            out.push(i);
            if go(&cur.union(&cands[i]), cands, suffix, i + 1, left - 1, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    let mut out = Vec::new();
    go(&Bits::new(universe), cands, &suffix, 0, k, &mut out).then_some(out)
}

/// Minimum cover with the lexicographically least optimal witness.
pub fn min_cover(universe: usize, cands: &[Bits]) -> Option<Vec<usize>> {
    let k = optimum_size(universe, cands)?;
    least_cover(universe, cands, k)
}

pub fn min_axis_separation(inst: &Instance) -> Result<OracleResult> {
    min_axis_separation_bounded(inst, AXIS_BOUND)
}

pub fn min_axis_separation_bounded(inst: &Instance, bound: usize) -> Result<OracleResult> {
    if inst.len() > bound {
        return Err(Error::TooLarge(format!("{} points exceed the axis oracle bound {bound}", inst.len())));
    }
    let ps = PairSpace::new(&inst.points);
    let lines = axis_candidates(&inst.points);
    let bits: Vec<Bits> = lines.iter().map(|l| ps.separated_by(&inst.points, l)).collect();
    let pick = min_cover(ps.size(), &bits).expect("distinct points are always axis-separable");
    Ok(OracleResult { size: pick.len(), lines: pick.into_iter().map(|k| lines[k].clone()).collect() })
}

/// Gap pairs `(i, j)`, `i < j`, where gap `i` follows the `i`-th point in
/// angular order, with the pairs each separates.
pub fn gap_pair_candidates(points: &[ColoredPoint]) -> (Vec<usize>, Vec<(usize, usize)>, Vec<Bits>) {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| AngleKey::of_point(&points[i].x, &points[i].y));
    let ps = PairSpace::new(points);
    let n = points.len();
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[points[i].id] = r;
    }
    let mut pairs = Vec::new();
    let mut bits = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let inside = |id: usize| rank[id] > i && rank[id] <= j;
            let mut b = ps.empty();
            for (ri, &r) in ps.reds.iter().enumerate() {
                for (bi, &bl) in ps.blues.iter().enumerate() {
                    if inside(r) != inside(bl) {
                        b.set(ps.index(ri, bi));
                    }
                }
            }
            pairs.push((i, j));
            bits.push(b);
        }
    }
    (order, pairs, bits)
}

pub fn min_general_separation_circle(inst: &Instance) -> Result<OracleResult> {
    min_general_separation_circle_bounded(inst, GENERAL_BOUND)
}

pub fn min_general_separation_circle_bounded(inst: &Instance, bound: usize) -> Result<OracleResult> {
    if inst.kind != Kind::Circle {
        return Err(Error::Parse("general oracle needs a circle instance".into()));
    }
    if inst.len() > bound {
        return Err(Error::TooLarge(format!("{} points exceed the general oracle bound {bound}", inst.len())));
    }
    if !inst.is_bichromatic() {
        return Ok(OracleResult { size: 0, lines: Vec::new() });
    }
    let pts = &inst.points;
    let n = pts.len();
    let (order, pairs, bits) = gap_pair_candidates(pts);
    let ps = PairSpace::new(pts);
    let pick = min_cover(ps.size(), &bits).expect("gap pairs separate any bichromatic circle instance");
    let gap_point = |g: usize| arc_interior_point(&pts[order[g]], &pts[order[(g + 1) % n]], |_, _| true);
    let lines = pick
        .into_iter()
        .map(|k| {
            let (i, j) = pairs[k];
            let (a, b) = (gap_point(i), gap_point(j));
            Line::through((&a.0, &a.1), (&b.0, &b.1))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleResult { size: lines.len(), lines })
}

/// Whether at most `p` horizontal and `q` vertical lines separate the
/// instance; returns a witness when they do.
pub fn feasible_pq(inst: &Instance, p: usize, q: usize) -> Result<Option<Vec<Line>>> {
    feasible_pq_bounded(inst, p, q, PQ_BOUND)
}

/// Branches over cut sets of the orientation with the smaller budget. For a
/// fixed set of cuts the other orientation is an interval stabbing problem
/// (one interval per colour change between neighbours within a band), which
/// the greedy right-endpoint rule solves exactly.
pub fn feasible_pq_bounded(inst: &Instance, p: usize, q: usize, bound: usize) -> Result<Option<Vec<Line>>> {
    if inst.len() > bound {
        return Err(Error::TooLarge(format!("{} points exceed the (p,q) oracle bound {bound}", inst.len())));
    }
    let (branch, budget, other_budget) =
        if p <= q { (Orientation::Horizontal, p, q) } else { (Orientation::Vertical, q, p) };
    let other = branch.perpendicular();
    let bcoords = distinct_coords(&inst.points, branch.axis());
    let ocoords = distinct_coords(&inst.points, other.axis());
    let rank = |cs: &[crate::rational::Rational], c| cs.binary_search(c).expect("coordinate is present");
    let mut pts: Vec<(usize, usize, Color)> = inst
        .points
        .iter()
        .map(|pt| (rank(&ocoords, pt.coord(other.axis())), rank(&bcoords, pt.coord(branch.axis())), pt.color))
        .collect();
    pts.sort();
    let stab = Stabber { pts, limit: other_budget };
    let cuts = bcoords.len().saturating_sub(1);
    let mut chosen = Vec::new();
    if !stab_search(&stab, 0, cuts, budget, &mut chosen) {
        return Ok(None);
    }
    let stabs = stab.run(&chosen).expect("search accepted this cut set");
    let mid = |cs: &[crate::rational::Rational], t: usize| crate::rational::midpoint(&cs[t], &cs[t + 1]);
    let mut lines: Vec<Line> = chosen.iter().map(|&t| Line::axis(branch, mid(&bcoords, t))).collect();
    lines.extend(stabs.into_iter().map(|s| Line::axis(other, mid(&ocoords, s))));
    lines.sort();
    Ok(Some(lines))
}

/// Points as `(other rank, branch rank, colour)`, sorted.
struct Stabber {
    pts: Vec<(usize, usize, Color)>,
    limit: usize,
}

impl Stabber {
    /// Greedy stabbing positions for the bands cut by `cuts` (sorted), or
    /// `None` when more than `limit` are needed or a band has two colours at
    /// one position.
    fn run(&self, cuts: &[usize]) -> Option<Vec<usize>> {
        // Per band: rank and colour of the last group seen.
        let mut last: HashMap<usize, (usize, Color)> = HashMap::new();
        let mut stabs: Vec<usize> = Vec::new();
        for &(o, b, c) in &self.pts {
            let band = cuts.partition_point(|&t| t < b);
            match last.insert(band, (o, c)) {
                Some((lo, lc)) if lo == o && lc != c => return None,
                Some((lo, lc)) if lc != c
                    && stabs.last().is_none_or(|&s| s < lo) => {
                        if stabs.len() == self.limit {
                            return None;
                        }
                        stabs.push(o - 1);
                    }
                _ => {}
            }
        }
        Some(stabs)
    }
}

fn stab_search(stab: &Stabber, t: usize, cuts: usize, left: usize, chosen: &mut Vec<usize>) -> bool {
    if left == 0 || t == cuts {
        return stab.run(chosen).is_some();
    }
    let len = chosen.len();
    chosen.extend(t..cuts);
    let hopeful = stab.run(chosen).is_some();
    chosen.truncate(len);
    if !hopeful {
        return false;
    }
    chosen.push(t);
    if stab_search(stab, t + 1, cuts, left - 1, chosen) {
        return true;
    }
    chosen.pop();
    stab_search(stab, t + 1, cuts, left, chosen)
}
