//! Optimal axis-parallel separation on a circle: a line per cover edge and
//! per isolated switch, then strictly dominating flips until no corrupt cell
//! remains, with a bounded search for the large cell.

use std::collections::{BTreeMap, HashMap};

use serde_json::json;

use crate::arcs::{arcs_by_cell, cell_arcs, CellArc};
use crate::bitset::{cover_search, Bits, PairSpace};
use crate::decomposition::{build_switch_graph, decompose, projection_interval, CircleDecomposition, SwitchGraph};
use crate::error::{Error, Result};
use crate::geometry::{
    candidate_positions, cell_map, verify_separation, Axis, AxisArrangement, Cell, CellSignature, Color, Line,
    Orientation,
};
use crate::instance::Instance;
use crate::rational::{self, Rational};

use crate::solution::line_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    EdgeLine(usize, usize),
    IsolatedLine(usize),
    Flipped(usize),
    Repair,
    Wedge(usize),
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::EdgeLine(i, j) => format!("edge {i}-{j}"),
            Provenance::IsolatedLine(s) => format!("isolated {s}"),
            Provenance::Flipped(k) => format!("flip {k}"),
            Provenance::Repair => "repair".to_string(),
            Provenance::Wedge(c) => format!("wedge {c}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxisSolution {
    pub lines: Vec<Line>,
    pub provenance: Vec<Provenance>,
    pub steps: usize,
    pub repair_used: bool,
    pub kappa: Option<usize>,
}

impl AxisSolution {
    pub fn push(&mut self, line: Line, p: Provenance) {
        self.lines.push(line);
        self.provenance.push(p);
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn to_json(&self, variant: &str) -> serde_json::Value {
        json!({
            "variant": variant,
            "lines": self.lines.iter().map(line_json).collect::<Vec<_>>(),
            "size": self.lines.len(),
            "kappa": self.kappa,
            "steps": self.steps,
            "repair_used": self.repair_used,
            "provenance": self.provenance.iter().map(|p| p.label()).collect::<Vec<_>>(),
        })
    }

    fn replaced(&self, remove: &[usize], add: &[Line], tag: Provenance) -> AxisSolution {
        let mut out = AxisSolution { steps: self.steps, repair_used: self.repair_used, kappa: self.kappa, ..Default::default() };
        for (i, (l, p)) in self.lines.iter().zip(&self.provenance).enumerate() {
            if !remove.contains(&i) {
                out.push(l.clone(), *p);
            }
        }
        for l in add {
            out.push(l.clone(), tag);
        }
        out
    }
}

/// Counters for the invariants checked along a run of [`solve_axis`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxisTrace {
    /// Every arrangement visited, in order.
    pub arrangements: Vec<Vec<Line>>,
    pub stab_violations: usize,
    pub domination_violations: usize,
    /// Cells with more than four arcs, corrupt cells with fewer than two
    /// arcs, and arcs of a corrupt cell carrying both colors.
    pub arc_violations: usize,
    pub large_cell_violations: usize,
    pub domination_failures: usize,
    pub fallback_steps: usize,
    pub repair_calls: usize,
    pub step_bound: usize,
}

impl AxisTrace {
    pub fn violations(&self) -> usize {
        self.stab_violations + self.domination_violations + self.arc_violations + self.large_cell_violations
    }
}

pub enum Step {
    Done,
    Improved(AxisSolution),
    LargeCellOnly,
}

/// Whether the axis line meets the open arc of every switch.
pub fn stabs_all(dec: &CircleDecomposition, lines: &[Line]) -> bool {
    dec.switches.iter().all(|s| {
        lines.iter().any(|l| match l {
            Line::Axis { orientation, coord } => projection_interval(dec, s, orientation.axis()).contains(coord),
            Line::General { .. } => false,
        })
    })
}

/// One line per cover edge (horizontal when both orientations work) and one
/// per isolated switch (the orientation with the wider stabbing interval).
pub fn build_l0(dec: &CircleDecomposition, g: &SwitchGraph) -> AxisSolution {
    let mut sol = AxisSolution { kappa: Some(g.kappa), ..Default::default() };
    for &k in &g.cover {
        let e = &g.edges[k];
        let wit = e.facing.horizontal.as_ref().map(|w| (Orientation::Horizontal, w)).or_else(|| {
            e.facing.vertical.as_ref().map(|w| (Orientation::Vertical, w))
        });
        let (o, w) = wit.expect("graph edges face in some orientation");
        sol.push(Line::axis(o, w.coord.clone()), Provenance::EdgeLine(e.i, e.j));
    }
    for &s in &g.isolated {
        let sw = &dec.switches[s];
        let y = projection_interval(dec, sw, Axis::Y);
        let x = projection_interval(dec, sw, Axis::X);
        let (o, iv) = if x.width() > y.width() { (Orientation::Vertical, x) } else { (Orientation::Horizontal, y) };
        let forbidden: Vec<Rational> = dec.points.iter().map(|p| p.coord(o.axis()).clone()).collect();
        let c = iv.witness(&forbidden).expect("switch arcs project to open intervals");
        sol.push(Line::axis(o, c), Provenance::IsolatedLine(s));
    }
    sol
}

struct Ctx<'a> {
    dec: &'a CircleDecomposition,
    ps: PairSpace,
    cache: HashMap<Line, Bits>,
    candidates: Vec<Line>,
}

impl<'a> Ctx<'a> {
    fn new(dec: &'a CircleDecomposition) -> Ctx<'a> {
        let mut candidates = Vec::new();
        for o in [Orientation::Horizontal, Orientation::Vertical] {
            candidates.extend(candidate_positions(&dec.points, o).into_iter().map(|c| Line::axis(o, c)));
        }
        Ctx { dec, ps: PairSpace::new(&dec.points), cache: HashMap::new(), candidates }
    }

    fn bits(&mut self, l: &Line) -> Bits {
        if let Some(b) = self.cache.get(l) {
            return b.clone();
        }
        let b = self.ps.separated_by(&self.dec.points, l);
        self.cache.insert(l.clone(), b.clone());
        b
    }

    fn sep(&mut self, lines: &[Line]) -> Bits {
        let mut acc = self.ps.empty();
        for l in lines {
            let b = self.bits(l);
            acc.union_with(&b);
        }
        acc
    }

    /// Accepts `cand` as a successor of `cur` when it is no larger, separates
    /// strictly more pairs and still stabs every switch.
    fn dominates(&mut self, cur: &[Line], cur_sep: &Bits, cand: &[Line]) -> bool {
        cand.len() <= cur.len() && cur_sep.is_proper_subset(&self.sep(cand)) && stabs_all(self.dec, cand)
    }
}

struct Arrangement<'s> {
    arr: AxisArrangement,
    cells: BTreeMap<CellSignature, Cell>,
    arcs: BTreeMap<CellSignature, Vec<CellArc>>,
    lines: &'s [Line],
}

impl<'s> Arrangement<'s> {
    fn new(dec: &CircleDecomposition, lines: &'s [Line], trace: &mut AxisTrace) -> Result<Arrangement<'s>> {
        let arr = AxisArrangement::from_lines(lines)?;
        let cells = cell_map(&dec.points, lines)?;
        let all = cell_arcs(&dec.points, lines)?;
        let arcs: BTreeMap<CellSignature, Vec<CellArc>> =
            arcs_by_cell(&all).into_iter().map(|(k, v)| (k, v.into_iter().cloned().collect())).collect();
        let mut large = 0;
        for (sig, list) in &arcs {
            if list.len() > 4 {
                trace.arc_violations += 1;
            }
            if list.len() >= 3 {
                large += 1;
            }
            if cells.get(sig).is_some_and(|c| c.is_corrupt())
                && (list.len() < 2 || list.iter().any(|a| !a.is_monochromatic()))
            {
                trace.arc_violations += 1;
            }
        }
        if large > 1 {
            trace.large_cell_violations += 1;
        }
        Ok(Arrangement { arr, cells, arcs, lines })
    }

    fn corrupt(&self) -> Vec<CellSignature> {
        self.cells.iter().filter(|(_, c)| c.is_corrupt()).map(|(s, _)| *s).collect()
    }

    fn is_large(&self, sig: &CellSignature) -> bool {
        self.arcs.get(sig).map_or(0, |a| a.len()) >= 3
    }

    /// Index in `lines` of each existing boundary of a cell, as
    /// `(index, orientation, is_upper_bound)`.
    fn bounds(&self, sig: &CellSignature) -> Vec<(usize, Orientation, bool)> {
        let mut out = Vec::new();
        for (o, idx) in [(Orientation::Horizontal, sig.row), (Orientation::Vertical, sig.col)] {
            let (lo, hi) = self.arr.band(o, idx);
            for (bound, upper) in [(hi, true), (lo, false)] {
                if let Some(c) = bound {
                    let target = Line::axis(o, c.clone());
                    if let Some(i) = self.lines.iter().position(|l| *l == target) {
                        out.push((i, o, upper));
                    }
                }
            }
        }
        out
    }

    fn neighbor_color(&self, sig: &CellSignature, o: Orientation, upper: bool) -> Option<Color> {
        let step = |v: usize| if upper { Some(v + 1) } else { v.checked_sub(1) };
        let n = match o {
            Orientation::Horizontal => CellSignature { row: step(sig.row)?, col: sig.col },
            Orientation::Vertical => CellSignature { row: sig.row, col: step(sig.col)? },
        };
        self.cells.get(&n).and_then(|c| c.color())
    }

    /// Center of the cell clipped to `[-1, 1]^2`.
    fn center(&self, sig: &CellSignature) -> (Rational, Rational) {
        let clip = |o: Orientation, idx: usize| {
            let (lo, hi) = self.arr.band(o, idx);
            let one = Rational::from_integer(1.into());
            let lo = lo.cloned().map_or(-one.clone(), |v| v.max(-one.clone()));
            let hi = hi.cloned().map_or(one.clone(), |v| v.min(one));
            (lo + hi) / Rational::from_integer(2.into())
        };
        (clip(Orientation::Vertical, sig.col), clip(Orientation::Horizontal, sig.row))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CellCase {
    Above,
    Below,
    Left,
    Right,
    Other,
}

fn classify(dec: &CircleDecomposition, cell: &Cell) -> CellCase {
    let pts = || cell.points.iter().map(|&i| dec.point(i));
    let zero = Rational::from_integer(0.into());
    if pts().all(|p| p.y > zero) {
        CellCase::Above
    } else if pts().all(|p| p.y < zero) {
        CellCase::Below
    } else if pts().all(|p| p.x < zero) {
        CellCase::Left
    } else if pts().all(|p| p.x > zero) {
        CellCase::Right
    } else {
        CellCase::Other
    }
}

/// Candidate coordinates of orientation `o` strictly between the two
/// nonempty arcs of a cell, ordered from the arc to protect outward, with the
/// arc to expose chosen by `expose`.
fn between_positions(
    dec: &CircleDecomposition,
    arcs: &[CellArc],
    o: Orientation,
    candidates: &[Rational],
    expose: Option<Color>,
) -> Vec<Rational> {
    let nonempty: Vec<&CellArc> = arcs.iter().filter(|a| !a.points.is_empty()).collect();
    if nonempty.len() != 2 {
        return Vec::new();
    }
    let axis = o.axis();
    let range = |a: &CellArc| {
        let vals: Vec<&Rational> = a.points.iter().map(|&i| dec.point(i).coord(axis)).collect();
        (vals.iter().min().cloned().unwrap().clone(), vals.iter().max().cloned().unwrap().clone())
    };
    let (r0, r1) = (range(nonempty[0]), range(nonempty[1]));
    let (lower, upper, lo, hi) = if r0.1 < r1.0 {
        (nonempty[0], nonempty[1], r0.1, r1.0)
    } else if r1.1 < r0.0 {
        (nonempty[1], nonempty[0], r1.1, r0.0)
    } else {
        return Vec::new();
    };
    let mut out: Vec<Rational> = candidates.iter().filter(|c| **c > lo && **c < hi).cloned().collect();
    // Ties expose the left (vertical line) or top (horizontal line) arc.
    let expose_lower = match expose {
        Some(c) if lower.color() == Some(c) => true,
        Some(c) if upper.color() == Some(c) => false,
        _ => o == Orientation::Vertical,
    };
    // Protecting the upper arc means hugging it from below.
    if expose_lower {
        out.reverse();
    }
    out
}

/// One refinement: flip the outer boundary of the most extreme corrupt
/// non-large cell to a perpendicular line between its two arcs, accepting
/// the first move that strictly dominates and keeps every switch stabbed.
pub fn refine_step(dec: &CircleDecomposition, sol: &AxisSolution, trace: &mut AxisTrace) -> Result<Step> {
    let mut ctx = Ctx::new(dec);
    refine_with(&mut ctx, sol, trace)
}

fn refine_with(ctx: &mut Ctx, sol: &AxisSolution, trace: &mut AxisTrace) -> Result<Step> {
    let dec = ctx.dec;
    let ar = Arrangement::new(dec, &sol.lines, trace)?;
    let corrupt = ar.corrupt();
    if corrupt.is_empty() {
        return Ok(Step::Done);
    }
    let mut small: Vec<(CellSignature, CellCase)> = corrupt
        .iter()
        .filter(|s| !ar.is_large(s))
        .map(|s| (*s, classify(dec, &ar.cells[s])))
        .collect();
    if small.is_empty() {
        return Ok(Step::LargeCellOnly);
    }
    let rank = |case: CellCase| match case {
        CellCase::Above | CellCase::Below => 0,
        CellCase::Left | CellCase::Right => 1,
        CellCase::Other => 2,
    };
    small.sort_by(|a, b| {
        let (ca, cb) = (ar.center(&a.0), ar.center(&b.0));
        let key = |case: CellCase, c: &(Rational, Rational)| match case {
            CellCase::Above | CellCase::Below => rational::abs(&c.1),
            _ => rational::abs(&c.0),
        };
        rank(a.1).cmp(&rank(b.1)).then_with(|| key(b.1, &cb).cmp(&key(a.1, &ca))).then_with(|| a.0.cmp(&b.0))
    });

    let cur_sep = ctx.sep(&sol.lines);
    let positions: HashMap<Orientation, Vec<Rational>> = [Orientation::Horizontal, Orientation::Vertical]
        .into_iter()
        .map(|o| (o, candidate_positions(&dec.points, o)))
        .collect();
    let step_no = sol.steps + 1;

    for (sig, case) in &small {
        let mut bounds = ar.bounds(sig);
        let primary = match case {
            CellCase::Above => Some((Orientation::Horizontal, true)),
            CellCase::Below => Some((Orientation::Horizontal, false)),
            CellCase::Left => Some((Orientation::Vertical, false)),
            CellCase::Right => Some((Orientation::Vertical, true)),
            CellCase::Other => None,
        };
        bounds.sort_by_key(|&(_, o, up)| Some((o, up)) != primary);
        let arcs = &ar.arcs[sig];
        for &(idx, o, upper) in &bounds {
            let expose = ar.neighbor_color(sig, o, upper);
            for add in [o.perpendicular(), o] {
                for c in between_positions(dec, arcs, add, &positions[&add], expose) {
                    let line = Line::axis(add, c);
                    if sol.lines.contains(&line) {
                        continue;
                    }
                    let next = sol.replaced(&[idx], std::slice::from_ref(&line), Provenance::Flipped(step_no));
                    if ctx.dominates(&sol.lines, &cur_sep, &next.lines) {
                        return Ok(Step::Improved(AxisSolution { steps: step_no, ..next }));
                    }
                }
            }
        }
    }

    // Any single or double replacement of a corrupt cell boundary.
    let mut boundary: Vec<usize> = small.iter().flat_map(|(s, _)| ar.bounds(s)).map(|b| b.0).collect();
    boundary.sort_unstable();
    boundary.dedup();
    let cands = ctx.candidates.clone();
    for &idx in &boundary {
        for line in &cands {
            if sol.lines.contains(line) {
                continue;
            }
            let next = sol.replaced(&[idx], std::slice::from_ref(line), Provenance::Repair);
            if ctx.dominates(&sol.lines, &cur_sep, &next.lines) {
                trace.fallback_steps += 1;
                return Ok(Step::Improved(AxisSolution { steps: step_no, ..next }));
            }
        }
    }
    for (a, &i) in boundary.iter().enumerate() {
        for &j in &boundary[a + 1..] {
            for (b, l1) in cands.iter().enumerate() {
                for l2 in &cands[b + 1..] {
                    let next = sol.replaced(&[i, j], &[l1.clone(), l2.clone()], Provenance::Repair);
                    if ctx.dominates(&sol.lines, &cur_sep, &next.lines) {
                        trace.fallback_steps += 1;
                        return Ok(Step::Improved(AxisSolution { steps: step_no, ..next }));
                    }
                }
            }
        }
    }
    trace.domination_failures += 1;
    Err(Error::DominationFailure)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Fully separating solution of at most `kappa` lines obtained by local
/// replacements around the corrupt cells, widened step by step until the
/// whole solution is open to change.
pub fn repair_large_cell(dec: &CircleDecomposition, sol: &AxisSolution, kappa: usize) -> Result<AxisSolution> {
    let mut ctx = Ctx::new(dec);
    let mut trace = AxisTrace::default();
    repair_with(&mut ctx, sol, kappa, &mut trace)
}

fn repair_with(ctx: &mut Ctx, sol: &AxisSolution, kappa: usize, trace: &mut AxisTrace) -> Result<AxisSolution> {
    trace.repair_calls += 1;
    if ctx.sep(&sol.lines).is_full() {
        return Ok(sol.clone());
    }
    let done = |s: AxisSolution| AxisSolution { repair_used: true, ..s };
    let ar = Arrangement::new(ctx.dec, &sol.lines, trace)?;
    let mut boundary: Vec<usize> = ar.corrupt().iter().flat_map(|s| ar.bounds(s)).map(|b| b.0).collect();
    boundary.sort_unstable();
    boundary.dedup();

    let cands = ctx.candidates.clone();
    let cand_bits: Vec<Bits> = cands.iter().map(|l| ctx.bits(l)).collect();

    for &i in &boundary {
        for l in &cands {
            let next = sol.replaced(&[i], std::slice::from_ref(l), Provenance::Repair);
            if next.len() <= kappa && ctx.sep(&next.lines).is_full() {
                return Ok(done(next));
            }
        }
    }
    for (a, &i) in boundary.iter().enumerate() {
        for &j in &boundary[a + 1..] {
            for (b, l1) in cands.iter().enumerate() {
                for l2 in &cands[b + 1..] {
                    let next = sol.replaced(&[i, j], &[l1.clone(), l2.clone()], Provenance::Repair);
                    if next.len() <= kappa && ctx.sep(&next.lines).is_full() {
                        return Ok(done(next));
                    }
                }
            }
        }
    }
    let try_keep = |ctx: &mut Ctx, remove: &[usize]| -> Option<AxisSolution> {
        let kept: Vec<Line> =
            sol.lines.iter().enumerate().filter(|(i, _)| !remove.contains(i)).map(|(_, l)| l.clone()).collect();
        let budget = kappa.checked_sub(kept.len())?;
        let base = ctx.sep(&kept);
        let pick = cover_search(&base, &cand_bits, budget)?;
        let add: Vec<Line> = pick.iter().map(|&k| cands[k].clone()).collect();
        Some(sol.replaced(remove, &add, Provenance::Repair))
    };
    if !boundary.is_empty() {
        if let Some(next) = try_keep(ctx, &boundary) {
            return Ok(done(next));
        }
    }
    for j in 1..=sol.len() {
        for remove in combinations(sol.len(), j) {
            if let Some(next) = try_keep(ctx, &remove) {
                return Ok(done(next));
            }
        }
    }
    Err(Error::RepairExhausted(kappa))
}

/// Full pipeline with its switch graph and invariant trace.
pub fn solve_axis_traced(inst: &Instance) -> Result<(AxisSolution, SwitchGraph, AxisTrace)> {
    let dec = decompose(inst)?;
    let mut trace = AxisTrace::default();
    if dec.w() == 0 {
        let g = SwitchGraph { w: 0, edges: Vec::new(), isolated: Vec::new(), cover: Vec::new(), kappa: 0 };
        return Ok((AxisSolution { kappa: Some(0), ..Default::default() }, g, trace));
    }
    let g = build_switch_graph(&dec)?;
    let mut ctx = Ctx::new(&dec);
    trace.step_bound = ctx.ps.size();
    let mut sol = build_l0(&dec, &g);
    let mut accepted = 0usize;
    loop {
        trace.arrangements.push(sol.lines.clone());
        if !stabs_all(&dec, &sol.lines) {
            trace.stab_violations += 1;
        }
        match refine_with(&mut ctx, &sol, &mut trace) {
            Ok(Step::Done) => break,
            Ok(Step::Improved(next)) => {
                let (a, b) = (ctx.sep(&sol.lines), ctx.sep(&next.lines));
                if next.len() > sol.len() || !a.is_proper_subset(&b) {
                    trace.domination_violations += 1;
                }
                accepted += 1;
                sol = next;
            }
            Ok(Step::LargeCellOnly) | Err(Error::DominationFailure) => {
                sol = repair_with(&mut ctx, &sol, g.kappa, &mut trace)?;
                trace.arrangements.push(sol.lines.clone());
                Arrangement::new(&dec, &sol.lines, &mut trace)?;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if accepted > trace.step_bound {
        trace.domination_violations += 1;
    }
    sol.steps = accepted;
    sol.kappa = Some(g.kappa);
    if !verify_separation(&dec.points, &sol.lines)?.is_separated() {
        return Err(Error::NotSeparating);
    }
    Ok((sol, g, trace))
}

pub fn solve_axis(inst: &Instance) -> Result<AxisSolution> {
    solve_axis_traced(inst).map(|(s, _, _)| s)
}
