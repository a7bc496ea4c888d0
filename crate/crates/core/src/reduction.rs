//! Colorful red-blue dominating set (C-RBDS) and its reduction to
//! `(p, q)`-axis-parallel separation on an integer grid.
//!
//! Grid, with unit `U = 16`:
//! - `V_0` spans `x in [0, 64)`; `V_j` (`j >= 1`) has `2d` strips of width `U`.
//! - `H_0` spans `y in [0, 64)`; `H_i` (`1 <= i <= k`) has a bottom buffer,
//!   `m` strips and a top buffer, each of height `U`; `H_{k+1}` has height 64.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::bitset::{cover_search, PairSpace};
use crate::error::{Error, Result};
use crate::geometry::{verify_separation, Color, Line, Orientation};
use crate::instance::Instance;
use crate::rational::{int, Rational};

pub const UNIT: i64 = 16;
const OUTER: i64 = 64;

/// Bipartite graph with red classes `R_1..R_k` and blue vertices; each
/// blue vertex's neighbours are kept ordered by (class, position).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crbds {
    pub classes: Vec<Vec<String>>,
    pub blues: Vec<String>,
    /// `(class, position)` of each neighbour of each blue vertex.
    pub neighbors: Vec<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrbdsJson {
    pub k: usize,
    pub classes: Vec<Vec<String>>,
    pub blues: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl Crbds {
    pub fn new(classes: Vec<Vec<String>>, blues: Vec<String>, edges: &[(String, String)]) -> Result<Crbds> {
        if blues.is_empty() {
            return Err(Error::InvalidCrbds("no blue vertices".into()));
        }
        if classes.is_empty() || classes.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidCrbds("every class must be nonempty".into()));
        }
        let mut red_at: HashMap<&str, (usize, usize)> = HashMap::new();
        for (i, class) in classes.iter().enumerate() {
            for (a, name) in class.iter().enumerate() {
                if red_at.insert(name, (i, a)).is_some() {
                    return Err(Error::InvalidCrbds(format!("red vertex {name} listed twice")));
                }
            }
        }
        let mut blue_at: HashMap<&str, usize> = HashMap::new();
        for (j, name) in blues.iter().enumerate() {
            if red_at.contains_key(name.as_str()) || blue_at.insert(name, j).is_some() {
                return Err(Error::InvalidCrbds(format!("vertex {name} listed twice")));
            }
        }
        let mut nbrs: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); blues.len()];
        for (a, b) in edges {
            let (r, v) = match (red_at.get(a.as_str()), blue_at.get(b.as_str()), red_at.get(b.as_str()), blue_at.get(a.as_str())) {
                (Some(r), Some(v), _, _) | (_, _, Some(r), Some(v)) => (*r, *v),
                _ => return Err(Error::InvalidCrbds(format!("edge ({a},{b}) must join a red and a blue vertex"))),
            };
            nbrs[v].insert(r);
        }
        let neighbors = nbrs.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Crbds { classes, blues, neighbors })
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn from_json_str(s: &str) -> Result<Crbds> {
        let doc: CrbdsJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.k != doc.classes.len() {
            return Err(Error::InvalidCrbds(format!("k = {} but {} classes given", doc.k, doc.classes.len())));
        }
        if let Some(v) = doc.classes.iter().flatten().chain(&doc.blues).find(|v| v.starts_with('_')) {
            return Err(Error::InvalidCrbds(format!("vertex name {v} uses the reserved prefix '_'")));
        }
        Crbds::new(doc.classes, doc.blues, &doc.edges)
    }

    pub fn to_json(&self) -> CrbdsJson {
        let mut edges = Vec::new();
        for (j, list) in self.neighbors.iter().enumerate() {
            for &(i, a) in list {
                edges.push((self.classes[i][a].clone(), self.blues[j].clone()));
            }
        }
        CrbdsJson { k: self.k(), classes: self.classes.clone(), blues: self.blues.clone(), edges }
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `(class, position)` of a red vertex.
    pub fn locate(&self, name: &str) -> Option<(usize, usize)> {
        self.classes
            .iter()
            .enumerate()
            .find_map(|(i, c)| c.iter().position(|n| n == name).map(|a| (i, a)))
    }

    /// Whether the choice of one position per class dominates every blue.
    pub fn dominates(&self, choice: &[usize]) -> bool {
        choice.len() == self.k() && self.neighbors.iter().all(|list| list.iter().any(|&(i, a)| choice[i] == a))
    }

    /// Positions per class of a named selection; `None` unless it takes
    /// exactly one vertex from every class.
    pub fn choice_of(&self, names: &[String]) -> Result<Vec<usize>> {
        let mut choice: Vec<Option<usize>> = vec![None; self.k()];
        for name in names {
            let (i, a) = self
                .locate(name)
                .ok_or_else(|| Error::InvalidDominatingSet(format!("{name} is not a red vertex")))?;
            if choice[i].replace(a).is_some() {
                return Err(Error::InvalidDominatingSet(format!("two vertices chosen from class {}", i + 1)));
            }
        }
        choice
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| Error::InvalidDominatingSet(format!("no vertex chosen from class {}", i + 1))))
            .collect()
    }

    pub fn names_of(&self, choice: &[usize]) -> Vec<String> {
        choice.iter().enumerate().map(|(i, &a)| self.classes[i][a].clone()).collect()
    }
}

pub const CRBDS_BOUND: u128 = 1 << 22;

/// First colorful dominating set in lexicographic order of class positions.
pub fn colorful_rbds_solve(g: &Crbds) -> Result<Option<Vec<String>>> {
    let total: u128 = g.classes.iter().map(|c| c.len() as u128).product();
    if total > CRBDS_BOUND {
        return Err(Error::TooLarge(format!("{total} colorful selections")));
    }
    let mut choice = vec![0usize; g.k()];
    loop {
        if g.dominates(&choice) {
            return Ok(Some(g.names_of(&choice)));
        }
        let mut i = g.k();
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < g.classes[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// How the input graph is made uniform before the grid is built.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Pendants in one appended star class, `d = max(2, Delta)` rounded up to even.
    #[default]
    Plain,
    /// Star classes below and above the input classes, one pendant in each
    /// for every input blue vertex, `d = max(4, Delta + 2)` rounded up to
    /// even. Every blue vertex then has an unchosen lowest and highest
    /// neighbour, which keeps slabs spanning two vertical tracks
    /// monochromatic.
    Sandwich,
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Normalization> {
        match s {
            "plain" => Ok(Normalization::Plain),
            "sandwich" => Ok(Normalization::Sandwich),
            _ => Err(Error::InvalidCrbds(format!("unknown normalization {s:?}"))),
        }
    }
}

/// Uniform even blue degree `d`, uniform class size `m`, even `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub graph: Crbds,
    pub d: usize,
    pub m: usize,
    /// Class index in `graph` of every input class, in input order.
    pub original: Vec<usize>,
    /// `(class, leaf)` picked in every added star class.
    pub fill: Vec<(usize, usize)>,
    pub original_blues: usize,
}

fn star(blues: &mut Vec<String>, edges: &mut Vec<(String, String)>, d: usize, tag: usize) -> Vec<String> {
    let center = format!("_star{tag}");
    let leaves: Vec<String> = (1..=d).map(|s| format!("_star{tag}_{s}")).collect();
    for l in &leaves {
        edges.push((l.clone(), center.clone()));
    }
    blues.push(center);
    leaves
}

pub fn normalize(g: &Crbds) -> Normalized {
    normalize_with(g, Normalization::Plain)
}

pub fn normalize_with(g: &Crbds, how: Normalization) -> Normalized {
    let delta = g.max_degree();
    let mut blues = g.blues.clone();
    let mut edges = g.to_json().edges;
    let pendant = |j: usize, s: usize| format!("_pend_{}_{}", g.blues[j], s);
    let (d, mut classes, original, mut fill) = match how {
        Normalization::Plain => {
            let d = (delta + delta % 2).max(2);
            let mut classes = g.classes.clone();
            let mut fill = Vec::new();
            if g.neighbors.iter().any(|l| l.len() < d) {
                let mut c = star(&mut blues, &mut edges, d, 0);
                for (j, list) in g.neighbors.iter().enumerate() {
                    for s in list.len()..d {
                        c.push(pendant(j, s + 1));
                        edges.push((pendant(j, s + 1), g.blues[j].clone()));
                    }
                }
                fill.push((classes.len(), 0));
                classes.push(c);
            }
            (d, classes, (0..g.k()).collect::<Vec<_>>(), fill)
        }
        Normalization::Sandwich => {
            let d = ((delta + 2) + delta % 2).max(4);
            let mut low = star(&mut blues, &mut edges, d, 0);
            let mut high = star(&mut blues, &mut edges, d, 1);
            for (j, list) in g.neighbors.iter().enumerate() {
                for s in list.len() + 1..d {
                    low.push(pendant(j, s));
                    edges.push((pendant(j, s), g.blues[j].clone()));
                }
                high.push(pendant(j, d));
                edges.push((pendant(j, d), g.blues[j].clone()));
            }
            let mut classes = vec![low];
            classes.extend(g.classes.iter().cloned());
            classes.push(high);
            let k = classes.len();
            (d, classes, (1..=g.k()).collect(), vec![(0, 1), (k - 1, 1)])
        }
    };
    if classes.len() % 2 == 1 {
        // The extra star goes just below the last class so a sandwich keeps its top.
        let pick = if how == Normalization::Sandwich { 1 } else { 0 };
        let at = if how == Normalization::Sandwich { classes.len() - 1 } else { classes.len() };
        let c = star(&mut blues, &mut edges, d, 2);
        classes.insert(at, c);
        for f in fill.iter_mut() {
            if f.0 >= at {
                f.0 += 1;
            }
        }
        fill.push((at, pick));
        fill.sort();
    }
    let m = classes.iter().map(Vec::len).max().unwrap_or(0);
    for (i, c) in classes.iter_mut().enumerate() {
        for s in c.len()..m {
            c.push(format!("_pad{}_{}", i + 1, s + 1));
        }
    }
    let graph = Crbds::new(classes, blues, &edges).expect("normalization keeps the graph valid");
    Normalized { graph, d, m, original, fill, original_blues: g.blues.len() }
}

impl Normalized {
    /// Extends a choice on the input classes with the fixed leaf of every
    /// added star class.
    pub fn extend_choice(&self, choice: &[usize]) -> Vec<usize> {
        extend(&self.original, &self.fill, self.graph.k(), choice)
    }
}

fn extend(original: &[usize], fill: &[(usize, usize)], k: usize, choice: &[usize]) -> Vec<usize> {
    let mut out = vec![0; k];
    for (&c, &a) in original.iter().zip(choice) {
        out[c] = a;
    }
    for &(c, a) in fill {
        out[c] = a;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "lowercase")]
pub enum Role {
    Selector { track: usize, top: bool },
    Functional { blue: usize, beta: usize, class: usize, alpha: usize, top_right: bool },
    Guard { track: usize, s: usize },
    Enforcer { pair: char, upper: bool },
}

/// Geometry and role map of a reduced instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout {
    pub k: usize,
    pub m: usize,
    pub d: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub unit: i64,
    /// `[y0, y1)` of `H_0..H_{k+1}`.
    pub h_tracks: Vec<(i64, i64)>,
    /// `[x0, x1)` of `V_0..V_n`.
    pub v_tracks: Vec<(i64, i64)>,
    pub roles: Vec<Role>,
    pub coords: Vec<(i64, i64)>,
    /// Class index of every input class.
    pub original: Vec<usize>,
    /// `(class, leaf)` picked in every added star class.
    pub fill: Vec<(usize, usize)>,
    pub graph: CrbdsJson,
}

impl Layout {
    /// Lower `y` of strip `alpha` (1-based) of `H_i`; 0 and `m + 1` are the buffers.
    pub fn strip_y(&self, i: usize, alpha: usize) -> i64 {
        self.h_tracks[i].0 + alpha as i64 * self.unit
    }

    /// Lower `x` of strip `s` (1-based) of `V_j`.
    pub fn strip_x(&self, j: usize, s: usize) -> i64 {
        self.v_tracks[j].0 + (s as i64 - 1) * self.unit
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("layout serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Layout> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn graph(&self) -> Result<Crbds> {
        Crbds::new(self.graph.classes.clone(), self.graph.blues.clone(), &self.graph.edges)
    }
}

pub struct Reduced {
    pub instance: Instance,
    pub layout: Layout,
}

pub fn reduce(norm: &Normalized) -> Reduced {
    let g = &norm.graph;
    let (k, m, d, n) = (g.k(), norm.m, norm.d, g.blues.len());
    let u = UNIT;
    let mut h_tracks = vec![(0, OUTER)];
    for i in 0..k {
        let y0 = OUTER + i as i64 * (m as i64 + 2) * u;
        h_tracks.push((y0, y0 + (m as i64 + 2) * u));
    }
    let top = h_tracks[k].1;
    h_tracks.push((top, top + OUTER));
    let mut v_tracks = vec![(0, OUTER)];
    for j in 0..n {
        let x0 = OUTER + j as i64 * 2 * d as i64 * u;
        v_tracks.push((x0, x0 + 2 * d as i64 * u));
    }
    let mut layout = Layout {
        k,
        m,
        d,
        n,
        p: k + 2,
        q: (d - 1) * n + 1,
        unit: u,
        h_tracks,
        v_tracks,
        roles: Vec::new(),
        coords: Vec::new(),
        original: norm.original.clone(),
        fill: norm.fill.clone(),
        graph: g.to_json(),
    };
    let mut pts: Vec<(Color, i64, i64, Role)> = Vec::new();
    let mid = OUTER / 2;

    for i in 1..=k {
        let (bottom, top) = if i % 2 == 0 { (Color::Blue, Color::Red) } else { (Color::Red, Color::Blue) };
        pts.push((bottom, mid, layout.strip_y(i, 0) + u / 2, Role::Selector { track: i, top: false }));
        pts.push((top, mid, layout.strip_y(i, m + 1) + u / 2, Role::Selector { track: i, top: true }));
    }
    for (jj, list) in g.neighbors.iter().enumerate() {
        let j = jj + 1;
        for (b, &(class, a)) in list.iter().enumerate() {
            let (beta, i, alpha) = (b + 1, class + 1, a + 1);
            let (bx, by) = (layout.strip_x(j, 2 * beta), layout.strip_y(i, alpha));
            let (bl, tr) = if beta % 2 == 1 { (Color::Blue, Color::Red) } else { (Color::Red, Color::Blue) };
            let role = |top_right| Role::Functional { blue: j, beta, class: i, alpha, top_right };
            pts.push((bl, bx + u / 4, by + u / 4, role(false)));
            pts.push((tr, bx + u - u / 4, by + u - u / 4, role(true)));
        }
    }
    for j in 1..=n {
        for s in 1..=d {
            let c = if (s + j) % 2 == 0 { Color::Blue } else { Color::Red };
            pts.push((c, layout.strip_x(j, 2 * s) + u / 2, mid, Role::Guard { track: j, s }));
        }
    }
    let ex = OUTER / 4;
    let top_mid = layout.h_tracks[k + 1].0 + OUTER / 2;
    pts.push((Color::Blue, ex, mid, Role::Enforcer { pair: 'A', upper: false }));
    pts.push((Color::Red, ex, layout.h_tracks[1].0 + u / 4, Role::Enforcer { pair: 'A', upper: true }));
    pts.push((Color::Red, ex, layout.h_tracks[k].1 - u / 4, Role::Enforcer { pair: 'B', upper: false }));
    pts.push((Color::Blue, ex, top_mid, Role::Enforcer { pair: 'B', upper: true }));
    pts.push((Color::Blue, OUTER - u / 4, top_mid, Role::Enforcer { pair: 'C', upper: false }));
    pts.push((Color::Red, OUTER + u / 4, top_mid, Role::Enforcer { pair: 'C', upper: true }));

    layout.roles = pts.iter().map(|p| p.3).collect();
    layout.coords = pts.iter().map(|p| (p.1, p.2)).collect();
    let instance = Instance::planar(pts.iter().map(|p| (p.0, int(p.1), int(p.2))).collect())
        .expect("layout points are distinct");
    Reduced { instance, layout }
}

fn half(a: i64, b: i64) -> Rational {
    Rational::new((a + b).into(), 2.into())
}

/// Midway between the nearest point coordinates on either side of `at`.
fn fence_coord(coords: impl Iterator<Item = i64> + Clone, at: i64) -> Rational {
    let below = coords.clone().filter(|&c| c < at).max().expect("points below the fence");
    let above = coords.filter(|&c| c >= at).min().expect("points above the fence");
    half(below, above)
}

/// Canonical fence: horizontals at the `H_0`/`H_1` and `H_k`/`H_{k+1}`
/// boundaries and a vertical at the `V_0`/`V_1` boundary.
pub fn fence(layout: &Layout) -> Vec<Line> {
    let ys = layout.coords.iter().map(|c| c.1);
    let xs = layout.coords.iter().map(|c| c.0);
    vec![
        Line::horizontal(fence_coord(ys.clone(), layout.h_tracks[1].0)),
        Line::horizontal(fence_coord(ys, layout.h_tracks[layout.k + 1].0)),
        Line::vertical(fence_coord(xs, layout.v_tracks[1].0)),
    ]
}

/// Fence, one signal line per track at the middle of the chosen strip, and
/// `d - 1` defenders per vertical track around the unprotected index `g(j)`.
pub fn lines_for(layout: &Layout, choice: &[usize], g: &[usize]) -> Vec<Line> {
    let u = layout.unit;
    let mut lines = fence(layout);
    for (i, &a) in choice.iter().enumerate() {
        lines.push(Line::horizontal(int(layout.strip_y(i + 1, a + 1) + u / 2)));
    }
    for (jj, &gj) in g.iter().enumerate() {
        for r in 1..=layout.d {
            let x0 = layout.strip_x(jj + 1, 2 * r);
            if r < gj {
                lines.push(Line::vertical(Rational::new((2 * x0 + u + u / 4).into(), 2.into())));
            } else if r > gj {
                lines.push(Line::vertical(Rational::new((2 * x0 + u - u / 4).into(), 2.into())));
            }
        }
    }
    lines
}

/// How a lift found its lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftMethod {
    /// Defenders around the smallest dominating neighbour index.
    Canonical,
    /// Defenders around some other dominating neighbour index.
    AlternateIndex,
    /// Fence and signal lines kept, verticals found by exact cover search.
    Searched,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifted {
    pub lines: Vec<Line>,
    /// Unprotected neighbour index `g(j)` (1-based) per blue vertex; empty
    /// for searched lifts.
    pub g: Vec<usize>,
    pub method: LiftMethod,
}

/// Separating lines with exactly `p` horizontal and `q` vertical lines for a
/// colorful dominating set given by red vertex names of the input classes.
///
/// Tries defenders around every dominating neighbour index assignment,
/// smallest first. When none separates (a slab spanning two adjacent
/// vertical tracks can mix colours), the verticals are searched exactly
/// with the horizontals fixed.
pub fn lift(layout: &Layout, set: &[String]) -> Result<Lifted> {
    let graph = layout.graph()?;
    let original = Crbds {
        classes: layout.original.iter().map(|&c| graph.classes[c].clone()).collect(),
        blues: graph.blues.clone(),
        neighbors: Vec::new(),
    };
    let base = original.choice_of(set)?;
    let choice = extend(&layout.original, &layout.fill, graph.k(), &base);
    if !graph.dominates(&choice) {
        return Err(Error::InvalidDominatingSet("some blue vertex has no chosen neighbour".into()));
    }
    let options: Vec<Vec<usize>> = graph
        .neighbors
        .iter()
        .map(|list| (0..list.len()).filter(|&b| choice[list[b].0] == list[b].1).map(|b| b + 1).collect())
        .collect();
    let smallest: Vec<usize> = options.iter().map(|o| o[0]).collect();
    let inst = instance_of(layout);
    let mut g = smallest.clone();
    loop {
        let lines = lines_for(layout, &choice, &g);
        if verify_separation(&inst.points, &lines)?.is_separated() {
            let method = if g == smallest { LiftMethod::Canonical } else { LiftMethod::AlternateIndex };
            return Ok(Lifted { lines, g, method });
        }
        // Next assignment in mixed radix over the dominating indices.
        let mut j = 0;
        loop {
            if j == g.len() {
                return searched_lift(layout, &inst, &choice);
            }
            let pos = options[j].iter().position(|&b| b == g[j]).unwrap();
            if pos + 1 < options[j].len() {
                g[j] = options[j][pos + 1];
                break;
            }
            g[j] = options[j][0];
            j += 1;
        }
    }
}

fn searched_lift(layout: &Layout, inst: &Instance, choice: &[usize]) -> Result<Lifted> {
    let mut lines: Vec<Line> = lines_for(layout, choice, &vec![0; layout.n])
        .into_iter()
        .filter(|l| l.orientation() == Some(Orientation::Horizontal))
        .collect();
    lines.extend(fence(layout).into_iter().filter(|l| l.orientation() == Some(Orientation::Vertical)));
    let xs: BTreeSet<i64> = layout.coords.iter().map(|c| c.0).collect();
    let xs: Vec<i64> = xs.into_iter().collect();
    let cands: Vec<Line> = xs.windows(2).map(|w| Line::vertical(half(w[0], w[1]))).filter(|l| !lines.contains(l)).collect();
    let space = PairSpace::new(&inst.points);
    let covered = space.sep(&inst.points, &lines);
    let bits: Vec<_> = cands.iter().map(|l| space.separated_by(&inst.points, l)).collect();
    let budget = layout.q - 1;
    let pick = cover_search(&covered, &bits, budget).ok_or(Error::NotSeparating)?;
    let mut used: Vec<bool> = vec![false; cands.len()];
    for &k in &pick {
        used[k] = true;
    }
    // Pad to the exact budget with unused candidates.
    let pad: Vec<usize> = (0..cands.len()).filter(|&k| !used[k]).take(budget - pick.len()).collect();
    if pick.len() + pad.len() < budget {
        return Err(Error::NotSeparating);
    }
    lines.extend(pick.into_iter().chain(pad).map(|k| cands[k].clone()));
    Ok(Lifted { lines, g: Vec::new(), method: LiftMethod::Searched })
}

/// Planar instance rebuilt from the layout's coordinates and roles.
pub fn instance_of(layout: &Layout) -> Instance {
    let color = |r: &Role| match *r {
        Role::Selector { track, top } => {
            if (track % 2 == 0) == top {
                Color::Red
            } else {
                Color::Blue
            }
        }
        Role::Functional { beta, top_right, .. } => {
            if (beta % 2 == 1) != top_right {
                Color::Blue
            } else {
                Color::Red
            }
        }
        Role::Guard { track, s } => {
            if (s + track) % 2 == 0 {
                Color::Blue
            } else {
                Color::Red
            }
        }
        Role::Enforcer { pair, upper } => match (pair, upper) {
            ('A', false) | ('B', true) | ('C', false) => Color::Blue,
            _ => Color::Red,
        },
    };
    Instance::planar(
        layout.roles.iter().zip(&layout.coords).map(|(r, c)| (color(r), int(c.0), int(c.1))).collect(),
    )
    .expect("layout points are distinct")
}

/// Reads the colorful set off the signal lines of a separating solution
/// within budgets. Returns names from the input classes only.
pub fn extract(layout: &Layout, lines: &[Line]) -> Result<Vec<String>> {
    let mut count: BTreeMap<Orientation, usize> = BTreeMap::new();
    for l in lines {
        let o = l.orientation().ok_or(Error::NotAxisParallel)?;
        *count.entry(o).or_default() += 1;
    }
    let (h, v) = (
        count.get(&Orientation::Horizontal).copied().unwrap_or(0),
        count.get(&Orientation::Vertical).copied().unwrap_or(0),
    );
    if h > layout.p || v > layout.q {
        return Err(Error::BudgetViolation(format!(
            "{h} horizontal / {v} vertical lines exceed p = {}, q = {}",
            layout.p, layout.q
        )));
    }
    let inst = instance_of(layout);
    if !verify_separation(&inst.points, lines)?.is_separated() {
        return Err(Error::NotSeparating);
    }
    let graph = layout.graph()?;
    let u = Rational::from_integer(layout.unit.into());
    let mut names = Vec::new();
    for i in layout.original.iter().map(|c| c + 1) {
        let lo = Rational::from_integer((layout.strip_y(i, 0) + layout.unit / 2).into());
        let hi = Rational::from_integer((layout.strip_y(i, layout.m + 1) + layout.unit / 2).into());
        let signal = lines
            .iter()
            .filter_map(|l| match l {
                Line::Axis { orientation: Orientation::Horizontal, coord } if *coord > lo && *coord < hi => Some(coord),
                _ => None,
            })
            .min()
            .ok_or(Error::NoSignalLine(i))?;
        let offset = (signal - Rational::from_integer(layout.strip_y(i, 0).into())) / &u;
        let alpha = offset.floor().to_integer().try_into().unwrap_or(0usize).clamp(1, layout.m);
        let class = &graph.classes[i - 1];
        let mut name = &class[alpha - 1];
        // Padding vertices dominate nothing; any real vertex can stand in.
        if name.starts_with("_pad") {
            name = class.iter().find(|v| !v.starts_with("_pad")).unwrap_or(name);
        }
        names.push(name.clone());
    }
    Ok(names)
}

/// Violations of the layout's structural properties (empty when sound).
pub fn structural_violations(layout: &Layout, inst: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    let (k, d, n) = (layout.k, layout.d, layout.n);
    if inst.len() != 2 * k + 3 * d * n + 6 {
        out.push(format!("{} points, expected {}", inst.len(), 2 * k + 3 * d * n + 6));
    }
    let by_role = |f: &dyn Fn(&Role) -> bool| -> Vec<usize> { (0..layout.roles.len()).filter(|&i| f(&layout.roles[i])).collect() };
    let guards = by_role(&|r| matches!(r, Role::Guard { .. }));
    let selectors = by_role(&|r| matches!(r, Role::Selector { .. }));
    let functional = by_role(&|r| matches!(r, Role::Functional { .. }));
    let enforcers = by_role(&|r| matches!(r, Role::Enforcer { .. }));
    if guards.len() != d * n || selectors.len() != 2 * k || functional.len() != 2 * d * n || enforcers.len() != 6 {
        out.push("role counts differ from 2k / 2dn / dn / 6".into());
    }
    if guards.iter().any(|&i| inst.points[i].y != inst.points[guards[0]].y) {
        out.push("guards do not share one y-coordinate".into());
    }
    if selectors.iter().any(|&i| inst.points[i].x != inst.points[selectors[0]].x) {
        out.push("selectors do not share one x-coordinate".into());
    }
    // Selector colours chain across adjacent tracks.
    let sel = |track: usize, top: bool| {
        selectors
            .iter()
            .find(|&&i| layout.roles[i] == Role::Selector { track, top })
            .map(|&i| inst.points[i].color)
    };
    for i in 1..k {
        if sel(i, true) != sel(i + 1, false) {
            out.push(format!("selector colours break between H_{i} and H_{}", i + 1));
        }
    }
    // No vertical candidate separates two functional pairs of one track.
    let xs = crate::geometry::candidate_positions(&inst.points, Orientation::Vertical);
    for j in 1..=n {
        let pairs: Vec<(Rational, Rational)> = functional
            .iter()
            .filter_map(|&i| match layout.roles[i] {
                Role::Functional { blue, top_right: false, beta, .. } if blue == j => {
                    let tr = functional.iter().find(|&&t| {
                        matches!(layout.roles[t], Role::Functional { blue: b2, beta: be2, top_right: true, .. } if b2 == j && be2 == beta)
                    })?;
                    let (a, b) = (inst.points[i].x.clone(), inst.points[*tr].x.clone());
                    Some((a.clone().min(b.clone()), a.max(b)))
                }
                _ => None,
            })
            .collect();
        for c in &xs {
            let hits = pairs.iter().filter(|(lo, hi)| lo < c && c < hi).count();
            if hits > 1 {
                out.push(format!("vertical x = {c} separates {hits} functional pairs of V_{j}"));
            }
        }
    }
    out
}
