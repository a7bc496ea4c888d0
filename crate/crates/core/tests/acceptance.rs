//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on failure.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepline::decomposition::{build_switch_graph, decompose};
use sepline::generate::{gen_circle, Pattern};
use sepline::geometry::{verify_separation, Color};
use sepline::instance::Instance;
use sepline::matching::{brute, is_edge_cover, is_matching, maximum_matching, minimum_edge_cover, SimpleGraph};
use sepline::oracle::{feasible_pq, min_axis_separation, min_general_separation_circle};
use sepline::reduction::{colorful_rbds_solve, extract, lift, normalize_with, reduce, Normalization, structural_violations, Crbds, LiftMethod};
use sepline::{Error, Orientation};
use sepline::rational::{int, rat, Rational};
use sepline::solvers::axis::solve_axis_traced;
use sepline::solvers::{solve_general, wedge_baseline};

struct Outcome {
    failures: Vec<String>,
    total: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), total: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.total += 1;
            if self.failures.len() < 20 {
                self.failures.push(what());
            }
        }
    }
}

fn mixed_instance(seed: u64, max_n: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(2..=max_n);
    let pattern = match seed % 3 {
        0 => Pattern::Random,
        1 => Pattern::Alternating,
        _ => {
            let mut runs = Vec::new();
            let mut left = n;
            while left > 0 {
                let r = rng.gen_range(1..=left.min(3));
                runs.push(r);
                left -= r;
            }
            Pattern::Chunked(runs)
        }
    };
    gen_circle(n, seed, &pattern).expect("valid pattern")
}

fn general_optimality() -> Outcome {
    let mut out = Outcome::new();
    for seed in 0..500u64 {
        let inst = mixed_instance(seed, 10);
        let w = decompose(&inst).unwrap().w();
        let sol = solve_general(&inst).unwrap();
        let lines = sol.lines();
        let sep = verify_separation(&inst.points, &lines).unwrap().is_separated();
        let oracle = min_general_separation_circle(&inst).unwrap().size;
        out.check(lines.len() == w / 2 && sep && oracle == w / 2, || {
            format!("seed {seed}: size {} w/2 {} oracle {oracle} separated {sep}", lines.len(), w / 2)
        });
    }
    out
}

#[derive(Default)]
struct AxisStats {
    steps: usize,
    fallback: usize,
    domination_failures: usize,
    repairs: usize,
}

fn axis_runs() -> (Outcome, Outcome, Outcome, AxisStats) {
    let (mut opt, mut inv, mut wedge) = (Outcome::new(), Outcome::new(), Outcome::new());
    let mut stats = AxisStats::default();
    for seed in 0..500u64 {
        let inst = mixed_instance(1_000 + seed, 12);
        let (sol, g, trace) = match solve_axis_traced(&inst) {
            Ok(r) => r,
            Err(e) => {
                opt.check(false, || format!("seed {seed}: solver error {e}"));
                inv.check(false, || format!("seed {seed}: solver error {e}"));
                continue;
            }
        };
        stats.steps += sol.steps;
        stats.fallback += trace.fallback_steps;
        stats.domination_failures += trace.domination_failures;
        stats.repairs += usize::from(sol.repair_used);
        let sep = verify_separation(&inst.points, &sol.lines).unwrap().is_separated();
        let oracle = min_axis_separation(&inst).unwrap().size;
        opt.check(sol.len() == g.kappa && sep && oracle == g.kappa, || {
            format!("seed {seed}: size {} kappa {} oracle {oracle} separated {sep}", sol.len(), g.kappa)
        });
        inv.check(trace.violations() == 0 && sol.steps <= trace.step_bound, || {
            format!("seed {seed}: trace {:?}", (trace.stab_violations, trace.domination_violations, trace.arc_violations, trace.large_cell_violations))
        });
        let w = g.w;
        let wb = wedge_baseline(&inst).unwrap();
        let wsep = verify_separation(&inst.points, &wb.lines).unwrap().is_separated();
        wedge.check(wb.len() == w && wsep && w <= 2 * g.kappa && g.kappa <= w, || {
            format!("seed {seed}: wedge {} w {w} kappa {} separated {wsep}", wb.len(), g.kappa)
        });
    }
    (opt, inv, wedge, stats)
}

fn named_instances() -> Outcome {
    let mut out = Outcome::new();
    let pts4 = Instance::circle(vec![
        (Color::Red, int(1), int(0)),
        (Color::Blue, int(0), int(1)),
        (Color::Red, int(-1), int(0)),
        (Color::Blue, int(0), int(-1)),
    ])
    .unwrap();
    let g = build_switch_graph(&decompose(&pts4).unwrap()).unwrap();
    let o = min_axis_separation(&pts4).unwrap().size;
    out.check(g.kappa == 2 && o == 2, || format!("PTS4 kappa {} oracle {o}", g.kappa));

    let diag = Instance::circle(vec![
        (Color::Blue, rat(3, 5), rat(4, 5)),
        (Color::Blue, int(0), int(1)),
        (Color::Blue, int(-1), int(0)),
        (Color::Blue, rat(-4, 5), rat(-3, 5)),
        (Color::Red, rat(-3, 5), rat(-4, 5)),
        (Color::Red, int(0), int(-1)),
        (Color::Red, int(1), int(0)),
        (Color::Red, rat(4, 5), rat(3, 5)),
    ])
    .unwrap();
    let g = build_switch_graph(&decompose(&diag).unwrap()).unwrap();
    out.check(g.kappa == 2 && g.isolated == vec![0, 1], || format!("DIAG kappa {} isolated {:?}", g.kappa, g.isolated));

    for n in 1..=6i64 {
        let pts: Vec<(Color, Rational)> = (0..2 * n)
            .map(|i| (if i % 2 == 0 { Color::Red } else { Color::Blue }, rat(2 * i - 2 * n + 1, 2 * n + 1)))
            .collect();
        let inst = Instance::circle_from_parameters(&pts).unwrap();
        let g = build_switch_graph(&decompose(&inst).unwrap()).unwrap();
        let o = min_axis_separation(&inst).unwrap().size;
        let s = solve_axis_traced(&inst).map(|r| r.0.len()).unwrap_or(usize::MAX);
        out.check(g.kappa == n as usize && o == n as usize && s == n as usize, || {
            format!("alternating 2x{n}: kappa {} oracle {o} solver {s}", g.kappa)
        });
    }
    out
}

fn matching_correctness() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..200 {
        let n = rng.gen_range(1..=10);
        let density = rng.gen_range(0.1..0.7);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let g = SimpleGraph::new(n, edges).unwrap();
        let m = maximum_matching(&g);
        let nu = brute::max_matching_size(&g);
        out.check(is_matching(&g, &m) && m.len() == nu, || format!("case {case}: matching {} brute {nu}", m.len()));
        if let Some(best) = brute::min_edge_cover_size(&g) {
            let c = minimum_edge_cover(&g).unwrap();
            out.check(is_edge_cover(&g, &c) && c.len() == n - nu && best == c.len(), || {
                format!("case {case}: cover {} brute {best} |V|-nu {}", c.len(), n - nu)
            });
        }
    }
    out
}

/// Every C-RBDS instance with two classes of at most two vertices and at most
/// two blue vertices, one per isomorphism class.
fn small_crbds() -> Vec<Crbds> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for m1 in 1..=2usize {
        for m2 in 1..=2usize {
            for n in 1..=2usize {
                let reds: Vec<(usize, usize)> = (0..m1).map(|a| (0, a)).chain((0..m2).map(|a| (1, a))).collect();
                let slots = reds.len() * n;
                for mask in 0u32..(1 << slots) {
                    let edges: Vec<((usize, usize), usize)> =
                        (0..slots).filter(|b| mask >> b & 1 == 1).map(|b| (reds[b % reds.len()], b / reds.len())).collect();
                    if !seen.insert(canonical(m1, m2, n, &edges)) {
                        continue;
                    }
                    let classes = vec![
                        (1..=m1).map(|a| format!("a{a}")).collect(),
                        (1..=m2).map(|a| format!("b{a}")).collect(),
                    ];
                    let blues: Vec<String> = (1..=n).map(|v| format!("v{v}")).collect();
                    let named: Vec<(String, String)> = edges
                        .iter()
                        .map(|&((c, a), v)| (format!("{}{}", if c == 0 { "a" } else { "b" }, a + 1), blues[v].clone()))
                        .collect();
                    out.push(Crbds::new(classes, blues, &named).unwrap());
                }
            }
        }
    }
    out
}

type Edges = Vec<((usize, usize), usize)>;

/// Smallest edge list over class swaps and permutations within classes and
/// of blue vertices.
fn canonical(m1: usize, m2: usize, n: usize, edges: &[((usize, usize), usize)]) -> (Vec<usize>, Edges) {
    let perms = |m: usize| -> Vec<Vec<usize>> { if m == 1 { vec![vec![0]] } else { vec![vec![0, 1], vec![1, 0]] } };
    let mut best: Option<(Vec<usize>, Edges)> = None;
    for swap in [false, true] {
        let sizes = if swap { vec![m2, m1, n] } else { vec![m1, m2, n] };
        for p0 in perms(m1) {
            for p1 in perms(m2) {
                for pb in perms(n) {
                    let mut e: Vec<((usize, usize), usize)> = edges
                        .iter()
                        .map(|&((c, a), v)| {
                            let a = if c == 0 { p0[a] } else { p1[a] };
                            let c = if swap { 1 - c } else { c };
                            ((c, a), pb[v])
                        })
                        .collect();
                    e.sort();
                    let key = (sizes.clone(), e);
                    if best.as_ref().is_none_or(|b| key < *b) {
                        best = Some(key);
                    }
                }
            }
        }
    }
    best.unwrap()
}

fn toy_crbds() -> Crbds {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let e = |a: &str, b: &str| (a.to_string(), b.to_string());
    Crbds::new(
        vec![s(&["u1", "u2"]), s(&["u3", "u4"])],
        s(&["v1", "v2"]),
        &[e("u1", "v1"), e("u3", "v1"), e("u2", "v2"), e("u3", "v2")],
    )
    .unwrap()
}

struct ReductionStats {
    instances: usize,
    yes: usize,
    lifts: [usize; 3],
}

fn reduction_checks(how: Normalization) -> (Outcome, Outcome, ReductionStats) {
    let mut equiv = Outcome::new();
    let mut structure = Outcome::new();
    let mut stats = ReductionStats { instances: 0, yes: 0, lifts: [0; 3] };
    let mut family = small_crbds();
    family.push(toy_crbds());
    for g in &family {
        stats.instances += 1;
        let norm = normalize_with(g, how);
        let red = reduce(&norm);
        let l = &red.layout;
        let tag = || format!("{:?}", g.to_json());
        let v = structural_violations(l, &red.instance);
        structure.check(v.is_empty(), || format!("{}: {v:?}", tag()));
        let answer = colorful_rbds_solve(g).unwrap();
        stats.yes += answer.is_some() as usize;
        let witness = feasible_pq(&red.instance, l.p, l.q).unwrap();
        equiv.check(answer.is_some() == witness.is_some(), || {
            format!("{}: C-RBDS {} but (p,q) = ({}, {}) {}", tag(), answer.is_some(), l.p, l.q, witness.is_some())
        });
        if let Some(lines) = &witness {
            match extract(l, lines) {
                Ok(set) => equiv.check(g.dominates(&g.choice_of(&set).unwrap()), || format!("{}: extracted {set:?} does not dominate", tag())),
                Err(e) => equiv.check(false, || format!("{}: extract failed: {e}", tag())),
            }
        }
        // Every colorful set: dominating ones lift and round-trip, others are rejected.
        let sizes: Vec<usize> = g.classes.iter().map(|c| c.len()).collect();
        let mut choice = vec![0; sizes.len()];
        loop {
            let set = g.names_of(&choice);
            match lift(l, &set) {
                Ok(lifted) => {
                    stats.lifts[match lifted.method {
                        LiftMethod::Canonical => 0,
                        LiftMethod::AlternateIndex => 1,
                        LiftMethod::Searched => 2,
                    }] += 1;
                    let h = lifted.lines.iter().filter(|x| x.orientation() == Some(Orientation::Horizontal)).count();
                    let sep = verify_separation(&red.instance.points, &lifted.lines).unwrap().is_separated();
                    equiv.check(g.dominates(&choice), || format!("{}: lifted non-dominating {set:?}", tag()));
                    equiv.check(sep && (h, lifted.lines.len() - h) == (l.p, l.q), || {
                        format!("{}: lift of {set:?} gives {h}+{} lines, separated {sep}", tag(), lifted.lines.len() - h)
                    });
                    let back = extract(l, &lifted.lines);
                    equiv.check(back.as_ref().ok() == Some(&set), || format!("{}: extract(lift({set:?})) = {back:?}", tag()));
                }
                Err(Error::InvalidDominatingSet(_)) => {
                    equiv.check(!g.dominates(&choice), || format!("{}: dominating {set:?} rejected", tag()))
                }
                Err(e) => equiv.check(false, || format!("{}: lift of dominating {set:?} failed: {e}", tag())),
            }
            let mut i = 0;
            while i < choice.len() && choice[i] + 1 == sizes[i] {
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
            choice[i] += 1;
        }
    }
    (equiv, structure, stats)
}

fn report(name: &str, started: Instant, o: &Outcome) -> bool {
    let ok = o.failures.is_empty();
    println!("{} criterion {name} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, started.elapsed().as_secs_f64());
    for f in &o.failures {
        println!("    {f}");
    }
    ok
}

fn main() {
    let mut all = true;
    let t = Instant::now();
    all &= report("1 general-line optimality", t, &general_optimality());
    let t = Instant::now();
    let (opt, inv, wedge, stats) = axis_runs();
    all &= report("2 axis-parallel optimality", t, &opt);
    all &= report("3 named instances", Instant::now(), &named_instances());
    all &= report("4 refinement invariants", t, &inv);
    println!(
        "    {} flips accepted, {} by fallback replacement, {} domination failures, {} runs used repair",
        stats.steps, stats.fallback, stats.domination_failures, stats.repairs
    );
    all &= report("5 wedge baseline", t, &wedge);
    let t = Instant::now();
    all &= report("6 matching correctness", t, &matching_correctness());
    for (label, how) in [("plain", Normalization::Plain), ("sandwich", Normalization::Sandwich)] {
        let t = Instant::now();
        let (equiv, structure, rs) = reduction_checks(how);
        all &= report(&format!("7 reduction equivalence and lift round trip, {label} normalization"), t, &equiv);
        println!(
            "    {} instances ({} yes); lifts: {} canonical, {} alternate index, {} searched; {} failures",
            rs.instances, rs.yes, rs.lifts[0], rs.lifts[1], rs.lifts[2], equiv.total
        );
        all &= report(&format!("8 reduction structure, {label} normalization"), t, &structure);
    }
    if !all {
        std::process::exit(1);
    }
}
