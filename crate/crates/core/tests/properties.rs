use proptest::prelude::*;

use sepline::arcs::{arcs_by_cell, cell_arcs, crossings, AngleKey};
use sepline::bitset::PairSpace;
use sepline::decomposition::{build_switch_graph, decompose, faces};
use sepline::generate::{gen_circle, Pattern};
use sepline::geometry::{
    candidate_positions, cell_map, circle_point_from_parameter, line_side, verify_separation, Line, Orientation, Side,
};
use sepline::matching::{brute, is_edge_cover, is_matching, maximum_matching, minimum_edge_cover, SimpleGraph};
use sepline::oracle::feasible_pq;
use sepline::rational::{int, rat, Rational};
use sepline::reduction::{colorful_rbds_solve, extract, lift, normalize_with, reduce, structural_violations, Crbds, Normalization};
use sepline::solvers::{solve_general, wedge_baseline, solve_axis};
use sepline::{Error, Instance};

fn pattern() -> impl Strategy<Value = Pattern> {
    prop_oneof![Just(Pattern::Random), Just(Pattern::Alternating)]
}

fn circle(max_n: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n, any::<u64>(), pattern()).prop_map(|(n, seed, p)| gen_circle(n, seed, &p).unwrap())
}

fn coord() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=50).prop_map(|(a, b)| rat(a, b) / int(40))
}

fn axis_lines(max: usize) -> impl Strategy<Value = Vec<Line>> {
    prop::collection::vec((any::<bool>(), coord()), 0..=max).prop_map(|v| {
        v.into_iter()
            .map(|(h, c)| if h { Line::horizontal(c) } else { Line::vertical(c) })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn parameterized_points_are_on_the_circle(a in -10_000i64..=10_000, b in 1i64..=10_000) {
        let (x, y) = circle_point_from_parameter(&rat(a, b));
        prop_assert_eq!(&x * &x + &y * &y, int(1));
    }

    #[test]
    fn negation_flips_sides(a in -9i64..=9, b in -9i64..=9, c in -9i64..=9, px in -9i64..=9, py in -9i64..=9) {
        prop_assume!(a != 0 || b != 0);
        let l = Line::general(int(a), int(b), int(c)).unwrap();
        let s = l.side_of(&int(px), &int(py));
        let n = l.negated().side_of(&int(px), &int(py));
        let flipped = match s { Side::Negative => Side::Positive, Side::Positive => Side::Negative, Side::Zero => Side::Zero };
        prop_assert_eq!(n, flipped);
    }

    #[test]
    fn instance_json_round_trip(inst in circle(20)) {
        prop_assert_eq!(Instance::from_json_str(&inst.to_json_string()).unwrap(), inst);
    }

    #[test]
    fn verify_agrees_with_cell_map(inst in circle(14), lines in axis_lines(6)) {
        match verify_separation(&inst.points, &lines) {
            Err(Error::PointOnLine { .. }) => {}
            Ok(v) => {
                let cells = cell_map(&inst.points, &lines).unwrap();
                prop_assert_eq!(v.is_separated(), cells.values().all(|c| !c.is_corrupt()));
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn arc_counts_per_cell(inst in circle(14), lines in axis_lines(8)) {
        let Ok(arcs) = cell_arcs(&inst.points, &lines) else { return Ok(()); };
        let by_cell = arcs_by_cell(&arcs);
        prop_assert!(by_cell.values().all(|a| a.len() <= 4));
        prop_assert!(by_cell.values().filter(|a| a.len() >= 3).count() <= 1);
    }

    #[test]
    fn discretization_is_sound(inst in circle(10), c in coord(), horizontal in any::<bool>()) {
        let o = if horizontal { Orientation::Horizontal } else { Orientation::Vertical };
        let line = Line::axis(o, c.clone());
        prop_assume!(inst.points.iter().all(|p| line_side(&line, p) != Side::Zero));
        let ps = PairSpace::new(&inst.points);
        let bits = ps.separated_by(&inst.points, &line);
        let cands = candidate_positions(&inst.points, o);
        let snapped = cands.iter().map(|k| ps.separated_by(&inst.points, &Line::axis(o, k.clone())));
        if bits.count() == 0 {
            prop_assert!(cands.is_empty() || snapped.clone().any(|b| b.count() == 0) || c < cands[0] || c > *cands.last().unwrap());
        } else {
            prop_assert!(snapped.clone().any(|b| b == bits));
        }
    }

    #[test]
    fn faces_symmetric_and_witnessed(inst in circle(12)) {
        let dec = decompose(&inst).unwrap();
        for a in &dec.switches {
            for b in &dec.switches {
                let (ab, ba) = (faces(&dec, a, b), faces(&dec, b, a));
                prop_assert_eq!(ab.label(), ba.label());
                for o in [Orientation::Horizontal, Orientation::Vertical] {
                    if let Some(w) = ab.get(o) {
                        let line = Line::axis(o, w.coord.clone());
                        for s in [a, b] {
                            prop_assert!(crossings(&line).iter().any(|x| s.contains(&x.key())));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn non_facing_pairs_are_not_stabbed(inst in circle(10)) {
        let dec = decompose(&inst).unwrap();
        let samples: Vec<Rational> = (-39..=39).map(|k| rat(k, 40) + rat(1, 997)).collect();
        for (i, a) in dec.switches.iter().enumerate() {
            for b in &dec.switches[i + 1..] {
                let f = faces(&dec, a, b);
                for o in [Orientation::Horizontal, Orientation::Vertical] {
                    if f.get(o).is_some() {
                        continue;
                    }
                    for c in &samples {
                        let line = Line::axis(o, c.clone());
                        let hit = |s: &sepline::decomposition::Switch| crossings(&line).iter().any(|x| s.contains(&x.key()));
                        let avoids = inst.points.iter().all(|p| line_side(&line, p) != Side::Zero);
                        prop_assert!(!(avoids && hit(a) && hit(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_bounds(inst in circle(16)) {
        let dec = decompose(&inst).unwrap();
        let g = build_switch_graph(&dec).unwrap();
        let w = dec.w();
        prop_assert!(2 * g.kappa >= w);
        // kappa = w/2 exactly when the switch graph has a perfect matching.
        let sg = SimpleGraph::new(w, g.edges.iter().map(|e| (e.i, e.j)).collect::<Vec<(usize, usize)>>()).unwrap();
        let perfect = 2 * maximum_matching(&sg).len() == w;
        prop_assert_eq!(2 * g.kappa == w, perfect);
    }

    #[test]
    fn solver_sizes(inst in circle(24)) {
        let dec = decompose(&inst).unwrap();
        let w = dec.w();
        let general = solve_general(&inst).unwrap();
        prop_assert_eq!(general.lines.len(), w / 2);
        prop_assert!(verify_separation(&inst.points, &general.lines()).unwrap().is_separated());
        let axis = solve_axis(&inst).unwrap();
        let kappa = axis.kappa.unwrap();
        prop_assert_eq!(axis.len(), kappa);
        prop_assert!(verify_separation(&inst.points, &axis.lines).unwrap().is_separated());
        let wedge = wedge_baseline(&inst).unwrap();
        prop_assert_eq!(wedge.len(), w);
        prop_assert!(kappa <= w && w <= 2 * kappa);
        prop_assert!(verify_separation(&inst.points, &wedge.lines).unwrap().is_separated());
    }

    #[test]
    fn matching_identities(n in 1usize..=10, mask in any::<u64>()) {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let edges: Vec<(usize, usize)> = pairs.iter().enumerate().filter(|(k, _)| mask >> (k % 64) & 1 == 1).map(|(_, e)| *e).collect();
        let g = SimpleGraph::new(n, edges).unwrap();
        let m = maximum_matching(&g);
        prop_assert!(is_matching(&g, &m));
        prop_assert_eq!(m.len(), brute::max_matching_size(&g));
        match minimum_edge_cover(&g) {
            Ok(c) => {
                prop_assert!(is_edge_cover(&g, &c));
                prop_assert_eq!(c.len(), n - m.len());
                prop_assert_eq!(Some(c.len()), brute::min_edge_cover_size(&g));
            }
            Err(Error::HasIsolatedVertex(_)) => prop_assert_eq!(brute::min_edge_cover_size(&g), None),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn feasible_pq_is_monotone(inst in circle(9), p in 0usize..4, q in 0usize..4) {
        let here = feasible_pq(&inst, p, q).unwrap();
        if let Some(lines) = &here {
            prop_assert!(verify_separation(&inst.points, lines).unwrap().is_separated());
            prop_assert!(feasible_pq(&inst, p + 1, q).unwrap().is_some());
            prop_assert!(feasible_pq(&inst, p, q + 1).unwrap().is_some());
        } else {
            if p > 0 { prop_assert!(feasible_pq(&inst, p - 1, q).unwrap().is_none()); }
            if q > 0 { prop_assert!(feasible_pq(&inst, p, q - 1).unwrap().is_none()); }
        }
    }

    #[test]
    fn feasible_pq_matches_the_axis_optimum(inst in circle(10)) {
        let kappa = solve_axis(&inst).unwrap().kappa.unwrap();
        let best = (0..=kappa).flat_map(|h| feasible_pq(&inst, h, kappa - h).unwrap()).next();
        prop_assert!(best.is_some());
        if kappa > 0 {
            let below = (0..kappa).any(|h| feasible_pq(&inst, h, kappa - 1 - h).unwrap().is_some());
            prop_assert!(!below);
        }
    }
}

fn crbds() -> impl Strategy<Value = Crbds> {
    (1usize..=3, 1usize..=2, 1usize..=3, any::<u64>()).prop_map(|(k, m, n, mask)| {
        let classes: Vec<Vec<String>> = (0..k).map(|i| (0..m).map(|a| format!("r{i}_{a}")).collect()).collect();
        let blues: Vec<String> = (0..n).map(|v| format!("b{v}")).collect();
        let mut edges = Vec::new();
        let mut bit = 0;
        for class in &classes {
            for r in class {
                for b in &blues {
                    if mask >> (bit % 64) & 1 == 1 {
                        edges.push((r.clone(), b.clone()));
                    }
                    bit += 1;
                }
            }
        }
        Crbds::new(classes, blues, &edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_layouts_are_sound(g in crbds()) {
        for how in [Normalization::Plain, Normalization::Sandwich] {
            let norm = normalize_with(&g, how);
            prop_assert!(norm.graph.neighbors.iter().all(|l| l.len() == norm.d));
            prop_assert_eq!(norm.graph.k() % 2, 0);
            match colorful_rbds_solve(&norm.graph) {
                Ok(sol) => prop_assert_eq!(colorful_rbds_solve(&g).unwrap().is_some(), sol.is_some()),
                Err(Error::TooLarge(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
            let red = reduce(&norm);
            let v = structural_violations(&red.layout, &red.instance);
            prop_assert!(v.is_empty(), "{:?}", v);
        }
    }

    #[test]
    fn sandwich_lifts_round_trip(g in crbds()) {
        let red = reduce(&normalize_with(&g, Normalization::Sandwich));
        let l = &red.layout;
        if let Some(set) = colorful_rbds_solve(&g).unwrap() {
            let lifted = lift(l, &set).unwrap();
            let h = lifted.lines.iter().filter(|x| x.orientation() == Some(Orientation::Horizontal)).count();
            prop_assert_eq!((h, lifted.lines.len() - h), (l.p, l.q));
            prop_assert!(verify_separation(&red.instance.points, &lifted.lines).unwrap().is_separated());
            prop_assert_eq!(extract(l, &lifted.lines).unwrap(), set);
        }
    }

    #[test]
    fn extracted_sets_dominate(g in crbds()) {
        for how in [Normalization::Plain, Normalization::Sandwich] {
            let red = reduce(&normalize_with(&g, how));
            if red.instance.len() > 60 {
                continue;
            }
            if let Some(lines) = feasible_pq(&red.instance, red.layout.p, red.layout.q).unwrap() {
                let set = extract(&red.layout, &lines).unwrap();
                prop_assert!(g.dominates(&g.choice_of(&set).unwrap()));
            }
        }
    }
}

#[test]
fn angle_keys_order_turning_points() {
    let keys: Vec<AngleKey> = (0..4).map(AngleKey::turning).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}
