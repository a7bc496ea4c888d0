//! Seeded random circle instances.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arcs::AngleKey;
use crate::error::{Error, Result};
use crate::geometry::{circle_point_from_parameter, Color};
use crate::instance::Instance;
use crate::rational::{int, Rational};

const PARAM_RANGE: i64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Random,
    Alternating,
    /// Run lengths of same-colored points in angular order, starting red.
    Chunked(Vec<usize>),
}

impl FromStr for Pattern {
    type Err = Error;

    /// `random`, `alternating`, or `chunked:3,1,2`.
    fn from_str(s: &str) -> Result<Pattern> {
        match s {
            "random" => Ok(Pattern::Random),
            "alternating" => Ok(Pattern::Alternating),
            _ => {
                let runs = s
                    .strip_prefix("chunked:")
                    .ok_or_else(|| Error::BadPattern(format!("unknown pattern {s:?}")))?;
                runs.split(',')
                    .map(|r| r.trim().parse::<usize>().map_err(|_| Error::BadPattern(format!("bad run length {r:?}"))))
                    .collect::<Result<Vec<_>>>()
                    .map(Pattern::Chunked)
            }
        }
    }
}

pub fn gen_circle(n: usize, seed: u64, pattern: &Pattern) -> Result<Instance> {
    if n == 0 {
        return Err(Error::BadPattern("n must be at least 1".into()));
    }
    if let Pattern::Chunked(runs) = pattern {
        if runs.contains(&0) || runs.iter().sum::<usize>() != n {
            return Err(Error::BadPattern(format!("run lengths {runs:?} must be positive and sum to {n}")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let with_west = rng.gen_ratio(1, 8);
    let mut params: BTreeSet<Rational> = BTreeSet::new();
    let mut coords: Vec<(Rational, Rational)> = Vec::with_capacity(n);
    if with_west {
        coords.push((int(-1), int(0)));
    }
    while coords.len() < n {
        let a = rng.gen_range(-PARAM_RANGE..=PARAM_RANGE);
        let b = rng.gen_range(1..=PARAM_RANGE);
        let t = Rational::new(a.into(), b.into());
        if params.insert(t.clone()) {
            coords.push(circle_point_from_parameter(&t));
        }
    }
    coords.sort_by_key(|(x, y)| AngleKey::of_point(x, y));
    let colors: Vec<Color> = match pattern {
        Pattern::Random => (0..n).map(|_| if rng.gen_bool(0.5) { Color::Red } else { Color::Blue }).collect(),
        Pattern::Alternating => (0..n).map(|i| if i % 2 == 0 { Color::Red } else { Color::Blue }).collect(),
        Pattern::Chunked(runs) => runs
            .iter()
            .enumerate()
            .flat_map(|(k, &r)| std::iter::repeat_n(if k % 2 == 0 { Color::Red } else { Color::Blue }, r))
            .collect(),
    };
    // Rotate the labelling so chunks need not start at angle 0.
    let shift = rng.gen_range(0..n);
    let pts = (0..n).map(|i| {
        let (x, y) = coords[(i + shift) % n].clone();
        (colors[i], x, y)
    });
    Instance::circle(pts.collect())
}
