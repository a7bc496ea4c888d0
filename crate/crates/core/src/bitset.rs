//! Bitsets over red-blue pairs and the separation relation `sep(L)`.

use std::collections::HashMap;

use crate::geometry::{line_side, Color, ColoredPoint, Line, Side};

/// Fixed-width bitset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn new(len: usize) -> Bits {
        Bits { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Bits {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Bits) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    /// Number of bits set here and not in `other`.
    pub fn count_minus(&self, other: &Bits) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & !b).count_ones() as usize).sum()
    }

    pub fn first_unset(&self) -> Option<usize> {
        (0..self.len).find(|&i| !self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Indexing of `R x B` for one point set.
#[derive(Debug, Clone)]
pub struct PairSpace {
    pub reds: Vec<usize>,
    pub blues: Vec<usize>,
}

impl PairSpace {
    pub fn new(points: &[ColoredPoint]) -> PairSpace {
        let pick = |c: Color| points.iter().filter(|p| p.color == c).map(|p| p.id).collect();
        PairSpace { reds: pick(Color::Red), blues: pick(Color::Blue) }
    }

    pub fn size(&self) -> usize {
        self.reds.len() * self.blues.len()
    }

    pub fn index(&self, ri: usize, bi: usize) -> usize {
        ri * self.blues.len() + bi
    }

    /// `(red id, blue id)` of a pair index.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        (self.reds[k / self.blues.len()], self.blues[k % self.blues.len()])
    }

    pub fn empty(&self) -> Bits {
        Bits::new(self.size())
    }

    /// Pairs with endpoints on opposite sides of `line`. Points on the line
    /// count as separated from nothing.
    pub fn separated_by(&self, points: &[ColoredPoint], line: &Line) -> Bits {
        let side = |id: usize| line_side(line, &points[id]);
        let rs: Vec<Side> = self.reds.iter().map(|&i| side(i)).collect();
        let bs: Vec<Side> = self.blues.iter().map(|&i| side(i)).collect();
        let mut bits = self.empty();
        for (ri, r) in rs.iter().enumerate() {
            for (bi, b) in bs.iter().enumerate() {
                if *r != Side::Zero && *b != Side::Zero && r != b {
                    bits.set(self.index(ri, bi));
                }
            }
        }
        bits
    }

    /// `sep(L)`.
    pub fn sep(&self, points: &[ColoredPoint], lines: &[Line]) -> Bits {
        let mut acc = self.empty();
        for l in lines {
            acc.union_with(&self.separated_by(points, l));
        }
        acc
    }
}

/// Smallest set of at most `budget` candidates covering every pair missing
/// from `base`, by branching on the lowest uncovered pair.
pub fn cover_search(base: &Bits, cands: &[Bits], budget: usize) -> Option<Vec<usize>> {
    fn go(
        cur: &Bits,
        cands: &[Bits],
        budget: usize,
        failed: &mut HashMap<Bits, usize>,
        chosen: &mut Vec<usize>,
    ) -> bool {
        let Some(pair) = cur.first_unset() else {
            return true;
        };
        if budget == 0 || failed.get(cur).is_some_and(|&b| b >= budget) {
            return false;
        }
        let missing = cur.len() - cur.count();
        let best_gain = cands.iter().map(|c| c.count_minus(cur)).max().unwrap_or(0);
        if best_gain == 0 || missing.div_ceil(best_gain) > budget {
            failed.insert(cur.clone(), budget);
            return false;
        }
        let mut options: Vec<usize> = (0..cands.len()).filter(|&k| cands[k].get(pair)).collect();
        options.sort_by_key(|&k| std::cmp::Reverse(cands[k].count_minus(cur)));
        for k in options {
            chosen.push(k);
            if go(&cur.union(&cands[k]), cands, budget - 1, failed, chosen) {
                return true;
            }
            chosen.pop();
        }
        failed.insert(cur.clone(), budget);
        false
    }
    let mut chosen = Vec::new();
    go(base, cands, budget, &mut HashMap::new(), &mut chosen).then_some(chosen)
}
