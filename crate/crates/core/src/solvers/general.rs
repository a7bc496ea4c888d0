//! One chord per blue chunk, through interior points of its two switches.

use serde_json::json;

use crate::decomposition::decompose;
use crate::error::Result;
use crate::geometry::{Color, Line};
use crate::instance::Instance;
use crate::rational::Rational;
use crate::solution::line_json;

use super::switch_interior_point;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordLine {
    pub line: Line,
    pub chunk: usize,
    pub p: (Rational, Rational),
    pub q: (Rational, Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralSolution {
    pub lines: Vec<ChordLine>,
}

impl GeneralSolution {
    pub fn lines(&self) -> Vec<Line> {
        self.lines.iter().map(|c| c.line.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "variant": "general",
            "lines": self.lines.iter().map(|c| line_json(&c.line)).collect::<Vec<_>>(),
            "size": self.lines.len(),
            "kappa": null,
            "steps": 0,
            "repair_used": false,
        })
    }
}

/// JSON form of a line: `{"orient","c"}` or `{"a","b","c"}`.
pub fn solve_general(inst: &Instance) -> Result<GeneralSolution> {
    let dec = decompose(inst)?;
    let w = dec.w();
    let mut lines = Vec::new();
    for (c, chunk) in dec.chunks.iter().enumerate() {
        if w == 0 || chunk.color != Color::Blue {
            continue;
        }
        let before = &dec.switches[(c + w - 1) % w];
        let after = &dec.switches[c];
        let p = switch_interior_point(&dec, before, |_, _| true);
        let q = switch_interior_point(&dec, after, |_, _| true);
        let line = Line::through((&p.0, &p.1), (&q.0, &q.1))?;
        lines.push(ChordLine { line, chunk: c, p, q });
    }
    Ok(GeneralSolution { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::verify_separation;
    use crate::rational::int;

    #[test]
    fn small_cases() {
        let pts4 = Instance::circle(vec![
            (Color::Red, int(1), int(0)),
            (Color::Blue, int(0), int(1)),
            (Color::Red, int(-1), int(0)),
            (Color::Blue, int(0), int(-1)),
        ])
        .unwrap();
        let s = solve_general(&pts4).unwrap();
        assert_eq!(s.lines.len(), 2);
        assert!(verify_separation(&pts4.points, &s.lines()).unwrap().is_separated());

        let two = Instance::circle(vec![(Color::Red, int(1), int(0)), (Color::Blue, int(0), int(1))]).unwrap();
        let s = solve_general(&two).unwrap();
        assert_eq!(s.lines.len(), 1);
        assert!(verify_separation(&two.points, &s.lines()).unwrap().is_separated());

        let mono = Instance::circle(vec![(Color::Red, int(1), int(0))]).unwrap();
        assert!(solve_general(&mono).unwrap().lines.is_empty());
    }
}
