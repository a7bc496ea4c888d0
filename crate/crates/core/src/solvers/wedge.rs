//! Two axis lines per blue chunk meeting inside the circle.

use crate::decomposition::decompose;
use crate::error::Result;
use crate::geometry::{Axis, Color, Line};
use crate::instance::Instance;
use crate::rational::int;

use super::axis::{AxisSolution, Provenance};
use super::{avoids, switch_interior_point};

/// For blue chunk `C_i` with anchors `p` in the preceding switch and `q` in
/// the following one, the corner of the `p`-`q` rectangle lying inside the
/// circle carries a horizontal and a vertical line.
pub fn wedge_baseline(inst: &Instance) -> Result<AxisSolution> {
    let dec = decompose(inst)?;
    let w = dec.w();
    let pts = &dec.points;
    let free = |x: &_, y: &_| avoids(pts, Axis::X, x) && avoids(pts, Axis::Y, y);
    let mut sol = AxisSolution::default();
    for (c, chunk) in dec.chunks.iter().enumerate() {
        if w == 0 || chunk.color != Color::Blue {
            continue;
        }
        let p = switch_interior_point(&dec, &dec.switches[(c + w - 1) % w], free);
        let q = switch_interior_point(&dec, &dec.switches[c], |x, y| free(x, y) && (y * y) != (&p.1 * &p.1));
        let (rx, ry) = if &p.0 * &p.0 + &q.1 * &q.1 < int(1) { (p.0, q.1) } else { (q.0, p.1) };
        sol.push(Line::vertical(rx), Provenance::Wedge(c));
        sol.push(Line::horizontal(ry), Provenance::Wedge(c));
    }
    Ok(sol)
}
