//! SVG 1.1 rendering of instances, line arrangements and reduction grids.
//! Coordinates are converted to `f64` for display only.

use std::fmt::Write;

use crate::geometry::{cell_map, Color, Line, Orientation};
use crate::instance::{Instance, Kind};
use crate::rational::to_f64;
use crate::reduction::Layout;

const SIZE: f64 = 640.0;
const RED: &str = "#d62728";
const BLUE: &str = "#1f77b4";

#[derive(Debug, Clone, Copy, Default)]
pub struct SvgOptions<'a> {
    /// Shade cells holding both colours (axis-parallel lines only).
    pub shade_corrupt: bool,
    /// Draw the track boundaries of a reduced instance.
    pub layout: Option<&'a Layout>,
}

/// World-to-canvas transform over `[x0, x1] x [y0, y1]`, `y` pointing up.
struct View {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    scale: f64,
}

impl View {
    fn of(inst: &Instance) -> View {
        let (mut x0, mut y0, mut x1, mut y1) = match inst.kind {
            Kind::Circle => (-1.0, -1.0, 1.0, 1.0),
            Kind::Planar => (f64::MAX, f64::MAX, f64::MIN, f64::MIN),
        };
        for p in &inst.points {
            let (x, y) = (to_f64(&p.x), to_f64(&p.y));
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let pad = 0.08 * (x1 - x0).max(y1 - y0).max(1e-9);
        let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
        View { x0, y0, x1, y1, scale: SIZE / (x1 - x0).max(y1 - y0) }
    }

    fn px(&self, x: f64) -> f64 {
        (x - self.x0) * self.scale
    }

    fn py(&self, y: f64) -> f64 {
        (self.y1 - y) * self.scale
    }

    fn clamp_x(&self, x: f64) -> f64 {
        x.clamp(self.x0, self.x1)
    }

    fn clamp_y(&self, y: f64) -> f64 {
        y.clamp(self.y0, self.y1)
    }

    /// Endpoints of `line` clipped to the view box.
    fn segment(&self, line: &Line) -> Option<((f64, f64), (f64, f64))> {
        match line {
            Line::Axis { orientation: Orientation::Horizontal, coord } => {
                let y = to_f64(coord);
                Some(((self.x0, y), (self.x1, y)))
            }
            Line::Axis { orientation: Orientation::Vertical, coord } => {
                let x = to_f64(coord);
                Some(((x, self.y0), (x, self.y1)))
            }
            Line::General { a, b, c } => {
                let (a, b, c) = (to_f64(a), to_f64(b), to_f64(c));
                let mut hits = Vec::new();
                if b != 0.0 {
                    for x in [self.x0, self.x1] {
                        let y = -(a * x + c) / b;
                        if (self.y0..=self.y1).contains(&y) {
                            hits.push((x, y));
                        }
                    }
                }
                if a != 0.0 {
                    for y in [self.y0, self.y1] {
                        let x = -(b * y + c) / a;
                        if (self.x0..=self.x1).contains(&x) {
                            hits.push((x, y));
                        }
                    }
                }
                hits.sort_by(|p, q| p.partial_cmp(q).unwrap());
                Some((*hits.first()?, *hits.last()?))
            }
        }
    }
}

pub fn render_svg(inst: &Instance, lines: &[Line], opts: &SvgOptions) -> String {
    let v = View::of(inst);
    let w = (v.x1 - v.x0) * v.scale;
    let h = (v.y1 - v.y0) * v.scale;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(out, r#"<rect class="background" x="0" y="0" width="{w:.1}" height="{h:.1}" fill="white"/>"#);

    if opts.shade_corrupt && lines.iter().all(Line::is_axis) {
        if let Ok(cells) = cell_map(&inst.points, lines) {
            let arr = crate::geometry::AxisArrangement::from_lines(lines).expect("axis lines");
            for (sig, cell) in cells.iter().filter(|(_, c)| c.is_corrupt()) {
                let (ylo, yhi) = arr.band(Orientation::Horizontal, sig.row);
                let (xlo, xhi) = arr.band(Orientation::Vertical, sig.col);
                let x_lo = xlo.map_or(v.x0, |c| v.clamp_x(to_f64(c)));
                let x_hi = xhi.map_or(v.x1, |c| v.clamp_x(to_f64(c)));
                let y_lo = ylo.map_or(v.y0, |c| v.clamp_y(to_f64(c)));
                let y_hi = yhi.map_or(v.y1, |c| v.clamp_y(to_f64(c)));
                let _ = writeln!(
                    out,
                    r##"<rect class="corrupt" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#ffd54f" fill-opacity="0.5"><title>{} points</title></rect>"##,
                    v.px(x_lo),
                    v.py(y_hi),
                    (x_hi - x_lo) * v.scale,
                    (y_hi - y_lo) * v.scale,
                    cell.points.len()
                );
            }
        }
    }

    match inst.kind {
        Kind::Circle => {
            let _ = writeln!(
                out,
                r#"<circle class="unit-circle" cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="black" stroke-width="1"/>"#,
                v.px(0.0),
                v.py(0.0),
                v.scale
            );
        }
        Kind::Planar => {
            let _ = writeln!(
                out,
                r##"<rect class="bbox" x="0" y="0" width="{w:.1}" height="{h:.1}" fill="none" stroke="#999" stroke-width="1"/>"##
            );
        }
    }

    if let Some(layout) = opts.layout {
        let _ = writeln!(out, r##"<g class="tracks" stroke="#bbb" stroke-dasharray="4 3" stroke-width="0.8">"##);
        let mut ys: Vec<i64> = layout.h_tracks.iter().flat_map(|t| [t.0, t.1]).collect();
        ys.dedup();
        for y in ys {
            let py = v.py(y as f64);
            let _ = writeln!(out, r#"<line class="track" x1="0" y1="{py:.2}" x2="{w:.1}" y2="{py:.2}"/>"#);
        }
        let mut xs: Vec<i64> = layout.v_tracks.iter().flat_map(|t| [t.0, t.1]).collect();
        xs.dedup();
        for x in xs {
            let px = v.px(x as f64);
            let _ = writeln!(out, r#"<line class="track" x1="{px:.2}" y1="0" x2="{px:.2}" y2="{h:.1}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }

    for line in lines {
        if let Some(((ax, ay), (bx, by))) = v.segment(line) {
            let _ = writeln!(
                out,
                r#"<line class="sep" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"><title>{line}</title></line>"#,
                v.px(ax),
                v.py(ay),
                v.px(bx),
                v.py(by)
            );
        }
    }

    let r = if inst.kind == Kind::Circle { 6.0 } else { 4.0 };
    for p in &inst.points {
        let (cls, fill) = match p.color {
            Color::Red => ("red", RED),
            Color::Blue => ("blue", BLUE),
        };
        let _ = writeln!(
            out,
            r#"<circle class="point {cls}" cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"><title>{} ({}, {})</title></circle>"#,
            v.px(to_f64(&p.x)),
            v.py(to_f64(&p.y)),
            p.id,
            p.x,
            p.y
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::reduction::{normalize, reduce, tests::toy};

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    fn pts4() -> Instance {
        Instance::circle(vec![
            (Color::Red, int(1), int(0)),
            (Color::Blue, int(0), int(1)),
            (Color::Red, int(-1), int(0)),
            (Color::Blue, int(0), int(-1)),
        ])
        .unwrap()
    }

    #[test]
    fn circle_with_two_lines() {
        let lines = [Line::horizontal(rat(1, 2)), Line::horizontal(rat(-1, 2))];
        let svg = render_svg(&pts4(), &lines, &SvgOptions::default());
        assert!(svg.contains(r#"version="1.1""#));
        assert_eq!(count(&svg, r#"class="point "#), 4);
        assert_eq!(count(&svg, r#"class="sep""#), 2);
        assert_eq!(count(&svg, "unit-circle"), 1);
    }

    #[test]
    fn points_only() {
        let svg = render_svg(&pts4(), &[], &SvgOptions::default());
        assert_eq!(count(&svg, r#"class="point "#), 4);
        assert_eq!(count(&svg, r#"class="sep""#), 0);
    }

    #[test]
    fn corrupt_shading_and_general_lines() {
        let one = [Line::horizontal(rat(1, 2))];
        let svg = render_svg(&pts4(), &one, &SvgOptions { shade_corrupt: true, layout: None });
        assert_eq!(count(&svg, r#"class="corrupt""#), 1);
        let chord = [Line::general(int(1), int(1), int(0)).unwrap()];
        let svg = render_svg(&pts4(), &chord, &SvgOptions { shade_corrupt: true, layout: None });
        assert_eq!(count(&svg, r#"class="sep""#), 1);
        assert_eq!(count(&svg, r#"class="corrupt""#), 0);
    }

    #[test]
    fn reduced_toy_with_grid() {
        let red = reduce(&normalize(&toy()));
        let svg = render_svg(&red.instance, &[], &SvgOptions { shade_corrupt: false, layout: Some(&red.layout) });
        assert_eq!(count(&svg, r#"class="point "#), 22);
        assert!(count(&svg, r#"class="track""#) > 0);
        assert!(svg.contains(r#"class="bbox""#));
    }
}
