//! PBM and SVG output.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Result, WeaveError};
use crate::pattern::{Colour, PeriodicPattern};
use crate::symmetry::{Direction, FeatureKind, SymmetryGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Pbm,
    Svg,
}

impl FromStr for RenderFormat {
    type Err = WeaveError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pbm" => Ok(RenderFormat::Pbm),
            "svg" => Ok(RenderFormat::Svg),
            _ => Err(WeaveError::Parse {
                line: 1,
                column: 1,
                message: format!("unknown format {s:?}"),
            }),
        }
    }
}

/// Side of one cell in SVG user units.
const CELL: i64 = 20;

/// Renders one period rectangle of `p`. With an overlay the SVG covers the
/// group's torus and marks its axes and centres.
pub fn render(p: &PeriodicPattern, format: RenderFormat, overlay: Option<&SymmetryGroup>) -> Vec<u8> {
    match format {
        RenderFormat::Pbm => pbm(p).into_bytes(),
        RenderFormat::Svg => svg(p, overlay).into_bytes(),
    }
}

fn pbm(p: &PeriodicPattern) -> String {
    let mut out = format!("P1\n{} {}\n", p.width(), p.height());
    for j in (0..p.height()).rev() {
        let row: Vec<&str> = (0..p.width())
            .map(|i| if p.at(i, j) == Colour::Dark { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn svg(p: &PeriodicPattern, overlay: Option<&SymmetryGroup>) -> String {
    let (w, h) = match overlay {
        Some(g) => (g.torus(), g.torus()),
        None => (p.width(), p.height()),
    };
    let (pw, ph) = (w as i64 * CELL, h as i64 * CELL);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pw}" height="{ph}" viewBox="0 0 {pw} {ph}">"#
    );
    let _ = writeln!(out, r##"<rect width="{pw}" height="{ph}" fill="#ffffff"/>"##);
    for j in 0..h {
        for i in 0..w {
            if p.cell(i as i64, j as i64) == Colour::Dark {
                let _ = writeln!(
                    out,
                    r##"<rect class="cell" x="{}" y="{}" width="{CELL}" height="{CELL}" fill="#404040"/>"##,
                    i as i64 * CELL,
                    (h - 1 - j) as i64 * CELL
                );
            }
        }
    }
    if let Some(g) = overlay {
        overlay_svg(&mut out, g, pw, ph);
    }
    out.push_str("</svg>\n");
    out
}

/// Doubled coordinates to SVG units.
fn to_svg(x: i64, y: i64, ph: i64) -> (f64, f64) {
    let s = CELL as f64 / 2.0;
    (x as f64 * s, ph as f64 - y as f64 * s)
}

fn overlay_svg(out: &mut String, g: &SymmetryGroup, pw: i64, ph: i64) {
    let m = 2 * g.torus() as i64;
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="torus"><rect width="{pw}" height="{ph}"/></clipPath></defs>"#
    );
    let _ = writeln!(out, r##"<g clip-path="url(#torus)" fill="none" stroke="#c00000">"##);
    for f in g.inventory() {
        let kind = match f.kind {
            FeatureKind::Mirror => "mirror",
            FeatureKind::GlideReflection => "glide",
            _ => continue,
        };
        let tau = if f.tau { " tau" } else { "" };
        let c = f.position.0;
        // the line and its images one torus away, as segments in doubled coordinates
        let segments: Vec<((i64, i64), (i64, i64))> = (-1..=1)
            .map(|k| {
                let c = c + k * m;
                match f.direction {
                    Direction::DiagUp => ((-m, -m - c), (2 * m, 2 * m - c)),
                    Direction::DiagDown => ((-m, c + m), (2 * m, c - 2 * m)),
                    Direction::Vertical => ((c, -m), (c, 2 * m)),
                    Direction::Horizontal => ((-m, c), (2 * m, c)),
                    Direction::None => ((0, 0), (0, 0)),
                }
            })
            .collect();
        let _ = writeln!(out, r#"<g class="{kind}{tau}">"#);
        for (a, b) in segments {
            let (x1, y1) = to_svg(a.0, a.1, ph);
            let (x2, y2) = to_svg(b.0, b.1, ph);
            if f.kind == FeatureKind::Mirror {
                // double line
                for off in [-1.5, 1.5] {
                    let _ = writeln!(
                        out,
                        r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke-width="1"/>"#,
                        x1 + off,
                        y1,
                        x2 + off,
                        y2
                    );
                }
            } else {
                let _ = writeln!(
                    out,
                    r#"<line x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke-width="1.5" stroke-dasharray="6 4"/>"#
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n");
    let r = CELL as f64 / 4.0;
    for f in g.inventory() {
        let (kind, points) = match f.kind {
            FeatureKind::HalfTurn => ("half-turn", [(0.0, -r), (r, 0.0), (0.0, r), (-r, 0.0)]),
            FeatureKind::QuarterTurn => ("quarter-turn", [(-r, -r), (r, -r), (r, r), (-r, r)]),
            _ => continue,
        };
        let (cx, cy) = to_svg(f.position.0, f.position.1, ph);
        let fill = if f.tau { "#c00000" } else { "#ffffff" };
        let tau = if f.tau { " tau" } else { "" };
        let pts: Vec<String> = points.iter().map(|(dx, dy)| format!("{:.1},{:.1}", cx + dx, cy + dy)).collect();
        let _ = writeln!(
            out,
            r##"<polygon class="{kind}{tau}" points="{}" fill="{fill}" stroke="#c00000"/>"##,
            pts.join(" ")
        );
    }
}
