//! Deterministic ascii and svg drawings of cell collections.

use super::{CellCollection, Vertex};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

/// Pixels per grid unit in svg output.
const UNIT: i64 = 40;
const MARGIN: i64 = 40;

pub fn render(
    p: &CellCollection,
    labels: Option<&BTreeMap<Vertex, String>>,
    format: RenderFormat,
) -> String {
    match format {
        RenderFormat::Ascii => render_ascii(p, labels),
        RenderFormat::Svg => render_svg(p, labels),
    }
}

fn render_ascii(p: &CellCollection, labels: Option<&BTreeMap<Vertex, String>>) -> String {
    let Some(((lo_i, lo_j), (hi_i, hi_j))) = p.bounding_box() else {
        return String::new();
    };
    let w = (hi_i - lo_i + 1) as usize;
    let h = (hi_j - lo_j + 1) as usize;
    let mut canvas = vec![vec![' '; 3 * w + 1]; 2 * h + 1];
    for c in p.iter() {
        let x = 3 * (c.i() - lo_i) as usize;
        let y = 2 * (hi_j - c.j()) as usize;
        for dx in 1..3 {
            canvas[y][x + dx] = '-';
            canvas[y + 2][x + dx] = '-';
        }
        canvas[y + 1][x] = '|';
        canvas[y + 1][x + 3] = '|';
        for (cx, cy) in [(x, y), (x + 3, y), (x, y + 2), (x + 3, y + 2)] {
            canvas[cy][cx] = '+';
        }
    }
    let mut out = String::new();
    for row in canvas {
        let line: String = row.into_iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    if let Some(labels) = labels {
        for (v, text) in labels {
            let _ = writeln!(out, "{text} = {v}");
        }
    }
    out
}

fn render_svg(p: &CellCollection, labels: Option<&BTreeMap<Vertex, String>>) -> String {
    let Some(((lo_i, lo_j), (hi_i, hi_j))) = p.bounding_box() else {
        return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"0\" height=\"0\"></svg>\n".into();
    };
    let width = (hi_i - lo_i + 1) as i64 * UNIT + 2 * MARGIN;
    let height = (hi_j - lo_j + 1) as i64 * UNIT + 2 * MARGIN;
    let px = |i: u32| MARGIN + (i as i64 - lo_i as i64) * UNIT;
    let py = |j: u32| MARGIN + (hi_j as i64 + 1 - j as i64) * UNIT;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );
    for c in p.iter() {
        let _ = writeln!(
            out,
            "  <rect x=\"{}\" y=\"{}\" width=\"{UNIT}\" height=\"{UNIT}\" fill=\"#e8e8e8\" stroke=\"black\" stroke-width=\"1\"/>",
            px(c.i()),
            py(c.j() + 1)
        );
    }
    if let Some(labels) = labels {
        for (v, text) in labels {
            let _ = writeln!(
                out,
                "  <circle cx=\"{}\" cy=\"{}\" r=\"2\" fill=\"black\"/>",
                px(v.i),
                py(v.j)
            );
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" font-size=\"12\" font-family=\"sans-serif\">{}</text>",
                px(v.i) + 3,
                py(v.j) - 3,
                escape(text)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
