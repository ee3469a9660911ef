//! SVG drawings of bigon diagrams and ladder lists. Output depends only on the
//! input, with integer coordinates throughout.

use std::fmt::Write;

use crate::bigon::{BigonArc, WeightedBigonDiagram};
use crate::complex::Color;
use crate::diagram::WeightedArcDiagram;
use crate::ladder::LadderList;
use crate::structure::{decompose, DecomposeError};

const SPACING: i64 = 80;
const MID: i64 = 220;
const HEIGHT: i64 = 440;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn header(out: &mut String, width: i64, height: i64) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(
        out,
        "<rect width=\"{width}\" height=\"{height}\" fill=\"white\"/>"
    );
}

/// Number of same-color arcs nested inside `a`, plus one.
fn depth(b: &WeightedBigonDiagram, a: &BigonArc) -> i64 {
    let inner: Vec<&BigonArc> = b.arcs.keys().filter(|x| a.strictly_contains(x)).collect();
    1 + inner.iter().map(|x| depth(b, x)).max().unwrap_or(0)
}

/// Draws the bigon with its alpha vertex on top and beta vertex below, marked
/// points on the middle line, and each arc labelled with its weight. Weight-zero
/// arcs are dashed. `labels` names the marked points.
pub fn render_bigon(b: &WeightedBigonDiagram, labels: Option<&[String]>) -> String {
    let n = b.n.max(1) as i64;
    let width = 2 * SPACING + SPACING * (n - 1);
    let x = |k: usize| SPACING + SPACING * (k as i64 - 1);
    let (ax, ay) = (width / 2, 24);
    let (bx, by) = (width / 2, HEIGHT - 24);
    let mut out = String::new();
    header(&mut out, width, HEIGHT);
    for (a, w) in &b.arcs {
        let dash = if w.is_zero() {
            " stroke-dasharray=\"4 3\""
        } else {
            ""
        };
        let (path, lx, ly, stroke) = match *a {
            BigonArc::Het { cut } => {
                let cx = (x(cut) + x(cut + 1)) / 2;
                let path = format!(
                    "M {ax} {ay} C {cx} {}, {cx} {}, {cx} {MID} C {cx} {}, {cx} {}, {bx} {by}",
                    ay + 60,
                    MID - 60,
                    MID + 60,
                    by - 60
                );
                (path, cx + 4, MID - 8, "#555555")
            }
            BigonArc::Hom { color, lo, hi } => {
                let m = 8 * depth(b, a);
                let (xl, xr) = (x(lo) - m, x(hi) + m);
                let r = 10 + m;
                let (vx, vy, s, stroke) = match color {
                    Color::Alpha => (ax, ay, 1, "#c0392b"),
                    Color::Beta => (bx, by, -1, "#2c3e8f"),
                };
                let path = format!(
                    "M {vx} {vy} C {xl} {}, {xl} {}, {xl} {MID} C {xl} {}, {xr} {}, {xr} {MID} C {xr} {}, {xr} {}, {vx} {vy}",
                    vy + s * 40,
                    MID - s * 20,
                    MID + s * r,
                    MID + s * r,
                    MID - s * 20,
                    vy + s * 40
                );
                (path, (xl + xr) / 2, MID + s * (r + 14), stroke)
            }
        };
        let _ = writeln!(
            out,
            "<path d=\"{path}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash}/>"
        );
        let _ = writeln!(
            out,
            "<text x=\"{lx}\" y=\"{ly}\" text-anchor=\"middle\">{}</text>",
            escape(&w.to_string())
        );
    }
    for k in 1..=b.n {
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{MID}\" r=\"4\" fill=\"black\"/>",
            x(k)
        );
        let label = labels
            .and_then(|l| l.get(k - 1))
            .cloned()
            .unwrap_or_else(|| format!("m{k}"));
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"10\">{}</text>",
            x(k) + 10,
            MID - 6,
            escape(&label)
        );
    }
    let _ = writeln!(
        out,
        "<circle cx=\"{ax}\" cy=\"{ay}\" r=\"6\" fill=\"#c0392b\"/>"
    );
    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">alpha</text>", ax + 10, ay + 4);
    let _ = writeln!(
        out,
        "<circle cx=\"{bx}\" cy=\"{by}\" r=\"6\" fill=\"#2c3e8f\"/>"
    );
    let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">beta</text>", bx + 10, by + 4);
    out.push_str("</svg>\n");
    out
}

/// Draws each named list as a chain of boxed symbols joined by weighted links.
pub fn render_ladders(lists: &[(String, LadderList<String>)]) -> String {
    let box_w = |s: &str| 16 + 7 * s.chars().count() as i64;
    let row_h = 60;
    let mut rows = Vec::new();
    let mut width = 200;
    for (name, list) in lists {
        let mut items = Vec::new();
        let mut cx = 120;
        if let Some(h) = &list.head {
            items.push((cx, h.clone(), None));
            cx += box_w(h) + 60;
        }
        for (w, s) in &list.steps {
            items.push((cx, s.clone(), Some(w.to_string())));
            cx += box_w(s) + 60;
        }
        width = width.max(cx + 20);
        rows.push((name.clone(), items));
    }
    let height = 20 + row_h * rows.len().max(1) as i64;
    let mut out = String::new();
    header(&mut out, width, height);
    for (r, (name, items)) in rows.iter().enumerate() {
        let y = 40 + row_h * r as i64;
        let _ = writeln!(
            out,
            "<text x=\"10\" y=\"{}\">{}</text>",
            y + 4,
            escape(name)
        );
        let mut prev_right: Option<i64> = None;
        for (x0, sym, w) in items {
            let bw = box_w(sym);
            let left = match (prev_right, w) {
                (Some(p), Some(w)) => {
                    let _ = writeln!(
                        out,
                        "<line x1=\"{p}\" y1=\"{y}\" x2=\"{x0}\" y2=\"{y}\" stroke=\"black\"/>"
                    );
                    let _ = writeln!(
                        out,
                        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                        (p + x0) / 2,
                        y - 6,
                        escape(w)
                    );
                    *x0
                }
                (None, Some(w)) => {
                    // Headless lists start with a weight.
                    let _ = writeln!(
                        out,
                        "<line x1=\"{}\" y1=\"{y}\" x2=\"{x0}\" y2=\"{y}\" stroke=\"black\"/>",
                        x0 - 50
                    );
                    let _ = writeln!(
                        out,
                        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                        x0 - 25,
                        y - 6,
                        escape(w)
                    );
                    *x0
                }
                _ => *x0,
            };
            let _ = writeln!(
                out,
                "<rect x=\"{left}\" y=\"{}\" width=\"{bw}\" height=\"20\" fill=\"#f4f4f4\" stroke=\"black\"/>",
                y - 10
            );
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                left + bw / 2,
                y + 4,
                escape(sym)
            );
            prev_right = Some(left + bw);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// The ladders of a diagram, with clumps named by their arcs.
pub fn render_diagram_ladders(d: &WeightedArcDiagram) -> Result<String, DecomposeError> {
    let c = d.complex();
    let dec = decompose(d)?;
    let clump_name = |k: &usize| {
        let names: Vec<&str> = dec.clumps[*k].iter().map(|a| c.arc_name(*a)).collect();
        format!("{{{}}}", names.join(","))
    };
    let lists: Vec<(String, LadderList<String>)> = dec
        .ladders
        .iter()
        .enumerate()
        .map(|(i, l)| (format!("ladder {i}"), l.clumps.map(clump_name)))
        .collect();
    Ok(render_ladders(&lists))
}
