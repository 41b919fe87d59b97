//! Static SVG line plots of CSV columns.

use std::fmt::Write;

use crate::table::Table;
use crate::CliError;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 60.0;
/// Alternating thin and thick strokes, so two curves read like the usual
/// absorption/emission pair.
const STROKES: [(f64, &str); 4] = [(1.0, "#000000"), (2.5, "#000000"), (1.0, "#1f5fbf"), (2.5, "#bf3f1f")];

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub x_column: Option<String>,
    /// Columns to draw; empty means every column except x.
    pub columns: Vec<String>,
    pub log_x: bool,
    pub log_y: bool,
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Axis {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values.filter(|v| usable(*v, log)) {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if lo > hi {
            return Axis { lo: 0.0, hi: 1.0, log };
        }
        if lo == hi {
            return Axis { lo: lo - 0.5, hi: hi + 0.5, log };
        }
        if log {
            Axis { lo: lo.floor(), hi: hi.ceil(), log }
        } else {
            Axis { lo, hi, log }
        }
    }

    fn frac(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    /// Tick positions in data units (before the log map).
    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let step = ((self.hi - self.lo) / 8.0).ceil().max(1.0);
            let mut e = self.lo;
            let mut out = Vec::new();
            while e <= self.hi + 1e-9 {
                out.push(10f64.powf(e));
                e += step;
            }
            return out;
        }
        let raw = (self.hi - self.lo) / 8.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
        let mut t = (self.lo / step).ceil() * step;
        let mut out = Vec::new();
        while t <= self.hi + 1e-9 * step {
            out.push(if t.abs() < 1e-12 * step { 0.0 } else { t });
            t += step;
        }
        out
    }
}

fn usable(v: f64, log: bool) -> bool {
    v.is_finite() && (!log || v > 0.0)
}

fn tick_label(v: f64, log: bool) -> String {
    if log {
        format!("1e{}", v.log10().round() as i64)
    } else {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".to_string() } else { s.to_string() }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn render_svg(table: &Table, spec: &PlotSpec) -> Result<String, CliError> {
    let xi = match &spec.x_column {
        Some(name) => table.column(name)?,
        None if table.header.is_empty() => return Err(CliError::Invalid("table has no columns".into())),
        None => 0,
    };
    let ys: Vec<usize> = if spec.columns.is_empty() {
        (0..table.header.len()).filter(|&i| i != xi).collect()
    } else {
        spec.columns.iter().map(|c| table.column(c)).collect::<Result<_, _>>()?
    };
    let xa = Axis::fit(table.rows.iter().map(|r| r[xi]), spec.log_x);
    let ya = Axis::fit(ys.iter().flat_map(|&c| table.rows.iter().map(move |r| r[c])), spec.log_y);
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let px = |v: f64| LEFT + xa.frac(v) * pw;
    let py = |v: f64| TOP + (1.0 - ya.frac(v)) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<g font-family="sans-serif" font-size="12" fill="black" stroke="none">"#
    );
    for t in xa.ticks() {
        let x = px(t);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#, TOP + ph + 18.0, tick_label(t, xa.log));
    }
    for t in ya.ticks() {
        let y = py(t);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#, LEFT - 6.0, y + 4.0, tick_label(t, ya.log));
    }
    let y_label = ys.iter().map(|&c| table.header[c].as_str()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape(&table.header[xi])
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&y_label)
    );
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="1" fill="none">"#);
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/>"#);
    for t in xa.ticks() {
        let x = px(t);
        let _ = writeln!(s, r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/>"#, TOP + ph, TOP + ph - 5.0);
    }
    for t in ya.ticks() {
        let y = py(t);
        let _ = writeln!(s, r#"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/>"#, LEFT + 5.0);
    }
    let _ = writeln!(s, "</g>");

    for (k, &c) in ys.iter().enumerate() {
        let (width, colour) = STROKES[k % STROKES.len()];
        let _ = writeln!(
            s,
            r#"<g id="{}" stroke="{colour}" stroke-width="{width}" fill="none" stroke-linejoin="round">"#,
            escape(&table.header[c])
        );
        // gaps (NaN or non-positive on a log axis) split the curve
        let mut seg: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, s: &mut String| {
            if seg.len() > 1 {
                let _ = writeln!(s, r#"<polyline points="{}"/>"#, seg.join(" "));
            }
            seg.clear();
        };
        for r in &table.rows {
            if usable(r[xi], xa.log) && usable(r[c], ya.log) {
                seg.push(format!("{:.2},{:.2}", px(r[xi]), py(r[c])));
            } else {
                flush(&mut seg, &mut s);
            }
        }
        flush(&mut seg, &mut s);
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}
