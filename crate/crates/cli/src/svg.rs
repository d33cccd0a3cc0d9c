//! Minimal deterministic SVG line charts.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, CliResult};
use crate::output::{write_text, Table};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const TICKS: usize = 5;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum YScale {
    #[default]
    Linear,
    Log,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if lo > hi {
        return None;
    }
    if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
        let pad = 0.5 * hi.abs().max(1.0) * 1e-3;
        return Some((lo - pad, hi + pad));
    }
    Some((lo, hi))
}

/// Renders `columns` of `table` against its first column.
pub fn render(table: &Table, columns: &[String], scale: YScale) -> CliResult<String> {
    if columns.is_empty() {
        return Err(CliError::parse("no columns requested"));
    }
    let x = table.columns.first().ok_or_else(|| CliError::parse("table has no columns"))?;
    let series = columns
        .iter()
        .map(|c| table.column(c).ok_or_else(|| CliError::parse(format!("missing column {c:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    let ty = |v: f64| match scale {
        YScale::Linear => Some(v),
        YScale::Log => (v > 0.0).then(|| v.log10()),
    };
    let (x0, x1) = range(x.iter().copied()).unwrap_or((0.0, 1.0));
    let (y0, y1) = range(series.iter().flat_map(|s| s.iter().filter_map(|&v| ty(v)))).unwrap_or((0.0, 1.0));
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let px = |v: f64| LEFT + (v - x0) / (x1 - x0) * pw;
    let py = |v: f64| TOP + ph - (v - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#);
    for k in 0..=TICKS {
        let f = k as f64 / TICKS as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (gx, gy) = (px(xv), py(yv));
        let ylabel = match scale {
            YScale::Linear => format!("{yv:.4}"),
            YScale::Log => format!("1e{yv:.2}"),
        };
        let _ = writeln!(s, r#"<line x1="{gx:.2}" y1="{:.2}" x2="{gx:.2}" y2="{:.2}" stroke="black"/>"#, TOP + ph, TOP + ph + 5.0);
        let _ = writeln!(s, r#"<text x="{gx:.2}" y="{:.2}" text-anchor="middle">{xv:.3}</text>"#, TOP + ph + 20.0);
        let _ = writeln!(s, r#"<line x1="{:.2}" y1="{gy:.2}" x2="{LEFT}" y2="{gy:.2}" stroke="black"/>"#, LEFT - 5.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{ylabel}</text>"#, LEFT - 8.0, gy + 4.0);
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 10.0,
        escape(&table.header[0])
    );
    for (n, (name, ys)) in columns.iter().zip(&series).enumerate() {
        let color = PALETTE[n % PALETTE.len()];
        let mut segments: Vec<Vec<String>> = vec![Vec::new()];
        for (&xv, &yv) in x.iter().zip(ys.iter()) {
            match ty(yv) {
                Some(v) if v.is_finite() => segments.last_mut().unwrap().push(format!("{:.2},{:.2}", px(xv), py(v))),
                _ => segments.push(Vec::new()),
            }
        }
        for seg in segments.iter().filter(|s| !s.is_empty()) {
            let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, seg.join(" "));
        }
        let ly = TOP + 10.0 + 18.0 * n as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(s, r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#, lx + 20.0);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, lx + 26.0, ly + 4.0, escape(name));
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn render_file(csv: &Path, columns: &[String], out: &Path, scale: YScale) -> CliResult<()> {
    let table = Table::read(csv)?;
    write_text(out, &render(&table, columns, scale)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new(vec!["t".into(), "a".into(), "b".into()]);
        for k in 0..5 {
            t.push_row(&[k as f64, 1.0, k as f64 * k as f64]);
        }
        t
    }

    #[test]
    fn deterministic_and_complete() {
        let cols = vec!["a".to_string(), "b".to_string()];
        let one = render(&table(), &cols, YScale::Linear).unwrap();
        assert_eq!(one, render(&table(), &cols, YScale::Linear).unwrap());
        assert_eq!(one.matches("<polyline").count(), 2);
        assert!(one.contains(">b</text>"));
    }

    #[test]
    fn log_scale_breaks_at_non_positive_values() {
        let out = render(&table(), &["b".to_string()], YScale::Log).unwrap();
        assert_eq!(out.matches("<polyline").count(), 1);
    }

    #[test]
    fn errors() {
        assert!(render(&table(), &[], YScale::Linear).is_err());
        let e = render(&table(), &["zz".to_string()], YScale::Linear).unwrap_err();
        assert!(e.message.contains("zz"));
    }
}
