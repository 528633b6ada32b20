//! File writers: JSON reports, per-trial CSV and an SVG scatter plot.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::montecarlo::{DependentTrial, RainbowTrial};
use crate::dependent::SnappedT;

pub const RAINBOW_CSV_HEADER: [&str; 5] = ["trial", "n", "r", "R_n", "solver_exact"];
pub const DEPENDENT_CSV_HEADER: [&str; 7] = ["trial", "n", "k", "t", "s", "T_n", "X_t"];

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(contents.as_bytes())?;
    w.flush()?;
    Ok(())
}

/// Trials of one rainbow run, tagged with its `n` and `r`.
pub struct RainbowRows<'a> {
    pub n: usize,
    pub r: u32,
    pub trials: &'a [RainbowTrial],
}

pub struct DependentRows<'a> {
    pub n: usize,
    pub k: usize,
    pub segment: Option<SnappedT>,
    pub trials: &'a [DependentTrial],
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_rainbow_csv(path: &Path, runs: &[RainbowRows<'_>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(RAINBOW_CSV_HEADER)?;
    for run in runs {
        for t in run.trials {
            w.write_record([
                t.trial.to_string(),
                run.n.to_string(),
                run.r.to_string(),
                t.r_n.to_string(),
                t.exact.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_dependent_csv(path: &Path, runs: &[DependentRows<'_>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(DEPENDENT_CSV_HEADER)?;
    for run in runs {
        for t in run.trials {
            w.write_record([
                t.trial.to_string(),
                run.n.to_string(),
                run.k.to_string(),
                opt(run.segment.map(|s| s.t)),
                opt(run.segment.map(|s| s.s)),
                t.t_n.to_string(),
                opt(t.x_t),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One plotted series: every trial as a point, plus the per-`n` means joined
/// by a line.
pub struct Series {
    pub label: String,
    pub colour: &'static str,
    pub points: Vec<(f64, f64)>,
    pub means: Vec<(f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-9 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// SVG 1.1 scatter of a statistic against `n`.
pub fn scatter_svg(title: &str, y_label: &str, series: &[Series]) -> String {
    let all = || series.iter().flat_map(|s| s.points.iter().chain(&s.means));
    let (x0, x1) = range(all().map(|p| p.0));
    let (y0, y1) = range(all().map(|p| p.1).chain(std::iter::once(0.0)));
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#, WIDTH / 2.0, escape(title));
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(svg, r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" fill="none" stroke="black"/>"#);
    for (x, y) in [(x0, y0), (x1, y1)] {
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#, sx(x), bottom + 16.0, fmt_tick(x));
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#, left - 6.0, sy(y) + 4.0, fmt_tick(y));
    }
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">n</text>"#, WIDTH / 2.0, HEIGHT - 14.0);
    let _ = writeln!(svg, r#"<text x="16" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {})">{}</text>"#, HEIGHT / 2.0, HEIGHT / 2.0, escape(y_label));

    for (idx, s) in series.iter().enumerate() {
        let _ = writeln!(svg, r#"<g fill="{c}" stroke="{c}">"#, c = s.colour);
        for &(x, y) in &s.points {
            let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill-opacity="0.35" stroke="none"/>"#, sx(x), sy(y));
        }
        if !s.means.is_empty() {
            let path: Vec<String> = s
                .means
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| format!("{}{:.2} {:.2}", if i == 0 { 'M' } else { 'L' }, sx(x), sy(y)))
                .collect();
            let _ = writeln!(svg, r#"<path d="{}" fill="none" stroke-width="2"/>"#, path.join(" "));
            for &(x, y) in &s.means {
                let _ = writeln!(svg, r#"<rect x="{:.2}" y="{:.2}" width="6" height="6"/>"#, sx(x) - 3.0, sy(y) - 3.0);
            }
        }
        let ly = top + 14.0 * idx as f64;
        let _ = writeln!(svg, r#"<rect x="{:.2}" y="{:.2}" width="10" height="10"/>"#, right - 90.0, ly);
        let _ = writeln!(svg, r#"<text x="{:.2}" y="{:.2}" stroke="none" fill="black" font-family="sans-serif" font-size="11">{}</text>"#, right - 75.0, ly + 9.0, escape(&s.label));
        let _ = writeln!(svg, "</g>");
    }
    svg.push_str("</svg>\n");
    svg
}

fn fmt_tick(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e12 {
        format!("{}", v as i64)
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
