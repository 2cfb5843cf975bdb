//! Self-contained SVG line plots. Each plot is written with a CSV of the
//! plotted points next to it.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use slitdiff_core::Pattern;

use crate::output::{emit, fmt_f64};
use crate::run::{BandlimitRun, ConvergenceRow, SweepRow};
use crate::{HarnessError, Result};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 56.0;

const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];
const DASHES: [&str; 4] = ["", "8 4", "2 3", "10 3 2 3"];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// `(stroke color, dash array)` for the `i`th series. Both cycle, with
/// different periods, so neighbors always differ in color and dash.
pub fn series_style(i: usize) -> (&'static str, &'static str) {
    (COLORS[i % COLORS.len()], DASHES[i % DASHES.len()])
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Axis range widened to whole ticks at a 1, 2 or 5 times power-of-ten
/// spacing, with the ticks and the decimals needed to print them.
fn axis(lo: f64, hi: f64) -> (f64, f64, Vec<f64>, usize) {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let first = (lo / step).floor() as i64;
    let last = (hi / step).ceil() as i64;
    let ticks = (first..=last).map(|i| i as f64 * step).collect();
    (first as f64 * step, last as f64 * step, ticks, decimals)
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| (l.min(v), h.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo <= f64::EPSILON * lo.abs().max(1.0) {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Renders `fig` as an SVG document.
pub fn render_svg(fig: &Figure) -> std::result::Result<String, String> {
    if fig.series.is_empty() {
        return Err("a plot needs at least one series".into());
    }
    let (x0, x1) = bounds(fig.series.iter().flat_map(|s| s.points.iter().map(|p| p.0)));
    let (y0, y1) = bounds(fig.series.iter().flat_map(|s| s.points.iter().map(|p| p.1)));
    let (x0, x1, xt, xd) = axis(x0, x1);
    let (y0, y1, yt, yd) = axis(y0, y1);
    let (pw, ph) = (WIDTH - LEFT - RIGHT, HEIGHT - TOP - BOTTOM);
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );

    for t in xt {
        let x = sx(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{b:.2}" x2="{x:.2}" y2="{b2:.2}" stroke="black"/><text x="{x:.2}" y="{ty:.2}" text-anchor="middle">{t:.xd$}</text>"#,
            b = TOP + ph,
            b2 = TOP + ph + 5.0,
            ty = TOP + ph + 18.0,
        );
    }
    for t in yt {
        let y = sy(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{l2:.2}" y1="{y:.2}" x2="{LEFT}" y2="{y:.2}" stroke="black"/><text x="{tx:.2}" y="{ty:.2}" text-anchor="end">{t:.yd$}</text>"#,
            l2 = LEFT - 5.0,
            tx = LEFT - 8.0,
            ty = y + 4.0,
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 14.0,
        escape(&fig.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="18" y="{cy:.2}" text-anchor="middle" transform="rotate(-90 18 {cy:.2})">{}</text>"#,
        escape(&fig.y_label),
        cy = TOP + ph / 2.0,
    );

    for (i, s) in fig.series.iter().enumerate() {
        let (color, dash) = series_style(i);
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{}"><title>{}</title></polyline>"#,
            pts.join(" "),
            escape(&s.label)
        );
    }

    let lx = WIDTH - RIGHT - 190.0;
    let _ = writeln!(
        svg,
        r#"<g class="legend"><rect x="{lx:.2}" y="{:.2}" width="180" height="{:.2}" fill="white" fill-opacity="0.85" stroke="gray"/>"#,
        TOP + 8.0,
        8.0 + 18.0 * fig.series.len() as f64
    );
    for (i, s) in fig.series.iter().enumerate() {
        let (color, dash) = series_style(i);
        let y = TOP + 22.0 + 18.0 * i as f64;
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{dash}""#)
        };
        let _ = writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"{dash_attr}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 8.0,
            lx + 40.0,
            lx + 48.0,
            y + 4.0,
            escape(&s.label)
        );
    }
    let _ = writeln!(svg, "</g>\n</svg>");
    Ok(svg)
}

/// Where the plotted points are written for a plot at `path`.
pub fn data_path(path: &Path) -> PathBuf {
    let p = path.with_extension("csv");
    if p == path {
        path.with_extension("data.csv")
    } else {
        p
    }
}

/// Writes the SVG to `path` and the points to [`data_path`].
pub fn write_plot(fig: &Figure, path: &Path) -> Result<()> {
    let svg = render_svg(fig).map_err(|message| HarnessError::Parse {
        path: path.to_path_buf(),
        message,
    })?;
    emit(Some(path), &mut std::io::sink(), |w| w.write_all(svg.as_bytes()))?;
    emit(Some(&data_path(path)), &mut std::io::sink(), |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["series", "x", "y"])?;
        for s in &fig.series {
            for &(x, y) in &s.points {
                out.write_record([s.label.clone(), fmt_f64(x), fmt_f64(y)])?;
            }
        }
        out.flush()
    })
}

/// Normalized intensity against `sin θ`, one series per pattern.
pub fn pattern_figure(patterns: &[Pattern]) -> Figure {
    Figure {
        x_label: "sin θ".into(),
        y_label: "normalized intensity".into(),
        series: patterns
            .iter()
            .map(|p| Series {
                label: p.method().to_string(),
                points: p
                    .grid()
                    .thetas()
                    .iter()
                    .zip(p.intensities())
                    .map(|(t, i)| (t.sin(), *i))
                    .collect(),
            })
            .collect(),
    }
}

/// `ψ′(y)·sqrt(a)` against `y/a`, with the top-hat overlaid.
pub fn bandlimit_figure(run: &BandlimitRun) -> Figure {
    let a = run.config.a();
    let root = a.sqrt();
    let scaled = |f: &dyn Fn(f64, f64) -> f64| -> Vec<(f64, f64)> {
        run.profile.iter().map(|p| (p.y / a, f(p.y, p.value))).collect()
    };
    Figure {
        x_label: "y/a".into(),
        y_label: "ψ′(y)·√a".into(),
        series: vec![
            Series {
                label: format!("k_m a = {}", fmt_f64(run.config.k_m() * a)),
                points: scaled(&|_, v| v * root),
            },
            Series {
                label: "top-hat".into(),
                points: scaled(&|y, _| run.config.top_hat(y) * root),
            },
        ],
    }
}

/// `log10` of the relative error against `log10 N`.
pub fn convergence_figure(rows: &[ConvergenceRow]) -> Figure {
    Figure {
        x_label: "log10 N".into(),
        y_label: "log10 relative error".into(),
        series: vec![Series {
            label: "huygens".into(),
            points: rows
                .iter()
                .map(|r| ((r.n as f64).log10(), r.relative_error.log10()))
                .collect(),
        }],
    }
}

/// Max deviation against the first sweep axis that takes more than one
/// value; cells that differ on the other axes form separate series.
pub fn sweep_figure(rows: &[SweepRow]) -> Figure {
    type Key = fn(&SweepRow) -> f64;
    let axes: [(&str, Key); 4] = [
        ("λ/a", |r| r.lambda_over_a),
        ("θ_max (deg)", |r| r.theta_max),
        ("N", |r| r.huygens_n.map_or(f64::NAN, |n| n as f64)),
        ("L", |r| r.screen_distance),
    ];
    let varies = |f: Key| rows.iter().any(|r| f(r).to_bits() != f(&rows[0]).to_bits());
    let x_axis = axes.iter().position(|(_, f)| varies(*f)).unwrap_or(0);
    let mut series: Vec<Series> = Vec::new();
    for r in rows {
        let label = axes
            .iter()
            .enumerate()
            .filter(|(i, (_, f))| *i != x_axis && varies(*f))
            .map(|(_, (name, f))| format!("{name}={}", fmt_f64(f(r))))
            .collect::<Vec<_>>()
            .join(", ");
        let label = if label.is_empty() {
            "max deviation".to_string()
        } else {
            label
        };
        let point = (axes[x_axis].1(r), r.max_abs_deviation);
        match series.iter_mut().find(|s| s.label == label) {
            Some(s) => s.points.push(point),
            None => series.push(Series {
                label,
                points: vec![point],
            }),
        }
    }
    Figure {
        x_label: axes[x_axis].0.into(),
        y_label: "max abs deviation".into(),
        series,
    }
}
