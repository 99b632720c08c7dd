//! Deterministic SVG plotting: fixed 800x600 canvas, fixed palette order,
//! fixed coordinate formatting, so identical inputs give identical bytes.
//! Non-finite points (e.g. unattained spectrum values) are omitted and split
//! a curve into separate polyline segments.

use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

pub const CANVAS_WIDTH: f64 = 800.0;
pub const CANVAS_HEIGHT: f64 = 600.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#7f7f7f",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

impl Series {
    pub fn new(label: impl Into<String>, xs: Vec<f64>, ys: Vec<f64>) -> Self {
        Series {
            label: label.into(),
            xs,
            ys,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn fmt_coord(v: f64) -> String {
    format!("{v:.2}")
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if !(1e-3..1e4).contains(&a) {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s.is_empty() || s == "-" {
            "0".to_string()
        } else {
            s
        }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Viewport {
    x0: f64,
    y0: f64,
    width: f64,
    height: f64,
}

fn render_panel_into(svg: &mut String, panel: &Panel, vp: &Viewport) -> Result<()> {
    if panel.series.is_empty() {
        return Err(Error::Argument("a plot needs at least one series".into()));
    }
    for s in &panel.series {
        if s.xs.len() != s.ys.len() {
            return Err(Error::Argument(format!(
                "series `{}` has misaligned arrays",
                s.label
            )));
        }
    }
    let finite_points: Vec<(f64, f64)> = panel
        .series
        .iter()
        .flat_map(|s| s.xs.iter().zip(s.ys.iter()))
        .filter(|(x, y)| x.is_finite() && y.is_finite())
        .map(|(&x, &y)| (x, y))
        .collect();
    if finite_points.is_empty() {
        return Err(Error::Argument("no finite points to plot".into()));
    }
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in &finite_points {
        xmin = xmin.min(*x);
        xmax = xmax.max(*x);
        ymin = ymin.min(*y);
        ymax = ymax.max(*y);
    }
    if xmax == xmin {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if ymax == ymin {
        ymin -= 0.5;
        ymax += 0.5;
    }
    let xpad = 0.04 * (xmax - xmin);
    let ypad = 0.06 * (ymax - ymin);
    xmin -= xpad;
    xmax += xpad;
    ymin -= ypad;
    ymax += ypad;

    let margin_left = 58.0;
    let margin_right = 14.0;
    let margin_top = if panel.title.is_empty() { 16.0 } else { 34.0 };
    let margin_bottom = 46.0;
    let plot_x = vp.x0 + margin_left;
    let plot_y = vp.y0 + margin_top;
    let plot_w = vp.width - margin_left - margin_right;
    let plot_h = vp.height - margin_top - margin_bottom;
    let to_px = |x: f64| plot_x + (x - xmin) / (xmax - xmin) * plot_w;
    let to_py = |y: f64| plot_y + plot_h - (y - ymin) / (ymax - ymin) * plot_h;

    let _ = writeln!(
        svg,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#333333" stroke-width="1"/>"##,
        fmt_coord(plot_x),
        fmt_coord(plot_y),
        fmt_coord(plot_w),
        fmt_coord(plot_h)
    );
    if !panel.title.is_empty() {
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            fmt_coord(plot_x + plot_w / 2.0),
            fmt_coord(vp.y0 + 20.0),
            escape(&panel.title)
        );
    }

    // Ticks: 5 per axis.
    for i in 0..=4 {
        let fx = i as f64 / 4.0;
        let xv = xmin + fx * (xmax - xmin);
        let px = to_px(xv);
        let _ = writeln!(
            svg,
            r##"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="#333333" stroke-width="1"/>"##,
            fmt_coord(px),
            fmt_coord(plot_y + plot_h),
            fmt_coord(plot_y + plot_h + 4.0)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text>"#,
            fmt_coord(px),
            fmt_coord(plot_y + plot_h + 17.0),
            fmt_tick(xv)
        );
        let yv = ymin + fx * (ymax - ymin);
        let py = to_py(yv);
        let _ = writeln!(
            svg,
            r##"<line x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="#333333" stroke-width="1"/>"##,
            fmt_coord(plot_x - 4.0),
            fmt_coord(plot_x),
            fmt_coord(py)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{}</text>"#,
            fmt_coord(plot_x - 7.0),
            fmt_coord(py + 4.0),
            fmt_tick(yv)
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        fmt_coord(plot_x + plot_w / 2.0),
        fmt_coord(plot_y + plot_h + 36.0),
        escape(&panel.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{0}" y="{1}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 {0} {1})">{2}</text>"#,
        fmt_coord(vp.x0 + 14.0),
        fmt_coord(plot_y + plot_h / 2.0),
        escape(&panel.y_label)
    );

    // Curves: one polyline per run of consecutive finite points.
    for (si, s) in panel.series.iter().enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, svg: &mut String| {
            if seg.len() >= 2 {
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                    seg.join(" ")
                );
            } else if seg.len() == 1 {
                let xy: Vec<&str> = seg[0].split(',').collect();
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{}" cy="{}" r="3" fill="{color}"/>"#,
                    xy[0], xy[1]
                );
            }
            seg.clear();
        };
        for (x, y) in s.xs.iter().zip(s.ys.iter()) {
            if x.is_finite() && y.is_finite() {
                segment.push(format!("{},{}", fmt_coord(to_px(*x)), fmt_coord(to_py(*y))));
            } else {
                flush(&mut segment, svg);
            }
        }
        flush(&mut segment, svg);

        // Legend entry.
        let ly = plot_y + 14.0 + 16.0 * si as f64;
        let _ = writeln!(
            svg,
            r#"<line x1="{}" y1="{2}" x2="{}" y2="{2}" stroke="{color}" stroke-width="2"/>"#,
            fmt_coord(plot_x + plot_w - 120.0),
            fmt_coord(plot_x + plot_w - 98.0),
            fmt_coord(ly)
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11">{}</text>"#,
            fmt_coord(plot_x + plot_w - 93.0),
            fmt_coord(ly + 4.0),
            escape(&s.label)
        );
    }
    Ok(())
}

fn render_document(panels: &[&Panel]) -> Result<String> {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_WIDTH}" height="{CANVAS_HEIGHT}" viewBox="0 0 {CANVAS_WIDTH} {CANVAS_HEIGHT}">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{CANVAS_WIDTH}" height="{CANVAS_HEIGHT}" fill="#ffffff"/>"##
    );
    let count = panels.len() as f64;
    for (i, panel) in panels.iter().enumerate() {
        let vp = Viewport {
            x0: CANVAS_WIDTH / count * i as f64,
            y0: 0.0,
            width: CANVAS_WIDTH / count,
            height: CANVAS_HEIGHT,
        };
        render_panel_into(&mut svg, panel, &vp)?;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Render one panel to an 800x600 SVG file.
pub fn render_plot(series: &[Series], x_label: &str, y_label: &str, out: &Path) -> Result<()> {
    let panel = Panel {
        title: String::new(),
        x_label: x_label.to_string(),
        y_label: y_label.to_string(),
        series: series.to_vec(),
    };
    let svg = render_document(&[&panel])?;
    crate::io::atomic_write(out, &svg)
}

/// Render two side-by-side panels onto one 800x600 canvas.
pub fn render_two_panel(left: &Panel, right: &Panel, out: &Path) -> Result<()> {
    let svg = render_document(&[left, right])?;
    crate::io::atomic_write(out, &svg)
}
