//! Minimal self-contained SVG 1.1 plots. Every mark carries its data point
//! in `data-x` / `data-y` attributes so the file can be checked against the
//! CSV it accompanies.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn header(out: &mut String, title: &str, x_label: &str, y_label: &str) {
    let _ = write!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">
<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>
<text x="{cx}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{title}</text>
<text x="{cx}" y="{xl}" text-anchor="middle" font-family="sans-serif" font-size="12">{x_label}</text>
<text x="16" y="{cy}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 16 {cy})">{y_label}</text>
<rect x="{MARGIN}" y="{MARGIN}" width="{pw}" height="{ph}" fill="none" stroke="black"/>
"#,
        cx = WIDTH / 2.0,
        cy = HEIGHT / 2.0,
        xl = HEIGHT - 12.0,
        pw = WIDTH - 2.0 * MARGIN,
        ph = HEIGHT - 2.0 * MARGIN,
        title = escape(title),
        x_label = escape(x_label),
        y_label = escape(y_label),
    );
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn axis_labels(out: &mut String, (x0, x1): (f64, f64), (y0, y1): (f64, f64), log_y: bool) {
    let fmt_y = |v: f64| {
        if log_y {
            format!("1e{v:.0}")
        } else {
            format!("{v:.3e}")
        }
    };
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{y}" font-family="sans-serif" font-size="10">{x0:.4}</text>
<text x="{xr}" y="{y}" text-anchor="end" font-family="sans-serif" font-size="10">{x1:.4}</text>
<text x="{xm}" y="{yb}" text-anchor="end" font-family="sans-serif" font-size="10">{ylo}</text>
<text x="{xm}" y="{yt}" text-anchor="end" font-family="sans-serif" font-size="10">{yhi}</text>"#,
        y = HEIGHT - MARGIN + 14.0,
        xr = WIDTH - MARGIN,
        xm = MARGIN - 4.0,
        yb = HEIGHT - MARGIN,
        yt = MARGIN + 10.0,
        ylo = fmt_y(y0),
        yhi = fmt_y(y1),
    );
}

/// Scatter plot of one or more series. With `log_y`, nonpositive values
/// are left out of the plot (they remain in the CSV).
pub fn scatter(
    title: &str,
    x_label: &str,
    y_label: &str,
    series: &[Series<'_>],
    log_y: bool,
) -> String {
    let tf = |y: f64| if log_y { y.log10() } else { y };
    let visible = |&(x, y): &(f64, f64)| x.is_finite() && y.is_finite() && (!log_y || y > 0.0);
    let xr = extent(
        series
            .iter()
            .flat_map(|s| s.points.iter().filter(|p| visible(p)).map(|p| p.0)),
    );
    let yr = extent(
        series
            .iter()
            .flat_map(|s| s.points.iter().filter(|p| visible(p)).map(|p| tf(p.1))),
    );
    let px = |x: f64| MARGIN + (x - xr.0) / (xr.1 - xr.0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (tf(y) - yr.0) / (yr.1 - yr.0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    header(&mut out, title, x_label, y_label);
    axis_labels(&mut out, xr, yr, log_y);
    for (k, s) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let _ = writeln!(
            out,
            r#"<g data-series="{name}" fill="{color}">"#,
            name = escape(s.name)
        );
        for p in s.points.iter().filter(|p| visible(p)) {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2.2" data-x="{:e}" data-y="{:e}"/>"#,
                px(p.0),
                py(p.1),
                p.0,
                p.1
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11">{name}</text></g>"#,
            x = WIDTH - MARGIN - 150.0,
            y = MARGIN + 16.0 + 14.0 * k as f64,
            name = escape(s.name)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Bar chart of integer-valued bins.
pub fn histogram(title: &str, x_label: &str, bins: &[(u32, u64)]) -> String {
    let x0 = bins.iter().map(|b| b.0).min().unwrap_or(0) as f64 - 0.5;
    let x1 = bins.iter().map(|b| b.0).max().unwrap_or(0) as f64 + 0.5;
    let y1 = bins.iter().map(|b| b.1).max().unwrap_or(1).max(1) as f64;
    let plot_w = WIDTH - 2.0 * MARGIN;
    let plot_h = HEIGHT - 2.0 * MARGIN;
    let bar_w = plot_w / (x1 - x0);

    let mut out = String::new();
    header(&mut out, title, x_label, "count");
    axis_labels(&mut out, (x0, x1), (0.0, y1), false);
    out.push_str("<g fill=\"#1f77b4\" stroke=\"white\">\n");
    for &(k, c) in bins {
        let h = c as f64 / y1 * plot_h;
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" data-x="{k}" data-y="{c}"/>"#,
            MARGIN + (k as f64 - 0.5 - x0) * bar_w,
            HEIGHT - MARGIN - h,
            bar_w,
            h
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
