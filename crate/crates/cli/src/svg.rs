//! Self-contained SVG scatter plots of bound vs dimension.
//!
//! No plotting dependency: a fixed 800x500 viewport, embedded axis ticks,
//! one marker style per series, and an optional log-scale y axis driven by
//! `log_bound` so that values below f64 underflow still plot. Output is a
//! pure function of the input — byte-identical across runs.

use crosspack_core::bounds::BoundReport;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 45.0;

const COLORS: [&str; 4] = ["#c0392b", "#27ae60", "#2980b9", "#8e44ad"];

pub struct Series {
    pub name: String,
    pub reports: Vec<BoundReport>,
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Tick positions: multiples of a 1/2/5 step covering [lo, hi].
fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = (hi - lo).max(1e-12);
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&s| span / s <= target as f64)
        .unwrap_or(10.0 * mag);
    let mut t = (lo / step).ceil() * step;
    let mut ticks = Vec::new();
    while t <= hi + 1e-9 * span {
        ticks.push(t);
        t += step;
    }
    ticks
}

fn marker(shape: usize, x: f64, y: f64, color: &str) -> String {
    match shape % 3 {
        0 => format!(
            r#"<circle cx="{}" cy="{}" r="3.5" fill="{color}"/>"#,
            fmt(x),
            fmt(y)
        ),
        1 => format!(
            r#"<path d="M {} {} l 4.5 4.5 l -4.5 4.5 l -4.5 -4.5 Z" fill="{color}"/>"#,
            fmt(x),
            fmt(y - 4.5)
        ),
        _ => format!(
            r#"<rect x="{}" y="{}" width="7" height="7" fill="{color}"/>"#,
            fmt(x - 3.5),
            fmt(y - 3.5)
        ),
    }
}

/// Renders the scatter. With `log_y`, the vertical coordinate is
/// log10(bound) taken from `log_bound`.
pub fn render(series: &[Series], log_y: bool) -> anyhow::Result<String> {
    let points: Vec<(usize, f64, f64)> = series
        .iter()
        .enumerate()
        .flat_map(|(si, s)| {
            s.reports.iter().map(move |r| {
                let y = if log_y {
                    r.log_bound.min(0.0) / std::f64::consts::LN_10
                } else {
                    r.bound
                };
                (si, r.n as f64, y)
            })
        })
        .collect();
    if points.is_empty() {
        anyhow::bail!("nothing to plot: no reports in input");
    }

    let (mut x_lo, mut x_hi) = points.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| {
        (lo.min(p.1), hi.max(p.1))
    });
    let (mut y_lo, mut y_hi) = points.iter().fold((f64::MAX, f64::MIN), |(lo, hi), p| {
        (lo.min(p.2), hi.max(p.2))
    });
    if x_lo == x_hi {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    if !log_y {
        y_lo = 0.0;
        y_hi = (y_hi * 1.05).max(1e-12);
    } else if y_lo == y_hi {
        y_lo -= 1.0;
        y_hi += 1.0;
    }

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_x = |v: f64| MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w;
    let to_y = |v: f64| MARGIN_TOP + (y_hi - v) / (y_hi - y_lo) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" "#,
            r#"viewBox="0 0 {w} {h}">"#,
            "\n"
        ),
        w = WIDTH,
        h = HEIGHT
    ));
    svg.push_str(&format!(
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>{}"#,
        '\n'
    ));

    // axes
    svg.push_str(&format!(
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>{}"#,
        fmt(MARGIN_LEFT),
        fmt(HEIGHT - MARGIN_BOTTOM),
        fmt(WIDTH - MARGIN_RIGHT),
        fmt(HEIGHT - MARGIN_BOTTOM),
        '\n'
    ));
    svg.push_str(&format!(
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>{}"#,
        fmt(MARGIN_LEFT),
        fmt(MARGIN_TOP),
        fmt(MARGIN_LEFT),
        fmt(HEIGHT - MARGIN_BOTTOM),
        '\n'
    ));

    for t in nice_ticks(x_lo, x_hi, 8) {
        let x = to_x(t);
        svg.push_str(&format!(
            r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>{3}"#,
            fmt(x),
            fmt(HEIGHT - MARGIN_BOTTOM),
            fmt(HEIGHT - MARGIN_BOTTOM + 5.0),
            '\n'
        ));
        svg.push_str(&format!(
            r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>{}"#,
            fmt(x),
            fmt(HEIGHT - MARGIN_BOTTOM + 18.0),
            t.round() as i64,
            '\n'
        ));
    }
    for t in nice_ticks(y_lo, y_hi, 8) {
        let y = to_y(t);
        let label = if log_y {
            format!("1e{}", t.round() as i64)
        } else {
            format!("{t:.2}")
        };
        svg.push_str(&format!(
            r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}" stroke="black"/>{3}"#,
            fmt(y),
            fmt(MARGIN_LEFT - 5.0),
            fmt(MARGIN_LEFT),
            '\n'
        ));
        svg.push_str(&format!(
            r#"<text x="{}" y="{}" font-size="12" text-anchor="end">{label}</text>{}"#,
            fmt(MARGIN_LEFT - 8.0),
            fmt(y + 4.0),
            '\n'
        ));
    }
    svg.push_str(&format!(
        r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">n</text>{}"#,
        fmt(MARGIN_LEFT + plot_w / 2.0),
        fmt(HEIGHT - 8.0),
        '\n'
    ));
    svg.push_str(&format!(
        concat!(
            r#"<text x="14" y="{}" font-size="13" text-anchor="middle" "#,
            r#"transform="rotate(-90 14 {})">upper bound</text>"#,
            "\n"
        ),
        fmt(MARGIN_TOP + plot_h / 2.0),
        fmt(MARGIN_TOP + plot_h / 2.0)
    ));

    // series: polyline through ascending n, then markers
    for (si, s) in series.iter().enumerate() {
        let color = COLORS[si % COLORS.len()];
        let mut pts: Vec<(f64, f64)> = points
            .iter()
            .filter(|p| p.0 == si)
            .map(|p| (p.1, p.2))
            .collect();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite n"));
        if pts.len() >= 2 {
            let path: Vec<String> = pts
                .iter()
                .map(|p| format!("{},{}", fmt(to_x(p.0)), fmt(to_y(p.1))))
                .collect();
            svg.push_str(&format!(
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="0.8"/>{}"#,
                path.join(" "),
                '\n'
            ));
        }
        for p in &pts {
            svg.push_str(&marker(si, to_x(p.0), to_y(p.1), color));
            svg.push('\n');
        }
        svg.push_str(&format!(
            r#"<text x="{}" y="{}" font-size="12" fill="{color}">{}</text>{}"#,
            fmt(WIDTH - MARGIN_RIGHT - 160.0),
            fmt(MARGIN_TOP + 16.0 * (si as f64 + 1.0)),
            s.name,
            '\n'
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
