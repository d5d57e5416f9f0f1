//! Hand-emitted SVG line plots: axes, tick labels, one or more
//! polylines. No plotting library, so the output format is stable and
//! trivially inspectable.

use std::fmt::Write;

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
}

pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Extra horizontal guide lines (e.g. tolerance levels).
    pub guides: Vec<(f64, String)>,
    pub log_y: bool,
}

const W: f64 = 760.0;
const H: f64 = 520.0;
const ML: f64 = 72.0;
const MR: f64 = 24.0;
const MT: f64 = 42.0;
const MB: f64 = 54.0;

const COLORS: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

pub fn color(i: usize) -> &'static str {
    COLORS[i % COLORS.len()]
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).abs().max(1e-300);
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = mag * if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    let mut t = (lo / step).ceil() * step;
    let mut ticks = Vec::new();
    while t <= hi + 1e-12 * span {
        ticks.push(t);
        t += step;
    }
    ticks
}

fn tick_label(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (1e-3..1e4).contains(&a) {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.').to_string();
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    } else {
        format!("{v:.1e}")
    }
}

impl Plot {
    pub fn render(&self) -> String {
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for s in &self.series {
            for (x, y) in &s.points {
                let y = if self.log_y {
                    y.abs().max(1e-300).log10()
                } else {
                    *y
                };
                if x.is_finite() && y.is_finite() {
                    pts.push((*x, y));
                }
            }
        }
        for (y, _) in &self.guides {
            let y = if self.log_y {
                y.abs().max(1e-300).log10()
            } else {
                *y
            };
            pts.push((f64::NAN, y));
        }
        let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (x, y) in &pts {
            if x.is_finite() {
                x_lo = x_lo.min(*x);
                x_hi = x_hi.max(*x);
            }
            y_lo = y_lo.min(*y);
            y_hi = y_hi.max(*y);
        }
        if !x_lo.is_finite() {
            x_lo = 0.0;
            x_hi = 1.0;
        }
        if !y_lo.is_finite() {
            y_lo = 0.0;
            y_hi = 1.0;
        }
        // degenerate spans (single point) get a symmetric pad
        if x_hi - x_lo < 1e-12 {
            x_lo -= 0.5;
            x_hi += 0.5;
        }
        if y_hi - y_lo < 1e-12 {
            y_lo -= 0.5;
            y_hi += 0.5;
        }
        let pad_x = 0.04 * (x_hi - x_lo);
        let pad_y = 0.06 * (y_hi - y_lo);
        x_lo -= pad_x;
        x_hi += pad_x;
        y_lo -= pad_y;
        y_hi += pad_y;

        let sx = |x: f64| ML + (x - x_lo) / (x_hi - x_lo) * (W - ML - MR);
        let sy = |y: f64| H - MB - (y - y_lo) / (y_hi - y_lo) * (H - MT - MB);
        let ty = |y: f64| {
            if self.log_y {
                y.abs().max(1e-300).log10()
            } else {
                y
            }
        };

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(
            out,
            r#"<rect width="{W}" height="{H}" fill="white" stroke="none"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="15">{}</text>"#,
            W / 2.0,
            xml_escape(&self.title)
        );
        // axes box
        let _ = writeln!(
            out,
            r##"<rect x="{ML}" y="{MT}" width="{}" height="{}" fill="none" stroke="#333" stroke-width="1"/>"##,
            W - ML - MR,
            H - MT - MB
        );
        // ticks
        for t in nice_ticks(x_lo, x_hi) {
            let x = sx(t);
            let _ = writeln!(
                out,
                r##"<line x1="{x:.1}" y1="{}" x2="{x:.1}" y2="{}" stroke="#333"/>"##,
                H - MB,
                H - MB + 5.0
            );
            let _ = writeln!(
                out,
                r#"<text x="{x:.1}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
                H - MB + 18.0,
                tick_label(t)
            );
        }
        for t in nice_ticks(y_lo, y_hi) {
            let y = sy(t);
            let _ = writeln!(
                out,
                r##"<line x1="{}" y1="{y:.1}" x2="{ML}" y2="{y:.1}" stroke="#333"/>"##,
                ML - 5.0
            );
            let label = if self.log_y {
                format!("1e{}", tick_label(t))
            } else {
                tick_label(t)
            };
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{:.1}" text-anchor="end" font-family="sans-serif" font-size="11">{}</text>"#,
                ML - 8.0,
                y + 4.0,
                label
            );
        }
        // axis labels
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13">{}</text>"#,
            ML + (W - ML - MR) / 2.0,
            H - 14.0,
            xml_escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="18" y="{}" text-anchor="middle" font-family="sans-serif" font-size="13" transform="rotate(-90 18 {})">{}</text>"#,
            MT + (H - MT - MB) / 2.0,
            MT + (H - MT - MB) / 2.0,
            xml_escape(&self.y_label)
        );
        // guide lines
        for (v, label) in &self.guides {
            let y = sy(ty(*v));
            if !(MT..=H - MB).contains(&y) {
                continue;
            }
            let _ = writeln!(
                out,
                r##"<line x1="{ML}" y1="{y:.1}" x2="{}" y2="{y:.1}" stroke="#888" stroke-dasharray="6,4"/>"##,
                W - MR
            );
            let _ = writeln!(
                out,
                r##"<text x="{}" y="{:.1}" text-anchor="end" font-family="sans-serif" font-size="11" fill="#666">{}</text>"##,
                W - MR - 4.0,
                y - 4.0,
                xml_escape(label)
            );
        }
        // series
        for (i, s) in self.series.iter().enumerate() {
            let finite: Vec<(f64, f64)> = s
                .points
                .iter()
                .map(|(x, y)| (sx(*x), sy(ty(*y))))
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .collect();
            if finite.len() == 1 {
                // a degenerate orbit is a single marker
                let (x, y) = finite[0];
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="{}"/>"#,
                    s.color
                );
            } else {
                let mut path = String::new();
                for (x, y) in &finite {
                    let _ = write!(path, "{x:.2},{y:.2} ");
                }
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1.4"/>"#,
                    path.trim_end(),
                    s.color
                );
            }
            let ly = MT + 16.0 + 16.0 * i as f64;
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{ly:.1}" x2="{}" y2="{ly:.1}" stroke="{}" stroke-width="2"/>"#,
                ML + 10.0,
                ML + 34.0,
                s.color
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{:.1}" font-family="sans-serif" font-size="11">{}</text>"#,
                ML + 40.0,
                ly + 4.0,
                xml_escape(&s.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Collapse a polyline to one marker point when all samples coincide
/// within `eps` (used for fixed-point orbits).
pub fn collapse_if_degenerate(points: &[(f64, f64)], eps: f64) -> Vec<(f64, f64)> {
    if points.is_empty() {
        return Vec::new();
    }
    let p0 = points[0];
    let degenerate = points
        .iter()
        .all(|p| (p.0 - p0.0).abs() < eps && (p.1 - p0.1).abs() < eps);
    if degenerate {
        vec![p0]
    } else {
        points.to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_polyline_and_marker() {
        let plot = Plot {
            title: "test".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![
                Series {
                    label: "curve".into(),
                    points: vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)],
                    color: color(0),
                },
                Series {
                    label: "point".into(),
                    points: vec![(1.0, 1.0)],
                    color: color(1),
                },
            ],
            guides: vec![(0.8, "tol".into())],
            log_y: false,
        };
        let svg = plot.render();
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("<circle"));
        assert!(svg.contains("</svg>"));
    }

    #[test]
    fn degenerate_collapse() {
        let pts = vec![(1.0, 2.0); 50];
        assert_eq!(collapse_if_degenerate(&pts, 1e-9).len(), 1);
        let pts = vec![(1.0, 2.0), (1.5, 2.0)];
        assert_eq!(collapse_if_degenerate(&pts, 1e-9).len(), 2);
    }
}
