use std::fmt::Write as _;

use super::escape;
use crate::experiment::RunResult;

#[derive(Clone, Debug, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Offsets shown on the x-axis; defaults to `[-T, T]`.
    pub x_range: Option<(i64, i64)>,
    pub y_range: (f64, f64),
    pub width: u32,
    pub height: u32,
    /// Shade the baseline under runs of `-inf` cells.
    pub mark_gaps: bool,
}

impl Default for PlotSpec {
    fn default() -> Self {
        Self {
            title: String::new(),
            x_label: "cell offset i".into(),
            y_label: "normalized λ_T^i".into(),
            x_range: None,
            y_range: (0.0, 1.0),
            width: 720,
            height: 400,
            mark_gaps: true,
        }
    }
}

impl PlotSpec {
    pub fn for_result(result: &RunResult) -> Self {
        Self {
            title: format!(
                "Rule {}: normalized Lyapunov profile, T = {}, {} cells",
                result.config.rule, result.profile.steps, result.config.width
            ),
            ..Self::default()
        }
    }
}

const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 48.0;

/// SVG line plot of the normalized profile. Finite cells are joined into
/// polylines; `-inf` cells break the line.
pub fn render_profile(result: &RunResult, spec: &PlotSpec) -> Vec<u8> {
    let p = &result.profile;
    let t = p.steps as i64;
    let (x0, x1) = spec.x_range.unwrap_or((-t, t));
    let (x0, x1) = if x1 > x0 { (x0, x1) } else { (x0 - 1, x0 + 1) };
    let (y0, y1) = if spec.y_range.1 > spec.y_range.0 {
        spec.y_range
    } else {
        (0.0, 1.0)
    };
    let (w, h) = (f64::from(spec.width), f64::from(spec.height));
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: i64| MARGIN_LEFT + (x - x0) as f64 / (x1 - x0) as f64 * plot_w;
    let py = |y: f64| MARGIN_TOP + (1.0 - (y.clamp(y0, y1) - y0) / (y1 - y0)) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="22" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        w / 2.0,
        escape(&spec.title)
    );

    // Axes and ticks.
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN_LEFT:.1}" y="{MARGIN_TOP:.1}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="black"/>"#
    );
    for k in 0..=4 {
        let y = y0 + (y1 - y0) * f64::from(k) / 4.0;
        let yy = py(y);
        let _ = writeln!(
            s,
            r#"<line x1="{:.1}" y1="{yy:.1}" x2="{MARGIN_LEFT:.1}" y2="{yy:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{y:.2}</text>"#,
            MARGIN_LEFT - 5.0,
            MARGIN_LEFT - 8.0,
            yy + 4.0
        );
    }
    for k in 0..=4 {
        let x = x0 + (x1 - x0) * k / 4;
        let xx = px(x);
        let base = MARGIN_TOP + plot_h;
        let _ = writeln!(
            s,
            r#"<line x1="{xx:.1}" y1="{base:.1}" x2="{xx:.1}" y2="{:.1}" stroke="black"/><text x="{xx:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{x}</text>"#,
            base + 5.0,
            base + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        h - 10.0,
        escape(&spec.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(&spec.y_label)
    );

    // Split visible cells into finite runs and -inf gaps.
    let mut runs: Vec<Vec<(i64, f64)>> = Vec::new();
    let mut gaps: Vec<(i64, i64)> = Vec::new();
    let mut current: Vec<(i64, f64)> = Vec::new();
    let mut gap_start: Option<i64> = None;
    for (i, &v) in p.normalized.iter().enumerate() {
        let x = p.offset(i);
        if x < x0 || x > x1 {
            continue;
        }
        if v.is_finite() {
            if let Some(g) = gap_start.take() {
                gaps.push((g, x - 1));
            }
            current.push((x, v));
        } else {
            if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
            gap_start.get_or_insert(x);
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    if let Some(g) = gap_start {
        gaps.push((g, x1));
    }

    if runs.is_empty() {
        let _ = writeln!(
            s,
            r##"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="16" text-anchor="middle" fill="#a00">empty profile: λ = -∞ everywhere</text>"##,
            MARGIN_LEFT + plot_w / 2.0,
            MARGIN_TOP + plot_h / 2.0
        );
    } else {
        if spec.mark_gaps {
            let base = MARGIN_TOP + plot_h;
            let step = plot_w / (x1 - x0) as f64;
            for (a, b) in &gaps {
                let xa = px(*a) - step / 2.0;
                let width = (px(*b) - px(*a) + step).max(0.5);
                let _ = writeln!(
                    s,
                    r##"<rect x="{:.2}" y="{:.1}" width="{width:.2}" height="4" fill="#bbbbbb"/>"##,
                    xa.max(MARGIN_LEFT),
                    base - 4.0
                );
            }
        }
        for run in &runs {
            if run.len() == 1 {
                let (x, y) = run[0];
                let _ = writeln!(
                    s,
                    r##"<circle cx="{:.2}" cy="{:.2}" r="1.5" fill="#1f4e9c"/>"##,
                    px(x),
                    py(y)
                );
                continue;
            }
            s.push_str(r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1.2" points=""##);
            for (k, &(x, y)) in run.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{:.2},{:.2}", px(x), py(y));
            }
            s.push_str("\"/>\n");
        }
    }
    s.push_str("</svg>\n");
    s.into_bytes()
}
