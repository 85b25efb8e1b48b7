use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::experiment::RunResult;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ImageFormat {
    Svg,
    #[default]
    Pgm,
}

impl std::str::FromStr for ImageFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svg" => Ok(Self::Svg),
            "pgm" => Ok(Self::Pgm),
            other => Err(Error::InvalidConfig(format!("unknown image format '{other}'"))),
        }
    }
}

pub type Rgb = (u8, u8, u8);

/// Piecewise-linear colour ramp over [0, 1]. Every channel is
/// non-decreasing along the stops.
#[derive(Clone, Debug, PartialEq)]
pub struct ColorRamp {
    stops: Vec<(f64, Rgb)>,
}

impl Default for ColorRamp {
    fn default() -> Self {
        Self {
            stops: vec![
                (0.0, (20, 0, 20)),
                (0.35, (180, 30, 30)),
                (0.7, (250, 160, 40)),
                (1.0, (255, 255, 210)),
            ],
        }
    }
}

impl ColorRamp {
    pub fn color(&self, v: f64) -> Rgb {
        let v = v.clamp(0.0, 1.0);
        let k = self.stops.iter().rposition(|(x, _)| *x <= v).unwrap_or(0);
        if k + 1 >= self.stops.len() {
            return self.stops[k].1;
        }
        let (xa, a) = self.stops[k];
        let (xb, b) = self.stops[k + 1];
        let f = (v - xa) / (xb - xa);
        let mix = |p: u8, q: u8| (f64::from(p) + f * (f64::from(q) - f64::from(p))).round() as u8;
        (mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeatmapSpec {
    pub format: ImageFormat,
    pub ramp: ColorRamp,
    /// Colour of cells no defect has reached.
    pub neg_inf_color: Rgb,
    /// SVG pixel size.
    pub cell_size: u32,
}

impl Default for HeatmapSpec {
    fn default() -> Self {
        Self {
            format: ImageFormat::Pgm,
            ramp: ColorRamp::default(),
            neg_inf_color: (255, 255, 255),
            cell_size: 1,
        }
    }
}

impl HeatmapSpec {
    pub fn svg() -> Self {
        Self {
            format: ImageFormat::Svg,
            ..Self::default()
        }
    }
}

/// Grey level for one heatmap cell: 0 for `-inf`, otherwise
/// `1 + round(254 * clamp(v, 0, 1))`.
pub fn pgm_level(v: f64) -> u8 {
    if v == f64::NEG_INFINITY || v.is_nan() {
        0
    } else {
        1 + (254.0 * v.clamp(0.0, 1.0)).round() as u8
    }
}

pub fn render_heatmap(result: &RunResult, spec: &HeatmapSpec) -> Result<Vec<u8>> {
    let heatmap = result.heatmap.as_ref().ok_or(Error::MissingHeatmap)?;
    let width = heatmap.width();
    let height = heatmap.rows.len();
    let levels = heatmap
        .rows
        .iter()
        .map(|row| row.normalized.iter().map(|&v| pgm_level(v)));
    match spec.format {
        ImageFormat::Pgm => {
            let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
            out.reserve(width * height);
            for row in levels {
                out.extend(row);
            }
            Ok(out)
        }
        ImageFormat::Svg => Ok(heatmap_svg(levels, width, height, spec).into_bytes()),
    }
}

fn heatmap_svg<I, R>(rows: I, width: usize, height: usize, spec: &HeatmapSpec) -> String
where
    I: Iterator<Item = R>,
    R: Iterator<Item = u8>,
{
    let c = spec.cell_size.max(1) as usize;
    let palette: Vec<String> = (0..=255u8)
        .map(|level| {
            let (r, g, b) = if level == 0 {
                spec.neg_inf_color
            } else {
                spec.ramp.color(f64::from(level - 1) / 254.0)
            };
            format!("#{r:02x}{g:02x}{b:02x}")
        })
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" shape-rendering="crispEdges">"#,
        w = width * c,
        h = height * c
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="{}"/>"#,
        width * c,
        height * c,
        palette[0]
    );
    for (y, row) in rows.enumerate() {
        // Run-length encode each row; background runs are already painted.
        let mut run: Option<(usize, u8)> = None;
        let emit = |s: &mut String, start: usize, end: usize, level: u8| {
            if level != 0 {
                let _ = writeln!(
                    s,
                    r#"<rect x="{}" y="{}" width="{}" height="{c}" fill="{}"/>"#,
                    start * c,
                    y * c,
                    (end - start) * c,
                    palette[usize::from(level)]
                );
            }
        };
        let mut x = 0;
        for level in row {
            match run {
                Some((_, l)) if l == level => {}
                Some((start, l)) => {
                    emit(&mut s, start, x, l);
                    run = Some((x, level));
                }
                None => run = Some((x, level)),
            }
            x += 1;
        }
        if let Some((start, l)) = run {
            emit(&mut s, start, x, l);
        }
    }
    s.push_str("</svg>\n");
    s
}
