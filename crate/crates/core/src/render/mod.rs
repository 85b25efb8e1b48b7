//! Static figures: SVG profile plots, and heatmaps as SVG or binary PGM.

mod heatmap;
mod profile;

pub use heatmap::{pgm_level, render_heatmap, ColorRamp, HeatmapSpec, ImageFormat, Rgb};
pub use profile::{render_profile, PlotSpec};

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
