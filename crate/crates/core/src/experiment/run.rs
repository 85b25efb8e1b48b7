use std::time::Instant;

use num_bigint::BigUint;

use super::config::{DefectInit, ExperimentConfig};
use super::prng::random_configuration;
use crate::defect::{propagate_trajectory, Backend, DefectVector, LogCount, Magnitude};
use crate::eca::RuleTable;
use crate::error::Result;
use crate::lyapunov::{
    front_geometry, max_lyapunov_bound_series, mle_total_at, normalize_entries, profile_from_defects, FrontGeometry,
    LyapunovProfile,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Totals {
    /// `ln eps_0`.
    pub initial_ln: f64,
    /// `ln eps_T`, `-inf` once every defect has died.
    pub final_ln: f64,
    /// `(1/T) ln(eps_T / eps_0)`.
    pub mle_total: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeatmapRow {
    pub t: u64,
    /// Normalized by the bound at `t`, full lattice.
    pub normalized: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Heatmap {
    pub stride: u64,
    pub origin: usize,
    pub rows: Vec<HeatmapRow>,
}

impl Heatmap {
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, |r| r.normalized.len())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub config: ExperimentConfig,
    pub profile: LyapunovProfile,
    pub totals: Totals,
    pub geometry: Option<FrontGeometry>,
    pub heatmap: Option<Heatmap>,
    pub warnings: Vec<String>,
    pub runtime_ms: u64,
}

impl RunResult {
    pub fn mle(&self) -> f64 {
        crate::lyapunov::mle(&self.profile)
    }
}

/// Runs one experiment: random reference configuration, initial defects,
/// propagation, then profile, geometry and totals.
pub fn run_single(config: &ExperimentConfig) -> Result<RunResult> {
    config.validate()?;
    let started = Instant::now();
    let mut result = match config.backend {
        Backend::Exact => run_with::<BigUint>(config)?,
        Backend::LogDomain => run_with::<LogCount>(config)?,
    };
    result.runtime_ms = started.elapsed().as_millis() as u64;
    Ok(result)
}

fn run_with<M: Magnitude>(config: &ExperimentConfig) -> Result<RunResult> {
    let rule = RuleTable::from_wolfram(config.rule);
    let reference = random_configuration(config.width, config.seed, config.boundary)?;
    let defects0: DefectVector<M> = match config.init {
        DefectInit::SingleDefect { position } => DefectVector::single(config.width, position)?,
        DefectInit::DefectZone { lo, hi } => DefectVector::zone(config.width, lo, hi)?,
    };
    let initial_total = defects0.total();

    let stride = config.heatmap_stride;
    let bounds = if stride > 0 {
        max_lyapunov_bound_series(config.steps)
    } else {
        Vec::new()
    };
    let mut rows = Vec::new();
    let defects = propagate_trajectory(&rule, &reference, defects0, config.steps, |t, _, eps| {
        if stride > 0 && t % stride == 0 {
            let raw: Vec<f64> = eps.counts().iter().map(|m| m.ln() / t as f64).collect();
            rows.push(HeatmapRow {
                t,
                normalized: normalize_entries(&raw, bounds[t as usize - 1]),
            });
        }
    })?;

    let profile = profile_from_defects(&defects, config.origin())?;
    let final_total = defects.total();
    let totals = Totals {
        initial_ln: initial_total.ln(),
        final_ln: final_total.ln(),
        mle_total: mle_total_at(&final_total, &initial_total, config.steps),
    };
    let geometry = front_geometry(&profile).ok();
    let heatmap = (stride > 0).then(|| Heatmap {
        stride,
        origin: config.origin(),
        rows,
    });
    Ok(RunResult {
        config: config.clone(),
        profile,
        totals,
        geometry,
        heatmap,
        warnings: config.warnings(),
        runtime_ms: 0,
    })
}
