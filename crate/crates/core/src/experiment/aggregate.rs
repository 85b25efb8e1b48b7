use serde::Serialize;

use super::run::RunResult;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CellStats {
    pub mean: f64,
    /// Population standard deviation over the runs where the cell is finite.
    pub std_dev: f64,
}

/// Per-cell statistics of normalized exponents across seeds for one rule.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AggregateProfile {
    pub rule: u8,
    pub steps: u64,
    pub origin: usize,
    pub runs: usize,
    /// Runs in which each cell was finite.
    pub finite_counts: Vec<usize>,
    /// `None` for cells finite in no run.
    pub cells: Vec<Option<CellStats>>,
}

impl AggregateProfile {
    pub fn offset(&self, i: usize) -> i64 {
        i as i64 - self.origin as i64
    }
}

pub fn aggregate_over_seeds(results: &[RunResult]) -> Result<AggregateProfile> {
    let first = results
        .first()
        .ok_or_else(|| Error::MixedConfigs("no results to aggregate".into()))?;
    let key = |r: &RunResult| {
        (
            r.config.rule,
            r.profile.lattice_width(),
            r.profile.steps,
            r.profile.origin,
        )
    };
    if let Some(other) = results.iter().find(|r| key(r) != key(first)) {
        return Err(Error::MixedConfigs(format!(
            "(rule, width, steps, origin) {:?} differs from {:?}",
            key(other),
            key(first)
        )));
    }
    let width = first.profile.lattice_width();
    let mut finite_counts = vec![0usize; width];
    let mut cells = Vec::with_capacity(width);
    for (i, count) in finite_counts.iter_mut().enumerate() {
        let values: Vec<f64> = results
            .iter()
            .map(|r| r.profile.normalized[i])
            .filter(|v| v.is_finite())
            .collect();
        *count = values.len();
        cells.push((!values.is_empty()).then(|| {
            // Shift by the first value so identical inputs give an exact mean.
            let n = values.len() as f64;
            let shift = values[0];
            let mean = shift + values.iter().map(|v| v - shift).sum::<f64>() / n;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
            CellStats {
                mean,
                std_dev: var.sqrt(),
            }
        }));
    }
    Ok(AggregateProfile {
        rule: first.config.rule,
        steps: first.profile.steps,
        origin: first.profile.origin,
        runs: results.len(),
        finite_counts,
        cells,
    })
}
