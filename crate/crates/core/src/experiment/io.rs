//! On-disk formats: one JSON document per run, a per-cell CSV, and a
//! heatmap CSV matrix. `-inf` is `null` in JSON and `-inf` in CSV.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::ExperimentConfig;
use super::run::RunResult;
use crate::error::{Error, Result};
use crate::lyapunov::{Cone, FrontGeometry};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseProfile {
    /// Normalized exponent per offset, finite cells only.
    pub normalized: BTreeMap<i64, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<BTreeMap<i64, f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TotalsDocument {
    pub initial_ln: Option<f64>,
    pub final_ln: Option<f64>,
    pub mle_total: Option<f64>,
}

/// JSON view of a [`RunResult`]. Excludes the runtime and the heatmap so
/// that identical configs give byte-identical documents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunDocument {
    pub config: ExperimentConfig,
    pub steps: u64,
    pub lattice_width: usize,
    pub origin: usize,
    pub mle: Option<f64>,
    pub max_normalized: Option<f64>,
    pub cone: Option<Cone>,
    pub cone_width: usize,
    pub geometry: Option<FrontGeometry>,
    pub totals: TotalsDocument,
    pub profile: SparseProfile,
    pub warnings: Vec<String>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl RunDocument {
    pub fn from_result(result: &RunResult, include_raw: bool) -> Self {
        let p = &result.profile;
        let normalized = p.finite_entries().map(|(o, _, n)| (o, n)).collect();
        let raw = include_raw.then(|| p.finite_entries().map(|(o, r, _)| (o, r)).collect());
        Self {
            config: result.config.clone(),
            steps: p.steps,
            lattice_width: p.lattice_width(),
            origin: p.origin,
            mle: finite(result.mle()),
            max_normalized: finite(p.max_normalized()),
            cone: p.cone,
            cone_width: p.width,
            geometry: result.geometry,
            totals: TotalsDocument {
                initial_ln: finite(result.totals.initial_ln),
                final_ln: finite(result.totals.final_ln),
                mle_total: finite(result.totals.mle_total),
            },
            profile: SparseProfile { normalized, raw },
            warnings: result.warnings.clone(),
        }
    }

    /// Dense normalized profile over the lattice, `-inf` where absent.
    pub fn dense_normalized(&self) -> Vec<f64> {
        let mut out = vec![f64::NEG_INFINITY; self.lattice_width];
        for (&offset, &v) in &self.profile.normalized {
            let i = self.origin as i64 + offset;
            if (0..self.lattice_width as i64).contains(&i) {
                out[i as usize] = v;
            }
        }
        out
    }
}

pub fn result_json(result: &RunResult, include_raw: bool) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&RunDocument::from_result(result, include_raw))?;
    s.push('\n');
    Ok(s)
}

pub fn format_value(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".to_owned()
    } else {
        format!("{x}")
    }
}

/// `offset,raw_lambda,normalized_lambda` for every lattice cell.
pub fn profile_csv(result: &RunResult) -> String {
    let p = &result.profile;
    let mut out = String::from("offset,raw_lambda,normalized_lambda\n");
    for (i, (&r, &n)) in p.raw.iter().zip(&p.normalized).enumerate() {
        let _ = writeln!(out, "{},{},{}", p.offset(i), format_value(r), format_value(n));
    }
    out
}

/// Matrix with one row per captured step. The header lists offsets.
pub fn heatmap_csv(result: &RunResult) -> Result<String> {
    let heatmap = result.heatmap.as_ref().ok_or(Error::MissingHeatmap)?;
    let origin = heatmap.origin as i64;
    let mut out = String::from("t");
    for i in 0..heatmap.width() as i64 {
        let _ = write!(out, ",{}", i - origin);
    }
    out.push('\n');
    for row in &heatmap.rows {
        out.push_str(&row.t.to_string());
        for &v in &row.normalized {
            out.push(',');
            out.push_str(&format_value(v));
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn config_digest(config: &ExperimentConfig) -> String {
    sha256_hex(serde_json::to_string(config).expect("config serializes").as_bytes())
}

/// Writes `contents` next to `path` and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let tmp: PathBuf = path.with_extension(format!(
        "{}.partial",
        path.extension().and_then(|e| e.to_str()).unwrap_or("out")
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
