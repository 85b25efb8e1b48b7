use serde::{Deserialize, Serialize};

use super::trinomial::central_trinomial;
use crate::defect::{ln_biguint, log_biguint, DefectVector, Magnitude};
use crate::error::{Error, Result};

/// Extreme offsets (relative to the perturbed cell) with a finite exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone {
    pub left: i64,
    pub right: i64,
}

/// Finite-time Lyapunov profile over the whole lattice.
///
/// `raw[i] = (1/T) ln eps_T[i]` (`-inf` where no defect reached cell `i`),
/// `normalized[i] = raw[i] / ((1/T) ln C2(T, 0))`.
#[derive(Clone, Debug, PartialEq)]
pub struct LyapunovProfile {
    pub steps: u64,
    pub origin: usize,
    pub raw: Vec<f64>,
    pub normalized: Vec<f64>,
    pub cone: Option<Cone>,
    /// Number of finite entries. Not `right - left + 1` in general: localized
    /// rules leave holes inside the cone.
    pub width: usize,
}

impl LyapunovProfile {
    pub fn lattice_width(&self) -> usize {
        self.raw.len()
    }

    pub fn offset(&self, i: usize) -> i64 {
        i as i64 - self.origin as i64
    }

    pub fn index_of(&self, offset: i64) -> Option<usize> {
        let i = self.origin as i64 + offset;
        (0..self.raw.len() as i64).contains(&i).then_some(i as usize)
    }

    /// `(offset, raw, normalized)` for every finite cell, left to right.
    pub fn finite_entries(&self) -> impl Iterator<Item = (i64, f64, f64)> + '_ {
        self.raw
            .iter()
            .zip(&self.normalized)
            .enumerate()
            .filter(|(_, (r, _))| r.is_finite())
            .map(|(i, (&r, &n))| (self.offset(i), r, n))
    }

    pub fn max_normalized(&self) -> f64 {
        self.normalized.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Divides finite entries by `bound`. When the bound is zero (`T = 1`) every
/// finite entry sits on the bound and maps to 1.
pub fn normalize_entries(raw: &[f64], bound: f64) -> Vec<f64> {
    raw.iter()
        .map(|&r| {
            if !r.is_finite() {
                f64::NEG_INFINITY
            } else if bound == 0.0 {
                1.0
            } else {
                r / bound
            }
        })
        .collect()
}

pub fn profile_from_defects<M: Magnitude>(defects: &DefectVector<M>, origin: usize) -> Result<LyapunovProfile> {
    build_profile(defects, origin, None)
}

/// Same as [`profile_from_defects`] but with every logarithm taken in `base`.
/// Normalized values do not depend on the base.
pub fn profile_with_log_base<M: Magnitude>(
    defects: &DefectVector<M>,
    origin: usize,
    base: f64,
) -> Result<LyapunovProfile> {
    build_profile(defects, origin, Some(base))
}

fn build_profile<M: Magnitude>(defects: &DefectVector<M>, origin: usize, base: Option<f64>) -> Result<LyapunovProfile> {
    let steps = defects.time();
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    let width = defects.width();
    if origin >= width {
        return Err(Error::PositionOutOfRange { index: origin, width });
    }
    let t = steps as f64;
    let log = |m: &M| match base {
        None => m.ln(),
        Some(b) => m.log(b),
    };
    let raw: Vec<f64> = defects.counts().iter().map(|m| log(m) / t).collect();
    let central = central_trinomial(steps);
    let bound = match base {
        None => ln_biguint(&central) / t,
        Some(b) => log_biguint(&central, b) / t,
    };
    let normalized = normalize_entries(&raw, bound);
    let cone = cone_of(&raw, origin);
    let count = raw.iter().filter(|r| r.is_finite()).count();
    Ok(LyapunovProfile {
        steps,
        origin,
        raw,
        normalized,
        cone,
        width: count,
    })
}

fn cone_of(raw: &[f64], origin: usize) -> Option<Cone> {
    let left = raw.iter().position(|r| r.is_finite())?;
    let right = raw.iter().rposition(|r| r.is_finite())?;
    Some(Cone {
        left: left as i64 - origin as i64,
        right: right as i64 - origin as i64,
    })
}

/// Largest finite-time exponent of the profile; `-inf` for an empty cone.
pub fn mle(profile: &LyapunovProfile) -> f64 {
    profile.raw.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// `(1/t) ln(eps_t / eps_0)` at the last entry of `history`, where
/// `history[k]` is the total defect count after step `k + 1`.
pub fn mle_total<M: Magnitude>(history: &[M], initial: &M) -> f64 {
    match history.last() {
        Some(last) => mle_total_at(last, initial, history.len() as u64),
        None => f64::NAN,
    }
}

pub fn mle_total_at<M: Magnitude>(total: &M, initial: &M, steps: u64) -> f64 {
    if total.is_zero() {
        return f64::NEG_INFINITY;
    }
    (total.ln() - initial.ln()) / steps as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontGeometry {
    /// Cells per step the left edge of the cone moved leftwards.
    pub left_speed: f64,
    /// Cells per step the right edge moved rightwards.
    pub right_speed: f64,
    pub width: usize,
    pub argmax_offset: i64,
}

pub fn front_geometry(profile: &LyapunovProfile) -> Result<FrontGeometry> {
    let cone = profile.cone.ok_or(Error::EmptyCone)?;
    let t = profile.steps as f64;
    let mut best: Option<(f64, i64)> = None;
    for (offset, raw, _) in profile.finite_entries() {
        let better = match best {
            None => true,
            Some((v, o)) => raw > v || (raw == v && (offset.abs(), offset) < (o.abs(), o)),
        };
        if better {
            best = Some((raw, offset));
        }
    }
    let (_, argmax_offset) = best.expect("nonempty cone has a finite entry");
    Ok(FrontGeometry {
        left_speed: -cone.left as f64 / t,
        right_speed: cone.right as f64 / t,
        width: profile.width,
        argmax_offset,
    })
}
