use super::magnitude::Magnitude;
use crate::error::{Error, Result};

/// Per-cell defect counts after `time` steps.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectVector<M> {
    counts: Vec<M>,
    time: u64,
}

impl<M: Magnitude> DefectVector<M> {
    pub fn zeros(width: usize) -> Self {
        Self {
            counts: vec![M::zero(); width],
            time: 0,
        }
    }

    pub fn from_counts(counts: Vec<M>, time: u64) -> Self {
        Self { counts, time }
    }

    pub fn single(width: usize, position: usize) -> Result<Self> {
        if position >= width {
            return Err(Error::PositionOutOfRange { index: position, width });
        }
        let mut v = Self::zeros(width);
        v.counts[position] = M::one();
        Ok(v)
    }

    pub fn zone(width: usize, lo: usize, hi: usize) -> Result<Self> {
        if lo > hi || hi >= width {
            return Err(Error::InvalidInterval { lo, hi, width });
        }
        let mut v = Self::zeros(width);
        v.counts[lo..=hi].fill(M::one());
        Ok(v)
    }

    pub fn width(&self) -> usize {
        self.counts.len()
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn counts(&self) -> &[M] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<M> {
        self.counts
    }

    pub fn get(&self, i: usize) -> &M {
        &self.counts[i]
    }

    /// Inclusive index range holding every nonzero entry, if any.
    pub fn support(&self) -> Option<(usize, usize)> {
        let lo = self.counts.iter().position(|c| !c.is_zero())?;
        let hi = self.counts.iter().rposition(|c| !c.is_zero())?;
        Some((lo, hi))
    }

    pub fn total(&self) -> M {
        M::sum(self.counts.iter().filter(|c| !c.is_zero()))
    }
}

pub fn init_single_defect<M: Magnitude>(width: usize, position: usize) -> Result<DefectVector<M>> {
    DefectVector::single(width, position)
}

pub fn init_defect_zone<M: Magnitude>(width: usize, lo: usize, hi: usize) -> Result<DefectVector<M>> {
    DefectVector::zone(width, lo, hi)
}

pub fn total_defects<M: Magnitude>(defects: &DefectVector<M>) -> M {
    defects.total()
}
