use serde::{Deserialize, Serialize};

use crate::defect::Backend;
use crate::eca::Boundary;
use crate::error::{Error, Result};

pub const DEFAULT_WIDTH: usize = 10_001;
pub const DEFAULT_STEPS: u64 = 5_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DefectInit {
    SingleDefect { position: usize },
    DefectZone { lo: usize, hi: usize },
}

impl DefectInit {
    pub fn centered(width: usize) -> Self {
        Self::SingleDefect { position: width / 2 }
    }

    /// Cell reported as offset 0. For a zone, its midpoint (rounded down).
    pub fn origin(&self) -> usize {
        match *self {
            Self::SingleDefect { position } => position,
            Self::DefectZone { lo, hi } => lo + (hi - lo) / 2,
        }
    }

    /// Number of initially defective cells.
    pub fn size(&self) -> u64 {
        match *self {
            Self::SingleDefect { .. } => 1,
            Self::DefectZone { lo, hi } => (hi - lo + 1) as u64,
        }
    }
}

/// Everything needed to reproduce one run.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub rule: u8,
    pub width: usize,
    pub steps: u64,
    pub boundary: Boundary,
    pub seed: u64,
    pub init: DefectInit,
    pub backend: Backend,
    /// Capture the normalized profile every `heatmap_stride` steps; 0 disables.
    pub heatmap_stride: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            rule: 110,
            width: DEFAULT_WIDTH,
            steps: DEFAULT_STEPS,
            boundary: Boundary::FixedZero,
            seed: 1,
            init: DefectInit::centered(DEFAULT_WIDTH),
            backend: Backend::LogDomain,
            heatmap_stride: 0,
        }
    }
}

impl ExperimentConfig {
    /// Desk-scale config with a centered single defect.
    pub fn new(rule: u8, width: usize, steps: u64, seed: u64) -> Self {
        Self {
            rule,
            width,
            steps,
            seed,
            init: DefectInit::centered(width),
            ..Self::default()
        }
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn with_heatmap(mut self, stride: u64) -> Self {
        self.heatmap_stride = stride;
        self
    }

    pub fn with_init(mut self, init: DefectInit) -> Self {
        self.init = init;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.width < 3 {
            return Err(Error::WidthTooSmall(self.width));
        }
        if self.steps == 0 {
            return Err(Error::ZeroSteps);
        }
        match self.init {
            DefectInit::SingleDefect { position } if position >= self.width => Err(Error::PositionOutOfRange {
                index: position,
                width: self.width,
            }),
            DefectInit::DefectZone { lo, hi } if lo > hi || hi >= self.width => Err(Error::InvalidInterval {
                lo,
                hi,
                width: self.width,
            }),
            _ => Ok(()),
        }
    }

    pub fn origin(&self) -> usize {
        self.init.origin()
    }

    /// Warnings about a cone that could reach the lattice edge.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        let reach = self.steps as usize;
        if self.width < 2 * reach + 1 {
            out.push(format!(
                "width {} < 2*steps+1 = {}: the defect cone can reach the boundary",
                self.width,
                2 * reach + 1
            ));
        } else {
            let (lo, hi) = match self.init {
                DefectInit::SingleDefect { position } => (position, position),
                DefectInit::DefectZone { lo, hi } => (lo, hi),
            };
            if lo < reach || hi + reach >= self.width {
                out.push(format!(
                    "initial defects at [{lo}, {hi}] lie within {reach} cells of the boundary"
                ));
            }
        }
        out
    }

    /// Short stable name used for result files.
    pub fn file_stem(&self) -> String {
        format!("rule{:03}_seed{}", self.rule, self.seed)
    }
}
