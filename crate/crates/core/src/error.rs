use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rule number {0} is out of range (expected 0..=255)")]
    RuleOutOfRange(i64),

    #[error("lattice width {0} is too small (need at least 3 cells)")]
    WidthTooSmall(usize),

    #[error("cell index {index} is out of range for a lattice of {width} cells")]
    PositionOutOfRange { index: usize, width: usize },

    #[error("invalid defect interval [{lo}, {hi}] for a lattice of {width} cells")]
    InvalidInterval { lo: usize, hi: usize, width: usize },

    #[error("width mismatch: configuration has {config} cells, defect vector has {defects}")]
    WidthMismatch { config: usize, defects: usize },

    #[error("cells {target} and {cell} are not neighbours")]
    NotNeighbours { target: usize, cell: usize },

    #[error("invalid cell state {0} (expected 0 or 1)")]
    InvalidCell(u8),

    #[error("step count must be at least 1")]
    ZeroSteps,

    #[error("closed form is only evaluated for 1 <= T <= {max}, got {got}")]
    UnsupportedSteps { got: u64, max: u64 },

    #[error("defect cone is empty")]
    EmptyCone,

    #[error("no heatmap was captured for this run")]
    MissingHeatmap,

    #[error("cannot aggregate: {0}")]
    MixedConfigs(String),

    #[error("{0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
