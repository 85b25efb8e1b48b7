//! Seeded experiment runs, rule-family batches with a reproducibility
//! manifest, seed aggregation and the result file formats.

mod aggregate;
mod config;
mod family;
mod io;
mod prng;
mod run;

pub use aggregate::{aggregate_over_seeds, AggregateProfile, CellStats};
pub use config::{DefectInit, ExperimentConfig, DEFAULT_STEPS, DEFAULT_WIDTH};
pub use family::{
    family_member, run_family, FamilyOptions, FamilyOutcome, FamilyRun, Manifest, ManifestEntry, RuleSelection,
    RunStatus, SoftwareInfo, JOURNAL_FILE, MANIFEST_FILE,
};
pub use io::{
    config_digest, format_value, heatmap_csv, profile_csv, result_json, sha256_hex, write_atomic, RunDocument,
    SparseProfile, TotalsDocument,
};
pub use prng::{random_configuration, SplitMix64};
pub use run::{run_single, Heatmap, HeatmapRow, RunResult, Totals};
