use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::io::{config_digest, result_json, sha256_hex, write_atomic};
use super::run::{run_single, RunResult};
use crate::eca::minimal_rule_numbers;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleSelection {
    All88,
    List(Vec<u8>),
}

impl RuleSelection {
    pub fn rules(&self) -> Vec<u8> {
        match self {
            Self::All88 => minimal_rule_numbers(),
            Self::List(rules) => rules.clone(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct FamilyOptions {
    /// Directory for per-run files and the manifest; nothing is written when unset.
    pub out_dir: Option<PathBuf>,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
    pub include_raw: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoftwareInfo {
    pub name: String,
    pub version: String,
}

impl Default for SoftwareInfo {
    fn default() -> Self {
        Self {
            name: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub rule: u8,
    pub seed: u64,
    pub status: RunStatus,
    pub config: ExperimentConfig,
    pub config_digest: String,
    pub result_digest: Option<String>,
    pub file: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub software: SoftwareInfo,
    pub base_config: ExperimentConfig,
    pub rules: Vec<u8>,
    pub seeds: Vec<u64>,
    pub runs: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn failures(&self) -> usize {
        self.runs.iter().filter(|r| r.status == RunStatus::Failed).count()
    }
}

#[derive(Debug)]
pub struct FamilyRun {
    pub rule: u8,
    pub seed: u64,
    pub outcome: std::result::Result<RunResult, String>,
}

#[derive(Debug)]
pub struct FamilyOutcome {
    pub runs: Vec<FamilyRun>,
    pub manifest: Manifest,
}

impl FamilyOutcome {
    pub fn result(&self, rule: u8, seed: u64) -> Option<&RunResult> {
        self.runs
            .iter()
            .find(|r| r.rule == rule && r.seed == seed)
            .and_then(|r| r.outcome.as_ref().ok())
    }
}

pub const MANIFEST_FILE: &str = "manifest.json";
pub const JOURNAL_FILE: &str = "manifest.jsonl";

/// Config for one member of the family: the base with `rule` and `seed` swapped in.
pub fn family_member(base: &ExperimentConfig, rule: u8, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        rule,
        seed,
        ..base.clone()
    }
}

/// Runs every `(rule, seed)` pair. A failing run is recorded in the manifest
/// and does not stop the others. With an output directory, each result is
/// written as soon as it finishes and a line is appended to the journal.
pub fn run_family(
    base: &ExperimentConfig,
    rules: &RuleSelection,
    seeds: &[u64],
    options: &FamilyOptions,
) -> Result<FamilyOutcome> {
    let rules = rules.rules();
    if rules.is_empty() {
        return Err(Error::InvalidConfig("rule list is empty".into()));
    }
    if seeds.is_empty() {
        return Err(Error::InvalidConfig("seed list is empty".into()));
    }
    if let Some(dir) = &options.out_dir {
        fs::create_dir_all(dir)?;
        fs::write(dir.join(JOURNAL_FILE), b"")?;
    }

    let jobs: Vec<(u8, u64)> = rules.iter().flat_map(|&r| seeds.iter().map(move |&s| (r, s))).collect();
    let journal = Mutex::new(());
    let work = |&(rule, seed): &(u8, u64)| -> (FamilyRun, ManifestEntry) {
        let config = family_member(base, rule, seed);
        execute(config, options, &journal)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let outputs: Vec<(FamilyRun, ManifestEntry)> = pool.install(|| jobs.par_iter().map(work).collect());

    let (runs, entries): (Vec<_>, Vec<_>) = outputs.into_iter().unzip();
    let manifest = Manifest {
        software: SoftwareInfo::default(),
        base_config: base.clone(),
        rules,
        seeds: seeds.to_vec(),
        runs: entries,
    };
    if let Some(dir) = &options.out_dir {
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        write_atomic(&dir.join(MANIFEST_FILE), text.as_bytes())?;
    }
    Ok(FamilyOutcome { runs, manifest })
}

fn execute(config: ExperimentConfig, options: &FamilyOptions, journal: &Mutex<()>) -> (FamilyRun, ManifestEntry) {
    let (rule, seed) = (config.rule, config.seed);
    let mut entry = ManifestEntry {
        rule,
        seed,
        status: RunStatus::Ok,
        config_digest: config_digest(&config),
        config: config.clone(),
        result_digest: None,
        file: None,
        error: None,
    };
    let outcome = run_single(&config).and_then(|result| {
        let text = result_json(&result, options.include_raw)?;
        entry.result_digest = Some(sha256_hex(text.as_bytes()));
        if let Some(dir) = &options.out_dir {
            let name = format!("{}.json", config.file_stem());
            write_atomic(&dir.join(&name), text.as_bytes())?;
            entry.file = Some(name);
        }
        Ok(result)
    });
    let outcome = outcome.map_err(|e| {
        entry.status = RunStatus::Failed;
        entry.error = Some(e.to_string());
        entry.result_digest = None;
        e.to_string()
    });
    if let Some(dir) = &options.out_dir {
        let runtime = outcome.as_ref().map(|r| r.runtime_ms).ok();
        append_journal(dir, &entry, runtime, journal);
    }
    (FamilyRun { rule, seed, outcome }, entry)
}

fn append_journal(dir: &Path, entry: &ManifestEntry, runtime_ms: Option<u64>, lock: &Mutex<()>) {
    #[derive(Serialize)]
    struct Line<'a> {
        #[serde(flatten)]
        entry: &'a ManifestEntry,
        runtime_ms: Option<u64>,
    }
    let Ok(mut line) = serde_json::to_string(&Line { entry, runtime_ms }) else {
        return;
    };
    line.push('\n');
    let _guard = lock.lock().unwrap_or_else(|e| e.into_inner());
    // The journal is best effort; the final manifest is authoritative.
    if let Ok(mut f) = OpenOptions::new()
        .append(true)
        .create(true)
        .open(dir.join(JOURNAL_FILE))
    {
        let _ = f.write_all(line.as_bytes());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::DefectInit;

    #[test]
    fn empty_inputs_are_rejected() {
        let base = ExperimentConfig::new(0, 21, 5, 1);
        let opts = FamilyOptions::default();
        assert!(run_family(&base, &RuleSelection::List(vec![]), &[1], &opts).is_err());
        assert!(run_family(&base, &RuleSelection::List(vec![30]), &[], &opts).is_err());
    }

    #[test]
    fn all88_with_one_seed() {
        let base = ExperimentConfig::new(0, 41, 20, 1);
        let out = run_family(&base, &RuleSelection::All88, &[1], &FamilyOptions::default()).unwrap();
        assert_eq!(out.runs.len(), 88);
        assert_eq!(out.manifest.failures(), 0);
    }

    #[test]
    fn failures_are_isolated() {
        // Position 30 is outside a 21-cell lattice, so every run fails without aborting the batch.
        let base = ExperimentConfig::new(0, 21, 5, 1).with_init(DefectInit::SingleDefect { position: 30 });
        let out = run_family(
            &base,
            &RuleSelection::List(vec![30, 90]),
            &[1, 2],
            &FamilyOptions::default(),
        )
        .unwrap();
        assert_eq!(out.manifest.failures(), 4);
        assert!(out.runs.iter().all(|r| r.outcome.is_err()));
        assert!(out.manifest.runs[0].error.as_deref().unwrap().contains("out of range"));
    }

    #[test]
    fn output_is_independent_of_parallelism() {
        let base = ExperimentConfig::new(0, 81, 40, 1);
        let rules = RuleSelection::List(vec![30, 54, 110, 150]);
        let mut texts = Vec::new();
        for jobs in [1, 4] {
            let dir = tempfile::tempdir().unwrap();
            let opts = FamilyOptions {
                out_dir: Some(dir.path().to_path_buf()),
                jobs,
                include_raw: true,
            };
            let out = run_family(&base, &rules, &[3, 4], &opts).unwrap();
            assert_eq!(out.manifest.failures(), 0);
            let manifest = fs::read(dir.path().join(MANIFEST_FILE)).unwrap();
            let run = fs::read(dir.path().join("rule110_seed4.json")).unwrap();
            let journal = fs::read_to_string(dir.path().join(JOURNAL_FILE)).unwrap();
            assert_eq!(journal.lines().count(), 8);
            texts.push((manifest, run));
        }
        assert_eq!(texts[0], texts[1]);
    }
}
