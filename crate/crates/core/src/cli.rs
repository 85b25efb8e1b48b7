//! Command-line front end. [`run`] parses arguments, validates every flag
//! before doing any work, and returns the process exit code:
//! 0 success, 1 invalid flags, 2 runtime failure, 3 batch with failed runs.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::defect::{first_replica_mismatch, Backend};
use crate::eca::{Boundary, RuleEquivalenceClass, RuleTable};
use crate::experiment::{
    heatmap_csv, profile_csv, random_configuration, result_json, run_family, write_atomic, DefectInit,
    ExperimentConfig, FamilyOptions, RuleSelection, RunResult, DEFAULT_STEPS, DEFAULT_WIDTH, MANIFEST_FILE,
};
use crate::lyapunov::{central_trinomial, max_lyapunov_bound, FrontGeometry};
use crate::render::{render_heatmap, render_profile, HeatmapSpec, ImageFormat, PlotSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "lyaprof",
    version,
    about = "Finite-time Lyapunov profiles of elementary cellular automata"
)]
struct Cli {
    /// Print a machine-readable JSON summary on stdout.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Track defects from one seeded configuration and write the profile.
    Profile(ProfileArgs),
    /// Record the normalized profile over time and write it as an image.
    Heatmap(HeatmapArgs),
    /// Run a family of rules over several seeds and write a manifest.
    Batch(BatchArgs),
    /// Show the reflection/complement class of a rule.
    Equiv(EquivArgs),
    /// Compare the replica procedure with Jacobian propagation for all 256 rules.
    OracleCheck(OracleArgs),
    /// Print the central trinomial coefficient and the exponent bound.
    Bound(BoundArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Wolfram rule number (0..=255).
    #[arg(long, allow_hyphen_values = true)]
    rule: i64,
    #[arg(long, default_value_t = DEFAULT_WIDTH)]
    width: usize,
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// zero, one or periodic.
    #[arg(long, default_value = "zero")]
    boundary: Boundary,
    /// exact or log.
    #[arg(long, default_value = "log")]
    backend: Backend,
    /// Initial defect: a cell index `i` or an inclusive zone `lo..hi`. Defaults to the center cell.
    #[arg(long, value_parser = parse_defect)]
    defect: Option<DefectInit>,
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write an SVG plot of the profile.
    #[arg(long)]
    svg: bool,
    /// Include raw exponents in the JSON result.
    #[arg(long)]
    raw: bool,
}

#[derive(Args, Debug)]
struct HeatmapArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Record every `stride` steps.
    #[arg(long, default_value_t = 1)]
    stride: u64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// svg or pgm.
    #[arg(long, default_value = "pgm")]
    format: ImageFormat,
}

#[derive(Args, Debug)]
struct BatchArgs {
    /// `all88` or a comma-separated list of rule numbers.
    #[arg(long, default_value = "all88", allow_hyphen_values = true)]
    rules: String,
    /// Comma-separated seeds.
    #[arg(long, default_value = "1")]
    seeds: String,
    #[arg(long, default_value_t = DEFAULT_WIDTH)]
    width: usize,
    #[arg(long, default_value_t = DEFAULT_STEPS)]
    steps: u64,
    #[arg(long, default_value = "zero")]
    boundary: Boundary,
    #[arg(long, default_value = "log")]
    backend: Backend,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    raw: bool,
}

#[derive(Args, Debug)]
struct EquivArgs {
    #[arg(long, allow_hyphen_values = true)]
    rule: i64,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, default_value_t = 6)]
    steps: u64,
    #[arg(long, default_value_t = 31)]
    width: usize,
    /// Number of random configurations per rule (seeds 1..=k).
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    #[arg(long, default_value = "zero")]
    boundary: Boundary,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    steps: u64,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Self::Runtime(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let json = cli.json;
    let outcome = match cli.command {
        Command::Profile(a) => cmd_profile(a, json),
        Command::Heatmap(a) => cmd_heatmap(a, json),
        Command::Batch(a) => cmd_batch(a, json),
        Command::Equiv(a) => cmd_equiv(a, json),
        Command::OracleCheck(a) => cmd_oracle_check(a, json),
        Command::Bound(a) => cmd_bound(a, json),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            EXIT_RUNTIME
        }
    }
}

fn parse_defect(s: &str) -> std::result::Result<DefectInit, String> {
    let index = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid cell index '{t}'"))
    };
    match s.split_once("..") {
        Some((lo, hi)) => Ok(DefectInit::DefectZone {
            lo: index(lo)?,
            hi: index(hi)?,
        }),
        None => Ok(DefectInit::SingleDefect { position: index(s)? }),
    }
}

fn parse_rule(n: i64) -> std::result::Result<u8, Failure> {
    RuleTable::from_number(n)
        .map(|r| r.wolfram_number())
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> std::result::Result<Vec<T>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("invalid {what} '{t}'"))))
        .collect()
}

fn usage(e: crate::Error) -> Failure {
    Failure::Usage(e.to_string())
}

impl RunArgs {
    fn config(&self) -> std::result::Result<ExperimentConfig, Failure> {
        let rule = parse_rule(self.rule)?;
        let mut config = ExperimentConfig::new(rule, self.width, self.steps, self.seed)
            .with_boundary(self.boundary)
            .with_backend(self.backend);
        if let Some(init) = self.defect {
            config = config.with_init(init);
        }
        config.validate().map_err(usage)?;
        Ok(config)
    }
}

fn write_file(dir: &Path, name: &str, bytes: &[u8], written: &mut Vec<String>) -> crate::Result<()> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    write_atomic(&path, bytes)?;
    written.push(path.display().to_string());
    Ok(())
}

fn report_warnings(result: &RunResult) {
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
}

#[derive(Serialize)]
struct RunSummary<'a> {
    rule: u8,
    seed: u64,
    width: usize,
    steps: u64,
    mle: f64,
    max_normalized: f64,
    cone_width: Option<usize>,
    geometry: Option<&'a FrontGeometry>,
    warnings: &'a [String],
    runtime_ms: u64,
    files: &'a [String],
}

fn summarize(result: &RunResult, files: &[String], json: bool) {
    let summary = RunSummary {
        rule: result.config.rule,
        seed: result.config.seed,
        width: result.config.width,
        steps: result.config.steps,
        mle: result.mle(),
        max_normalized: result.profile.max_normalized(),
        cone_width: result.geometry.as_ref().map(|g| g.width),
        geometry: result.geometry.as_ref(),
        warnings: &result.warnings,
        runtime_ms: result.runtime_ms,
        files,
    };
    if json {
        println!("{}", serde_json::to_string(&summary).unwrap_or_default());
        return;
    }
    println!(
        "rule {} seed {}: mle {:.6}, max normalized {:.6}, cone width {}",
        summary.rule,
        summary.seed,
        summary.mle,
        summary.max_normalized,
        summary.cone_width.unwrap_or(0)
    );
    for f in files {
        println!("wrote {f}");
    }
}

fn cmd_profile(a: ProfileArgs, json: bool) -> Outcome {
    let config = a.run.config()?;
    let result = crate::experiment::run_single(&config)?;
    report_warnings(&result);
    let stem = config.file_stem();
    let mut files = Vec::new();
    write_file(
        &a.out,
        &format!("{stem}.json"),
        result_json(&result, a.raw)?.as_bytes(),
        &mut files,
    )?;
    write_file(
        &a.out,
        &format!("{stem}.csv"),
        profile_csv(&result).as_bytes(),
        &mut files,
    )?;
    if a.svg {
        let svg = render_profile(&result, &PlotSpec::for_result(&result));
        write_file(&a.out, &format!("{stem}.svg"), &svg, &mut files)?;
    }
    summarize(&result, &files, json);
    Ok(EXIT_OK)
}

fn cmd_heatmap(a: HeatmapArgs, json: bool) -> Outcome {
    if a.stride == 0 {
        return Err(Failure::Usage(
            "no heatmap requested (stride must be at least 1)".into(),
        ));
    }
    let config = a.run.config()?.with_heatmap(a.stride);
    let result = crate::experiment::run_single(&config)?;
    report_warnings(&result);
    let spec = HeatmapSpec {
        format: a.format,
        ..HeatmapSpec::default()
    };
    let image = render_heatmap(&result, &spec)?;
    let csv = heatmap_csv(&result)?;
    let stem = format!("{}_heatmap", config.file_stem());
    let ext = match a.format {
        ImageFormat::Pgm => "pgm",
        ImageFormat::Svg => "svg",
    };
    let mut files = Vec::new();
    write_file(&a.out, &format!("{stem}.csv"), csv.as_bytes(), &mut files)?;
    write_file(&a.out, &format!("{stem}.{ext}"), &image, &mut files)?;
    summarize(&result, &files, json);
    Ok(EXIT_OK)
}

fn cmd_batch(a: BatchArgs, json: bool) -> Outcome {
    let rules = if a.rules.trim() == "all88" {
        RuleSelection::All88
    } else {
        let numbers: Vec<i64> = parse_list(&a.rules, "rule number")?;
        RuleSelection::List(
            numbers
                .into_iter()
                .map(parse_rule)
                .collect::<std::result::Result<_, _>>()?,
        )
    };
    if rules.rules().is_empty() {
        return Err(Failure::Usage("rule list is empty".into()));
    }
    let seeds: Vec<u64> = parse_list(&a.seeds, "seed")?;
    if seeds.is_empty() {
        return Err(Failure::Usage("seed list is empty".into()));
    }
    let base = ExperimentConfig::new(0, a.width, a.steps, seeds[0])
        .with_boundary(a.boundary)
        .with_backend(a.backend);
    base.validate().map_err(usage)?;
    for w in base.warnings() {
        eprintln!("warning: {w}");
    }
    let options = FamilyOptions {
        out_dir: Some(a.out.clone()),
        jobs: a.jobs,
        include_raw: a.raw,
    };
    let start = Instant::now();
    let outcome = run_family(&base, &rules, &seeds, &options)?;
    let manifest = &outcome.manifest;
    let failures = manifest.failures();
    for entry in manifest.runs.iter().filter(|e| e.error.is_some()) {
        eprintln!(
            "run rule {} seed {} failed: {}",
            entry.rule,
            entry.seed,
            entry.error.as_deref().unwrap_or("")
        );
    }
    let manifest_path = a.out.join(MANIFEST_FILE).display().to_string();
    if json {
        let summary = json!({
            "runs": manifest.runs.len(),
            "failed": failures,
            "manifest": manifest_path,
            "runtime_ms": start.elapsed().as_millis() as u64,
        });
        println!("{summary}");
    } else {
        println!(
            "{} runs, {} failed; manifest {}",
            manifest.runs.len(),
            failures,
            manifest_path
        );
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_PARTIAL })
}

fn cmd_equiv(a: EquivArgs, json: bool) -> Outcome {
    let class = RuleEquivalenceClass::of(parse_rule(a.rule)?);
    if json {
        println!("{}", serde_json::to_string(&class).unwrap_or_default());
    } else {
        let members: Vec<String> = class.members.iter().map(u8::to_string).collect();
        println!("class: {{{}}}", members.join(", "));
        println!("minimal representative: {}", class.minimal_representative);
    }
    Ok(EXIT_OK)
}

fn cmd_bound(a: BoundArgs, json: bool) -> Outcome {
    let bound = max_lyapunov_bound(a.steps).map_err(usage)?;
    let coefficient = central_trinomial(a.steps);
    if json {
        let summary = json!({ "steps": a.steps, "central_coefficient": coefficient.to_string(), "bound": bound });
        println!("{summary}");
    } else {
        println!("central trinomial coefficient: {coefficient}");
        println!("max lyapunov bound: {bound:.6}");
    }
    Ok(EXIT_OK)
}

fn cmd_oracle_check(a: OracleArgs, json: bool) -> Outcome {
    if a.steps == 0 {
        return Err(Failure::Usage("step count must be at least 1".into()));
    }
    if a.seeds == 0 {
        return Err(Failure::Usage("need at least one seed".into()));
    }
    if a.width < 3 {
        return Err(usage(crate::Error::WidthTooSmall(a.width)));
    }
    let position = a.width / 2;
    let mut mismatches = Vec::new();
    for n in 0..=255u8 {
        let rule = RuleTable::from_wolfram(n);
        for seed in 1..=a.seeds {
            let initial = random_configuration(a.width, seed, a.boundary)?;
            if let Some(t) = first_replica_mismatch(&rule, &initial, position, a.steps)? {
                eprintln!("rule {n} seed {seed}: counts differ at t = {t}");
                mismatches.push(n);
                break;
            }
        }
    }
    let consistent = 256 - mismatches.len();
    if json {
        println!(
            "{}",
            json!({ "rules": 256, "consistent": consistent, "mismatched": mismatches })
        );
    } else {
        println!("{consistent}/256 rules consistent");
    }
    Ok(if mismatches.is_empty() { EXIT_OK } else { EXIT_RUNTIME })
}
