//! Subcommand bodies. Each returns the process exit code on success.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use hypcascade::analytics::{mean_cosh_cm, RateSpeed};
use hypcascade::cascade::{build_replication, sample_trajectories, ModelParams};
use rayon::prelude::*;
use hypcascade::verify::{run_suite, McEstimate, Suite, SuiteOptions};

use crate::archive::{RunArchive, RunSummary, FORMAT_VERSION};
use crate::curves::{analyze_table, splinter_table};
use crate::output::write_atomic;
use crate::report::VerifyReport;
use crate::svg::{render, Model};
use crate::CliError;

/// Archive timestamp: `SOURCE_DATE_EPOCH` if set, else 0, so that archives
/// are reproducible unless the caller asks for the wall clock.
pub fn archive_timestamp(stamp_now: bool) -> u64 {
    if stamp_now {
        return SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    }
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

pub fn simulate(params: &ModelParams, out: &Path, stamp_now: bool) -> Result<String, CliError> {
    params.validate()?;
    let runs: Vec<RunSummary> = (0..params.reps)
        .into_par_iter()
        .map(|rep| RunSummary::from_run(rep, &build_replication(params, rep)))
        .collect();
    let archive = RunArchive {
        format_version: FORMAT_VERSION,
        created: archive_timestamp(stamp_now),
        params: *params,
        runs,
    };
    archive.write(out)?;
    Ok(simulate_summary(&archive))
}

pub fn simulate_summary(a: &RunArchive) -> String {
    let mut hist: BTreeMap<usize, u64> = BTreeMap::new();
    for r in &a.runs {
        *hist.entry(r.events.len()).or_default() += 1;
    }
    let p = &a.params;
    let mut s = format!(
        "{} runs, c = {}, lambda = {}, t = {}, policy = {}\nevents  runs\n",
        a.runs.len(),
        p.c,
        p.lambda,
        p.horizon,
        p.direction_policy.short_name()
    );
    for (n, count) in &hist {
        s.push_str(&format!("{n:>6}  {count}\n"));
    }
    let samples: Vec<f64> = a.runs.iter().map(|r| r.cosh_eta_cm).collect();
    match McEstimate::from_samples(&samples) {
        Ok(e) => s.push_str(&format!("mean cosh eta_cm = {:.6} +- {:.6} (1 SE)\n", e.mean, e.std_error)),
        Err(_) => s.push_str(&format!("cosh eta_cm = {:.6}\n", samples[0])),
    }
    if let Ok(rs) = RateSpeed::new(p.c, p.lambda) {
        s.push_str(&format!("closed form      = {:.6}\n", mean_cosh_cm(&rs, p.horizon)));
    }
    s
}

pub fn analyze(c: f64, lambda: f64, t_max: f64, dt: f64, out: &Path) -> Result<(), CliError> {
    write_atomic(out, analyze_table(c, lambda, t_max, dt)?.to_csv().as_bytes())
}

pub fn splinter(k: usize, c: f64, lambda: f64, t_max: f64, dt: f64, out: &Path) -> Result<(), CliError> {
    write_atomic(out, splinter_table(k, c, lambda, t_max, dt)?.to_csv().as_bytes())
}

/// Runs the suite, writes the report, and returns (table, pass).
pub fn verify(suite: &str, options: SuiteOptions, out: &Path) -> Result<(String, bool), CliError> {
    let which: Suite = suite.parse().map_err(|_| {
        CliError::Usage(format!("unknown suite {suite:?}, expected one of {}", Suite::NAMES.join(", ")))
    })?;
    let checks = run_suite(which, &options)?;
    let report = VerifyReport::new(suite, options, checks);
    let mut json = serde_json::to_vec_pretty(&report).map_err(|e| CliError::Archive(e.to_string()))?;
    json.push(b'\n');
    write_atomic(out, &json)?;
    Ok((report.table(), report.pass))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelChoice {
    HalfPlane,
    Disk,
    Both,
}

/// Paths written for `out`: the path itself for one model, or
/// `<stem>-halfplane.svg` and `<stem>-disk.svg` for both.
pub fn plot_paths(out: &Path, choice: ModelChoice) -> Vec<(Model, PathBuf)> {
    let sibling = |m: Model| {
        let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "plot".into());
        out.with_file_name(format!("{stem}-{}.svg", m.name()))
    };
    match choice {
        ModelChoice::HalfPlane => vec![(Model::HalfPlane, out.to_path_buf())],
        ModelChoice::Disk => vec![(Model::Disk, out.to_path_buf())],
        ModelChoice::Both => vec![
            (Model::HalfPlane, sibling(Model::HalfPlane)),
            (Model::Disk, sibling(Model::Disk)),
        ],
    }
}

/// Plots replication `rep`. The cascade is rebuilt from its seed; when it
/// comes from an archive, the rebuilt event times must match the stored ones.
pub fn plot(
    params: &ModelParams,
    rep: u64,
    stored_events: Option<&[f64]>,
    choice: ModelChoice,
    labels: bool,
    out: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    params.validate()?;
    let run = build_replication(params, rep);
    if let Some(ev) = stored_events {
        if ev != run.events.times.as_slice() {
            return Err(CliError::Archive(format!(
                "replication {rep} does not rebuild to the archived event times"
            )));
        }
    }
    let trajs = sample_trajectories(&run)?;
    let mut written = Vec::new();
    for (model, path) in plot_paths(out, choice) {
        let caption = format!(
            "{} model, c = {}, lambda = {}, t = {}, seed = {}, replication = {}, policy = {}",
            model.name(),
            params.c,
            params.lambda,
            params.horizon,
            params.seed,
            rep,
            params.direction_policy.short_name()
        );
        write_atomic(&path, render(&trajs, model, labels, &caption).as_bytes())?;
        written.push(path);
    }
    Ok(written)
}
