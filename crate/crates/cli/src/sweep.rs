//! Corpus files on disk and aggregated sweeps over them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use monolc::corpus::{CorpusMode, CorpusSpec};
use monolc::engine::StabilizationConfig;
use monolc::lab::{
    check_depth_injectivity, check_ext_tor, check_injectivity_chain, check_phi_ext_iso, check_purity_splitting,
    check_rspan_surjectivity, check_vanishing_criterion, check_vanishing_equivalence, Outcome, PowerEndomorphism,
    Verdict,
};
use monolc::{MonomialIdeal, SimplicialComplex};

/// Writes one ideal file per corpus entry and returns the report.
pub fn write_corpus(spec: &CorpusSpec, out: &Path) -> Result<Value> {
    let entries = spec.generate()?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let width = entries.len().max(1).to_string().len().max(4);
    let mut files = Vec::with_capacity(entries.len());
    for (n, e) in entries.iter().enumerate() {
        let name = format!("ideal-{n:0width$}.json");
        let text = serde_json::to_string_pretty(&e.ideal.to_file())? + "\n";
        fs::write(out.join(&name), text).with_context(|| format!("writing {name}"))?;
        files.push(name);
    }
    Ok(json!({"spec": spec, "count": entries.len(), "files": files}))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepCheck {
    Injectivity,
    Depth,
    Vanishing,
    ExtTor,
    Purity,
    Rspan,
    PhiIso,
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub checks: Vec<SweepCheck>,
    pub k: u32,
    pub t_max: u32,
    pub window: Option<i64>,
    pub emit_verdicts: bool,
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading corpus directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|x| x == "json"));
    files.sort();
    if files.is_empty() {
        bail!("no .json ideal files in {}", dir.display());
    }
    Ok(files)
}

fn run_checks(a: &MonomialIdeal, opts: &SweepOptions) -> monolc::Result<Vec<Verdict>> {
    let d = a.num_vars();
    let phi = PowerEndomorphism::uniform(a.ring(), opts.k)?;
    let mut out = Vec::new();
    for check in &opts.checks {
        match check {
            SweepCheck::Injectivity => out.extend(check_injectivity_chain(a, &phi, opts.t_max, None)?),
            SweepCheck::Depth => out.push(check_depth_injectivity(a, &StabilizationConfig::default())?),
            SweepCheck::Vanishing => {
                out.extend(check_vanishing_criterion(a, &phi)?);
                if a.is_squarefree() && !a.is_unit() {
                    let delta = SimplicialComplex::complex_of(a)?;
                    out.extend(check_vanishing_equivalence(&delta, a.ring().field_char())?);
                }
            }
            SweepCheck::ExtTor => {
                if a.is_m_primary() {
                    out.extend(check_ext_tor(a, &MonomialIdeal::zero(a.ring()))?);
                    out.extend(check_ext_tor(a, &MonomialIdeal::maximal(a.ring()))?);
                }
            }
            SweepCheck::Purity => out.push(check_purity_splitting(a, &phi, opts.window)?),
            SweepCheck::Rspan => {
                for j in 0..=d {
                    out.push(check_rspan_surjectivity(a, &phi, j, opts.window)?);
                }
            }
            SweepCheck::PhiIso => out.extend(check_phi_ext_iso(a, phi.exponents())?),
        }
    }
    Ok(out)
}

fn outcome_key(o: Outcome) -> &'static str {
    match o {
        Outcome::Holds => "holds",
        Outcome::Fails => "fails",
        Outcome::WindowLimited => "window-limited",
        Outcome::NotApplicable => "not-applicable",
    }
}

/// Result of a sweep: the JSON report and whether a guaranteed verdict failed.
pub struct SweepReport {
    pub report: Value,
    pub guaranteed_failure: bool,
}

/// Runs the selected checks on every ideal file in `dir`, in file-name order.
pub fn sweep(dir: &Path, opts: &SweepOptions) -> Result<SweepReport> {
    let files = corpus_files(dir)?;
    let ideals: Vec<(String, MonomialIdeal)> = files
        .iter()
        .map(|p| {
            let name = p.file_name().expect("listed file").to_string_lossy().into_owned();
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let a = MonomialIdeal::from_json(&text).with_context(|| format!("in {}", p.display()))?;
            Ok((name, a))
        })
        .collect::<Result<_>>()?;
    let results: Vec<(String, Vec<Verdict>)> = ideals
        .par_iter()
        .map(|(name, a)| Ok((name.clone(), run_checks(a, opts).with_context(|| format!("checking {name}"))?)))
        .collect::<Result<_>>()?;

    let mut by_claim: BTreeMap<String, BTreeMap<&'static str, usize>> = BTreeMap::new();
    let mut totals: BTreeMap<&'static str, usize> =
        ["holds", "fails", "window-limited", "not-applicable"].map(|k| (k, 0)).into();
    let mut failures = Vec::new();
    let mut verdicts = Vec::new();
    for (name, vs) in &results {
        for v in vs {
            let claim = serde_json::to_value(v.claim)?.as_str().expect("claim is a string").to_string();
            *by_claim.entry(claim).or_default().entry(outcome_key(v.result)).or_default() += 1;
            *totals.get_mut(outcome_key(v.result)).expect("all outcomes listed") += 1;
            if v.is_guaranteed_failure() {
                failures.push(json!({"file": name, "verdict": v}));
            }
            if opts.emit_verdicts {
                verdicts.push(json!({"file": name, "verdict": v}));
            }
        }
    }
    let count: usize = totals.values().sum();
    let mut report = json!({
        "files": results.len(),
        "checks": opts.checks,
        "k": opts.k,
        "t_max": opts.t_max,
        "verdicts": count,
        "totals": totals,
        "by_claim": by_claim,
        "guaranteed_failures": failures,
    });
    if opts.emit_verdicts {
        report["all_verdicts"] = Value::Array(verdicts);
    }
    Ok(SweepReport { guaranteed_failure: !failures.is_empty(), report })
}

/// The corpus mode names accepted on the command line.
#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum ModeArg {
    AllSquarefree,
    RandomMonomial,
    RandomNonSquarefree,
    RandomPrimary,
}

impl From<ModeArg> for CorpusMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AllSquarefree => CorpusMode::AllSquarefree,
            ModeArg::RandomMonomial => CorpusMode::RandomMonomial,
            ModeArg::RandomNonSquarefree => CorpusMode::RandomNonSquarefree,
            ModeArg::RandomPrimary => CorpusMode::RandomPrimary,
        }
    }
}
