//! `monolc`: multigraded Ext and local cohomology tables for monomial ideals,
//! and executable checks of the injectivity and vanishing statements.

mod input;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use monolc::corpus::CorpusSpec;
use monolc::engine::{
    ext_mixed_tables, ext_tables, ha_tables, hm_tables, tor_tables, CohomologyTable, StabilizationConfig,
};
use monolc::lab::{
    all_guaranteed_hold, check_depth_injectivity, check_ext_tor, check_injectivity_chain, check_obstruction,
    check_phi_ext_iso, check_purity_splitting, check_rspan_surjectivity, check_vanishing_criterion,
    check_vanishing_equivalence, PowerEndomorphism, Verdict,
};
use monolc::MonomialIdeal;

use input::{load_complex, load_ideal};
use sweep::{ModeArg, SweepCheck, SweepOptions};

/// Environment variable capping the worker pool.
const WORKERS_ENV: &str = "MONOLC_WORKERS";

#[derive(Parser)]
#[command(name = "monolc", version, about = "Exact multigraded Ext and local cohomology of monomial ideals")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

/// An ideal given as a JSON file, inline JSON, or generators like `x1*x2^2, x3`.
#[derive(Args)]
struct IdealArgs {
    #[arg(long)]
    ideal: String,
    /// Number of variables (inferred from generator notation when omitted).
    #[arg(long)]
    vars: Option<usize>,
    /// Field characteristic, 0 or a prime (overrides the file).
    #[arg(long = "char")]
    field_char: Option<u64>,
}

impl IdealArgs {
    fn load(&self) -> Result<MonomialIdeal> {
        load_ideal(&self.ideal, self.vars, self.field_char)
    }

    fn load_other(&self, arg: &str) -> Result<MonomialIdeal> {
        let a = self.load()?;
        load_ideal(arg, Some(a.num_vars()), Some(a.ring().field_char()))
    }
}

#[derive(Args)]
struct PowerArgs {
    /// Exponents of the power map `x_i ↦ x_i^{k_i}`; one value means all variables.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    k: Vec<u32>,
}

impl PowerArgs {
    fn build(&self, a: &MonomialIdeal) -> Result<PowerEndomorphism> {
        let k = match self.k.as_slice() {
            [k] => vec![*k; a.num_vars()],
            ks => ks.to_vec(),
        };
        Ok(PowerEndomorphism::new(a.ring(), k)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// `Ext^i(R/a, R)`, or `Ext^i(R/a, R/b)` with `--coeffs`.
    Ext {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long = "i")]
        index: Option<usize>,
        /// Replace `a` by its bracket power `a^[k]`.
        #[arg(long, value_delimiter = ',')]
        bracket: Option<Vec<u32>>,
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// Local cohomology `H^i_a(R)`.
    LcA {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long = "i")]
        index: Option<usize>,
    },
    /// Local cohomology `H^j_m(R/a)`.
    LcM {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long = "j")]
        index: Option<usize>,
    },
    /// `Tor_j(Ext^d(R/a, R), R/b)` for m-primary `a`.
    Tor {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        coeffs: String,
        #[arg(long = "j")]
        index: Option<usize>,
    },
    /// Run a check and print its verdicts.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Write a corpus of ideal files.
    Corpus {
        #[arg(long)]
        vars: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 2)]
        exponent_bound: u32,
        #[arg(long, default_value_t = 4)]
        max_generators: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "char", default_value_t = 0)]
        field_char: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run checks over a corpus directory and aggregate the verdicts.
    Sweep {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        checks: Vec<SweepCheck>,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        t_max: u32,
        #[arg(long)]
        window: Option<i64>,
        /// Include every verdict in the report.
        #[arg(long)]
        emit_verdicts: bool,
    },
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Injectivity along the chain of bracket powers `a^[k^t]`.
    Injectivity {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        power: PowerArgs,
        #[arg(long, default_value_t = 1)]
        t_max: u32,
        #[arg(long = "i")]
        index: Option<usize>,
    },
    /// Injectivity of `Ext^depth(R/a, R) → H^depth_a(R)`.
    Depth {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, default_value_t = 6)]
        max_doublings: u32,
    },
    /// Vanishing of `H^i_a(R)` against the power action, or against
    /// `H^{d-i}_m` for a simplicial complex.
    Vanishing {
        #[arg(long, conflicts_with = "complex", required_unless_present = "complex")]
        ideal: Option<String>,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long = "char")]
        field_char: Option<u64>,
        /// Simplicial complex as `{"num_vertices": n, "facets": [...]}`.
        #[arg(long)]
        complex: Option<String>,
        #[command(flatten)]
        power: PowerArgs,
    },
    /// `Ext^i(R/a, R/b)` against `Tor_{d-i}(Ext^d(R/a, R), R/b)`.
    ExtTor {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        coeffs: String,
    },
    /// Splitting of the induced power map on `R/a`.
    Purity {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        power: PowerArgs,
        #[arg(long)]
        window: Option<i64>,
    },
    /// `H^j_m(R/a)` is spanned by the image of the power action.
    Rspan {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        power: PowerArgs,
        #[arg(long = "j")]
        index: Option<usize>,
        #[arg(long)]
        window: Option<i64>,
    },
    /// Base change of the Taylor complex and of its Ext modules.
    PhiIso {
        #[command(flatten)]
        ideal: IdealArgs,
        #[command(flatten)]
        power: PowerArgs,
    },
    /// `a_t = (x_1^{2t}, ..., x_d^{2t})` against `R/(x_1)`.
    Obstruction {
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long = "char", default_value_t = 0)]
        field_char: u64,
    },
}

/// What a command produced, before formatting.
enum Output {
    Tables(Vec<CohomologyTable>),
    Verdicts(Vec<Verdict>),
    /// A JSON report, and whether it records a guaranteed failure.
    Report(Value, bool),
}

fn select(tables: Vec<CohomologyTable>, index: Option<usize>) -> Result<Vec<CohomologyTable>> {
    match index {
        None => Ok(tables),
        Some(i) if i < tables.len() => Ok(vec![tables.into_iter().nth(i).expect("index checked")]),
        Some(i) => bail!("index {i} out of range 0..={}", tables.len() - 1),
    }
}

fn run_check(cmd: &CheckCommand) -> Result<Vec<Verdict>> {
    Ok(match cmd {
        CheckCommand::Injectivity { ideal, power, t_max, index } => {
            let a = ideal.load()?;
            let phi = power.build(&a)?;
            let idx = index.map(|i| vec![i]);
            check_injectivity_chain(&a, &phi, *t_max, idx.as_deref())?
        }
        CheckCommand::Depth { ideal, window, max_doublings } => {
            let cfg = StabilizationConfig { window: *window, max_doublings: *max_doublings };
            vec![check_depth_injectivity(&ideal.load()?, &cfg)?]
        }
        CheckCommand::Vanishing { ideal, vars, field_char, complex, power } => match (ideal, complex) {
            (_, Some(c)) => check_vanishing_equivalence(&load_complex(c)?, field_char.unwrap_or(0))?,
            (Some(i), None) => {
                let a = load_ideal(i, *vars, *field_char)?;
                check_vanishing_criterion(&a, &power.build(&a)?)?
            }
            (None, None) => unreachable!("clap requires one of --ideal and --complex"),
        },
        CheckCommand::ExtTor { ideal, coeffs } => check_ext_tor(&ideal.load()?, &ideal.load_other(coeffs)?)?,
        CheckCommand::Purity { ideal, power, window } => {
            let a = ideal.load()?;
            vec![check_purity_splitting(&a, &power.build(&a)?, *window)?]
        }
        CheckCommand::Rspan { ideal, power, index, window } => {
            let a = ideal.load()?;
            let phi = power.build(&a)?;
            let js: Vec<usize> = index.map_or_else(|| (0..=a.num_vars()).collect(), |j| vec![j]);
            js.into_iter().map(|j| check_rspan_surjectivity(&a, &phi, j, *window)).collect::<monolc::Result<_>>()?
        }
        CheckCommand::PhiIso { ideal, power } => {
            let a = ideal.load()?;
            check_phi_ext_iso(&a, power.build(&a)?.exponents())?
        }
        CheckCommand::Obstruction { vars, t, field_char } => vec![check_obstruction(*vars, *t, *field_char)?],
    })
}

fn run(command: &Command) -> Result<Output> {
    Ok(match command {
        Command::Ext { ideal, index, bracket, coeffs } => {
            let mut a = ideal.load()?;
            if let Some(k) = bracket {
                let k = if k.len() == 1 { vec![k[0]; a.num_vars()] } else { k.clone() };
                a = a.bracket_power(&k)?;
            }
            let tables = match coeffs {
                Some(b) => ext_mixed_tables(&a, &ideal.load_other(b)?)?,
                None => ext_tables(&a)?,
            };
            Output::Tables(select(tables, *index)?)
        }
        Command::LcA { ideal, index } => Output::Tables(select(ha_tables(&ideal.load()?)?, *index)?),
        Command::LcM { ideal, index } => Output::Tables(select(hm_tables(&ideal.load()?)?, *index)?),
        Command::Tor { ideal, coeffs, index } => {
            Output::Tables(select(tor_tables(&ideal.load()?, &ideal.load_other(coeffs)?)?, *index)?)
        }
        Command::Check(cmd) => Output::Verdicts(run_check(cmd)?),
        Command::Corpus { vars, mode, exponent_bound, max_generators, count, seed, field_char, out } => {
            let spec = CorpusSpec {
                min_vars: if matches!(mode, ModeArg::AllSquarefree) { *vars } else { 1 },
                num_vars: *vars,
                mode: (*mode).into(),
                exponent_bound: *exponent_bound,
                max_generators: *max_generators,
                count: *count,
                seed: *seed,
                field_char: *field_char,
            };
            Output::Report(sweep::write_corpus(&spec, out)?, false)
        }
        Command::Sweep { corpus, checks, k, t_max, window, emit_verdicts } => {
            let mut checks = checks.clone();
            checks.sort();
            checks.dedup();
            let opts = SweepOptions { checks, k: *k, t_max: *t_max, window: *window, emit_verdicts: *emit_verdicts };
            let r = sweep::sweep(corpus, &opts)?;
            Output::Report(r.report, r.guaranteed_failure)
        }
    })
}

fn render_verdict_pretty(v: &Verdict) -> String {
    let result = serde_json::to_value(v.result).expect("outcome serializes");
    let claim = serde_json::to_value(v.claim).expect("claim serializes");
    let mut line = format!(
        "{:<15} {:<22} {}",
        result.as_str().unwrap_or_default(),
        claim.as_str().unwrap_or_default(),
        v.instance
    );
    if let Some(w) = &v.witness {
        line.push_str(&format!("\n    witness: {w}"));
    }
    if let Some(w) = &v.window {
        line.push_str(&format!("\n    window: {w}"));
    }
    for n in &v.notes {
        line.push_str(&format!("\n    note: {n}"));
    }
    line
}

fn emit(out: &mut impl Write, output: &Output, format: Format) -> Result<()> {
    match (output, format) {
        (Output::Tables(ts), Format::Json) => {
            let v: Vec<Value> = ts.iter().map(CohomologyTable::to_json_value).collect();
            let v = if v.len() == 1 { v.into_iter().next().expect("one table") } else { Value::Array(v) };
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
        }
        (Output::Tables(ts), Format::Pretty) => {
            for t in ts {
                writeln!(out, "{}", t.pretty())?;
            }
        }
        (Output::Verdicts(vs), Format::Json) => {
            for v in vs {
                writeln!(out, "{}", v.to_json())?;
            }
        }
        (Output::Verdicts(vs), Format::Pretty) => {
            for v in vs {
                writeln!(out, "{}", render_verdict_pretty(v))?;
            }
            let held = vs.iter().filter(|v| v.holds()).count();
            writeln!(out, "{held}/{} verdicts hold", vs.len())?;
        }
        (Output::Report(r, _), _) => writeln!(out, "{}", serde_json::to_string_pretty(r)?)?,
    }
    Ok(())
}

fn configure_workers() -> Result<()> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else { return Ok(()) };
    let n: usize = raw.trim().parse().with_context(|| format!("{WORKERS_ENV}={raw} is not a worker count"))?;
    if n == 0 {
        bail!("{WORKERS_ENV} must be at least 1");
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the worker pool")?;
    Ok(())
}

/// Exit status 1 when a theorem-guaranteed verdict failed, 0 otherwise.
fn success_code(output: &Output) -> u8 {
    match output {
        Output::Verdicts(vs) if !all_guaranteed_hold(vs) => 1,
        Output::Report(_, true) => 1,
        _ => 0,
    }
}

/// Exit status 1 for construction bugs surfaced as core errors, 2 for bad input.
fn error_code(err: &anyhow::Error) -> u8 {
    let internal = err.chain().any(|c| c.downcast_ref::<monolc::Error>().is_some_and(|e| !e.is_input_error()));
    if internal {
        1
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = configure_workers().and_then(|()| run(&cli.command));
    match result {
        Ok(output) => {
            if let Err(e) = emit(&mut out, &output, cli.format) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(success_code(&output))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use monolc::lab::{Claim, Outcome};
    use serde_json::json;

    #[test]
    fn exit_codes_follow_guaranteed_verdicts() {
        let v = |result, guaranteed| Verdict::new(Claim::ExtTor, json!({}), result).guaranteed(guaranteed);
        assert_eq!(success_code(&Output::Verdicts(vec![v(Outcome::Holds, true), v(Outcome::Fails, false)])), 0);
        assert_eq!(success_code(&Output::Verdicts(vec![v(Outcome::WindowLimited, true)])), 0);
        assert_eq!(success_code(&Output::Verdicts(vec![v(Outcome::Fails, true)])), 1);
        assert_eq!(success_code(&Output::Report(json!({}), true)), 1);
    }

    #[test]
    fn core_errors_split_into_input_and_internal() {
        let input = anyhow::Error::new(monolc::Error::NotPrime(4)).context("loading");
        assert_eq!(error_code(&input), 2);
        let bug = anyhow::Error::new(monolc::Error::NotAComplex { index: 0 });
        assert_eq!(error_code(&bug), 1);
        assert_eq!(error_code(&anyhow::anyhow!("bad flag")), 2);
    }
}
