//! Command-line front end. Every command writes one JSON document to stdout
//! (or `--output`) and exits with
//!
//! * 0: the property holds / the construction was produced,
//! * 1: the property fails (the document carries the certificate),
//! * 2: usage or parse error,
//! * 3: a feasibility cap was hit.
//!
//! `POSAT_EXHAUSTIVE_CAP` overrides the ground-size cap for exhaustive
//! checks and `POSAT_ORACLE_CAP` the cap for exact search. Both are read once.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constructions::{glued_special_family_with, klayer_family, reduce_unit_layers};
use crate::constructions::special::special_family_checked;
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::io::{
    embedding_lists, read_family, read_json, read_poset, to_json, FamilyDocument, ScheduleDocument,
};
use crate::oracle::{min_percolating, min_saturated, SearchLimits};
use crate::percolation::{percolating_family_with, percolation_number, verify_schedule, ScheduleFault};
use crate::saturation::{
    find_copy, greedy_complete, is_saturated_with, CheckConfig, Sampling, SaturationVerdict, ScanOrder,
};

pub const CAP_ENV: &str = "POSAT_EXHAUSTIVE_CAP";
pub const ORACLE_CAP_ENV: &str = "POSAT_ORACLE_CAP";

#[derive(Parser, Debug)]
#[command(name = "posat", version, about = "Induced poset saturation and percolation in the hypercube")]
struct Cli {
    /// Worker threads for parallel checks (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the document here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a family for freeness, saturation or ground-set separation.
    Check {
        #[arg(long, value_enum)]
        mode: CheckMode,
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long)]
        family: PathBuf,
        /// Test this many random missing sets instead of all of them.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        sample_seed: u64,
    },
    /// Build one of the explicit constructions.
    Construct {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Poset for `special`.
        #[arg(long)]
        poset: Option<PathBuf>,
        /// Lower poset for `glued`.
        #[arg(long)]
        bottom: Option<PathBuf>,
        /// Upper poset for `glued`.
        #[arg(long)]
        top: Option<PathBuf>,
        /// Layer sizes for `klayer`, bottom first.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long)]
        n: Option<u32>,
    },
    /// Greedily extend a free seed to a saturated family.
    Saturate {
        #[arg(long)]
        poset: PathBuf,
        /// Seed family; empty on `[n]` when absent.
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = OrderArg::Ascending)]
        order: OrderArg,
        /// Shuffle seed for `--order random`.
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Generate a percolation schedule, or verify one from a file.
    Percolate {
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long)]
        n: Option<u32>,
        /// Replay the generated schedule before writing it.
        #[arg(long)]
        verify: bool,
        /// Verify an existing schedule document instead of generating one.
        #[arg(long, conflicts_with_all = ["poset", "n"])]
        verify_file: Option<PathBuf>,
    },
    /// Exact saturation (`sat`) or percolation (`satp`) number by search.
    Oracle {
        #[arg(long, value_enum)]
        kind: OracleKind,
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long)]
        time_budget_ms: Option<u64>,
        #[arg(long)]
        symmetry: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckMode {
    Free,
    Saturated,
    Separates,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Special,
    Glued,
    Klayer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Ascending,
    Descending,
    BySize,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleKind {
    Sat,
    Satp,
}

fn env_cap(name: &str, cell: &'static OnceLock<Option<u32>>) -> Option<u32> {
    *cell.get_or_init(|| std::env::var(name).ok().and_then(|v| v.trim().parse().ok()))
}

fn check_config() -> CheckConfig {
    static CAP: OnceLock<Option<u32>> = OnceLock::new();
    env_cap(CAP_ENV, &CAP).map_or_else(CheckConfig::default, CheckConfig::with_cap)
}

fn oracle_cap() -> Option<u32> {
    static CAP: OnceLock<Option<u32>> = OnceLock::new();
    env_cap(ORACLE_CAP_ENV, &CAP)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } | Error::ScanCap(_) => 3,
        Error::NotFree(_) | Error::Certification(_) => 1,
        _ => 2,
    }
}

/// A document plus whether the property it reports holds.
struct Report {
    doc: Value,
    holds: bool,
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| Error::Parse(format!("missing required flag --{flag}")))
}

fn verdict_doc(mode: &str, family: &SetFamily, holds: bool, verdict: &str, certificate: Value) -> Value {
    json!({
        "mode": mode,
        "n": family.ground(),
        "family_size": family.len(),
        "holds": holds,
        "verdict": verdict,
        "certificate": certificate,
    })
}

fn cmd_check(mode: CheckMode, poset: Option<PathBuf>, family: PathBuf, sample: Option<Sampling>) -> Result<Report> {
    let family = read_family(&family)?;
    match mode {
        CheckMode::Separates => {
            let pair = family.separates();
            let cert = pair.map_or(Value::Null, |(a, b)| json!({ "pair": [a, b] }));
            let verdict = if pair.is_some() { "unseparated-pair" } else { "separates" };
            Ok(Report { doc: verdict_doc("separates", &family, pair.is_none(), verdict, cert), holds: pair.is_none() })
        }
        CheckMode::Free => {
            let poset = read_poset(&need(poset, "poset")?)?;
            let copy = find_copy(&family, &poset);
            let cert = copy.as_ref().map_or(Value::Null, |c| json!({ "copy": embedding_lists(c) }));
            let verdict = if copy.is_some() { "not-free" } else { "free" };
            Ok(Report { doc: verdict_doc("free", &family, copy.is_none(), verdict, cert), holds: copy.is_none() })
        }
        CheckMode::Saturated => {
            let poset = read_poset(&need(poset, "poset")?)?;
            let config = CheckConfig { sample, ..check_config() };
            let (holds, verdict, cert) = match is_saturated_with(&family, &poset, &config)? {
                SaturationVerdict::Saturated => (true, "saturated", Value::Null),
                SaturationVerdict::NotRefuted { sampled } => {
                    (true, "not-refuted", json!({ "sampled": sampled }))
                }
                SaturationVerdict::NotFree(c) => (false, "not-free", json!({ "copy": embedding_lists(&c) })),
                SaturationVerdict::Missing(s) => (false, "missing", json!({ "missing": s.elements() })),
            };
            Ok(Report { doc: verdict_doc("saturated", &family, holds, verdict, cert), holds })
        }
    }
}

fn cmd_construct(
    kind: Kind,
    poset: Option<PathBuf>,
    bottom: Option<PathBuf>,
    top: Option<PathBuf>,
    sizes: Vec<usize>,
    n: Option<u32>,
) -> Result<Report> {
    let config = check_config();
    let (family, report) = match kind {
        Kind::Special => {
            let poset = read_poset(&need(poset, "poset")?)?;
            special_family_checked(&poset, need(n, "n")?, &config)?
        }
        Kind::Glued => {
            let bottom = read_poset(&need(bottom, "bottom")?)?;
            let top = read_poset(&need(top, "top")?)?;
            let g = glued_special_family_with(&bottom, &top, need(n, "n")?, &config)?;
            (g.family, g.report)
        }
        Kind::Klayer => {
            reduce_unit_layers(&sizes)?;
            klayer_family(&sizes, need(n, "n")?)?
        }
    };
    let doc = FamilyDocument::from_family(&family).with_metadata(&report);
    Ok(Report { doc: serde_json::to_value(doc)?, holds: true })
}

fn cmd_saturate(poset: PathBuf, seed: Option<PathBuf>, n: Option<u32>, order: ScanOrder) -> Result<Report> {
    let poset = read_poset(&poset)?;
    let seed = match (seed, n) {
        (Some(path), _) => read_family(&path)?,
        (None, Some(n)) => SetFamily::empty(n),
        (None, None) => return Err(Error::Parse("give --seed or --n".into())),
    };
    let config = check_config();
    let family = greedy_complete(&seed, &poset, order, &config)?;
    let status = match is_saturated_with(&family, &poset, &config)? {
        SaturationVerdict::Saturated => "saturated",
        _ => "not-saturated",
    };
    let meta = json!({
        "scan": order,
        "seed_size": seed.len(),
        "size": family.len(),
        "status": status,
    });
    let doc = FamilyDocument::from_family(&family).with_metadata(meta);
    Ok(Report { doc: serde_json::to_value(doc)?, holds: status == "saturated" })
}

fn fault_doc(fault: &ScheduleFault) -> Value {
    match fault {
        ScheduleFault::Step { index, reason } => json!({ "failing_step": index, "reason": reason }),
        other => json!({ "failing_step": Value::Null, "reason": other.to_string() }),
    }
}

fn cmd_percolate(poset: Option<PathBuf>, n: Option<u32>, verify: bool, verify_file: Option<PathBuf>) -> Result<Report> {
    if let Some(path) = verify_file {
        let schedule = read_json::<ScheduleDocument>(&path)?.to_schedule()?;
        let result = verify_schedule(&schedule);
        let mut doc = json!({ "verified": result.is_ok(), "steps": schedule.steps.len() });
        if let Err(f) = &result {
            doc.as_object_mut().unwrap().extend(fault_doc(f).as_object().unwrap().clone());
        }
        return Ok(Report { doc, holds: result.is_ok() });
    }
    let poset = read_poset(&need(poset, "poset")?)?;
    let n = need(n, "n")?;
    let schedule = percolating_family_with(&poset, n, &check_config())?;
    let mut meta = json!({
        "initial_size": schedule.initial.len(),
        "percolation_number": percolation_number(&poset)?,
        "steps": schedule.steps.len(),
    });
    let mut holds = true;
    if verify {
        let result = verify_schedule(&schedule);
        holds = result.is_ok();
        meta["verified"] = json!(holds);
        if let Err(f) = &result {
            meta["fault"] = fault_doc(f);
        }
    }
    let mut doc = ScheduleDocument::from_schedule(&schedule);
    doc.metadata = Some(meta);
    Ok(Report { doc: serde_json::to_value(doc)?, holds })
}

fn cmd_oracle(kind: OracleKind, poset: PathBuf, n: u32, limits: SearchLimits) -> Result<(Report, bool)> {
    let poset = read_poset(&poset)?;
    let (name, result) = match kind {
        OracleKind::Sat => ("sat", min_saturated(&poset, n, &limits)?),
        OracleKind::Satp => ("satp", min_percolating(&poset, n, &limits)?),
    };
    let witness = result
        .witness
        .as_ref()
        .map_or(Value::Null, |f| serde_json::to_value(FamilyDocument::from_family(f)).unwrap());
    let doc = json!({
        "kind": name,
        "n": n,
        "size": result.size,
        "exact": result.exact,
        "bound": if result.exact { "exact" } else { "lower bound only" },
        "witness": witness,
    });
    Ok((Report { doc, holds: true }, result.exact))
}

fn dispatch(command: Command) -> Result<(Report, i32)> {
    let plain = |r: Report| {
        let code = if r.holds { 0 } else { 1 };
        (r, code)
    };
    Ok(match command {
        Command::Check { mode, poset, family, sample, sample_seed } => {
            let sampling = sample.map(|count| Sampling { count, seed: sample_seed });
            plain(cmd_check(mode, poset, family, sampling)?)
        }
        Command::Construct { kind, poset, bottom, top, sizes, n } => {
            plain(cmd_construct(kind, poset, bottom, top, sizes, n)?)
        }
        Command::Saturate { poset, seed, n, order, rng_seed } => {
            let order = match order {
                OrderArg::Ascending => ScanOrder::Ascending,
                OrderArg::Descending => ScanOrder::Descending,
                OrderArg::BySize => ScanOrder::BySize,
                OrderArg::Random => ScanOrder::Random { seed: rng_seed },
            };
            plain(cmd_saturate(poset, seed, n, order)?)
        }
        Command::Percolate { poset, n, verify, verify_file } => {
            plain(cmd_percolate(poset, n, verify, verify_file)?)
        }
        Command::Oracle { kind, poset, n, max_size, time_budget_ms, symmetry } => {
            let limits = SearchLimits {
                max_candidate_size: max_size,
                time_budget: time_budget_ms.map(Duration::from_millis),
                symmetry_reduction: symmetry,
                max_ground: oracle_cap(),
            };
            let (r, exact) = cmd_oracle(kind, poset, n, limits)?;
            (r, if exact { 0 } else { 3 })
        }
    })
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Documents go to `out` unless `--output` is given; error
/// messages go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let output = cli.output.clone();
    let result = pool.install(|| dispatch(cli.command));
    let (report, code) = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = match to_json(&report.doc) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let written = match output {
        Some(path) => std::fs::write(&path, text).map_err(Error::from),
        None => out.write_all(text.as_bytes()).map_err(Error::from),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    code
}
