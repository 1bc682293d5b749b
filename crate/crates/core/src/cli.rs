//! Command-line front end.
//!
//! Exit codes: 0 on success with no failing verdict, 1 when any verdict is a
//! failure, 2 on usage, parse or computation errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::catalog::{parse_catalog, seed_catalog, write_catalog, CatalogEntry, GroupSpec};
use crate::error::{Error, Result};
use crate::group::DEFAULT_ENUMERATION_LIMIT;
use crate::harness::{
    sweep, PiPolicy, SweepConfig, SweepOutcome, TheoremId, Verdict, DEFAULT_SYMMETRIC_MAX_N,
};
use crate::invariants::{commuting_probability, d_pi, k_pi, pi_elements, pr_pi, threshold};
use crate::primes::PrimeSet;
use crate::ratio::ExactRatio;
use crate::report_io::{write_reports, ReportFormat};
use crate::structure::{conjugacy_classes, generalized_fitting, has_normal_hall, o_pi_core};

/// Environment variable naming the default catalog file.
pub const CATALOG_ENV: &str = "PICOMM_CATALOG";

#[derive(Parser, Debug)]
#[command(
    name = "picomm",
    version,
    about = "Commuting probabilities of pi-elements in permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print per-report lines as well as the summary.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the invariants of one group for one prime set.
    Compute(ComputeArgs),
    /// Run theorem verifiers over a catalog.
    Sweep(SweepArgs),
    /// Search a catalog for elements exceeding the largest-prime bound.
    Explore(SweepArgs),
    /// Print or validate a catalog.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
struct CatalogSource {
    /// `seed` for the built-in catalog or a JSON-lines file. Defaults to
    /// $PICOMM_CATALOG, then `seed`.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Group selector (sym:n, alt:n, psl2:p, dih:n, cyc:n, frob:q,r, q8,
    /// prod:a*b, file:path#id) or a catalog id.
    #[arg(long)]
    group: String,
    /// Comma-separated primes.
    #[arg(long, value_parser = parse_pi)]
    pi: PrimeSet,
    /// Also run these verifiers (comma-separated ids, `all` for every one).
    #[arg(long)]
    theorems: Option<String>,
    /// Print one JSON object instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: u64,
    #[command(flatten)]
    source: CatalogSource,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    source: CatalogSource,
    /// Restrict to these groups (selector or catalog id); repeatable.
    #[arg(long)]
    group: Vec<String>,
    /// Comma-separated theorem ids; `C`, `L2.1` and `P4` select both halves.
    #[arg(long)]
    theorems: Option<String>,
    /// Explicit prime set; repeatable. Overrides --pi-policy.
    #[arg(long, value_parser = parse_pi)]
    pi: Vec<PrimeSet>,
    /// `subsets:K` (nonempty subsets with at most K primes), `all` or `maximal`.
    #[arg(long, default_value = "subsets:3")]
    pi_policy: String,
    #[arg(long)]
    max_order: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: u64,
    /// Largest n for the symmetric-group checks.
    #[arg(long, default_value_t = DEFAULT_SYMMETRIC_MAX_N)]
    sym_max: usize,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Record wall time in reports.
    #[arg(long)]
    timing: bool,
    /// Machine report destination.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "jsonl")]
    format: String,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[command(flatten)]
    source: CatalogSource,
    /// Write the catalog as JSON lines here instead of listing it.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_pi(s: &str) -> std::result::Result<PrimeSet, String> {
    s.parse::<PrimeSet>().map_err(|e| e.to_string())
}

fn parse_policy(s: &str) -> Result<PiPolicy> {
    match s {
        "all" => Ok(PiPolicy::AllSubsets),
        "maximal" => Ok(PiPolicy::Maximal),
        _ => s
            .strip_prefix("subsets:")
            .and_then(|k| k.parse().ok())
            .map(|max_primes| PiPolicy::Subsets { max_primes })
            .ok_or_else(|| Error::InvalidArgument(format!("unknown pi policy '{s}'"))),
    }
}

fn load_catalog(source: &CatalogSource) -> Result<Vec<CatalogEntry>> {
    let name = source
        .catalog
        .clone()
        .or_else(|| std::env::var(CATALOG_ENV).ok())
        .unwrap_or_else(|| "seed".into());
    if name == "seed" {
        Ok(seed_catalog())
    } else {
        parse_catalog(&name)
    }
}

/// A catalog id first, then a selector.
fn resolve(selector: &str, catalog: &[CatalogEntry]) -> Result<CatalogEntry> {
    if let Some(e) = catalog.iter().find(|e| e.id == selector) {
        return Ok(e.clone());
    }
    selector.parse::<GroupSpec>()?.entry()
}

fn fmt_ratio(r: ExactRatio) -> String {
    format!("{r} ({})", r.approx_string())
}

fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let catalog = load_catalog(&args.source)?;
    let entry = resolve(&args.group, &catalog)?;
    let g = entry.build()?.with_enumeration_limit(args.limit);
    let pi = &args.pi;
    let classes = conjugacy_classes(&g)?.len();
    let core = o_pi_core(&g, pi)?;
    let fstar = generalized_fitting(&g)?;
    let thr = pi.smallest().map(threshold).transpose()?;
    let fields: Vec<(&str, Value, Option<ExactRatio>)> = vec![
        ("group", entry.id.clone().into(), None),
        ("order", g.order().into(), None),
        ("degree", g.degree().into(), None),
        ("pi", pi.to_string().into(), None),
        ("classes", classes.into(), None),
        ("pr", Value::Null, Some(commuting_probability(&g)?)),
        ("pi_elements", pi_elements(&g, pi)?.count().into(), None),
        ("pi_classes", k_pi(&g, pi)?.into(), None),
        ("pr_pi", Value::Null, Some(pr_pi(&g, pi)?)),
        ("d_pi", Value::Null, Some(d_pi(&g, pi)?)),
        ("threshold", Value::Null, thr),
        ("pi_core_order", core.order().into(), None),
        ("normal_hall", has_normal_hall(&g, pi)?.into(), None),
        ("generalized_fitting_order", fstar.order().into(), None),
    ];
    if args.json {
        let mut obj = serde_json::Map::new();
        for (k, v, r) in fields {
            match r {
                Some(r) => {
                    obj.insert(k.into(), r.to_string().into());
                    obj.insert(format!("{k}_approx"), r.approx_string().into());
                }
                None => {
                    obj.insert(k.into(), v);
                }
            }
        }
        writeln!(out, "{}", Value::Object(obj))?;
    } else {
        for (k, v, r) in &fields {
            let shown = match (r, v) {
                (Some(r), _) => fmt_ratio(*r),
                (None, Value::Null) => "-".into(),
                (None, Value::String(s)) => s.clone(),
                (None, other) => other.to_string(),
            };
            writeln!(out, "{k:<26} {shown}")?;
        }
    }
    let Some(list) = &args.theorems else {
        return Ok(0);
    };
    let config = SweepConfig {
        theorems: TheoremId::parse_list(list)?,
        pi_policy: PiPolicy::Explicit(vec![pi.clone()]),
        enumeration_limit: args.limit,
        ..Default::default()
    };
    let outcome = sweep(&[entry], &config)?;
    for r in &outcome.reports {
        writeln!(out, "{:<11} {}", r.theorem.code(), verdict_text(&r.verdict))?;
    }
    Ok(if outcome.summary.fail > 0 { 1 } else { 0 })
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Skipped(r) => format!("skipped ({r})"),
        other => other.code().to_string(),
    }
}

fn sweep_config(args: &SweepArgs, default_theorems: &str) -> Result<SweepConfig> {
    let pi_policy = if args.pi.is_empty() {
        parse_policy(&args.pi_policy)?
    } else {
        PiPolicy::Explicit(args.pi.clone())
    };
    Ok(SweepConfig {
        theorems: TheoremId::parse_list(args.theorems.as_deref().unwrap_or(default_theorems))?,
        pi_policy,
        max_order: args.max_order,
        enumeration_limit: args.limit,
        symmetric_max_n: args.sym_max,
        timing: args.timing,
        threads: args.threads,
    })
}

fn run_sweep(
    args: &SweepArgs,
    default_theorems: &str,
    verbose: bool,
    out: &mut dyn Write,
) -> Result<SweepOutcome> {
    let format: ReportFormat = args.format.parse()?;
    let config = sweep_config(args, default_theorems)?;
    let catalog = load_catalog(&args.source)?;
    let entries = if args.group.is_empty() {
        catalog
    } else {
        args.group
            .iter()
            .map(|s| resolve(s, &catalog))
            .collect::<Result<Vec<_>>>()?
    };
    let outcome = sweep(&entries, &config)?;
    if let Some(path) = &args.out {
        write_reports(&outcome.reports, format, path)?;
    }
    if verbose {
        for r in &outcome.reports {
            let head = r
                .witnesses
                .first()
                .map(|w| format!(" {} {} {}", w.value, w.relation.symbol(), w.bound))
                .unwrap_or_default();
            writeln!(
                out,
                "{:<11} {:<20} {:<10} {}{head}",
                r.theorem.code(),
                r.group_id,
                r.pi.to_string(),
                verdict_text(&r.verdict)
            )?;
        }
    }
    let s = &outcome.summary;
    writeln!(
        out,
        "groups {}  reports {}  pass {}  fail {}  skipped {}  no-counterexample {}  candidates {}",
        s.groups, s.reports, s.pass, s.fail, s.skipped, s.no_counterexample, s.candidates
    )?;
    for sup in &s.suprema {
        writeln!(
            out,
            "sup {:<11} {} at {} pi={} ({})",
            sup.theorem.code(),
            fmt_ratio(sup.value),
            sup.group_id,
            sup.pi,
            sup.subject
        )?;
    }
    for r in outcome.failures() {
        writeln!(out, "FAIL {} {} pi={}", r.theorem.code(), r.group_id, r.pi)?;
        for w in r.witnesses.iter().filter(|w| !w.holds) {
            writeln!(
                out,
                "  {}: {} {} {} fails (oracle {:?})",
                w.subject,
                w.value,
                w.relation.symbol(),
                w.bound,
                w.oracle_confirmed
            )?;
        }
    }
    Ok(outcome)
}

fn explore(args: &SweepArgs, verbose: bool, out: &mut dyn Write) -> Result<i32> {
    let outcome = run_sweep(args, "OPEN-Q", verbose, out)?;
    for r in outcome
        .reports
        .iter()
        .filter(|r| r.verdict == Verdict::CounterexampleCandidate)
    {
        for w in r.witnesses.iter().filter(|w| !w.holds) {
            writeln!(
                out,
                "candidate {} pi={} x={} fraction {} > {}",
                r.group_id, r.pi, w.subject, w.value, w.bound
            )?;
        }
    }
    Ok(if outcome.summary.fail > 0 { 1 } else { 0 })
}

fn catalog_cmd(args: &CatalogArgs, out: &mut dyn Write) -> Result<i32> {
    let entries = load_catalog(&args.source)?;
    match &args.out {
        Some(path) => write_catalog(&entries, std::fs::File::create(path)?)?,
        None => {
            for e in &entries {
                let order = e
                    .expected_order
                    .map(|o| o.to_string())
                    .unwrap_or_else(|| "?".into());
                writeln!(out, "{:<24} degree {:<3} order {order}", e.id, e.degree)?;
            }
        }
    }
    Ok(0)
}

/// Runs the command line `argv` (program name first), writing the human
/// summary to `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Compute(a) => compute(a, out),
        Command::Sweep(a) => {
            run_sweep(a, "all", cli.verbose, out).map(|o| if o.summary.fail > 0 { 1 } else { 0 })
        }
        Command::Explore(a) => explore(a, cli.verbose, out),
        Command::Catalog(a) => catalog_cmd(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
