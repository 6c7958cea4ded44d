//! `ds`: compute d/GR invariants, run verification suites, and cache
//! subgroup lattices.

mod cache;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ds_core::catalog::{self, GroupSpec};
use ds_core::invariants::{self, InvariantReport, ReportRequest};
use ds_core::lattice_file::LatticeFile;
use ds_core::subgroups::{Lattice, DEFAULT_LATTICE_LIMIT, FAST_LATTICE_LIMIT};
use ds_core::suite::{self, SuiteConfig, SuiteResult, SuiteTier};

#[derive(Parser)]
#[command(
    name = "ds",
    version,
    about = "Derived-subgroup invariants of finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one group.
    Compute {
        /// Group expression, e.g. `A5`, `prod(A5,C7)`, `SZ8@data/sz8.grp`.
        expr: String,
        /// Comma-separated subset of d,gr,pi,bound,witnesses.
        #[arg(long, value_delimiter = ',', default_value = "d,gr,pi,bound")]
        invariants: Vec<Invariant>,
        #[arg(long)]
        json: bool,
        /// Largest group order for which the full subgroup lattice is built.
        #[arg(long, default_value_t = FAST_LATTICE_LIMIT)]
        lattice_limit: u64,
        /// Write per-stage timings (JSON) to this file.
        #[arg(long)]
        timings: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, value_enum, default_value_t = TierArg::Fast)]
        tier: TierArg,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = "data")]
        data_dir: PathBuf,
        #[arg(long)]
        timings: Option<PathBuf>,
    },
    /// Write the subgroup lattice of a group to a file.
    Lattice {
        expr: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LATTICE_LIMIT)]
        limit: u64,
    },
    /// Inspect the group catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the standard catalog with group orders.
    List {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value = "data")]
        data_dir: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    D,
    Gr,
    Pi,
    Bound,
    Witnesses,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Fast,
    Full,
}

/// Exit codes besides 0 (success) and 1 (failed claims or other errors).
const EXIT_USAGE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<ds_core::Error>() {
        Some(ds_core::Error::Parse { .. }) | Some(ds_core::Error::InvalidParameter(_)) => {
            EXIT_USAGE
        }
        Some(ds_core::Error::TooLarge { .. }) => EXIT_INFEASIBLE,
        _ => 1,
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Compute {
            expr,
            invariants,
            json,
            lattice_limit,
            timings,
        } => compute(&expr, &invariants, json, lattice_limit, timings.as_deref()),
        Command::Verify {
            suite,
            tier,
            json,
            data_dir,
            timings,
        } => verify(&suite, tier, json, data_dir, timings.as_deref()),
        Command::Lattice { expr, out, limit } => lattice(&expr, &out, limit),
        Command::Catalog {
            action: CatalogAction::List { json, data_dir },
        } => catalog_list(json, &data_dir),
    }
}

fn compute(
    expr: &str,
    selected: &[Invariant],
    json: bool,
    lattice_limit: u64,
    timings: Option<&Path>,
) -> anyhow::Result<u8> {
    let spec: GroupSpec = expr.parse()?;
    let group = catalog::make(&spec)?.with_label(expr);
    let req = ReportRequest {
        d: selected.contains(&Invariant::D),
        gr: selected.contains(&Invariant::Gr),
        pi: selected.contains(&Invariant::Pi),
        bound: selected.contains(&Invariant::Bound),
        witnesses: selected.contains(&Invariant::Witnesses),
        lattice_limit: lattice_limit.min(DEFAULT_LATTICE_LIMIT),
    };
    let report = invariants::report(&group, &req).map_err(|e| {
        let infeasible = matches!(e, ds_core::Error::TooLarge { .. });
        let err = anyhow::Error::new(e);
        if infeasible {
            err.context(format!(
                "tier threshold is |G| <= {} (raise with --lattice-limit up to {DEFAULT_LATTICE_LIMIT}, or request only pi,bound,witnesses)",
                req.lattice_limit
            ))
        } else {
            err
        }
    })?;
    if json {
        emit(&(serde_json::to_string_pretty(&report)? + "\n"));
    } else {
        emit(&render_report(&report, &req));
    }
    if let Some(path) = timings {
        write_timings(path, &report.timings)?;
    }
    Ok(0)
}

fn render_report(r: &InvariantReport, req: &ReportRequest) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group   {}", r.group);
    let _ = writeln!(s, "order   {}", r.order);
    if req.pi {
        let primes: Vec<String> = r.pi.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "pi      {{{}}}", primes.join(","));
    }
    if let Some(d) = r.d_value {
        let _ = writeln!(s, "d       {d}");
        for fp in &r.d_class_reps {
            let _ = writeln!(s, "        {}", fp.summary());
        }
    }
    if let Some(gr) = r.gr_value {
        let _ = writeln!(s, "gr      {gr}");
    }
    if req.bound {
        let verdict = serde_json::to_value(r.bound_verdict).unwrap_or_default();
        let evidence = serde_json::to_value(r.bound_evidence).unwrap_or_default();
        let _ = write!(
            s,
            "bound   {} ({})",
            verdict.as_str().unwrap_or("?"),
            evidence.as_str().unwrap_or("?")
        );
        if let Some(lb) = r.d_lower_bound {
            let _ = write!(s, ", d >= {lb}");
        }
        s.push('\n');
    }
    for (p, w) in &r.witnesses {
        let _ = writeln!(s, "witness p={p}: {w}");
    }
    let tier = serde_json::to_value(r.tier).unwrap_or_default();
    let _ = writeln!(s, "tier    {}", tier.as_str().unwrap_or("?"));
    s
}

fn verify(
    name: &str,
    tier: TierArg,
    json: bool,
    data_dir: PathBuf,
    timings: Option<&Path>,
) -> anyhow::Result<u8> {
    let tier = match tier {
        TierArg::Fast => SuiteTier::Fast,
        TierArg::Full => SuiteTier::Full,
    };
    let result = suite::run_suite(name, &SuiteConfig::new(tier, data_dir))?;
    if json {
        emit(&(serde_json::to_string_pretty(&result)? + "\n"));
    } else {
        emit(&render_suite(&result));
    }
    if let Some(path) = timings {
        let t: BTreeMap<String, f64> = result
            .claims
            .iter()
            .map(|c| (c.id.to_string(), c.seconds))
            .collect();
        write_timings(path, &t)?;
    }
    Ok(result.exit_status as u8)
}

fn render_suite(r: &SuiteResult) -> String {
    let mut s = format!("suite {} (tier {})\n", r.suite, r.tier);
    for c in &r.claims {
        let _ = writeln!(s, "[{:<7}] {:>3}  {}", c.status, c.id, c.description);
        let _ = writeln!(s, "            {}", c.details);
    }
    let count = |st: suite::ClaimStatus| r.claims.iter().filter(|c| c.status == st).count();
    let _ = writeln!(
        s,
        "{} pass, {} flagged, {} skipped, {} fail",
        count(suite::ClaimStatus::Pass),
        count(suite::ClaimStatus::Flagged),
        count(suite::ClaimStatus::Skipped),
        count(suite::ClaimStatus::Fail)
    );
    s
}

fn lattice(expr: &str, out: &Path, limit: u64) -> anyhow::Result<u8> {
    let spec: GroupSpec = expr.parse()?;
    let canonical = spec.to_string();
    let cache = cache::Cache::from_env();
    let file = match cache.load(&canonical) {
        Some(f) => {
            eprintln!("cache hit: {}", cache.path_for(&canonical).display());
            f
        }
        None => {
            let group = catalog::make(&spec)?;
            let lattice = Lattice::with_limit(&group, limit)?;
            let f = LatticeFile::from_lattice(&canonical, &lattice);
            if let Err(e) = cache.store(&f) {
                eprintln!("warning: could not write cache: {e:#}");
            }
            f
        }
    };
    std::fs::write(out, file.render()).with_context(|| format!("writing {}", out.display()))?;
    emit(&format!(
        "{} subgroups in {} conjugacy classes written to {}\n",
        file.entries.len(),
        file.class_count(),
        out.display()
    ));
    Ok(0)
}

#[derive(Serialize)]
struct CatalogEntry {
    expr: String,
    order: Option<u64>,
}

fn catalog_list(json: bool, data_dir: &str) -> anyhow::Result<u8> {
    let entries: Vec<CatalogEntry> = catalog::standard_catalog(data_dir)
        .into_iter()
        .map(|spec| {
            let order = spec.expected_order().or_else(|| match &spec {
                GroupSpec::FromFile { path, .. } => {
                    catalog::parse_group_data(&std::fs::read_to_string(path).ok()?)
                        .ok()
                        .map(|g| g.order())
                }
                _ => None,
            });
            CatalogEntry {
                expr: spec.to_string(),
                order,
            }
        })
        .collect();
    if json {
        emit(&(serde_json::to_string_pretty(&entries)? + "\n"));
    } else {
        let mut s = String::new();
        for e in &entries {
            let _ = match e.order {
                Some(o) => writeln!(s, "{:<24} {o}", e.expr),
                None => writeln!(s, "{:<24} (data file missing)", e.expr),
            };
        }
        emit(&s);
    }
    Ok(0)
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn write_timings(path: &Path, timings: &BTreeMap<String, f64>) -> anyhow::Result<()> {
    std::fs::write(path, serde_json::to_string_pretty(timings)? + "\n")
        .with_context(|| format!("writing timings to {}", path.display()))
}
