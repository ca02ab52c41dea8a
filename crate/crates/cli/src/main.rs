//! `rdqm`: runs identity instances, family data checks, Darboux spectral
//! checks and the full acceptance suite, and writes a JSON report.
//!
//! Exit codes: 0 when no check failed, 1 when some check failed, 2 for
//! usage errors.

mod config;
mod jobs;
mod report;

use clap::{Args, Parser, Subcommand};
use config::{parse_family, parse_index_sets, parse_point, parse_twist, Filter};
use jobs::Job;
use rayon::prelude::*;
use rdqm::darboux::{decimal_tolerance, default_tolerance};
use rdqm::error::{Error, Result};
use rdqm::exact::BigFloat;
use rdqm::families::{FamilyId, ParamSet};
use report::Report;
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Serialize)]
#[command(name = "rdqm", version, about = "Exact verification of Casoratian identities and Darboux spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Verify one Casoratian identity instance.
    Verify(VerifyArgs),
    /// Family data checks: axioms, twists, symmetries, limits.
    Families(FamiliesArgs),
    /// Spectral checks of the deformed Hamiltonian.
    Darboux(DarbouxArgs),
    /// Run the full acceptance matrix.
    Suite(SuiteArgs),
}

#[derive(Args, Serialize)]
struct Point {
    /// Family token (r, qr, ha, dha, k, qha, dqha, qqk, qk, dqk, aqk, m, c, lqj, qm, lql, ascii, qb, qc).
    #[arg(long)]
    family: String,
    /// Comma list of name=p/q; defaults to the family's safe point.
    #[arg(long)]
    params: Option<String>,
    /// Lattice size for finite families.
    #[arg(long)]
    n: Option<i64>,
}

#[derive(Args, Serialize)]
struct Output {
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct Numerics {
    /// BigFloat precision in bits.
    #[arg(long, default_value_t = 256)]
    precision: usize,
    /// Tolerance 10^-K; defaults to 2^(-precision/2).
    #[arg(long)]
    tol_exp: Option<u32>,
}

impl Numerics {
    fn tolerance(&self) -> BigFloat {
        match self.tol_exp {
            Some(k) => decimal_tolerance(k, self.precision),
            None => default_tolerance(self.precision),
        }
    }
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[command(flatten)]
    point: Point,
    #[arg(long, default_value = "i")]
    twist: String,
    /// Degrees of the pseudo virtual seeds, comma separated.
    #[arg(long)]
    dset: String,
    /// calN; defaults to max D.
    #[arg(long)]
    caln: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct FamiliesArgs {
    /// Restrict to one family; all sample points of every family otherwise.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, requires = "family")]
    params: Option<String>,
    #[arg(long, requires = "family")]
    n: Option<i64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct DarbouxArgs {
    #[command(flatten)]
    point: Point,
    #[arg(long, default_value = "i")]
    twist: String,
    /// Seed degrees d1, comma separated.
    #[arg(long, default_value = "0,1,2")]
    dset: String,
    #[command(flatten)]
    numerics: Numerics,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Serialize)]
struct SuiteArgs {
    #[command(flatten)]
    numerics: Numerics,
    /// Filters such as family=qb or kind=identity; repeatable.
    #[arg(long)]
    only: Vec<String>,
    #[command(flatten)]
    output: Output,
}

/// Jobs to run, whether degenerate outcomes count as failures, and the
/// report destination.
struct Plan<'a> {
    jobs: Vec<Job>,
    strict: bool,
    out: &'a Output,
}

fn plan(cmd: &Command) -> Result<Plan<'_>> {
    Ok(match cmd {
        Command::Verify(a) => {
            let family = parse_family(&a.point.family)?;
            let twist = parse_twist(family, &a.twist)?;
            let ps = parse_point(family, a.point.params.as_deref(), a.point.n)?;
            let idx = parse_index_sets(&a.dset, a.caln)?;
            if twist.is_level_shift() {
                return Err(Error::InvalidInput(format!("twist {} does not enter the identities", twist.token())));
            }
            Plan { jobs: vec![jobs::identity(&ps, twist, &idx)], strict: false, out: &a.output }
        }
        Command::Families(a) => {
            let points: Vec<ParamSet> = match &a.family {
                Some(f) => {
                    let family = parse_family(f)?;
                    if a.params.is_some() || a.n.is_some() {
                        vec![parse_point(family, a.params.as_deref(), a.n)?]
                    } else {
                        ParamSet::samples(family)
                    }
                }
                None => FamilyId::ALL.into_iter().flat_map(ParamSet::samples).collect(),
            };
            let mut list: Vec<Job> = points.iter().flat_map(jobs::family_checks).collect();
            let targets: Vec<FamilyId> = match &a.family {
                Some(f) => vec![parse_family(f)?],
                None => FamilyId::ALL.to_vec(),
            };
            list.extend(rdqm::families::limits::EDGES.iter().filter(|e| targets.contains(&e.target)).map(jobs::limit));
            Plan { jobs: list, strict: false, out: &a.output }
        }
        Command::Darboux(a) => {
            let family = parse_family(&a.point.family)?;
            let twist = parse_twist(family, &a.twist)?;
            let ps = parse_point(family, a.point.params.as_deref(), a.point.n)?;
            let d1s = config::parse_dset(&a.dset)?;
            let tol = a.numerics.tolerance();
            Plan { jobs: jobs::darboux_checks(&ps, twist, &d1s, a.numerics.precision, &tol), strict: false, out: &a.output }
        }
        Command::Suite(a) => {
            let filter = Filter::parse(&a.only)?;
            let tol = a.numerics.tolerance();
            let list = jobs::suite(a.numerics.precision, &tol)
                .into_iter()
                .filter(|j| filter.accepts(j.family, j.kind))
                .collect();
            Plan { jobs: list, strict: true, out: &a.output }
        }
    })
}

fn write_report(report: &Report, out: &Output) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    match &out.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let plan = match plan(&cli.command) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("rdqm: {e}");
            return ExitCode::from(2);
        }
    };
    let records = plan.jobs.par_iter().map(|j| j.execute(plan.strict)).collect();
    let config = serde_json::to_value(&cli.command).expect("config serializes");
    let report = Report::new(config, records);
    if let Err(e) = write_report(&report, plan.out) {
        eprintln!("rdqm: cannot write report: {e}");
        return ExitCode::from(2);
    }
    for r in report.records.iter().filter(|r| r.status == report::Status::Fail) {
        eprintln!("FAIL {} {}", r.id, r.details.get("message").and_then(|m| m.as_str()).unwrap_or(""));
    }
    ExitCode::from(report.exit_code() as u8)
}
