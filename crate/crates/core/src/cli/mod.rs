//! Command-line front end.
//!
//! Exit codes: 0 when every check passed, 1 on a verification failure, 2 on
//! bad input, 3 when a size budget was exceeded.

mod demo;
mod dot;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::amalgam::{AmalgamSpace, BuildOptions, DEFAULT_CARRIER_BUDGET};
use crate::constructions::connectify;
use crate::document::SpecDocument;
use crate::error::Error;
use crate::harness::{run_all, search_counterexample, Claim, GenConfig, Predicate, PropertyReport, Scope, Suite};
use crate::topology::{are_homeomorphic, DEFAULT_IND_BOUND};

pub use dot::hasse_dot;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    VerificationFailure = 1,
    InputError = 2,
    BudgetExceeded = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => ExitStatus::BudgetExceeded,
            Error::Verification(_) => ExitStatus::VerificationFailure,
            _ => ExitStatus::InputError,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "amalgam", version, about = "Build and verify amalgams of finite spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the amalgam described by a JSON spec and summarize it.
    Build {
        spec: PathBuf,
        /// Write a JSON summary here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Largest carrier to build.
        #[arg(long, default_value_t = DEFAULT_CARRIER_BUDGET)]
        budget: usize,
    },
    /// Run a verification suite (or `all`) and print its report as JSON.
    Verify {
        id: String,
        #[command(flatten)]
        gen: GenArgs,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search random instances for violations of hypothesis => conclusion.
    Search {
        /// Claims as `scope:predicate`, e.g. `factors:connected`.
        #[arg(long = "hypothesis", required = true)]
        hypothesis: Vec<String>,
        #[arg(long = "conclusion", required = true)]
        conclusion: Vec<String>,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a fixed construction and print what was verified.
    Demo { name: DemoName },
    /// Write the Hasse diagram of the amalgam's specialization order as DOT.
    ExportDot { spec: PathBuf, out: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Circle,
    Cone,
    Connectify,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    /// Largest base space.
    #[arg(long, default_value_t = 5)]
    pub max_points: usize,
    #[arg(long, default_value_t = 4)]
    pub max_subbase: usize,
    #[arg(long, default_value_t = 3)]
    pub max_factor_points: usize,
    /// Largest amalgam carrier; bigger instances are skipped.
    #[arg(long, default_value_t = DEFAULT_CARRIER_BUDGET)]
    pub budget: usize,
    /// Corrupt every built amalgam (the suites should then fail).
    #[arg(long)]
    pub mutate: bool,
}

impl GenArgs {
    pub fn config(&self) -> GenConfig {
        GenConfig {
            seed: self.seed,
            max_base_points: self.max_points,
            max_subbase: self.max_subbase,
            max_factor_points: self.max_factor_points,
            trials: self.trials,
            size_budget: self.budget,
            mutate: self.mutate,
        }
    }
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus {
    let result = match cli.command {
        Command::Build { spec, out: file, budget } => cmd_build(&spec, file.as_deref(), budget, out),
        Command::Verify { id, gen, out: file } => cmd_verify(&id, &gen, file.as_deref(), out, err),
        Command::Search { hypothesis, conclusion, gen, out: file } => {
            cmd_search(&hypothesis, &conclusion, &gen, file.as_deref(), out)
        }
        Command::Demo { name } => demo::run(name, out),
        Command::ExportDot { spec, out: file } => cmd_export_dot(&spec, &file, out),
    };
    match result {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitStatus::of_error(&e)
        }
    }
}

pub(crate) type CmdResult = Result<ExitStatus, Error>;

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidDocument(format!("cannot write {}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| io_error(path, e))
}

pub(crate) fn emit(out: &mut dyn Write, line: impl std::fmt::Display) {
    let _ = writeln!(out, "{line}");
}

#[derive(Debug, Serialize)]
pub struct BuildSummary {
    pub points: usize,
    /// Decimal, or `None` when the count overflows.
    pub opens: Option<String>,
    pub components: usize,
    pub connected: bool,
    pub ind: Option<i32>,
    pub homeomorphic_to_base: Option<bool>,
    pub carrier: Vec<String>,
}

pub fn summarize(a: &AmalgamSpace) -> BuildSummary {
    let space = a.space();
    BuildSummary {
        points: a.len(),
        opens: space.count_opens().map(|n| n.to_string()),
        components: space.components().len(),
        connected: space.is_connected(),
        ind: space.ind(DEFAULT_IND_BOUND).ok(),
        homeomorphic_to_base: are_homeomorphic(space, a.base()).ok(),
        carrier: space.points().map(|i| space.label(i)).collect(),
    }
}

fn show<T: std::fmt::Display>(v: Option<T>, none: &str) -> String {
    v.map_or_else(|| none.to_string(), |v| v.to_string())
}

fn cmd_build(spec: &Path, file: Option<&Path>, budget: usize, out: &mut dyn Write) -> CmdResult {
    let doc = SpecDocument::read(spec)?;
    let a = doc.build(BuildOptions { budget, ..Default::default() })?;
    let summary = summarize(&a);
    emit(out, format_args!("points: {}", summary.points));
    emit(out, format_args!("opens: {}", show(summary.opens.as_ref(), "too many to count")));
    emit(out, format_args!("components: {}", summary.components));
    emit(out, format_args!("connected: {}", summary.connected));
    emit(out, format_args!("ind: {}", show(summary.ind, "over bound")));
    emit(out, format_args!("homeomorphic to base: {}", show(summary.homeomorphic_to_base, "unknown")));

    if let Some((ambient, embed, p)) = doc.connectify_input()? {
        let c = connectify(&a, &ambient, &embed, p, BuildOptions { budget, ..Default::default() })?;
        emit(out, format_args!("connectification points: {}", c.result.len()));
        emit(out, format_args!("connectification connected: {}", c.result.space().is_connected()));
        emit(out, "connectification verified: embedding, dense, proper, connected");
    }
    if let Some(path) = file {
        let json = serde_json::to_string_pretty(&summary).expect("summaries serialize");
        write_file(path, &json)?;
    }
    Ok(ExitStatus::Ok)
}

fn report_status(reports: &[PropertyReport]) -> ExitStatus {
    if reports.iter().all(PropertyReport::is_green) {
        ExitStatus::Ok
    } else {
        ExitStatus::VerificationFailure
    }
}

fn print_reports(reports: &[PropertyReport], file: Option<&Path>, out: &mut dyn Write) -> Result<(), Error> {
    let json = serde_json::to_string_pretty(reports).expect("reports serialize");
    emit(out, &json);
    if let Some(path) = file {
        write_file(path, &json)?;
    }
    Ok(())
}

fn cmd_verify(id: &str, gen: &GenArgs, file: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let cfg = gen.config();
    cfg.validate()?;
    let reports = if id == "all" {
        run_all(&cfg)
    } else {
        let suite = Suite::from_id(id).ok_or_else(|| {
            let known: Vec<&str> = Suite::ALL.iter().map(|s| s.id()).collect();
            Error::InvalidDocument(format!("unknown suite {id:?}; known: all, {}", known.join(", ")))
        })?;
        vec![suite.run(&cfg)]
    };
    for r in &reports {
        let verdict = if r.is_green() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            err,
            "{verdict} {}: {} attempted, {} passed, {} skipped, {} failed ({} ms)",
            r.suite,
            r.attempted,
            r.passed,
            r.skipped,
            r.failures.len(),
            r.wall_time_ms
        );
    }
    print_reports(&reports, file, out)?;
    Ok(report_status(&reports))
}

fn parse_claim(text: &str) -> Result<Claim, Error> {
    let bad = || Error::InvalidDocument(format!("claim {text:?} is not scope:predicate"));
    let (scope, predicate) = text.split_once(':').ok_or_else(bad)?;
    let scope = match scope {
        "base" => Scope::Base,
        "factors" => Scope::Factors,
        "base+factors" => Scope::BaseAndFactors,
        "amalgam" => Scope::Amalgam,
        _ => return Err(bad()),
    };
    let predicate = Predicate::from_name(predicate).ok_or_else(bad)?;
    Ok(Claim::new(predicate, scope))
}

/// Violations found by a search are findings, so the exit code stays 0.
fn cmd_search(hyp: &[String], concl: &[String], gen: &GenArgs, file: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let cfg = gen.config();
    cfg.validate()?;
    let hyp: Vec<Claim> = hyp.iter().map(|h| parse_claim(h)).collect::<Result<_, _>>()?;
    let concl: Vec<Claim> = concl.iter().map(|c| parse_claim(c)).collect::<Result<_, _>>()?;
    let report = search_counterexample(&hyp, &concl, &cfg);
    print_reports(&[report], file, out)?;
    Ok(ExitStatus::Ok)
}

fn cmd_export_dot(spec: &Path, file: &Path, out: &mut dyn Write) -> CmdResult {
    let doc = SpecDocument::read(spec)?;
    let a = doc.build(BuildOptions::default())?;
    let dot = hasse_dot(&a);
    write_file(file, &dot)?;
    emit(out, format_args!("wrote {} nodes to {}", a.len(), file.display()));
    Ok(ExitStatus::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claims_parse() {
        assert_eq!(
            parse_claim("factors:connected").unwrap(),
            Claim::new(Predicate::Connected, Scope::Factors)
        );
        assert!(parse_claim("nowhere:connected").is_err());
        assert!(parse_claim("amalgam").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(ExitStatus::of_error(&Error::bound("x", 2, 1)).code(), 3);
        assert_eq!(ExitStatus::of_error(&Error::Verification("x".into())).code(), 1);
        assert_eq!(ExitStatus::of_error(&Error::EmptySubbaseMember(0)).code(), 2);
    }
}
