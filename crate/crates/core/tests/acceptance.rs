//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use amalgam::constructions::{circle_amalgam, connectedness_with_witness, discrete, ind_comparison, semicircle_subbase};
use amalgam::harness::{run_all, GenConfig, PropertyReport, POSET_COUNTS};
use amalgam::topology::DEFAULT_IND_BOUND;

const SEED: u64 = 0;
const TRIALS: usize = 200;
const MAX_BASE_POINTS: usize = 5;
const MAX_SUBBASE: usize = 4;
const MAX_FACTOR_POINTS: usize = 3;
const AMALGAMATIVE_TIME_LIMIT: Duration = Duration::from_secs(60);
const MIN_QUOTIENT_INSTANCES: usize = 100;
const MIN_CONNECTIFY_INSTANCES: usize = 50;
const MIN_HOMOGENEITY_ENUMERATED: usize = 25;
const MAX_REDUCED_INSTANCES: usize = 200;
const ORACLE_MAX_POINTS: usize = 6;
const CIRCLE_POINTS: usize = 20;
const CIRCLE_IND: i32 = 1;
const CIRCLE_TIME_LIMIT: Duration = Duration::from_secs(5);

struct Gate {
    failed: usize,
}

impl Gate {
    fn line(&mut self, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failed += 1;
        }
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
}

fn report<'a>(reports: &'a [PropertyReport], id: &str) -> &'a PropertyReport {
    reports.iter().find(|r| r.suite == id).unwrap_or_else(|| panic!("no suite {id}"))
}

fn summary(r: &PropertyReport) -> String {
    format!(
        "{} attempted, {} passed, {} skipped, {} failed",
        r.attempted,
        r.passed,
        r.skipped,
        r.failures.len()
    )
}

fn clean(r: &PropertyReport) -> bool {
    r.failures.is_empty() && r.is_consistent()
}

fn circle(gate: &mut Gate) {
    let start = Instant::now();
    let result = (|| -> amalgam::Result<(usize, bool, i32, i32, bool)> {
        let (sel, e) = semicircle_subbase();
        let a = circle_amalgam(&discrete(2))?;
        let connected = connectedness_with_witness(&a, &e)? && a.space().is_connected();
        let dims = ind_comparison(&a, DEFAULT_IND_BOUND)?;
        let split = sel.sets().iter().all(|s| !e.is_subset(s));
        Ok((a.len(), connected, dims.amalgam, dims.base, split))
    })();
    let elapsed = start.elapsed();
    match result {
        Ok((points, connected, ind_a, ind_x, split)) => gate.line(
            "circle demo",
            points == CIRCLE_POINTS
                && connected
                && ind_a == CIRCLE_IND
                && ind_x == CIRCLE_IND
                && split
                && elapsed < CIRCLE_TIME_LIMIT,
            format!(
                "{points} points, connected {connected}, ind {ind_a} over base ind {ind_x}, \
                 antipodes split {split}, {} ms",
                elapsed.as_millis()
            ),
        ),
        Err(e) => gate.line("circle demo", false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let cfg = GenConfig {
        seed: SEED,
        trials: TRIALS,
        max_base_points: MAX_BASE_POINTS,
        max_subbase: MAX_SUBBASE,
        max_factor_points: MAX_FACTOR_POINTS,
        ..GenConfig::default()
    };
    let mut gate = Gate { failed: 0 };
    let reports = run_all(&cfg);

    let ids = ["amalgamative-T0", "amalgamative-HD", "amalgamative-0dim"];
    let suites: Vec<&PropertyReport> = ids.iter().map(|id| report(&reports, id)).collect();
    let total = Duration::from_millis(suites.iter().map(|r| r.wall_time_ms).sum());
    let converse: usize = suites.iter().map(|r| r.observation("converse: checked")).sum();
    gate.line(
        "amalgamativeness suites",
        suites.iter().all(|r| clean(r) && r.attempted == TRIALS && r.passed > 0)
            && converse > 0
            && total < AMALGAMATIVE_TIME_LIMIT,
        format!(
            "{}; converse checked {converse} times; {} ms",
            suites.iter().map(|r| format!("{}: {}", r.suite, summary(r))).collect::<Vec<_>>().join("; "),
            total.as_millis()
        ),
    );

    // Every suite that builds an amalgam checks the structural facts on it
    // first, so a clean run of all of them covers every constructed amalgam.
    let fact_failures = reports
        .iter()
        .flat_map(|r| &r.failures)
        .filter(|f| f.violation.contains("fact "))
        .count();
    let structural = report(&reports, "structural");
    gate.line(
        "structural facts",
        clean(structural) && structural.attempted == TRIALS && fact_failures == 0,
        format!("{}; fact violations across all suites: {fact_failures}", summary(structural)),
    );

    let quotient = report(&reports, "quotient");
    gate.line(
        "quotient presentation",
        clean(quotient) && quotient.passed >= MIN_QUOTIENT_INSTANCES,
        summary(quotient),
    );

    let witness = report(&reports, "conn-witness");
    let second = report(&reports, "conn-second");
    let chains = witness.observation("chains verified");
    gate.line(
        "connectedness",
        clean(witness)
            && clean(second)
            && witness.passed == TRIALS
            && second.passed == TRIALS
            && chains > 0,
        format!("witness: {}, {chains} chains verified; second: {}", summary(witness), summary(second)),
    );

    circle(&mut gate);

    let connectify = report(&reports, "connectify");
    gate.line(
        "connectify",
        clean(connectify) && connectify.passed >= MIN_CONNECTIFY_INSTANCES,
        summary(connectify),
    );

    let homog = report(&reports, "homog");
    let enumerated = homog.observation("enumerated");
    gate.line(
        "homogeneity transfer",
        clean(homog) && enumerated >= MIN_HOMOGENEITY_ENUMERATED,
        format!("{}; {enumerated} confirmed by automorphism enumeration", summary(homog)),
    );

    let reduced = report(&reports, "reduced");
    gate.line(
        "reduced amalgam",
        clean(reduced) && reduced.passed > 0 && reduced.attempted <= MAX_REDUCED_INSTANCES,
        format!("{}; {} subspaces W", summary(reduced), reduced.observation("subspaces W")),
    );

    let hd = report(&reports, "oracle-hd");
    let conn = report(&reports, "oracle-conn");
    let all_posets: usize = POSET_COUNTS[1..=ORACLE_MAX_POINTS].iter().sum();
    gate.line(
        "oracle cross-checks",
        clean(hd) && hd.passed == all_posets && clean(conn) && conn.passed == TRIALS,
        format!("hereditary: {} of {all_posets} posets; connectivity: {}", summary(hd), summary(conn)),
    );

    let first: Vec<PropertyReport> = reports.into_iter().map(PropertyReport::without_timing).collect();
    let second_run: Vec<PropertyReport> = run_all(&cfg).into_iter().map(PropertyReport::without_timing).collect();
    gate.line(
        "determinism",
        first == second_run,
        format!("{} reports compared", first.len()),
    );

    if gate.failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{} criteria failed", gate.failed);
        ExitCode::FAILURE
    }
}
