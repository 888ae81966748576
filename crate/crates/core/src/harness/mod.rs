//! Seeded random instances and batch verification suites.
//!
//! Every trial draws from its own ChaCha8 stream, `(suite << 32) | trial`
//! under the configured seed, so trials can run in parallel and reports
//! come out identical on every run.

mod generate;
mod oracles;
mod search;
mod structural;
mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amalgam::{carrier_size, AmalgamSpace, BuildOptions, FactorAssignment, SubbaseSel};
use crate::document::SpecDocument;
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::TopSpace;

pub use generate::{
    random_connected_poset, random_connected_preorder, random_factors, random_generating_family,
    random_partition_space, random_poset, random_preorder, random_selection, random_space, random_subbase,
    rng_for, RESAMPLE_ATTEMPTS,
};
pub use oracles::{labeled_posets, POSET_COUNTS};
pub use search::{search_counterexample, Claim, Predicate, Scope};
pub use structural::check_structural_facts;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_base_points: usize,
    pub max_subbase: usize,
    pub max_factor_points: usize,
    pub trials: usize,
    /// Largest amalgam carrier built; bigger instances are skipped.
    pub size_budget: usize,
    /// Corrupt every built amalgam, to check that suites notice.
    pub mutate: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_base_points: 5,
            max_subbase: 4,
            max_factor_points: 3,
            trials: 200,
            size_budget: 2000,
            mutate: false,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_base_points == 0 || self.max_subbase == 0 || self.max_factor_points == 0 {
            return Err(Error::PreconditionFailed("generator bounds must be at least 1".into()));
        }
        if self.size_budget < self.max_base_points {
            return Err(Error::PreconditionFailed(
                "size budget must be at least the base point bound".into(),
            ));
        }
        Ok(())
    }

    pub(crate) fn build_options(&self) -> BuildOptions {
        BuildOptions { budget: self.size_budget, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    /// Replayable description of the instance, when there is one.
    pub instance: Option<SpecDocument>,
    pub violation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub suite: String,
    pub attempted: usize,
    pub passed: usize,
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Named counters collected across trials.
    pub observations: BTreeMap<String, usize>,
    pub wall_time_ms: u64,
}

impl PropertyReport {
    pub fn is_green(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn is_consistent(&self) -> bool {
        self.attempted == self.passed + self.skipped + self.failures.len()
    }

    pub fn without_timing(mut self) -> Self {
        self.wall_time_ms = 0;
        self
    }

    pub fn observation(&self, key: &str) -> usize {
        self.observations.get(key).copied().unwrap_or(0)
    }
}

#[derive(Debug)]
pub(crate) enum Outcome {
    Pass,
    Skip,
    Fail(Box<Option<SpecDocument>>, String),
}

#[derive(Debug)]
pub(crate) struct Trial {
    pub outcome: Outcome,
    pub notes: Vec<(String, usize)>,
}

impl Trial {
    pub fn pass() -> Self {
        Trial { outcome: Outcome::Pass, notes: Vec::new() }
    }

    pub fn skip(reason: &str) -> Self {
        Trial { outcome: Outcome::Skip, notes: vec![(format!("skip: {reason}"), 1)] }
    }

    pub fn fail(instance: Option<SpecDocument>, violation: impl Into<String>) -> Self {
        Trial { outcome: Outcome::Fail(Box::new(instance), violation.into()), notes: Vec::new() }
    }

    pub fn note(mut self, key: impl Into<String>, count: usize) -> Self {
        self.notes.push((key.into(), count));
        self
    }
}

pub(crate) fn run_trials(
    suite: &str,
    stream: u32,
    cfg: &GenConfig,
    count: usize,
    trial: impl Fn(&GenConfig, &mut ChaCha8Rng) -> Trial + Sync,
) -> PropertyReport {
    let start = Instant::now();
    let results: Vec<Trial> = (0..count)
        .into_par_iter()
        .map(|t| trial(cfg, &mut rng_for(cfg, stream, t)))
        .collect();
    let mut report = PropertyReport {
        suite: suite.to_string(),
        attempted: count,
        passed: 0,
        skipped: 0,
        failures: Vec::new(),
        observations: BTreeMap::new(),
        wall_time_ms: 0,
    };
    for (t, result) in results.into_iter().enumerate() {
        match result.outcome {
            Outcome::Pass => report.passed += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(instance, violation) => report.failures.push(Failure { trial: t, instance: *instance, violation }),
        }
        for (key, n) in result.notes {
            *report.observations.entry(key).or_default() += n;
        }
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report
}

/// Builds within the budget, corrupting the result in mutation mode.
/// `None` means the carrier is over budget.
pub(crate) fn build_instance(cfg: &GenConfig, sel: &SubbaseSel, factors: &FactorAssignment) -> Option<AmalgamSpace> {
    if carrier_size(sel, factors).is_none_or(|n| n > cfg.size_budget) {
        return None;
    }
    let a = AmalgamSpace::build(sel, factors, cfg.build_options()).ok()?;
    Some(if cfg.mutate { mutate(a) } else { a })
}

/// Makes carrier point 0 a generic point: its only neighbourhood becomes
/// the whole space and it leaves every other neighbourhood.
pub fn mutate(a: AmalgamSpace) -> AmalgamSpace {
    let n = a.len();
    let nbhd: Vec<PointSet> = a
        .space()
        .neighborhoods()
        .iter()
        .enumerate()
        .map(|(x, u)| {
            if x == 0 {
                PointSet::full(n)
            } else {
                let mut u = u.clone();
                u.remove(0);
                u
            }
        })
        .collect();
    let space = TopSpace::from_neighborhoods(nbhd).expect("mutation keeps a preorder");
    a.with_space(space)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    AmalgamativeT0,
    AmalgamativeHd,
    AmalgamativeZeroDim,
    Structural,
    Quotient,
    ConnWitness,
    ConnSecond,
    Connectify,
    Homogeneity,
    Reduced,
    Ind,
    OracleHd,
    OracleConn,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::AmalgamativeT0,
        Suite::AmalgamativeHd,
        Suite::AmalgamativeZeroDim,
        Suite::Structural,
        Suite::Quotient,
        Suite::ConnWitness,
        Suite::ConnSecond,
        Suite::Connectify,
        Suite::Homogeneity,
        Suite::Reduced,
        Suite::Ind,
        Suite::OracleHd,
        Suite::OracleConn,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::AmalgamativeT0 => "amalgamative-T0",
            Suite::AmalgamativeHd => "amalgamative-HD",
            Suite::AmalgamativeZeroDim => "amalgamative-0dim",
            Suite::Structural => "structural",
            Suite::Quotient => "quotient",
            Suite::ConnWitness => "conn-witness",
            Suite::ConnSecond => "conn-second",
            Suite::Connectify => "connectify",
            Suite::Homogeneity => "homog",
            Suite::Reduced => "reduced",
            Suite::Ind => "ind",
            Suite::OracleHd => "oracle-hd",
            Suite::OracleConn => "oracle-conn",
        }
    }

    pub fn from_id(id: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.id() == id)
    }

    fn stream(self) -> u32 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u32
    }

    pub fn run(self, cfg: &GenConfig) -> PropertyReport {
        let stream = self.stream();
        match self {
            Suite::AmalgamativeT0 | Suite::AmalgamativeHd | Suite::AmalgamativeZeroDim => {
                suites::amalgamative(self, stream, cfg)
            }
            Suite::Structural => suites::structural(self.id(), stream, cfg),
            Suite::Quotient => suites::quotient(self.id(), stream, cfg),
            Suite::ConnWitness => suites::conn_witness(self.id(), stream, cfg),
            Suite::ConnSecond => suites::conn_second(self.id(), stream, cfg),
            Suite::Connectify => suites::connectify(self.id(), stream, cfg),
            Suite::Homogeneity => suites::homogeneity(self.id(), stream, cfg),
            Suite::Reduced => suites::reduced(self.id(), stream, cfg),
            Suite::Ind => suites::ind(self.id(), stream, cfg),
            Suite::OracleHd => oracles::hereditary(self.id(), cfg),
            Suite::OracleConn => oracles::connectivity(self.id(), stream, cfg),
        }
    }
}

/// Every suite in registry order.
pub fn run_all(cfg: &GenConfig) -> Vec<PropertyReport> {
    Suite::ALL.iter().map(|s| s.run(cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> GenConfig {
        GenConfig { trials: 12, ..GenConfig::default() }
    }

    #[test]
    fn config_validation() {
        assert!(GenConfig::default().validate().is_ok());
        assert!(GenConfig { max_subbase: 0, ..GenConfig::default() }.validate().is_err());
        assert!(GenConfig { size_budget: 3, ..GenConfig::default() }.validate().is_err());
    }

    #[test]
    fn suite_ids_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::from_id(s.id()), Some(s));
        }
        assert_eq!(Suite::from_id("bogus"), None);
    }

    #[test]
    fn zero_trials_give_empty_reports() {
        let cfg = GenConfig { trials: 0, ..GenConfig::default() };
        for r in run_all(&cfg) {
            assert_eq!((r.attempted, r.passed, r.skipped, r.failures.len()), (0, 0, 0, 0), "{}", r.suite);
        }
    }

    #[test]
    fn quick_run_is_green_and_consistent() {
        for s in Suite::ALL {
            if s == Suite::OracleHd {
                continue;
            }
            let r = s.run(&quick());
            assert!(r.is_consistent(), "{}", r.suite);
            assert!(r.is_green(), "{}: {:?}", r.suite, r.failures.first());
        }
    }

    #[test]
    fn mutation_is_detected() {
        let cfg = GenConfig { mutate: true, ..quick() };
        let r = Suite::AmalgamativeZeroDim.run(&cfg);
        assert!(!r.failures.is_empty());
    }
}
