use serde::{Deserialize, Serialize};

use crate::amalgam::AmalgamSpace;
use crate::document::SpecDocument;
use crate::harness::{
    build_instance, random_factors, random_poset, random_preorder, random_selection, run_trials, GenConfig,
    PropertyReport, Trial,
};
use crate::topology::{is_homogeneous, TopSpace, DEFAULT_WITNESS_BOUND};

/// Stream reserved for counterexample searches.
const SEARCH_STREAM: u32 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Predicate {
    T0,
    Connected,
    PathConnected,
    HereditarilyDisconnected,
    ZeroDimensional,
    Discrete,
    Homogeneous,
}

impl Predicate {
    pub const ALL: [Predicate; 7] = [
        Predicate::T0,
        Predicate::Connected,
        Predicate::PathConnected,
        Predicate::HereditarilyDisconnected,
        Predicate::ZeroDimensional,
        Predicate::Discrete,
        Predicate::Homogeneous,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::T0 => "t0",
            Predicate::Connected => "connected",
            Predicate::PathConnected => "path-connected",
            Predicate::HereditarilyDisconnected => "hereditarily-disconnected",
            Predicate::ZeroDimensional => "zero-dimensional",
            Predicate::Discrete => "discrete",
            Predicate::Homogeneous => "homogeneous",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Predicate::ALL.into_iter().find(|p| p.name() == name)
    }

    /// `None` when the check is over its search bound.
    pub fn holds(self, s: &TopSpace) -> Option<bool> {
        Some(match self {
            Predicate::T0 => s.is_t0(),
            Predicate::Connected => s.is_connected(),
            Predicate::PathConnected => s.is_path_connected(),
            Predicate::HereditarilyDisconnected => s.is_hereditarily_disconnected(),
            Predicate::ZeroDimensional => s.is_zero_dimensional(),
            Predicate::Discrete => s.is_discrete(),
            Predicate::Homogeneous => is_homogeneous(s, DEFAULT_WITNESS_BOUND).ok()?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scope {
    Base,
    /// Every factor.
    Factors,
    BaseAndFactors,
    Amalgam,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Claim {
    pub predicate: Predicate,
    pub scope: Scope,
}

impl Claim {
    pub fn new(predicate: Predicate, scope: Scope) -> Self {
        Claim { predicate, scope }
    }

    pub fn holds(&self, a: &AmalgamSpace) -> Option<bool> {
        let p = self.predicate;
        let all_factors = || -> Option<bool> {
            for f in a.factors().as_slice() {
                if !p.holds(f)? {
                    return Some(false);
                }
            }
            Some(true)
        };
        match self.scope {
            Scope::Base => p.holds(a.base()),
            Scope::Factors => all_factors(),
            Scope::BaseAndFactors => Some(p.holds(a.base())? && all_factors()?),
            Scope::Amalgam => p.holds(a.space()),
        }
    }

    fn describe(&self) -> String {
        let scope = match self.scope {
            Scope::Base => "base",
            Scope::Factors => "factors",
            Scope::BaseAndFactors => "base+factors",
            Scope::Amalgam => "amalgam",
        };
        format!("{scope} {}", self.predicate.name())
    }
}

fn all_hold(claims: &[Claim], a: &AmalgamSpace) -> Option<bool> {
    for c in claims {
        if !c.holds(a)? {
            return Some(false);
        }
    }
    Some(true)
}

/// Random free instances violating `hypothesis ⇒ conclusion`, each reported
/// as a failure with a replayable instance. Instances where the hypothesis
/// fails pass vacuously and are counted under "vacuous"; undecidable ones
/// (budget, search bound) are skipped.
pub fn search_counterexample(hypothesis: &[Claim], conclusion: &[Claim], cfg: &GenConfig) -> PropertyReport {
    let name = |cs: &[Claim]| cs.iter().map(Claim::describe).collect::<Vec<_>>().join(" & ");
    let suite = format!("search: {} => {}", name(hypothesis), name(conclusion));
    run_trials(&suite, SEARCH_STREAM, cfg, cfg.trials, |cfg, rng| {
        let (nb, nf) = (cfg.max_base_points, cfg.max_factor_points);
        let Some(sel) = random_selection(cfg, rng, |r| random_poset(nb, r)) else {
            return Trial::skip("no subbase");
        };
        let factors = random_factors(&sel, rng, |r| random_preorder(nf, r));
        let Some(a) = build_instance(cfg, &sel, &factors) else { return Trial::skip("budget") };
        match all_hold(hypothesis, &a) {
            None => Trial::skip("undecided hypothesis"),
            Some(false) => Trial::pass().note("vacuous", 1),
            Some(true) => match all_hold(conclusion, &a) {
                None => Trial::skip("undecided conclusion"),
                Some(true) => Trial::pass().note("confirmed", 1),
                Some(false) => Trial::fail(Some(SpecDocument::from_amalgam(&a)), "hypothesis holds, conclusion fails"),
            },
        }
    })
}
