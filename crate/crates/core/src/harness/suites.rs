use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::amalgam::{AmalgamSpace, FactorAssignment, SubbaseSel};
use crate::constructions::{
    connectedness_whole_space, connectedness_with_witness, connecting_chain, connectify as connectify_op,
    homogeneity_transfer, ind_comparison, HomogeneityOutcome,
};
use crate::document::SpecDocument;
use crate::error::Error;
use crate::harness::{
    build_instance, check_structural_facts, random_connected_poset, random_connected_preorder, random_factors,
    random_partition_space, random_poset, random_preorder, random_selection, run_trials, GenConfig, PropertyReport,
    Suite, Trial,
};
use crate::pointset::PointSet;
use crate::topology::{
    automorphism_group, is_homogeneous, ContinuousMap, TopSpace, DEFAULT_HEREDITARY_BOUND, DEFAULT_IND_BOUND,
    DEFAULT_WITNESS_BOUND,
};

/// Product bound for the quotient presentation suite.
pub const QUOTIENT_PRODUCT_BOUND: usize = 256;
/// Largest amalgam whose full automorphism group is enumerated as a second
/// homogeneity check.
pub const HOMOGENEITY_ENUMERATION_POINTS: usize = 6;
/// Instance cap for the reduced amalgam suite.
pub const REDUCED_INSTANCES: usize = 200;
/// Random point pairs linked by a chain in each witness trial.
pub const CHAINS_PER_TRIAL: usize = 3;

type Sample = (SubbaseSel, FactorAssignment);

fn doc(a: &AmalgamSpace) -> Option<SpecDocument> {
    Some(SpecDocument::from_amalgam(a))
}

fn doc_parts(sample: &Sample) -> Option<SpecDocument> {
    Some(SpecDocument::from_parts(&sample.0, &sample.1))
}

fn sample(
    cfg: &GenConfig,
    rng: &mut ChaCha8Rng,
    base_gen: impl FnMut(&mut ChaCha8Rng) -> TopSpace,
    factor_gen: impl FnMut(&mut ChaCha8Rng) -> TopSpace,
) -> Option<Sample> {
    let sel = random_selection(cfg, rng, base_gen)?;
    let factors = random_factors(&sel, rng, factor_gen);
    Some((sel, factors))
}

fn free_sample(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Sample> {
    let (nb, nf) = (cfg.max_base_points, cfg.max_factor_points);
    sample(cfg, rng, |r| random_poset(nb, r), |r| random_preorder(nf, r))
}

fn facts(a: &AmalgamSpace, rng: &mut ChaCha8Rng) -> Option<Trial> {
    check_structural_facts(a, rng)
        .err()
        .map(|v| Trial::fail(doc(a), format!("structural {v}")))
}

fn hereditarily_disconnected(s: &TopSpace) -> bool {
    let fast = s.is_hereditarily_disconnected();
    if s.len() <= DEFAULT_HEREDITARY_BOUND {
        let slow = s
            .is_hereditarily_disconnected_exhaustive(DEFAULT_HEREDITARY_BOUND)
            .expect("within bound");
        // a disagreement counts against the class and surfaces as a failure
        return fast && slow;
    }
    fast
}

fn class_predicate(suite: Suite) -> fn(&TopSpace) -> bool {
    match suite {
        Suite::AmalgamativeT0 => TopSpace::is_t0,
        Suite::AmalgamativeHd => hereditarily_disconnected,
        _ => TopSpace::is_zero_dimensional,
    }
}

fn conditioned_sample(suite: Suite, cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Option<Sample> {
    let (nb, nf) = (cfg.max_base_points, cfg.max_factor_points);
    let discrete = |max: usize| move |r: &mut ChaCha8Rng| TopSpace::discrete(r.gen_range(1..=max));
    match suite {
        Suite::AmalgamativeT0 => sample(cfg, rng, |r| random_poset(nb, r), |r| random_poset(nf, r)),
        Suite::AmalgamativeHd => sample(cfg, rng, discrete(nb), discrete(nf)),
        _ => sample(cfg, rng, discrete(nb), |r| random_partition_space(nf, r)),
    }
}

/// The amalgam is in the class whenever the base and factors are
/// (forward), and when a free amalgam is in the class, so are its base and
/// factors, also as the images of `embed_base` and `embed_factor`
/// (converse).
pub(crate) fn amalgamative(suite: Suite, stream: u32, cfg: &GenConfig) -> PropertyReport {
    let class = class_predicate(suite);
    run_trials(suite.id(), stream, cfg, cfg.trials, |cfg, rng| {
        let Some(forward) = conditioned_sample(suite, cfg, rng) else {
            return Trial::skip("no subbase");
        };
        let (sel, factors) = &forward;
        if !class(sel.base()) || !factors.as_slice().iter().all(class) {
            return Trial::fail(doc_parts(&forward), "generator left the class");
        }
        let Some(a) = build_instance(cfg, sel, factors) else {
            return Trial::skip("budget");
        };
        if let Some(t) = facts(&a, rng) {
            return t;
        }
        if !class(a.space()) {
            return Trial::fail(doc(&a), "amalgam left the class");
        }

        let Some(free) = free_sample(cfg, rng) else {
            return Trial::pass().note("converse: no subbase", 1);
        };
        let Some(b) = build_instance(cfg, &free.0, &free.1) else {
            return Trial::pass().note("converse: budget", 1);
        };
        if let Some(t) = facts(&b, rng) {
            return t;
        }
        if !class(b.space()) {
            return Trial::pass().note("converse: vacuous", 1);
        }
        if !class(b.base()) || !b.factors().as_slice().iter().all(class) {
            return Trial::fail(doc(&b), "converse: amalgam in class, base or factor not");
        }
        let choice: Vec<usize> = b.factors().as_slice().iter().map(|f| rng.gen_range(0..f.len())).collect();
        let image_in_class = |m: crate::error::Result<ContinuousMap>| {
            m.map(|m| class(&b.space().subspace(&m.image()))).unwrap_or(false)
        };
        if !image_in_class(b.embed_base(&choice)) {
            return Trial::fail(doc(&b), "converse: embedded base copy not in class");
        }
        for s in 0..b.sel().len() {
            let p = b.sel().sets()[s].first().expect("members are nonempty");
            if !image_in_class(b.embed_factor(p, s, &choice)) {
                return Trial::fail(doc(&b), format!("converse: embedded factor {s} not in class"));
            }
        }
        Trial::pass().note("converse: checked", 1)
    })
}

pub(crate) fn structural(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let Some(s) = free_sample(cfg, rng) else { return Trial::skip("no subbase") };
        let Some(a) = build_instance(cfg, &s.0, &s.1) else { return Trial::skip("budget") };
        facts(&a, rng).unwrap_or_else(|| Trial::pass().note("carrier points", a.len()))
    })
}

pub(crate) fn quotient(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let Some(s) = free_sample(cfg, rng) else { return Trial::skip("no subbase") };
        let product = s.1.as_slice().iter().try_fold(s.0.base().len(), |acc, f| acc.checked_mul(f.len()));
        if product.is_none_or(|n| n > QUOTIENT_PRODUCT_BOUND) {
            return Trial::skip("product over bound");
        }
        let Some(a) = build_instance(cfg, &s.0, &s.1) else { return Trial::skip("budget") };
        if let Some(t) = facts(&a, rng) {
            return t;
        }
        match a.quotient_presentation(QUOTIENT_PRODUCT_BOUND) {
            Ok(_) => Trial::pass(),
            Err(e) => Trial::fail(doc(&a), e.to_string()),
        }
    })
}

/// Makes every factor on a member containing `e` connected.
fn force_connected(sel: &SubbaseSel, factors: FactorAssignment, e: &PointSet, max: usize, rng: &mut ChaCha8Rng) -> FactorAssignment {
    let spaces = factors
        .as_slice()
        .iter()
        .enumerate()
        .map(|(s, f)| {
            if e.is_subset(&sel.sets()[s]) && !f.is_connected() {
                random_connected_preorder(max, rng)
            } else {
                f.clone()
            }
        })
        .collect();
    FactorAssignment::new(spaces).expect("nonempty factors")
}

pub(crate) fn conn_witness(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let (nb, nf) = (cfg.max_base_points, cfg.max_factor_points);
        let Some((sel, factors)) = sample(cfg, rng, |r| random_connected_poset(nb, r), |r| random_preorder(nf, r))
        else {
            return Trial::skip("no subbase");
        };
        let n = sel.base().len();
        let e = PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        let factors = force_connected(&sel, factors, &e, nf, rng);
        let Some(a) = build_instance(cfg, &sel, &factors) else { return Trial::skip("budget") };
        if let Some(t) = facts(&a, rng) {
            return t;
        }
        match connectedness_with_witness(&a, &e) {
            Ok(true) => {}
            Ok(false) => return Trial::fail(doc(&a), "witness hypothesis was built but not recognised"),
            Err(err) => return Trial::fail(doc(&a), err.to_string()),
        }
        for _ in 0..CHAINS_PER_TRIAL {
            let (y0, y1) = (rng.gen_range(0..a.len()), rng.gen_range(0..a.len()));
            let checked = connecting_chain(&a, &e, y0, y1).and_then(|w| w.verify(&a, y0, y1));
            if let Err(err) = checked {
                return Trial::fail(doc(&a), format!("chain {y0} -> {y1}: {err}"));
            }
        }
        Trial::pass().note("chains verified", CHAINS_PER_TRIAL).note(format!("|E| = {}", e.len()), 1)
    })
}

pub(crate) fn conn_second(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let (nb, nf) = (cfg.max_base_points, cfg.max_factor_points);
        let Some((sel, factors)) = sample(cfg, rng, |r| random_connected_poset(nb, r), |r| random_preorder(nf, r))
        else {
            return Trial::skip("no subbase");
        };
        let sel = if sel.whole_space_member().is_none() && rng.gen_bool(0.5) {
            let mut sets = sel.sets().to_vec();
            sets.push(PointSet::full(sel.base().len()));
            SubbaseSel::new(sel.base().clone(), sets).expect("adding the whole space keeps a subbase")
        } else {
            sel
        };
        let mut spaces = factors.as_slice().to_vec();
        spaces.resize_with(sel.len(), || random_preorder(nf, rng));
        if let Some(s) = sel.whole_space_member() {
            if !spaces[s].is_connected() {
                spaces[s] = random_connected_preorder(nf, rng);
            }
        }
        let factors = FactorAssignment::new(spaces).expect("nonempty factors");
        let Some(a) = build_instance(cfg, &sel, &factors) else { return Trial::skip("budget") };
        if let Some(t) = facts(&a, rng) {
            return t;
        }
        let with_whole = if a.sel().whole_space_member().is_some() { "whole space member" } else { "no whole space member" };
        match connectedness_whole_space(&a) {
            Ok(true) => Trial::pass().note(with_whole, 1),
            Ok(false) => Trial::fail(doc(&a), "whole-space hypothesis was built but not recognised"),
            Err(err) => Trial::fail(doc(&a), err.to_string()),
        }
    })
}

pub(crate) fn connectify(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let (nb, nf) = (cfg.max_base_points, cfg.max_factor_points);
        let ambient = random_connected_poset(nb + 1, rng);
        let outside: Vec<usize> = ambient.points().filter(|&x| ambient.neighborhood(x).len() > 1).collect();
        if ambient.len() < 2 || outside.is_empty() {
            return Trial::skip("ambient without a non-open point");
        }
        let p = outside[rng.gen_range(0..outside.len())];
        let positions: Vec<usize> = ambient.points().filter(|&x| x != p).collect();
        let base = ambient.subspace_at(&positions);
        let embed = ContinuousMap::new(base.clone(), ambient.clone(), positions).expect("inclusion is continuous");
        let Some((sel, factors)) = sample(cfg, rng, |_| base.clone(), |r| random_preorder(nf, r)) else {
            return Trial::skip("no subbase");
        };
        let Some(y) = build_instance(cfg, &sel, &factors) else { return Trial::skip("budget") };
        if let Some(t) = facts(&y, rng) {
            return t;
        }
        match connectify_op(&y, &ambient, &embed, p, cfg.build_options()) {
            Ok(c) => {
                let image = embed.image();
                for (s, phi) in c.phi.iter().enumerate() {
                    let trace = y.sel().sets()[s].image(embed.values(), ambient.len());
                    if !ambient.is_open(phi) || phi.contains(p) || phi.intersection(&image) != trace {
                        return Trial::fail(doc(&y), format!("Φ of member {s} is wrong"));
                    }
                }
                let verdicts = [
                    (c.embedding.is_embedding(), "embedding"),
                    (c.result.space().is_dense(&c.embedding.image()), "dense"),
                    (!c.embedding.is_surjective(), "proper"),
                    (c.result.space().is_connected(), "connected"),
                ];
                if let Some((_, what)) = verdicts.iter().find(|(ok, _)| !ok) {
                    return Trial::fail(doc(&y), format!("connectification not {what}"));
                }
                let disconnected = if y.space().is_connected() { "input connected" } else { "input disconnected" };
                Trial::pass().note(disconnected, 1)
            }
            Err(Error::NoPhiExists(_)) => Trial::skip("no Φ in ambient"),
            Err(e) if e.is_budget() => Trial::skip("budget"),
            Err(e) => Trial::fail(doc(&y), e.to_string()),
        }
    })
}

/// Discrete base on `Z_n` whose members are the rotations of one random
/// set, so the rotations lie in the subbase stabilizer.
fn cyclic_selection(n: usize, rng: &mut ChaCha8Rng) -> SubbaseSel {
    let base = TopSpace::discrete(n);
    let rotations = |t: &PointSet| -> Vec<PointSet> {
        let mut sets: Vec<PointSet> = (0..n)
            .map(|k| PointSet::from_indices(n, t.iter().map(|i| (i + k) % n)))
            .collect();
        sets.sort();
        sets.dedup();
        sets
    };
    for _ in 0..16 {
        let t = PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
        if t.is_empty() {
            continue;
        }
        if let Ok(sel) = SubbaseSel::new(base.clone(), rotations(&t)) {
            return sel;
        }
    }
    SubbaseSel::new(base, rotations(&PointSet::singleton(n, 0))).expect("singletons generate a discrete space")
}

pub(crate) fn homogeneity(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let n = rng.gen_range(1..=cfg.max_base_points);
        let sel = cyclic_selection(n, rng);
        let blocks = rng.gen_range(1..=cfg.max_factor_points);
        let block = rng.gen_range(1..=cfg.max_factor_points / blocks);
        let z = TopSpace::sum(&vec![TopSpace::indiscrete(block); blocks]);
        let factors = FactorAssignment::uniform(&z, sel.len()).expect("nonempty factor");
        let Some(a) = build_instance(cfg, &sel, &factors) else { return Trial::skip("budget") };
        if let Some(t) = facts(&a, rng) {
            return t;
        }
        match homogeneity_transfer(&a, &z, cfg.max_base_points.max(1)) {
            Ok(HomogeneityOutcome::Homogeneous { certificates, .. }) => {
                if certificates.len() != a.len() {
                    return Trial::fail(doc(&a), "missing certificates");
                }
                match is_homogeneous(a.space(), DEFAULT_WITNESS_BOUND) {
                    Ok(true) => {}
                    Ok(false) => return Trial::fail(doc(&a), "amalgam is not homogeneous"),
                    Err(_) => return Trial::skip("homogeneity search bound"),
                }
                if a.len() <= HOMOGENEITY_ENUMERATION_POINTS {
                    let group = automorphism_group(a.space(), HOMOGENEITY_ENUMERATION_POINTS).expect("within bound");
                    let orbit = PointSet::from_indices(a.len(), group.iter().map(|g| g.apply(0)));
                    if !orbit.is_full() {
                        return Trial::fail(doc(&a), "automorphism enumeration finds a second orbit");
                    }
                    return Trial::pass().note("enumerated", 1);
                }
                Trial::pass()
            }
            Ok(HomogeneityOutcome::NotApplicable { .. }) => {
                Trial::fail(doc(&a), "rotations were not found in the stabilizer")
            }
            Err(e) if e.is_budget() => Trial::skip("budget"),
            Err(e) => Trial::fail(doc(&a), e.to_string()),
        }
    })
}

pub(crate) fn reduced(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials.min(REDUCED_INSTANCES), |cfg, rng| {
        let Some(s) = free_sample(cfg, rng) else { return Trial::skip("no subbase") };
        let Some(a) = build_instance(cfg, &s.0, &s.1) else { return Trial::skip("budget") };
        if let Some(t) = facts(&a, rng) {
            return t;
        }
        let n = a.base().len();
        for mask in 1..1usize << n {
            let w = PointSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
            if let Err(e) = a.reduced(&w) {
                return Trial::fail(doc(&a), format!("W = {:?}: {e}", w.to_vec()));
            }
        }
        Trial::pass().note("subspaces W", (1 << n) - 1)
    })
}

/// Observational: records whether the two dimensions agree.
pub(crate) fn ind(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let Some(s) = free_sample(cfg, rng) else { return Trial::skip("no subbase") };
        let Some(a) = build_instance(cfg, &s.0, &s.1) else { return Trial::skip("budget") };
        if let Some(t) = facts(&a, rng) {
            return t;
        }
        match ind_comparison(&a, DEFAULT_IND_BOUND) {
            Ok(c) => {
                let key = match (c.equal(), c.factors_zero_dimensional) {
                    (true, true) => "equal, factors zero-dimensional",
                    (true, false) => "equal, factors not zero-dimensional",
                    (false, true) => "unequal, factors zero-dimensional",
                    (false, false) => "unequal, factors not zero-dimensional",
                };
                Trial::pass().note(key, 1)
            }
            Err(e) if e.is_budget() => Trial::skip("ind bound"),
            Err(e) => Trial::fail(doc(&a), e.to_string()),
        }
    })
}
