use rayon::prelude::*;

use crate::document::SpecDocument;
use crate::harness::{random_preorder, run_trials, GenConfig, PropertyReport, Trial};
use crate::pointset::PointSet;
use crate::topology::{specialization, TopSpace, DEFAULT_HEREDITARY_BOUND};

/// Points covered by the exhaustive hereditary-disconnectedness oracle.
pub const ORACLE_POINTS: usize = 6;

/// Labeled partial orders on `n = 0, 1, ..., 6` points.
pub const POSET_COUNTS: [usize; 7] = [1, 1, 3, 19, 219, 4231, 130023];

/// Every partial order on `n` labeled points, as up-set bitmasks.
///
/// A poset on `k + 1` points is its restriction to the first `k` plus the
/// strict down-set `D` and up-set `U` of the new point, where `D` is
/// down-closed, `U` is up-closed, they are disjoint, and `D` lies below `U`.
pub fn labeled_posets(n: usize) -> Vec<Vec<u32>> {
    assert!(n < 32);
    let mut layer: Vec<Vec<u32>> = vec![Vec::new()];
    for k in 0..n {
        layer = layer
            .par_iter()
            .flat_map_iter(|up| extensions(up, k))
            .collect();
    }
    layer
}

fn extensions(up: &[u32], k: usize) -> Vec<Vec<u32>> {
    let below = |x: usize, y: usize| up[x] >> y & 1 == 1;
    let down_closed = |d: u32| (0..k).all(|y| d >> y & 1 == 0 || (0..k).all(|x| !below(x, y) || d >> x & 1 == 1));
    let up_closed = |u: u32| (0..k).all(|x| u >> x & 1 == 0 || up[x] & !u == 0);
    let downs: Vec<u32> = (0..1u32 << k).filter(|&d| down_closed(d)).collect();
    let ups: Vec<u32> = (0..1u32 << k).filter(|&u| up_closed(u)).collect();
    let mut out = Vec::new();
    for &d in &downs {
        for &u in &ups {
            if d & u != 0 || (0..k).any(|x| d >> x & 1 == 1 && up[x] & u != u) {
                continue;
            }
            let mut next: Vec<u32> = up
                .iter()
                .enumerate()
                .map(|(x, &m)| if d >> x & 1 == 1 { m | 1 << k } else { m })
                .collect();
            next.push(u | 1 << k);
            out.push(next);
        }
    }
    out
}

fn to_space(up: &[u32]) -> TopSpace {
    let n = up.len();
    let nbhd = up
        .iter()
        .map(|&m| PointSet::from_indices(n, (0..n).filter(|&y| m >> y & 1 == 1)))
        .collect();
    TopSpace::from_neighborhoods(nbhd).expect("up-sets of a partial order")
}

/// A document carrying just `space`, with its minimal neighbourhoods as the
/// subbase and one-point factors.
fn space_doc(space: &TopSpace) -> Option<SpecDocument> {
    let mut sets: Vec<PointSet> = space.neighborhoods().to_vec();
    sets.sort();
    sets.dedup();
    let sel = crate::amalgam::SubbaseSel::new(space.clone(), sets).ok()?;
    let factors = crate::amalgam::FactorAssignment::uniform(&TopSpace::discrete(1), sel.len()).ok()?;
    Some(SpecDocument::from_parts(&sel, &factors))
}

/// The discreteness fast path against the subset-by-subset check on every
/// T0 space with at most six points. Skipped entirely when `trials` is 0.
pub(crate) fn hereditary(id: &str, cfg: &GenConfig) -> PropertyReport {
    let start = std::time::Instant::now();
    let mut report = run_trials(id, 0, cfg, 0, |_, _| Trial::pass());
    if cfg.trials == 0 {
        return report;
    }
    for n in 1..=ORACLE_POINTS {
        let posets = labeled_posets(n);
        report.observations.insert(format!("posets on {n} points"), posets.len());
        let verdicts: Vec<Option<String>> = posets
            .par_iter()
            .map(|up| {
                let s = to_space(up);
                let fast = s.is_hereditarily_disconnected();
                let slow = s.is_hereditarily_disconnected_exhaustive(DEFAULT_HEREDITARY_BOUND).expect("six points");
                (fast != slow).then(|| format!("fast path says {fast}, exhaustive check says {slow}: {up:?}"))
            })
            .collect();
        report.attempted += posets.len();
        for (up, verdict) in posets.iter().zip(verdicts) {
            match verdict {
                None => report.passed += 1,
                Some(violation) => report.failures.push(super::Failure {
                    trial: report.attempted,
                    instance: space_doc(&to_space(up)),
                    violation,
                }),
            }
        }
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    report
}

/// `is_connected` and `components` against the comparability graph of the
/// specialization preorder, on random (not necessarily T0) spaces.
pub(crate) fn connectivity(id: &str, stream: u32, cfg: &GenConfig) -> PropertyReport {
    run_trials(id, stream, cfg, cfg.trials, |cfg, rng| {
        let s = random_preorder(cfg.max_base_points + 3, rng);
        let mut graph = specialization(&s).comparability_components();
        graph.sort();
        let mut comps = s.components();
        comps.sort();
        if s.is_connected() != (graph.len() == 1) || comps != graph {
            return Trial::fail(space_doc(&s), "connectivity disagrees with the comparability graph");
        }
        Trial::pass().note(format!("{} components", graph.len()), 1)
    })
}
