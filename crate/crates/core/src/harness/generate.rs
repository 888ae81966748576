use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amalgam::{FactorAssignment, SubbaseSel};
use crate::harness::GenConfig;
use crate::pointset::PointSet;
use crate::topology::{generate_topology, SpecPreorder, TopSpace};

/// Attempts at resampling before a generator falls back to a fixed choice.
pub const RESAMPLE_ATTEMPTS: usize = 64;

/// Stream `(suite << 32) | trial` of ChaCha8 seeded with `cfg.seed`.
pub fn rng_for(cfg: &GenConfig, suite: u32, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream((u64::from(suite) << 32) | trial as u64);
    rng
}

fn random_subset<R: Rng>(n: usize, p: f64, rng: &mut R) -> PointSet {
    PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(p)))
}

/// Alexandrov space of a random partial order on `1..=max_points` points.
/// The comparability probability is itself drawn uniformly.
pub fn random_poset<R: Rng>(max_points: usize, rng: &mut R) -> TopSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    let p: f64 = rng.gen();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    SpecPreorder::from_pairs(n, &pairs).alexandrov_topology()
}

/// Random T0 space on at most `cfg.max_base_points` points.
pub fn random_space<R: Rng>(cfg: &GenConfig, rng: &mut R) -> TopSpace {
    random_poset(cfg.max_base_points, rng)
}

/// Alexandrov space of a random preorder, which need not be T0.
pub fn random_preorder<R: Rng>(max_points: usize, rng: &mut R) -> TopSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    let p: f64 = rng.gen::<f64>() / 2.0;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    SpecPreorder::from_pairs(n, &pairs).alexandrov_topology()
}

/// Resamples `gen` until `keep` holds, falling back to `fallback`.
pub fn sample_until<R: Rng>(
    rng: &mut R,
    mut gen: impl FnMut(&mut R) -> TopSpace,
    keep: impl Fn(&TopSpace) -> bool,
    fallback: impl FnOnce() -> TopSpace,
) -> TopSpace {
    for _ in 0..RESAMPLE_ATTEMPTS {
        let s = gen(rng);
        if keep(&s) {
            return s;
        }
    }
    fallback()
}

/// Connected random T0 space with a least element as the fallback.
pub fn random_connected_poset<R: Rng>(max_points: usize, rng: &mut R) -> TopSpace {
    sample_until(rng, |r| random_poset(max_points, r), TopSpace::is_connected, || {
        TopSpace::indiscrete(1)
    })
}

pub fn random_connected_preorder<R: Rng>(max_points: usize, rng: &mut R) -> TopSpace {
    sample_until(rng, |r| random_preorder(max_points, r), TopSpace::is_connected, || {
        TopSpace::indiscrete(max_points.max(1))
    })
}

/// Sum of indiscrete blocks of a random partition of `1..=max_points` points.
pub fn random_partition_space<R: Rng>(max_points: usize, rng: &mut R) -> TopSpace {
    let n = rng.gen_range(1..=max_points.max(1));
    let blocks = rng.gen_range(1..=n);
    let mut sizes = vec![1usize; blocks];
    for _ in blocks..n {
        let b = rng.gen_range(0..blocks);
        sizes[b] += 1;
    }
    TopSpace::sum(&sizes.iter().map(|&k| TopSpace::indiscrete(k)).collect::<Vec<_>>())
}

/// A random family of nonempty opens generating `space`, with at most
/// `limit` members, or `None` if pruning did not get below the limit.
/// With `cover`, the family's union is also kept equal to the whole space.
///
/// Starts from the distinct minimal neighbourhoods, adds up to two random
/// open unions, then drops members in random order whenever generation
/// survives (always when over the limit, otherwise with probability 1/2).
pub fn random_generating_family<R: Rng>(
    space: &TopSpace,
    limit: usize,
    cover: bool,
    rng: &mut R,
) -> Option<Vec<PointSet>> {
    let n = space.len();
    let mut family: Vec<PointSet> = space.neighborhoods().to_vec();
    family.sort();
    family.dedup();
    for _ in 0..rng.gen_range(0..=2) {
        let seed = random_subset(n, 0.5, rng);
        let extra = space.open_hull(&seed);
        if !extra.is_empty() && !family.contains(&extra) {
            family.push(extra);
        }
    }
    family.shuffle(rng);
    let mut i = 0;
    while i < family.len() {
        if family.len() > limit || rng.gen_bool(0.5) {
            let removed = family.remove(i);
            let covered = !cover || family.iter().fold(PointSet::empty(n), |acc, f| acc.union(f)).is_full();
            if covered && generate_topology(n, &family) == *space {
                continue;
            }
            family.insert(i, removed);
        }
        i += 1;
    }
    (family.len() <= limit).then_some(family)
}

pub fn random_subbase<R: Rng>(space: &TopSpace, cfg: &GenConfig, rng: &mut R) -> Option<SubbaseSel> {
    let sets = random_generating_family(space, cfg.max_subbase, false, rng)?;
    SubbaseSel::new(space.clone(), sets).ok()
}

/// A base from `base_gen` with a random subbase, resampling the base when
/// no subbase within the member limit was found.
pub fn random_selection<R: Rng>(
    cfg: &GenConfig,
    rng: &mut R,
    mut base_gen: impl FnMut(&mut R) -> TopSpace,
) -> Option<SubbaseSel> {
    (0..RESAMPLE_ATTEMPTS).find_map(|_| {
        let base = base_gen(rng);
        random_subbase(&base, cfg, rng)
    })
}

pub fn random_factors<R: Rng>(
    sel: &SubbaseSel,
    rng: &mut R,
    mut factor_gen: impl FnMut(&mut R) -> TopSpace,
) -> FactorAssignment {
    FactorAssignment::new((0..sel.len()).map(|_| factor_gen(rng)).collect()).expect("generated factors are nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::are_homeomorphic;

    fn cfg() -> GenConfig {
        GenConfig::default()
    }

    #[test]
    fn small_bounds() {
        let mut rng = rng_for(&cfg(), 0, 0);
        for _ in 0..20 {
            assert_eq!(random_poset(1, &mut rng).len(), 1);
        }
        let d2 = TopSpace::discrete(2);
        let s2 = generate_topology(2, &[PointSet::singleton(2, 1)]);
        for _ in 0..50 {
            let s = random_poset(2, &mut rng);
            assert!(s.is_t0());
            if s.len() == 2 {
                assert!(are_homeomorphic(&s, &d2).unwrap() || are_homeomorphic(&s, &s2).unwrap());
            }
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<TopSpace> = (0..5).map(|t| random_space(&cfg(), &mut rng_for(&cfg(), 3, t))).collect();
        let b: Vec<TopSpace> = (0..5).map(|t| random_space(&cfg(), &mut rng_for(&cfg(), 3, t))).collect();
        assert_eq!(a, b);
        let other = GenConfig { seed: 1, ..cfg() };
        let c: Vec<TopSpace> = (0..5).map(|t| random_space(&other, &mut rng_for(&other, 3, t))).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn subbases_validate() {
        let c = cfg();
        let mut rng = rng_for(&c, 1, 0);
        for _ in 0..200 {
            let space = random_space(&c, &mut rng);
            if let Some(sel) = random_subbase(&space, &c, &mut rng) {
                assert!(sel.len() <= c.max_subbase);
                assert!(SubbaseSel::new(space.clone(), sel.sets().to_vec()).is_ok());
            }
        }
    }

    #[test]
    fn sierpinski_subbase_keeps_open_point() {
        let s2 = generate_topology(2, &[PointSet::singleton(2, 1)]);
        let mut rng = rng_for(&cfg(), 2, 0);
        for _ in 0..30 {
            let sel = random_subbase(&s2, &cfg(), &mut rng).unwrap();
            assert!(sel.sets().contains(&PointSet::singleton(2, 1)));
        }
    }

    #[test]
    fn partition_spaces_are_zero_dimensional() {
        let mut rng = rng_for(&cfg(), 4, 0);
        for _ in 0..50 {
            assert!(random_partition_space(4, &mut rng).is_zero_dimensional());
        }
    }
}
