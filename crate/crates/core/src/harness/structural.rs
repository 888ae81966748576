use rand::Rng;

use crate::amalgam::{AmalgamSpace, BuildOptions, FactorAssignment};
use crate::harness::random_generating_family;
use crate::pointset::PointSet;
use crate::topology::TopSpace;

/// Checks the basic facts every amalgam satisfies, returning the first
/// violation:
///
/// 1. each `π_S` has open domain and is continuous and open;
/// 2. `π` is a continuous open surjection;
/// 3. with one-point factors, `π` is a homeomorphism;
/// 4. each fiber carries the product topology;
/// 5. an amalgam of random factor subspaces is a subspace;
/// 6. random covering subbases of the factors generate the amalgam.
pub fn check_structural_facts<R: Rng>(a: &AmalgamSpace, rng: &mut R) -> Result<(), String> {
    for s in 0..a.sel().len() {
        let pp = a.partial_projection(s).map_err(|e| format!("fact 1, member {s}: {e}"))?;
        if !a.space().is_open(&pp.domain) {
            return Err(format!("fact 1: domain of member {s} is not open"));
        }
        if !pp.map.is_open_map() {
            return Err(format!("fact 1: projection to member {s} is not open"));
        }
    }

    let pi = a.try_projection().map_err(|e| format!("fact 2: {e}"))?;
    if !pi.is_open_map() || !pi.is_surjective() {
        return Err("fact 2: projection is not an open surjection".into());
    }

    let ones = FactorAssignment::uniform(&TopSpace::discrete(1), a.sel().len()).map_err(|e| e.to_string())?;
    let flat = AmalgamSpace::build(a.sel(), &ones, BuildOptions { budget: usize::MAX, ..Default::default() })
        .map_err(|e| format!("fact 3: {e}"))?;
    if !flat.projection().is_homeomorphism() {
        return Err("fact 3: one-point factors do not give the base".into());
    }

    for p in a.base().points() {
        a.fiber_homeomorphism(p).map_err(|e| format!("fact 4: {e}"))?;
    }

    let subs: Vec<PointSet> = a
        .factors()
        .as_slice()
        .iter()
        .map(|f| {
            let mut sub = PointSet::from_indices(f.len(), f.points().filter(|_| rng.gen_bool(0.5)));
            if sub.is_empty() {
                sub.insert(rng.gen_range(0..f.len()));
            }
            sub
        })
        .collect();
    a.subspace_amalgam(&subs).map_err(|e| format!("fact 5: {e}"))?;

    let families: Vec<Vec<PointSet>> = a
        .factors()
        .as_slice()
        .iter()
        .map(|f| random_generating_family(f, usize::MAX, true, rng).expect("no member limit"))
        .collect();
    if a.subbasic_topology(&families) != *a.space() {
        return Err("fact 6: factor subbases do not generate the amalgam".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::tests::six_point;
    use crate::constructions::{circle_amalgam, discrete, pseudo_cone};
    use crate::harness::{mutate, rng_for, GenConfig};

    #[test]
    fn fixtures_satisfy_facts() {
        let mut rng = rng_for(&GenConfig::default(), 99, 0);
        for a in [six_point(), pseudo_cone(&discrete(3)).unwrap(), circle_amalgam(&discrete(2)).unwrap()] {
            check_structural_facts(&a, &mut rng).unwrap();
        }
    }

    #[test]
    fn mutation_breaks_facts() {
        let mut rng = rng_for(&GenConfig::default(), 99, 1);
        assert!(check_structural_facts(&mutate(six_point()), &mut rng).is_err());
    }
}
