use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use amalgam::amalgam::{
    carrier_size, AmalgamSpace, BuildOptions, FactorAssignment, SubbaseSel, TopologyMode,
};
use amalgam::constructions::{connectedness_with_witness, witness_condition};
use amalgam::document::SpecDocument;
use amalgam::harness::{
    check_structural_facts, random_factors, random_poset, random_preorder, random_selection, GenConfig, Suite,
};
use amalgam::topology::{are_homeomorphic, generate_topology};
use amalgam::{Error, PointSet, TopSpace};

fn cfg() -> GenConfig {
    GenConfig::default()
}

/// A random amalgam with a base of at most five points and factors of at
/// most three, built from a single seed.
fn instance(seed: u64) -> Option<AmalgamSpace> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sel = random_selection(&cfg(), &mut rng, |r| random_poset(5, r))?;
    let factors = random_factors(&sel, &mut rng, |r| random_preorder(3, r));
    AmalgamSpace::build(&sel, &factors, BuildOptions::default()).ok()
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn carrier_count_is_sum_of_products(seed in any::<u64>()) {
        let Some(a) = instance(seed) else { return Ok(()) };
        let expected: usize = a
            .base()
            .points()
            .map(|p| a.sel().members_containing(p).iter().map(|&s| a.factors().get(s).len()).product::<usize>())
            .sum();
        prop_assert_eq!(a.len(), expected);
        prop_assert_eq!(carrier_size(a.sel(), a.factors()), Some(expected));
    }

    #[test]
    fn topology_from_all_factor_opens(seed in any::<u64>()) {
        // Preimages of every open of every factor generate the same space
        // as the minimal neighbourhoods used by default.
        let Some(a) = instance(seed) else { return Ok(()) };
        let mut gens = Vec::new();
        for s in 0..a.sel().len() {
            for u in a.factors().get(s).opens() {
                let set = PointSet::from_indices(
                    a.len(),
                    a.carrier().iter().enumerate().filter(|(_, y)| y.get(s).is_some_and(|c| u.contains(c))).map(|(i, _)| i),
                );
                gens.push(set);
            }
        }
        prop_assert_eq!(&generate_topology(a.len(), &gens), &a.space().clone().without_labels());
        let full = AmalgamSpace::build(a.sel(), a.factors(), BuildOptions { mode: TopologyMode::FullOpens, ..Default::default() }).unwrap();
        prop_assert_eq!(full.space(), a.space());
    }

    #[test]
    fn structural_facts_hold(seed in any::<u64>()) {
        let Some(a) = instance(seed) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        prop_assert_eq!(check_structural_facts(&a, &mut rng), Ok(()));
    }

    #[test]
    fn quotient_presentation(seed in any::<u64>()) {
        let Some(a) = instance(seed) else { return Ok(()) };
        match a.quotient_presentation(256) {
            Ok(q) => prop_assert!(q.is_quotient_map() && q.is_surjective()),
            Err(e) => prop_assert!(matches!(e, Error::BoundExceeded { .. }), "{}", e),
        }
    }

    #[test]
    fn reduced_amalgam_is_the_subspace(seed in any::<u64>(), mask in 1u32..32) {
        let Some(a) = instance(seed) else { return Ok(()) };
        let n = a.base().len();
        let w = PointSet::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
        if w.is_empty() {
            return Ok(());
        }
        let r = a.reduced(&w).unwrap();
        let over = a.over(&w);
        prop_assert!(r.embedding.is_embedding());
        prop_assert_eq!(r.embedding.image(), over.clone());
        prop_assert!(are_homeomorphic(r.amalgam.space(), &a.space().subspace(&over)).unwrap());
    }

    #[test]
    fn singleton_factors_recover_the_base(seed in any::<u64>()) {
        let Some(a) = instance(seed) else { return Ok(()) };
        let ones = FactorAssignment::uniform(&TopSpace::discrete(1), a.sel().len()).unwrap();
        let flat = AmalgamSpace::build(a.sel(), &ones, BuildOptions::default()).unwrap();
        prop_assert!(flat.projection().is_homeomorphism());
    }

    #[test]
    fn t0_transfers_both_ways(seed in any::<u64>()) {
        let Some(a) = instance(seed) else { return Ok(()) };
        let factors_t0 = a.factors().as_slice().iter().all(TopSpace::is_t0);
        prop_assert_eq!(a.space().is_t0(), factors_t0);
    }

    #[test]
    fn witness_condition_implies_connected(seed in any::<u64>()) {
        let Some(a) = instance(seed) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let n = a.base().len();
        let e = PointSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.3)));
        if a.base().is_connected() && witness_condition(&a, &e) {
            prop_assert!(connectedness_with_witness(&a, &e).unwrap());
            prop_assert!(a.space().is_connected());
        }
    }

    #[test]
    fn document_round_trip(seed in any::<u64>()) {
        let Some(a) = instance(seed) else { return Ok(()) };
        let doc = SpecDocument::from_amalgam(&a);
        let back = SpecDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let b = back.build(BuildOptions::default()).unwrap();
        prop_assert_eq!(b.carrier(), a.carrier());
        prop_assert_eq!(b.space().neighborhoods(), a.space().neighborhoods());
    }

    #[test]
    fn generated_subbases_validate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(sel) = random_selection(&cfg(), &mut rng, |r| random_poset(5, r)) {
            prop_assert!(sel.len() <= cfg().max_subbase);
            prop_assert!(SubbaseSel::new(sel.base().clone(), sel.sets().to_vec()).is_ok());
            prop_assert_eq!(&generate_topology(sel.base().len(), sel.sets()), &sel.base().clone().without_labels());
        }
    }

    #[test]
    fn bad_subbases_are_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(sel) = random_selection(&cfg(), &mut rng, |r| random_poset(5, r)) else { return Ok(()) };
        let base = sel.base().clone();
        let n = base.len();

        let mut with_empty = sel.sets().to_vec();
        with_empty.push(PointSet::empty(n));
        prop_assert!(matches!(SubbaseSel::new(base.clone(), with_empty), Err(Error::EmptySubbaseMember(_))));

        if let Some(first) = sel.sets().first() {
            let mut doubled = sel.sets().to_vec();
            doubled.push(first.clone());
            prop_assert!(matches!(SubbaseSel::new(base.clone(), doubled), Err(Error::DuplicateSubbaseMember(..))));
        }

        if let Some(x) = base.points().find(|&x| !base.is_open(&PointSet::singleton(n, x))) {
            let mut not_open = sel.sets().to_vec();
            not_open.push(PointSet::singleton(n, x));
            prop_assert!(SubbaseSel::new(base, not_open).is_err());
        }
    }

    #[test]
    fn reports_are_deterministic(seed in any::<u64>(), idx in 0usize..Suite::ALL.len()) {
        let suite = Suite::ALL[idx];
        if suite == Suite::OracleHd {
            return Ok(());
        }
        let c = GenConfig { seed, trials: 8, ..GenConfig::default() };
        prop_assert_eq!(suite.run(&c).without_timing(), suite.run(&c).without_timing());
    }
}

#[test]
fn non_t0_base_is_rejected() {
    let base = TopSpace::indiscrete(2);
    assert!(matches!(SubbaseSel::new(base, vec![PointSet::full(2)]), Err(Error::NotT0Base)));
}
