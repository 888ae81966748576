use crate::amalgam::{build_amalgam, AmalgamSpace, FactorAssignment, SubbaseSel};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{generate_topology, TopSpace};

/// Two points `s0, s1` with opens `∅, {s1}, X`.
pub fn sierpinski() -> TopSpace {
    generate_topology(2, &[PointSet::singleton(2, 1)]).with_labels(["s0", "s1"])
}

/// Panics if `k == 0`.
pub fn discrete(k: usize) -> TopSpace {
    assert!(k >= 1, "discrete space needs at least one point");
    TopSpace::discrete(k)
}

pub fn indiscrete(k: usize) -> TopSpace {
    assert!(k >= 1, "indiscrete space needs at least one point");
    TopSpace::indiscrete(k)
}

const CIRCLE_ARCS: [&[usize]; 4] = [&[0], &[1], &[0, 1, 2], &[0, 1, 3]];

/// Four-point model of the circle: open points `a, b` and closed points
/// `c, d`, with `U_c = {a,b,c}` and `U_d = {a,b,d}`.
pub fn finite_circle() -> TopSpace {
    let gens: Vec<PointSet> = CIRCLE_ARCS
        .iter()
        .map(|arc| PointSet::from_indices(4, arc.iter().copied()))
        .collect();
    generate_topology(4, &gens).with_labels(["a", "b", "c", "d"])
}

/// The arcs `{a}, {b}, {a,b,c}, {a,b,d}` of [`finite_circle`], together
/// with the antipodal pair `{c, d}`, which no arc contains.
pub fn semicircle_subbase() -> (SubbaseSel, PointSet) {
    let sets = CIRCLE_ARCS
        .iter()
        .map(|arc| PointSet::from_indices(4, arc.iter().copied()))
        .collect();
    let sel = SubbaseSel::new(finite_circle(), sets).expect("arcs generate the circle");
    let antipodes = PointSet::from_indices(4, [2, 3]);
    debug_assert!(sel.sets().iter().all(|s| !antipodes.is_subset(s)));
    (sel, antipodes)
}

/// Amalgam over the finite circle with every arc carrying `factor`.
pub fn circle_amalgam(factor: &TopSpace) -> Result<AmalgamSpace> {
    let (sel, _) = semicircle_subbase();
    build_amalgam(&sel, &FactorAssignment::uniform(factor, sel.len())?)
}

/// Finite cone over `k`: base Sierpiński space, `k` attached to `{s1}` and
/// a point attached to the whole space. The point over `s0` is the apex.
pub fn pseudo_cone(k: &TopSpace) -> Result<AmalgamSpace> {
    if k.is_empty() {
        return Err(Error::EmptyFactor(0));
    }
    let sel = SubbaseSel::new(sierpinski(), vec![PointSet::singleton(2, 1), PointSet::full(2)])?;
    build_amalgam(&sel, &FactorAssignment::new(vec![k.clone(), discrete(1)])?)
}
