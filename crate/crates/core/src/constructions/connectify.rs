use crate::amalgam::{AmalgamPoint, AmalgamSpace, BuildOptions, FactorAssignment, SubbaseSel};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{generate_topology, ContinuousMap, TopSpace};

/// Cap on the number of ambient opens scanned for each `Φ(S)`.
pub const PHI_SEARCH_LIMIT: usize = 1 << 16;

/// A proper dense connected extension of an amalgam.
#[derive(Clone, Debug)]
pub struct Connectification {
    pub ambient: TopSpace,
    pub dense_embed: ContinuousMap,
    pub p: usize,
    /// The `Φ(S)` come first, in the order of the original members,
    /// followed by the appended generators.
    pub extended_sel: SubbaseSel,
    pub phi: Vec<PointSet>,
    pub result: AmalgamSpace,
    pub embedding: ContinuousMap,
}

/// Extends `y` over a dense embedding of its base into a connected
/// `ambient` that misses the point `p`.
///
/// Each member `S` is moved to the first open `Φ(S)` of the ambient (by size,
/// then lexicographically) that avoids `p` and traces the image of `S`. The
/// minimal neighbourhoods still missing from the generated topology are
/// appended with one-point factors.
pub fn connectify(
    y: &AmalgamSpace,
    ambient: &TopSpace,
    dense_embed: &ContinuousMap,
    p: usize,
    opts: BuildOptions,
) -> Result<Connectification> {
    if dense_embed.dom() != y.base() || dense_embed.cod() != ambient {
        return Err(Error::PreconditionFailed(
            "embedding must run from the amalgam's base into the ambient space".into(),
        ));
    }
    if !dense_embed.is_embedding() {
        return Err(Error::NotEmbedding);
    }
    let image = dense_embed.image();
    if !ambient.is_dense(&image) {
        return Err(Error::NotDense);
    }
    if p >= ambient.len() || image.contains(p) {
        return Err(Error::PreconditionFailed(format!("point {p} is not outside the embedded base")));
    }
    if !ambient.is_connected() {
        return Err(Error::PreconditionFailed("ambient space is disconnected".into()));
    }

    let opens = ambient.opens_bounded(PHI_SEARCH_LIMIT)?;
    let phi: Vec<PointSet> = y
        .sel()
        .sets()
        .iter()
        .enumerate()
        .map(|(s, member)| {
            let target = member.image(dense_embed.values(), ambient.len());
            opens
                .iter()
                .find(|o| !o.contains(p) && o.intersection(&image) == target)
                .cloned()
                .ok_or(Error::NoPhiExists(s))
        })
        .collect::<Result<_>>()?;

    let mut sets = phi.clone();
    for x in ambient.points() {
        let generated = generate_topology(ambient.len(), &sets);
        if generated.neighborhood(x) != ambient.neighborhood(x) {
            sets.push(ambient.neighborhood(x).clone());
        }
    }
    let extended_sel = SubbaseSel::new(ambient.clone(), sets)?;
    let mut factors: Vec<TopSpace> = y.factors().as_slice().to_vec();
    factors.resize(extended_sel.len(), TopSpace::discrete(1));
    let result = AmalgamSpace::build(&extended_sel, &FactorAssignment::new(factors)?, opts)?;

    let f = y
        .carrier()
        .iter()
        .map(|z| {
            let q = dense_embed.apply(z.base);
            let coords = (0..extended_sel.len())
                .map(|s| match z.coords.get(s) {
                    Some(&c) => c,
                    None => extended_sel.sets()[s].contains(q).then_some(0),
                })
                .collect();
            result.index_of(&AmalgamPoint { base: q, coords }).ok_or_else(|| {
                Error::Verification(format!("image of {z} is not a point of the extension"))
            })
        })
        .collect::<Result<Vec<usize>>>()?;
    let embedding = ContinuousMap::new(y.space().clone(), result.space().clone(), f)
        .map_err(|_| Error::NotEmbedding)?;

    if !embedding.is_embedding() {
        return Err(Error::NotEmbedding);
    }
    if !result.space().is_dense(&embedding.image()) {
        return Err(Error::NotDense);
    }
    if embedding.is_surjective() {
        return Err(Error::Verification("extension is not proper".into()));
    }
    if !result.space().is_connected() {
        return Err(Error::Verification("extension is disconnected".into()));
    }
    Ok(Connectification {
        ambient: ambient.clone(),
        dense_embed: dense_embed.clone(),
        p,
        extended_sel,
        phi,
        result,
        embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::build_amalgam;
    use crate::constructions::{discrete, sierpinski};
    use crate::topology::are_homeomorphic;

    fn two_discrete() -> (SubbaseSel, TopSpace, ContinuousMap) {
        let d2 = discrete(2);
        let sel = SubbaseSel::new(d2.clone(), vec![PointSet::singleton(2, 0), PointSet::singleton(2, 1)]).unwrap();
        let ambient = generate_topology(3, &[PointSet::singleton(3, 0), PointSet::singleton(3, 1)]);
        let e = ContinuousMap::new(d2, ambient.clone(), vec![0, 1]).unwrap();
        (sel, ambient, e)
    }

    #[test]
    fn three_point_ambient() {
        let (sel, ambient, e) = two_discrete();
        assert_eq!(ambient.opens().len(), 5);
        let y = build_amalgam(&sel, &FactorAssignment::uniform(&discrete(2), 2).unwrap()).unwrap();
        assert!(y.space().is_discrete() && y.len() == 4);
        let c = connectify(&y, &ambient, &e, 2, BuildOptions::default()).unwrap();
        assert_eq!(c.phi, vec![PointSet::singleton(3, 0), PointSet::singleton(3, 1)]);
        assert_eq!(c.extended_sel.len(), 2);
        assert_eq!(c.result.len(), 5);
        assert!(c.result.space().is_connected());
        assert!(!c.embedding.is_surjective());
    }

    #[test]
    fn singleton_factors_recover_ambient() {
        let (sel, ambient, e) = two_discrete();
        let y = build_amalgam(&sel, &FactorAssignment::uniform(&discrete(1), 2).unwrap()).unwrap();
        let c = connectify(&y, &ambient, &e, 2, BuildOptions::default()).unwrap();
        assert!(are_homeomorphic(c.result.space(), &ambient).unwrap());
        let onto_base: Vec<usize> = c.embedding.values().iter().map(|&t| c.result.point(t).base).collect();
        let expected: Vec<usize> = y.carrier().iter().map(|z| e.apply(z.base)).collect();
        assert_eq!(onto_base, expected);
    }

    #[test]
    fn no_outside_point() {
        let (sel, _, _) = two_discrete();
        let y = build_amalgam(&sel, &FactorAssignment::uniform(&discrete(2), 2).unwrap()).unwrap();
        let id = ContinuousMap::identity(y.base());
        assert!(connectify(&y, y.base(), &id, 0, BuildOptions::default()).is_err());
    }

    #[test]
    fn not_dense() {
        let s2 = sierpinski();
        let sel = SubbaseSel::new(discrete(1), vec![PointSet::full(1)]).unwrap();
        let y = build_amalgam(&sel, &FactorAssignment::uniform(&discrete(2), 1).unwrap()).unwrap();
        // the closed point is not dense in S2
        let e = ContinuousMap::new(discrete(1), s2, vec![0]).unwrap();
        assert_eq!(
            connectify(&y, e.cod(), &e, 1, BuildOptions::default()).unwrap_err(),
            Error::NotDense
        );
    }

    #[test]
    fn phi_may_not_exist() {
        // chain 0 < 2 < 1 in the ambient: every open holding 1 also holds 2
        let ambient = TopSpace::from_neighborhoods(vec![
            PointSet::from_indices(3, [0]),
            PointSet::from_indices(3, [0, 1, 2]),
            PointSet::from_indices(3, [0, 2]),
        ])
        .unwrap();
        let base = ambient.subspace_at(&[0, 1]);
        let sel = SubbaseSel::new(base.clone(), vec![PointSet::singleton(2, 0), PointSet::full(2)]).unwrap();
        let y = build_amalgam(&sel, &FactorAssignment::uniform(&discrete(2), 2).unwrap()).unwrap();
        let e = ContinuousMap::new(base, ambient.clone(), vec![0, 1]).unwrap();
        assert_eq!(
            connectify(&y, &ambient, &e, 2, BuildOptions::default()).unwrap_err(),
            Error::NoPhiExists(1)
        );
    }
}
