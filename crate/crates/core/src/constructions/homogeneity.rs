use crate::amalgam::{AmalgamPoint, AmalgamSpace, BuildOptions};
use crate::error::{Error, Result};
use crate::topology::{automorphism_group, find_homeomorphism, is_homogeneous, ContinuousMap, TopSpace, DEFAULT_WITNESS_BOUND};

/// An autohomeomorphism of the amalgam moving `from` to `to`.
#[derive(Clone, Debug)]
pub struct HomogeneityCertificate {
    pub from: usize,
    pub to: usize,
    pub map: ContinuousMap,
}

#[derive(Clone, Debug)]
pub enum HomogeneityOutcome {
    /// The subbase stabilizer does not act transitively on the base; no
    /// claim is made.
    NotApplicable { stabilizer_size: usize, orbit: Vec<usize> },
    /// Certificates move carrier point 0 to every carrier point.
    Homogeneous { stabilizer_size: usize, certificates: Vec<HomogeneityCertificate> },
}

impl HomogeneityOutcome {
    pub fn is_homogeneous(&self) -> bool {
        matches!(self, HomogeneityOutcome::Homogeneous { .. })
    }
}

/// Base automorphisms that permute the subbase, each paired with its
/// action on member indices.
pub fn subbase_stabilizer(a: &AmalgamSpace, bound: usize) -> Result<Vec<(ContinuousMap, Vec<usize>)>> {
    let sets = a.sel().sets();
    Ok(automorphism_group(a.base(), bound)?
        .into_iter()
        .filter_map(|g| {
            let sigma: Option<Vec<usize>> = sets
                .iter()
                .map(|s| {
                    let image = s.image(g.values(), a.base().len());
                    sets.iter().position(|t| *t == image)
                })
                .collect();
            sigma.map(|sigma| (g, sigma))
        })
        .collect())
}

/// Builds, for every carrier point `y1`, a homeomorphism taking point 0 to
/// `y1`: a stabilizer element `g` with `g(π(y0)) = π(y1)` acts by
/// `f(y)(gS) = y(S)`, then factor automorphisms fix the coordinates.
///
/// `bound` caps the base automorphism enumeration.
pub fn homogeneity_transfer(a: &AmalgamSpace, z: &TopSpace, bound: usize) -> Result<HomogeneityOutcome> {
    if a.factors().as_slice().iter().any(|f| f != z) {
        return Err(Error::FactorsNotUniform);
    }
    if !is_homogeneous(z, DEFAULT_WITNESS_BOUND)? {
        return Err(Error::FactorNotHomogeneous);
    }
    let stabilizer = subbase_stabilizer(a, bound)?;
    let n = a.base().len();
    let mut orbit: Vec<usize> = stabilizer.iter().map(|(g, _)| g.apply(0)).collect();
    orbit.sort_unstable();
    orbit.dedup();
    if orbit.len() != n {
        return Ok(HomogeneityOutcome::NotApplicable { stabilizer_size: stabilizer.len(), orbit });
    }

    let members = a.sel().len();
    let y0 = a.point(0).clone();
    let mut certificates = Vec::with_capacity(a.len());
    for (t, y1) in a.carrier().iter().enumerate() {
        let (g, sigma) = stabilizer
            .iter()
            .find(|(g, _)| g.apply(y0.base) == y1.base)
            .expect("stabilizer is transitive");
        let moved: Vec<usize> = a
            .carrier()
            .iter()
            .map(|y| {
                let mut coords = vec![None; members];
                for s in y.dom() {
                    coords[sigma[s]] = y.get(s);
                }
                a.index_of(&AmalgamPoint { base: g.apply(y.base), coords })
                    .expect("stabilizer maps the carrier onto itself")
            })
            .collect();
        let f = ContinuousMap::new(a.space().clone(), a.space().clone(), moved)?;
        let w = a.point(f.apply(0));

        let maps: Vec<ContinuousMap> = (0..members)
            .map(|s| match (w.get(s), y1.get(s)) {
                (Some(from), Some(to)) => find_homeomorphism(z, z, Some((from, to)), DEFAULT_WITNESS_BOUND)?
                    .map(|h| ContinuousMap::new(z.clone(), z.clone(), h))
                    .unwrap_or(Err(Error::FactorNotHomogeneous)),
                _ => Ok(ContinuousMap::identity(z)),
            })
            .collect::<Result<_>>()?;
        let opts = BuildOptions { budget: usize::MAX, ..Default::default() };
        let (_, h) = a.map_factors(&maps, a.factors(), opts)?;
        let h = ContinuousMap::new(a.space().clone(), a.space().clone(), h.values().to_vec())?;
        let map = f.then(&h)?;
        if !map.is_homeomorphism() || map.apply(0) != t {
            return Err(Error::Verification(format!("certificate for point {t} fails")));
        }
        certificates.push(HomogeneityCertificate { from: 0, to: t, map });
    }
    Ok(HomogeneityOutcome::Homogeneous { stabilizer_size: stabilizer.len(), certificates })
}
