use crate::amalgam::{AmalgamPoint, AmalgamSpace};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{product_coords, ContinuousMap, TopSpace};

/// `π_S : π⁻¹(S) → Y_S`, with its domain recorded as a subset of the amalgam.
#[derive(Clone, Debug)]
pub struct PartialProjection {
    pub member: usize,
    /// `π⁻¹(S)` inside the amalgam.
    pub domain: PointSet,
    /// Defined on the subspace on `domain`, in carrier order.
    pub map: ContinuousMap,
}

impl AmalgamSpace {
    /// The base projection `(p, y) ↦ p`.
    pub fn projection(&self) -> ContinuousMap {
        let f = self.carrier.iter().map(|y| y.base).collect();
        ContinuousMap::new(self.space.clone(), self.base().clone(), f)
            .expect("the base projection is continuous")
    }

    /// Fails with [`Error::NotContinuous`] only if the topology was replaced
    /// by one the projection is not continuous for.
    pub fn try_projection(&self) -> Result<ContinuousMap> {
        let f = self.carrier.iter().map(|y| y.base).collect();
        ContinuousMap::new(self.space.clone(), self.base().clone(), f)
    }

    pub fn partial_projection(&self, s: usize) -> Result<PartialProjection> {
        let member = self.sel.member(s)?;
        let domain = self.over(member);
        let sub = self.space.subspace(&domain);
        let f = domain
            .iter()
            .map(|i| self.carrier[i].get(s).expect("member contains the base point"))
            .collect();
        let map = ContinuousMap::new(sub, self.factors.get(s).clone(), f)?;
        Ok(PartialProjection { member: s, domain, map })
    }

    /// The subspace `π⁻¹{p}`, in carrier order.
    pub fn fiber(&self, p: usize) -> TopSpace {
        let positions: Vec<usize> = self.fiber_range(p).collect();
        self.space.subspace_at(&positions)
    }

    /// The product of the factors over members containing `p`.
    pub fn fiber_product(&self, p: usize) -> Result<TopSpace> {
        let parts: Vec<TopSpace> = self
            .sel
            .members_containing(p)
            .iter()
            .map(|&s| self.factors.get(s).clone())
            .collect();
        TopSpace::product(&parts, usize::MAX)
    }

    /// Homeomorphism from [`AmalgamSpace::fiber_product`] onto
    /// [`AmalgamSpace::fiber`]. The carrier order makes it the identity on
    /// indices; the map is checked rather than assumed.
    pub fn fiber_homeomorphism(&self, p: usize) -> Result<ContinuousMap> {
        let product = self.fiber_product(p)?;
        let fiber = self.fiber(p);
        let f: Vec<usize> = product.points().collect();
        let map = ContinuousMap::new(product, fiber, f)?;
        if !map.is_homeomorphism() {
            return Err(Error::Verification(format!(
                "fiber over {p} does not carry the product topology"
            )));
        }
        Ok(map)
    }

    /// The map `X × ∏_S Y_S → Y`, `⟨x, y⟩ ↦ y↾{S : x ∈ S}`, checked to be a
    /// quotient map. Fails if the product exceeds `bound` points.
    pub fn quotient_presentation(&self, bound: usize) -> Result<ContinuousMap> {
        let mut parts = vec![self.base().clone()];
        parts.extend(self.factors.as_slice().iter().cloned());
        let sizes: Vec<usize> = parts.iter().map(TopSpace::len).collect();
        let product = TopSpace::product(&parts, bound)?;
        let f: Vec<usize> = product
            .points()
            .map(|i| {
                let coords = product_coords(i, &sizes);
                let y = AmalgamPoint::restrict(&self.sel, coords[0], &coords[1..]);
                self.index[&y]
            })
            .collect();
        let map = ContinuousMap::new(product, self.space.clone(), f)?;
        if !map.is_quotient_map() {
            return Err(Error::Verification("presentation map is not a quotient map".into()));
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use crate::amalgam::tests::six_point;
    use crate::amalgam::{build_amalgam, FactorAssignment, SubbaseSel};
    use crate::pointset::PointSet;
    use crate::topology::{are_homeomorphic, TopSpace};

    #[test]
    fn projection_is_continuous_and_open() {
        let a = six_point();
        let pi = a.projection();
        assert!(pi.is_continuous() && pi.is_open_map());
        let fibers: Vec<usize> = (0..2).map(|p| pi.values().iter().filter(|&&q| q == p).count()).collect();
        assert_eq!(fibers, vec![2, 4]);
    }

    #[test]
    fn partial_projections() {
        let a = six_point();
        let p0 = a.partial_projection(0).unwrap();
        assert_eq!(p0.domain.len(), 4);
        assert!(a.space().is_open(&p0.domain));
        assert!(p0.map.is_open_map() && p0.map.is_surjective());
        let p1 = a.partial_projection(1).unwrap();
        assert!(p1.domain.is_full());
        assert!(a.partial_projection(2).is_err());
    }

    #[test]
    fn fibers_are_products() {
        let a = six_point();
        assert!(a.fiber_homeomorphism(1).is_ok());
        assert!(are_homeomorphic(&a.fiber(1), &TopSpace::discrete(4)).unwrap());
        assert_eq!(a.fiber(0).len(), 2);
    }

    #[test]
    fn quotient_presentation_counts() {
        let a = six_point();
        let q = a.quotient_presentation(256).unwrap();
        assert_eq!(q.dom().len(), 8);
        assert_eq!(q.image().len(), 6);
        assert!(a.quotient_presentation(7).is_err());

        let sel = SubbaseSel::new(
            crate::amalgam::tests::s2(),
            vec![PointSet::singleton(2, 1), PointSet::full(2)],
        )
        .unwrap();
        let cone = build_amalgam(&sel, &FactorAssignment::new(vec![TopSpace::discrete(2), TopSpace::discrete(1)]).unwrap()).unwrap();
        let q = cone.quotient_presentation(256).unwrap();
        assert_eq!(q.dom().len(), 4);
        // the two product points over s0 collapse to the apex
        assert_eq!(q.values()[0], q.values()[1]);
    }
}
