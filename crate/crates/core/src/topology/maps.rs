//! Continuous maps between finite spaces.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::TopSpace;

/// Preimages of opens are open. For finite spaces this is
/// `f(U_x) ⊆ U_{f(x)}` for every `x`.
pub fn is_continuous(dom: &TopSpace, cod: &TopSpace, f: &[usize]) -> bool {
    f.len() == dom.len()
        && f.iter().all(|&y| y < cod.len())
        && dom
            .points()
            .all(|x| dom.neighborhood(x).iter().all(|z| cod.neighborhood(f[x]).contains(f[z])))
}

/// Images of opens are open; it suffices to check minimal neighbourhoods.
pub fn is_open_map(dom: &TopSpace, cod: &TopSpace, f: &[usize]) -> bool {
    dom.points()
        .all(|x| cod.is_open(&dom.neighborhood(x).image(f, cod.len())))
}

fn is_injective(f: &[usize], cod_len: usize) -> bool {
    let mut seen = PointSet::empty(cod_len);
    f.iter().all(|&y| {
        let fresh = !seen.contains(y);
        seen.insert(y);
        fresh
    })
}

fn is_surjective(f: &[usize], cod_len: usize) -> bool {
    PointSet::from_indices(cod_len, f.iter().copied()).is_full()
}

/// Injective, continuous, and the topology pulled back from the codomain
/// is the domain's topology (`f⁻¹(U_{f(x)}) = U_x`).
pub fn is_embedding(dom: &TopSpace, cod: &TopSpace, f: &[usize]) -> bool {
    is_continuous(dom, cod, f)
        && is_injective(f, cod.len())
        && dom
            .points()
            .all(|x| cod.neighborhood(f[x]).preimage(f) == *dom.neighborhood(x))
}

pub fn is_homeomorphism(dom: &TopSpace, cod: &TopSpace, f: &[usize]) -> bool {
    dom.len() == cod.len() && is_embedding(dom, cod, f) && is_surjective(f, cod.len())
}

/// Surjective, continuous, and every set with open preimage is open.
///
/// For each `y` we grow the smallest set `Q ∋ y` with open preimage and
/// compare it with `U_y`.
pub fn is_quotient_map(dom: &TopSpace, cod: &TopSpace, f: &[usize]) -> bool {
    if !is_continuous(dom, cod, f) || !is_surjective(f, cod.len()) {
        return false;
    }
    cod.points().all(|y| {
        let mut q = PointSet::singleton(cod.len(), y);
        loop {
            let hull = dom.open_hull(&q.preimage(f));
            let next = q.union(&hull.image(f, cod.len()));
            if next == q {
                break;
            }
            q = next;
        }
        q == *cod.neighborhood(y)
    })
}

/// A total point function between finite spaces, verified continuous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousMap {
    dom: TopSpace,
    cod: TopSpace,
    f: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(dom: TopSpace, cod: TopSpace, f: Vec<usize>) -> Result<Self> {
        if f.len() != dom.len() {
            return Err(Error::PreconditionFailed(format!(
                "map has {} values for a domain of {} points",
                f.len(),
                dom.len()
            )));
        }
        if let Some(&y) = f.iter().find(|&&y| y >= cod.len()) {
            return Err(Error::PointOutOfRange { index: y, n: cod.len() });
        }
        if !is_continuous(&dom, &cod, &f) {
            return Err(Error::NotContinuous);
        }
        Ok(ContinuousMap { dom, cod, f })
    }

    pub fn identity(space: &TopSpace) -> Self {
        ContinuousMap {
            dom: space.clone(),
            cod: space.clone(),
            f: space.points().collect(),
        }
    }

    pub fn dom(&self) -> &TopSpace {
        &self.dom
    }

    pub fn cod(&self) -> &TopSpace {
        &self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.f
    }

    pub fn apply(&self, x: usize) -> usize {
        self.f[x]
    }

    pub fn image(&self) -> PointSet {
        PointSet::from_indices(self.cod.len(), self.f.iter().copied())
    }

    pub fn is_continuous(&self) -> bool {
        is_continuous(&self.dom, &self.cod, &self.f)
    }

    pub fn is_open_map(&self) -> bool {
        is_open_map(&self.dom, &self.cod, &self.f)
    }

    pub fn is_injective(&self) -> bool {
        is_injective(&self.f, self.cod.len())
    }

    pub fn is_surjective(&self) -> bool {
        is_surjective(&self.f, self.cod.len())
    }

    pub fn is_embedding(&self) -> bool {
        is_embedding(&self.dom, &self.cod, &self.f)
    }

    pub fn is_homeomorphism(&self) -> bool {
        is_homeomorphism(&self.dom, &self.cod, &self.f)
    }

    pub fn is_quotient_map(&self) -> bool {
        is_quotient_map(&self.dom, &self.cod, &self.f)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ContinuousMap) -> Result<ContinuousMap> {
        if self.cod != other.dom {
            return Err(Error::PreconditionFailed("composition of incompatible maps".into()));
        }
        ContinuousMap::new(
            self.dom.clone(),
            other.cod.clone(),
            self.f.iter().map(|&y| other.f[y]).collect(),
        )
    }

    /// Inverse of a bijection; fails unless the inverse is also continuous.
    pub fn inverse(&self) -> Result<ContinuousMap> {
        if self.dom.len() != self.cod.len() || !self.is_injective() {
            return Err(Error::PreconditionFailed("map is not a bijection".into()));
        }
        let mut g = vec![0; self.f.len()];
        for (x, &y) in self.f.iter().enumerate() {
            g[y] = x;
        }
        ContinuousMap::new(self.cod.clone(), self.dom.clone(), g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::generate_topology;

    fn s2() -> TopSpace {
        generate_topology(2, &[PointSet::singleton(2, 1)])
    }

    #[test]
    fn identity_has_every_property() {
        let id = ContinuousMap::identity(&s2());
        assert!(id.is_continuous() && id.is_open_map() && id.is_embedding() && id.is_quotient_map());
        assert!(id.is_homeomorphism());
    }

    #[test]
    fn constant_map_is_not_quotient() {
        let c = ContinuousMap::new(TopSpace::discrete(2), s2(), vec![1, 1]).unwrap();
        assert!(c.is_continuous());
        assert!(!c.is_quotient_map());
        assert!(!c.is_embedding());
    }

    #[test]
    fn discontinuous_rejected() {
        // swapping the points of S2 sends the open {1} to a non-open preimage
        assert_eq!(
            ContinuousMap::new(s2(), s2(), vec![1, 0]).unwrap_err(),
            Error::NotContinuous
        );
        assert!(ContinuousMap::new(s2(), s2(), vec![0, 2]).is_err());
    }

    #[test]
    fn collapse_is_quotient() {
        // D2 -> point is a quotient; S2 -> point too; identity D2 -> S2 is
        // a continuous bijection that is not a homeomorphism
        let q = ContinuousMap::new(TopSpace::discrete(2), TopSpace::discrete(1), vec![0, 0]).unwrap();
        assert!(q.is_quotient_map());
        let b = ContinuousMap::new(TopSpace::discrete(2), s2(), vec![0, 1]).unwrap();
        assert!(!b.is_homeomorphism());
        assert!(!b.is_quotient_map());
        assert!(b.inverse().is_err());
    }

    #[test]
    fn composition_and_inverse() {
        let d = TopSpace::discrete(3);
        let f = ContinuousMap::new(d.clone(), d.clone(), vec![1, 2, 0]).unwrap();
        let g = f.then(&f).unwrap().then(&f).unwrap();
        assert_eq!(g, ContinuousMap::identity(&d));
        assert_eq!(f.then(&f.inverse().unwrap()).unwrap(), ContinuousMap::identity(&d));
    }
}
