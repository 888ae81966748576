use crate::amalgam::{AmalgamPoint, AmalgamSpace, BuildOptions, FactorAssignment};
use crate::error::{Error, Result};
use crate::topology::ContinuousMap;

impl AmalgamSpace {
    fn check_choice(&self, choice: &[usize]) -> Result<()> {
        if choice.len() != self.sel.len() {
            return Err(Error::MismatchedFactors(format!(
                "selector has {} entries for {} members",
                choice.len(),
                self.sel.len()
            )));
        }
        for (s, &c) in choice.iter().enumerate() {
            if c >= self.factors.get(s).len() {
                return Err(Error::PointOutOfRange { index: c, n: self.factors.get(s).len() });
            }
        }
        Ok(())
    }

    /// Amalgam of per-member maps `f_S : Y_S → Z_S`: the map
    /// `(p, y) ↦ (p, S ↦ f_S(y(S)))` into the amalgam of the `Z_S`.
    pub fn map_factors(
        &self,
        maps: &[ContinuousMap],
        targets: &FactorAssignment,
        opts: BuildOptions,
    ) -> Result<(AmalgamSpace, ContinuousMap)> {
        if maps.len() != self.sel.len() || targets.len() != self.sel.len() {
            return Err(Error::MismatchedFactors(format!(
                "{} maps and {} targets for {} members",
                maps.len(),
                targets.len(),
                self.sel.len()
            )));
        }
        for (s, m) in maps.iter().enumerate() {
            if m.dom() != self.factors.get(s) {
                return Err(Error::MismatchedFactors(format!("map {s} has the wrong domain")));
            }
            if m.cod() != targets.get(s) {
                return Err(Error::MismatchedFactors(format!("map {s} has the wrong codomain")));
            }
        }
        let target = if targets == &self.factors {
            self.clone()
        } else {
            AmalgamSpace::build(&self.sel, targets, opts)?
        };
        let f = self
            .carrier
            .iter()
            .map(|y| {
                let image = AmalgamPoint {
                    base: y.base,
                    coords: y
                        .coords
                        .iter()
                        .enumerate()
                        .map(|(s, c)| c.map(|c| maps[s].apply(c)))
                        .collect(),
                };
                target.index[&image]
            })
            .collect();
        let map = ContinuousMap::new(self.space.clone(), target.space.clone(), f)?;
        Ok((target, map))
    }

    /// Embeds the base as `p ↦ (p, choice↾{S : p ∈ S})` for a full selector
    /// `choice ∈ ∏_S Y_S`.
    pub fn embed_base(&self, choice: &[usize]) -> Result<ContinuousMap> {
        self.check_choice(choice)?;
        let f = self
            .base()
            .points()
            .map(|p| self.index[&AmalgamPoint::restrict(&self.sel, p, choice)])
            .collect();
        let map = ContinuousMap::new(self.base().clone(), self.space.clone(), f)?;
        if !map.is_embedding() {
            return Err(Error::NotEmbedding);
        }
        Ok(map)
    }

    /// Embeds `Y_S` into the fiber over `p ∈ S`, holding the other
    /// coordinates at the values of the full selector `rest`.
    pub fn embed_factor(&self, p: usize, s: usize, rest: &[usize]) -> Result<ContinuousMap> {
        if !self.sel.member(s)?.contains(p) {
            return Err(Error::PointNotInMember { point: p, member: s });
        }
        self.check_choice(rest)?;
        let mut y = AmalgamPoint::restrict(&self.sel, p, rest);
        let factor = self.factors.get(s);
        let f = factor
            .points()
            .map(|t| {
                y.coords[s] = Some(t);
                self.index[&y]
            })
            .collect();
        let map = ContinuousMap::new(factor.clone(), self.space.clone(), f)?;
        if !map.is_embedding() {
            return Err(Error::NotEmbedding);
        }
        Ok(map)
    }
}

#[cfg(test)]
mod tests {
    use crate::amalgam::tests::six_point;
    use crate::amalgam::{BuildOptions, FactorAssignment};
    use crate::error::Error;
    use crate::topology::{ContinuousMap, TopSpace};

    #[test]
    fn identity_maps_give_identity() {
        let a = six_point();
        let ids: Vec<ContinuousMap> = a.factors().as_slice().iter().map(ContinuousMap::identity).collect();
        let (target, m) = a.map_factors(&ids, a.factors(), BuildOptions::default()).unwrap();
        assert_eq!(target.space(), a.space());
        assert_eq!(m.values(), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn swap_gives_nontrivial_automorphism() {
        let a = six_point();
        let d2 = TopSpace::discrete(2);
        let swap = ContinuousMap::new(d2.clone(), d2.clone(), vec![1, 0]).unwrap();
        let maps = vec![ContinuousMap::identity(&d2), swap];
        let (_, m) = a.map_factors(&maps, a.factors(), BuildOptions::default()).unwrap();
        assert!(m.is_homeomorphism());
        assert_ne!(m.values(), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn constant_maps_collapse_to_base() {
        let a = six_point();
        let one = TopSpace::discrete(1);
        let maps: Vec<ContinuousMap> = (0..2)
            .map(|_| ContinuousMap::new(TopSpace::discrete(2), one.clone(), vec![0, 0]).unwrap())
            .collect();
        let targets = FactorAssignment::uniform(&one, 2).unwrap();
        let (target, m) = a.map_factors(&maps, &targets, BuildOptions::default()).unwrap();
        assert_eq!(target.space().clone().without_labels(), *a.base());
        let pi = a.projection();
        let composed: Vec<usize> = m.values().iter().map(|&t| target.point(t).base).collect();
        assert_eq!(composed, pi.values());
    }

    #[test]
    fn mismatched_maps_rejected() {
        let a = six_point();
        let maps = vec![ContinuousMap::identity(&TopSpace::discrete(3)); 2];
        assert!(matches!(
            a.map_factors(&maps, a.factors(), BuildOptions::default()),
            Err(Error::MismatchedFactors(_))
        ));
    }

    #[test]
    fn base_embedding() {
        let a = six_point();
        let e = a.embed_base(&[0, 0]).unwrap();
        let image: Vec<String> = e.values().iter().map(|&i| a.point(i).to_string()).collect();
        assert_eq!(image, ["0|1:0", "1|0:0,1:0"]);
        assert!(a.embed_base(&[0, 2]).is_err());
    }

    #[test]
    fn factor_embedding() {
        let a = six_point();
        let e = a.embed_factor(1, 0, &[0, 0]).unwrap();
        assert_eq!(e.dom().len(), 2);
        assert!(e.values().iter().all(|&i| a.point(i).base == 1));
        assert!(matches!(a.embed_factor(0, 0, &[0, 0]), Err(Error::PointNotInMember { .. })));
    }
}
