use crate::amalgam::{AmalgamPoint, AmalgamSpace, BuildOptions, FactorAssignment};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{product_coords, product_index, ContinuousMap, TopSpace};

/// The amalgam realized as a subspace of a product of extended factors.
#[derive(Clone, Debug)]
pub struct AddedPointPresentation {
    /// `Z_S = Y_S + q_S`, with `q_S` the last point.
    pub extended: Vec<TopSpace>,
    /// Product indices of the subset, in carrier order.
    pub positions: Vec<usize>,
    /// The subset with the subspace topology from `∏_S Z_S`.
    pub space: TopSpace,
    /// Homeomorphism from the amalgam onto `space`.
    pub map: ContinuousMap,
}

/// An amalgam of subspaces `Z_S ⊆ Y_S` and its inclusion.
#[derive(Clone, Debug)]
pub struct SubspaceAmalgam {
    pub amalgam: AmalgamSpace,
    pub inclusion: ContinuousMap,
}

impl AmalgamSpace {
    /// Extends each factor by a point `q_S` whose only neighbourhood is all of
    /// `Z_S` (or, with `isolate_clopen`, an isolated `q_S` when `S` is clopen
    /// in the base), and sends `(p, y)` to the tuple with `z(S) = y(S)` for
    /// `p ∈ S` and `z(S) = q_S` otherwise.
    pub fn added_point_presentation(&self, isolate_clopen: bool, bound: usize) -> Result<AddedPointPresentation> {
        let extended: Vec<TopSpace> = (0..self.sel.len())
            .map(|s| {
                let y = self.factors.get(s);
                let n = y.len() + 1;
                let mut nbhd: Vec<PointSet> = y
                    .neighborhoods()
                    .iter()
                    .map(|u| PointSet::from_indices(n, u.iter()))
                    .collect();
                let isolated = isolate_clopen && self.base().is_clopen(&self.sel.sets()[s]);
                nbhd.push(if isolated { PointSet::singleton(n, n - 1) } else { PointSet::full(n) });
                TopSpace::from_neighborhoods(nbhd).expect("extension is a topology")
            })
            .collect();
        let sizes: Vec<usize> = extended.iter().map(TopSpace::len).collect();
        let product = TopSpace::product(&extended, bound)?;

        let tuple_of = |y: &AmalgamPoint| -> Vec<usize> {
            (0..self.sel.len()).map(|s| y.get(s).unwrap_or(sizes[s] - 1)).collect()
        };
        let positions: Vec<usize> = self.carrier.iter().map(|y| product_index(&tuple_of(y), &sizes)).collect();

        // the subset, described independently of the carrier
        let described = PointSet::from_indices(
            product.len(),
            product.points().filter(|&i| {
                let z = product_coords(i, &sizes);
                self.base().points().any(|p| {
                    (0..self.sel.len()).all(|s| (z[s] == sizes[s] - 1) == !self.sel.sets()[s].contains(p))
                })
            }),
        );
        if PointSet::from_indices(product.len(), positions.iter().copied()) != described {
            return Err(Error::Verification("added-point subset does not match the carrier".into()));
        }

        let space = product.subspace_at(&positions);
        let map = ContinuousMap::new(self.space.clone(), space.clone(), (0..self.len()).collect())?;
        if !map.is_homeomorphism() {
            return Err(Error::Verification("added-point presentation is not homeomorphic".into()));
        }
        Ok(AddedPointPresentation { extended, positions, space, map })
    }

    /// The amalgam of the subspaces `subs[S] ⊆ Y_S`, with its inclusion,
    /// checked to be an embedding.
    pub fn subspace_amalgam(&self, subs: &[PointSet]) -> Result<SubspaceAmalgam> {
        if subs.len() != self.sel.len() {
            return Err(Error::MismatchedFactors(format!(
                "{} subsets for {} members",
                subs.len(),
                self.sel.len()
            )));
        }
        if let Some(s) = subs.iter().position(PointSet::is_empty) {
            return Err(Error::EmptyFactorSubset(s));
        }
        let positions: Vec<Vec<usize>> = subs.iter().map(PointSet::to_vec).collect();
        let factors = FactorAssignment::new(
            positions
                .iter()
                .enumerate()
                .map(|(s, pos)| self.factors.get(s).subspace_at(pos))
                .collect(),
        )?;
        let amalgam = AmalgamSpace::build(&self.sel, &factors, BuildOptions { budget: usize::MAX, ..Default::default() })?;
        let f = amalgam
            .carrier()
            .iter()
            .map(|z| {
                let y = AmalgamPoint {
                    base: z.base,
                    coords: z
                        .coords
                        .iter()
                        .enumerate()
                        .map(|(s, c)| c.map(|c| positions[s][c]))
                        .collect(),
                };
                self.index[&y]
            })
            .collect();
        let inclusion = ContinuousMap::new(amalgam.space().clone(), self.space.clone(), f)?;
        if !inclusion.is_embedding() {
            return Err(Error::Verification("amalgam of subspaces is not a subspace".into()));
        }
        Ok(SubspaceAmalgam { amalgam, inclusion })
    }
}

#[cfg(test)]
mod tests {
    use crate::amalgam::tests::{s2, six_point};
    use crate::amalgam::{build_amalgam, FactorAssignment, SubbaseSel};
    use crate::error::Error;
    use crate::pointset::PointSet;
    use crate::topology::TopSpace;

    #[test]
    fn added_point_cone() {
        let sel = SubbaseSel::new(s2(), vec![PointSet::singleton(2, 1), PointSet::full(2)]).unwrap();
        let a = build_amalgam(&sel, &FactorAssignment::new(vec![TopSpace::discrete(2), TopSpace::discrete(1)]).unwrap()).unwrap();
        let pres = a.added_point_presentation(false, 1000).unwrap();
        assert_eq!(pres.space.len(), 3);
        assert_eq!(pres.extended[0].len(), 3);
    }

    #[test]
    fn added_point_single_member() {
        let sel = SubbaseSel::new(TopSpace::discrete(1), vec![PointSet::full(1)]).unwrap();
        let z = TopSpace::discrete(3);
        let a = build_amalgam(&sel, &FactorAssignment::uniform(&z, 1).unwrap()).unwrap();
        let pres = a.added_point_presentation(false, 1000).unwrap();
        assert_eq!(pres.space.clone().without_labels(), z);
        assert_eq!(pres.positions, vec![0, 1, 2]);
    }

    #[test]
    fn added_point_isolated_clopen() {
        let d2 = TopSpace::discrete(2);
        let sel = SubbaseSel::new(d2.clone(), vec![PointSet::singleton(2, 0), PointSet::singleton(2, 1)]).unwrap();
        let a = build_amalgam(&sel, &FactorAssignment::uniform(&TopSpace::discrete(1), 2).unwrap()).unwrap();
        let pres = a.added_point_presentation(true, 1000).unwrap();
        assert!(pres.space.is_discrete());
        let plain = a.added_point_presentation(false, 1000).unwrap();
        assert!(plain.space.is_discrete());
    }

    #[test]
    fn subspace_amalgams() {
        let a = six_point();
        let full = a.subspace_amalgam(&[PointSet::full(2), PointSet::full(2)]).unwrap();
        assert_eq!(full.amalgam.space(), a.space());
        let shrunk = a.subspace_amalgam(&[PointSet::full(2), PointSet::singleton(2, 0)]).unwrap();
        assert_eq!(shrunk.amalgam.len(), 3);
        let points = a.subspace_amalgam(&[PointSet::singleton(2, 1), PointSet::singleton(2, 0)]).unwrap();
        assert_eq!(points.amalgam.space().clone().without_labels(), s2());
        assert_eq!(
            a.subspace_amalgam(&[PointSet::empty(2), PointSet::full(2)]).unwrap_err(),
            Error::EmptyFactorSubset(0)
        );
    }
}
