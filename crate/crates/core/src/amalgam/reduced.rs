use crate::amalgam::{AmalgamPoint, AmalgamSpace, BuildOptions, FactorAssignment, SubbaseSel};
use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{product_coords, ContinuousMap, TopSpace};

/// The amalgam re-expressed over a subspace `W` of the base.
///
/// Members with equal traces on `W` are grouped; each nonempty trace `T`
/// carries the product of the factors of its group.
#[derive(Clone, Debug)]
pub struct ReducedAmalgam {
    /// Base points of `W`, ascending; point `k` of the reduced base is `w[k]`.
    pub w: Vec<usize>,
    /// Distinct nonempty traces `S ∩ W`, as subsets of the reduced base,
    /// in order of first occurrence.
    pub traces: Vec<PointSet>,
    /// Original member indices with each trace, ascending.
    pub classes: Vec<Vec<usize>>,
    pub amalgam: AmalgamSpace,
    /// Embedding of the reduced amalgam onto `π⁻¹(W)` in the original.
    pub embedding: ContinuousMap,
}

impl AmalgamSpace {
    pub fn reduced(&self, w: &PointSet) -> Result<ReducedAmalgam> {
        if w.is_empty() {
            return Err(Error::EmptySubspace);
        }
        let positions = w.to_vec();
        let mut traces: Vec<PointSet> = Vec::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (s, member) in self.sel.sets().iter().enumerate() {
            let t = member.restrict_to(&positions);
            if t.is_empty() {
                continue;
            }
            match traces.iter().position(|u| *u == t) {
                Some(k) => classes[k].push(s),
                None => {
                    traces.push(t);
                    classes.push(vec![s]);
                }
            }
        }
        let sub_base = self.base().subspace_at(&positions);
        let sel = SubbaseSel::new(sub_base, traces.clone())?;
        let grouped: Vec<TopSpace> = classes
            .iter()
            .map(|class| {
                let parts: Vec<TopSpace> = class.iter().map(|&s| self.factors.get(s).clone()).collect();
                TopSpace::product(&parts, usize::MAX)
            })
            .collect::<Result<_>>()?;
        let factors = FactorAssignment::new(grouped)?;
        let amalgam = AmalgamSpace::build(&sel, &factors, BuildOptions { budget: usize::MAX, ..Default::default() })?;

        let f = amalgam
            .carrier()
            .iter()
            .map(|z| {
                let mut coords = vec![None; self.sel.len()];
                for (k, class) in classes.iter().enumerate() {
                    if let Some(c) = z.get(k) {
                        let sizes: Vec<usize> = class.iter().map(|&s| self.factors.get(s).len()).collect();
                        for (&s, v) in class.iter().zip(product_coords(c, &sizes)) {
                            coords[s] = Some(v);
                        }
                    }
                }
                self.index[&AmalgamPoint { base: positions[z.base], coords }]
            })
            .collect();
        let embedding = ContinuousMap::new(amalgam.space().clone(), self.space.clone(), f)?;
        if !embedding.is_embedding() || embedding.image() != self.over(w) {
            return Err(Error::Verification(
                "reduced amalgam is not homeomorphic to the subspace over W".into(),
            ));
        }
        Ok(ReducedAmalgam { w: positions, traces, classes, amalgam, embedding })
    }
}
