use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::TopSpace;

/// Largest space [`TopSpace::ind`] accepts by default.
pub const DEFAULT_IND_BOUND: usize = 64;

impl TopSpace {
    /// Small inductive dimension, `-1` for the empty space.
    ///
    /// `ind ≤ k` iff every point has arbitrarily small open neighbourhoods
    /// whose boundary has `ind ≤ k-1`. In a finite space the minimal
    /// neighbourhood `U_x` is the only candidate below itself, so
    /// `ind A = max_x (ind ∂_A(U_x ∩ A) + 1)`, recursing over subspaces of
    /// the original space.
    pub fn ind(&self, bound: usize) -> Result<i32> {
        if self.len() > bound {
            return Err(Error::bound("small inductive dimension", self.len(), bound));
        }
        let mut memo = HashMap::new();
        Ok(self.ind_within(&self.full_set(), &mut memo))
    }

    /// `ind` of the subspace on `part`.
    pub fn ind_of_subspace(&self, part: &PointSet, bound: usize) -> Result<i32> {
        if part.len() > bound {
            return Err(Error::bound("small inductive dimension", part.len(), bound));
        }
        let mut memo = HashMap::new();
        Ok(self.ind_within(part, &mut memo))
    }

    fn ind_within(&self, part: &PointSet, memo: &mut HashMap<PointSet, i32>) -> i32 {
        if part.is_empty() {
            return -1;
        }
        if let Some(&d) = memo.get(part) {
            return d;
        }
        let mut best = -1;
        for x in part.iter() {
            let v = self.neighborhood(x).intersection(part);
            // closure within the subspace is the ambient closure traced on it
            let mut bd = self.closure(&v);
            bd.intersect_with(part);
            bd.difference_with(&v);
            best = best.max(self.ind_within(&bd, memo) + 1);
        }
        memo.insert(part.clone(), best);
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::generate_topology;

    #[test]
    fn small_cases() {
        assert_eq!(TopSpace::empty().ind(10).unwrap(), -1);
        assert_eq!(TopSpace::discrete(2).ind(10).unwrap(), 0);
        let s2 = generate_topology(2, &[PointSet::singleton(2, 1)]);
        assert_eq!(s2.ind(10).unwrap(), 1);
        assert_eq!(TopSpace::indiscrete(3).ind(10).unwrap(), 0);
        assert!(TopSpace::discrete(11).ind(10).is_err());
    }

    #[test]
    fn chain_dimension_is_length() {
        // 0 ≤ 1 ≤ 2 ≤ 3
        let nb: Vec<PointSet> = (0..4).map(|x| PointSet::from_indices(4, x..4)).collect();
        let chain = TopSpace::from_neighborhoods(nb).unwrap();
        assert_eq!(chain.ind(10).unwrap(), 3);
    }
}
