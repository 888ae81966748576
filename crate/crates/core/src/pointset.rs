//! Sets of point indices over a fixed universe `{0..n-1}`.

use std::fmt;

use fixedbitset::FixedBitSet;

/// A subset of the points of a finite space.
///
/// The universe size is carried with the set; binary operations require
/// both operands to share it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        PointSet { bits }
    }

    pub fn singleton(universe: usize, point: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(point);
        s
    }

    /// Panics if an index is outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut s = Self::empty(universe);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Like [`PointSet::from_indices`] but reports the first out-of-range index.
    pub fn try_from_indices<I: IntoIterator<Item = usize>>(
        universe: usize,
        indices: I,
    ) -> Result<Self, usize> {
        let mut s = Self::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(i);
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn contains(&self, point: usize) -> bool {
        self.bits.contains(point)
    }

    pub fn insert(&mut self, point: usize) {
        self.bits.insert(point);
    }

    pub fn remove(&mut self, point: usize) {
        self.bits.set(point, false);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    /// Reindexes the members into the universe `{0..positions.len()-1}`,
    /// where `positions[k]` is the old index of new point `k`. Members
    /// outside `positions` are dropped.
    pub fn restrict_to(&self, positions: &[usize]) -> PointSet {
        PointSet::from_indices(
            positions.len(),
            positions
                .iter()
                .enumerate()
                .filter(|(_, &old)| self.contains(old))
                .map(|(new, _)| new),
        )
    }

    /// Image under a point function into a universe of size `universe`.
    pub fn image(&self, f: &[usize], universe: usize) -> PointSet {
        PointSet::from_indices(universe, self.iter().map(|x| f[x]))
    }

    /// Preimage under a point function whose domain has `f.len()` points.
    pub fn preimage(&self, f: &[usize]) -> PointSet {
        PointSet::from_indices(
            f.len(),
            f.iter()
                .enumerate()
                .filter(|(_, &y)| self.contains(y))
                .map(|(x, _)| x),
        )
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = PointSet::from_indices(5, [0, 2]);
        let b = PointSet::from_indices(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0]);
        assert_eq!(a.complement().to_vec(), vec![1, 3, 4]);
        assert!(PointSet::empty(5).is_subset(&a));
        assert!(PointSet::full(3).is_full());
        assert_eq!(PointSet::try_from_indices(2, [0, 2]), Err(2));
    }

    #[test]
    fn restrict_and_preimage() {
        let a = PointSet::from_indices(6, [1, 4, 5]);
        assert_eq!(a.restrict_to(&[4, 0, 1]).to_vec(), vec![0, 2]);
        let f = [2, 0, 2, 1];
        assert_eq!(PointSet::singleton(3, 2).preimage(&f).to_vec(), vec![0, 2]);
        assert_eq!(PointSet::from_indices(4, [1, 3]).image(&f, 3).to_vec(), vec![0, 1]);
    }
}
