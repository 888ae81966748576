//! The specialization preorder of a finite space, and its inverse: the
//! Alexandrov topology of a finite preorder.

use crate::pointset::PointSet;
use crate::topology::TopSpace;

/// `x ≤ y` iff every open set containing `x` contains `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecPreorder {
    // up[x] = { y : x ≤ y }
    up: Vec<PointSet>,
}

pub type Edge = (usize, usize);

pub fn specialization(space: &TopSpace) -> SpecPreorder {
    SpecPreorder {
        up: space.neighborhoods().to_vec(),
    }
}

impl SpecPreorder {
    /// Reflexive-transitive closure of the given pairs `(x, y)` meaning `x ≤ y`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut up: Vec<PointSet> = (0..n).map(|x| PointSet::singleton(n, x)).collect();
        for &(x, y) in pairs {
            up[x].insert(y);
        }
        // Warshall
        for k in 0..n {
            let uk = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&uk);
                }
            }
        }
        SpecPreorder { up }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn up_set(&self, x: usize) -> &PointSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: usize) -> PointSet {
        PointSet::from_indices(self.len(), (0..self.len()).filter(|&y| self.leq(y, x)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|x| self.leq(x, x))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.len()).all(|x| self.up[x].iter().all(|y| self.up[y].is_subset(&self.up[x])))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.len()).all(|x| self.up[x].iter().all(|y| y == x || !self.leq(y, x)))
    }

    /// Opens are the up-closed sets.
    pub fn alexandrov_topology(&self) -> TopSpace {
        TopSpace::from_neighborhoods(self.up.clone()).expect("a preorder always yields a topology")
    }

    /// Connected components of the comparability graph, via union-find.
    pub fn comparability_components(&self) -> Vec<PointSet> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for x in 0..n {
            for y in self.up[x].iter() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
        let mut groups: Vec<Option<PointSet>> = vec![None; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            groups[r].get_or_insert_with(|| PointSet::empty(n)).insert(x);
        }
        groups.into_iter().flatten().collect()
    }

    /// Covering pairs `(x, y)` with `x < y` strictly and nothing strictly
    /// between, plus one pair per two-element block of equivalent points
    /// (`x ≤ y ≤ x`, reported with `x < y` as indices).
    pub fn hasse_edges(&self) -> (Vec<Edge>, Vec<Edge>) {
        let n = self.len();
        let strict = |a: usize, b: usize| self.leq(a, b) && !self.leq(b, a);
        let mut covers = Vec::new();
        let mut equiv = Vec::new();
        for x in 0..n {
            for y in self.up[x].iter() {
                if y == x {
                    continue;
                }
                if self.leq(y, x) {
                    if x < y {
                        equiv.push((x, y));
                    }
                    continue;
                }
                if !(0..n).any(|z| strict(x, z) && strict(z, y)) {
                    covers.push((x, y));
                }
            }
        }
        (covers, equiv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sierpinski_order() {
        let s2 = crate::topology::generate_topology(2, &[PointSet::singleton(2, 1)]);
        let p = specialization(&s2);
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        assert!(p.is_antisymmetric());
        assert_eq!(p.alexandrov_topology(), s2);
    }

    #[test]
    fn discrete_and_indiscrete() {
        let d = specialization(&TopSpace::discrete(2));
        let pairs: Vec<_> = (0..2).flat_map(|x| (0..2).map(move |y| (x, y))).filter(|&(x, y)| d.leq(x, y)).collect();
        assert_eq!(pairs, vec![(0, 0), (1, 1)]);
        let i = specialization(&TopSpace::indiscrete(2));
        assert!((0..2).all(|x| (0..2).all(|y| i.leq(x, y))));
        assert!(!i.is_antisymmetric());
    }

    #[test]
    fn closure_of_pairs() {
        let p = SpecPreorder::from_pairs(4, &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        assert!(p.is_reflexive() && p.is_transitive());
        assert_eq!(p.comparability_components().len(), 2);
        let (covers, equiv) = p.hasse_edges();
        assert_eq!(covers, vec![(0, 1), (1, 2)]);
        assert!(equiv.is_empty());
    }
}
