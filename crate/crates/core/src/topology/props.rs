//! Separation, connectedness and disconnectedness checkers.

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::TopSpace;

/// Largest space the exhaustive hereditary-disconnectedness check accepts by default.
pub const DEFAULT_HEREDITARY_BOUND: usize = 12;

impl TopSpace {
    /// Distinct points have distinct minimal neighbourhoods.
    pub fn is_t0(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.neighborhoods().iter().all(|u| seen.insert(u))
    }

    /// Every singleton is closed. For finite spaces this is discreteness.
    pub fn is_t1(&self) -> bool {
        self.points().all(|x| self.is_closed(&PointSet::singleton(self.len(), x)))
    }

    pub fn is_discrete(&self) -> bool {
        self.neighborhoods().iter().all(|u| u.len() == 1)
    }

    /// Smallest clopen set containing `x`, grown by alternately taking open
    /// hulls and closures until stable. In a finite space this is the
    /// component of `x`.
    pub fn clopen_hull(&self, x: usize) -> PointSet {
        let mut cur = PointSet::singleton(self.len(), x);
        loop {
            let next = self.closure(&self.open_hull(&cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Connected components, ordered by least member.
    pub fn components(&self) -> Vec<PointSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for x in self.points() {
            if !seen.contains(x) {
                let c = self.clopen_hull(x);
                seen.union_with(&c);
                out.push(c);
            }
        }
        out
    }

    /// The empty space is not connected.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.clopen_hull(0).is_full()
    }

    /// Decided by fence chains: sequences of points each comparable to the
    /// next in the specialization preorder. Each link `x ≤ y` is the image
    /// of a continuous path `[0,1] → {x,y}`.
    pub fn is_path_connected(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let closures = self.point_closures();
        let mut reached = PointSet::singleton(self.len(), 0);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let mut next = self.neighborhood(x).union(&closures[x]);
            next.difference_with(&reached);
            for y in next.iter() {
                reached.insert(y);
                queue.push_back(y);
            }
        }
        reached.is_full()
    }

    /// Every point has a clopen set inside each of its open neighbourhoods.
    /// Clopens containing `x` contain its component, so it suffices that the
    /// component lies inside the minimal neighbourhood.
    pub fn is_zero_dimensional(&self) -> bool {
        self.components()
            .iter()
            .all(|c| c.iter().all(|x| c.is_subset(self.neighborhood(x))))
    }

    /// Every subspace with at least two points is disconnected.
    ///
    /// Any two distinct points related by specialization span a connected
    /// subspace, and a space with no such pair is discrete.
    pub fn is_hereditarily_disconnected(&self) -> bool {
        self.is_discrete()
    }

    /// Exhaustive version of [`TopSpace::is_hereditarily_disconnected`]:
    /// checks connectedness of every subspace with at least two points.
    pub fn is_hereditarily_disconnected_exhaustive(&self, bound: usize) -> Result<bool> {
        let n = self.len();
        if n > bound || n >= usize::BITS as usize {
            return Err(Error::bound("hereditary disconnectedness check", n, bound));
        }
        for mask in 0usize..(1 << n) {
            if mask.count_ones() < 2 {
                continue;
            }
            let positions: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if self.subspace_at(&positions).is_connected() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_dense(&self, a: &PointSet) -> bool {
        self.closure(a).is_full()
    }
}
