//! Homeomorphism search.
//!
//! A bijection between finite spaces is a homeomorphism iff it is an
//! isomorphism of specialization preorders. The search backtracks over
//! point assignments, restricted to candidates with the same colour under
//! an iterated refinement of (up-set size, down-set size, equivalence-class
//! size) by the colours of neighbours.

use std::collections::{BTreeMap, VecDeque};
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{ContinuousMap, TopSpace};

/// Size bound for enumerating all homeomorphisms.
pub const DEFAULT_ENUMERATION_BOUND: usize = 10;
/// Size bound for searching a single witness.
pub const DEFAULT_WITNESS_BOUND: usize = 1024;

fn down_sets(space: &TopSpace) -> Vec<PointSet> {
    space.point_closures()
}

/// Shared colouring of the points of both spaces.
fn refine(a: &TopSpace, b: &TopSpace) -> (Vec<u32>, Vec<u32>) {
    let spaces = [a, b];
    let downs = [down_sets(a), down_sets(b)];
    let mut colors: [Vec<u32>; 2] = [vec![0; a.len()], vec![0; b.len()]];
    let mut palette: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for (s, space) in spaces.iter().enumerate() {
        for x in space.points() {
            let up = space.neighborhood(x);
            let key = vec![
                up.len() as u32,
                downs[s][x].len() as u32,
                up.intersection(&downs[s][x]).len() as u32,
            ];
            let next = palette.len() as u32;
            colors[s][x] = *palette.entry(key).or_insert(next);
        }
    }
    let mut classes = palette.len();
    loop {
        let mut palette: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
        let mut next_colors: [Vec<u32>; 2] = [vec![0; a.len()], vec![0; b.len()]];
        for (s, space) in spaces.iter().enumerate() {
            for x in space.points() {
                let mut ups: Vec<u32> = space.neighborhood(x).iter().map(|y| colors[s][y]).collect();
                let mut dns: Vec<u32> = downs[s][x].iter().map(|y| colors[s][y]).collect();
                ups.sort_unstable();
                dns.sort_unstable();
                let mut key = vec![colors[s][x], u32::MAX];
                key.extend(ups);
                key.push(u32::MAX);
                key.extend(dns);
                let next = palette.len() as u32;
                next_colors[s][x] = *palette.entry(key).or_insert(next);
            }
        }
        colors = next_colors;
        if palette.len() == classes {
            break;
        }
        classes = palette.len();
    }
    let [ca, cb] = colors;
    (ca, cb)
}

struct Search<'a> {
    a: &'a TopSpace,
    b: &'a TopSpace,
    ca: Vec<u32>,
    cb: Vec<u32>,
    order: Vec<usize>,
    /// Points comparable to each point, in either direction.
    near_a: Vec<PointSet>,
    near_b: Vec<PointSet>,
}

fn comparable(space: &TopSpace) -> Vec<PointSet> {
    down_sets(space).iter().zip(space.neighborhoods()).map(|(d, u)| d.union(u)).collect()
}

impl<'a> Search<'a> {
    fn new(a: &'a TopSpace, b: &'a TopSpace, first: Option<usize>) -> Option<Self> {
        if a.len() != b.len() {
            return None;
        }
        let (ca, cb) = refine(a, b);
        let mut ha = ca.clone();
        let mut hb = cb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return None;
        }
        let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in &ca {
            *class_size.entry(c).or_default() += 1;
        }
        // BFS over the comparability graph, each component started at a
        // point of rarest colour, so that assigned points constrain the next.
        let n = a.len();
        let downs = down_sets(a);
        let mut order = Vec::with_capacity(n);
        let mut seen = PointSet::empty(n);
        let mut starts: Vec<usize> = a.points().collect();
        starts.sort_by_key(|&x| (class_size[&ca[x]], x));
        if let Some(f) = first {
            starts.insert(0, f);
        }
        for s in starts {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                let mut nb: Vec<usize> = a.neighborhood(x).union(&downs[x]).difference(&seen).to_vec();
                nb.sort_by_key(|&y| (class_size[&ca[y]], y));
                for y in nb {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        Some(Search { a, b, ca, cb, order, near_a: comparable(a), near_b: comparable(b) })
    }

    /// Mapped points comparable to `x` must go to points related to `y` in
    /// the same way. Counting then rules out extra mapped points near `y`.
    fn consistent(&self, map: &[Option<usize>], used: &PointSet, x: usize, y: usize) -> bool {
        let mut near = 0;
        for x2 in self.near_a[x].iter() {
            let Some(y2) = map[x2] else { continue };
            near += 1;
            if !self.near_b[y].contains(y2)
                || self.a.neighborhood(x).contains(x2) != self.b.neighborhood(y).contains(y2)
                || self.a.neighborhood(x2).contains(x) != self.b.neighborhood(y2).contains(y)
            {
                return false;
            }
        }
        near == self.near_b[y].intersection(used).len()
    }

    fn run<F>(&self, fixed: Option<(usize, usize)>, visit: &mut F)
    where
        F: FnMut(Vec<usize>) -> ControlFlow<()>,
    {
        let n = self.a.len();
        let mut map = vec![None; n];
        let mut used = PointSet::empty(n);
        if let Some((x, y)) = fixed {
            if self.ca[x] != self.cb[y] {
                return;
            }
            map[x] = Some(y);
            used.insert(y);
        }
        let _ = self.step(0, &mut map, &mut used, visit);
    }

    fn step<F>(
        &self,
        k: usize,
        map: &mut Vec<Option<usize>>,
        used: &mut PointSet,
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(Vec<usize>) -> ControlFlow<()>,
    {
        let Some(&x) = self.order.get(k) else {
            return visit(map.iter().map(|m| m.unwrap()).collect());
        };
        if map[x].is_some() {
            return self.step(k + 1, map, used, visit);
        }
        let anchor = self.near_a[x].iter().find_map(|x2| map[x2]);
        let candidates = match anchor {
            Some(y2) => self.near_b[y2].difference(used),
            None => PointSet::full(self.b.len()).difference(used),
        };
        for y in candidates.iter() {
            if self.cb[y] != self.ca[x] || !self.consistent(map, used, x, y) {
                continue;
            }
            map[x] = Some(y);
            used.insert(y);
            let flow = self.step(k + 1, map, used, visit);
            map[x] = None;
            used.remove(y);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Every homeomorphism `a → b`.
pub fn homeomorphisms_between(a: &TopSpace, b: &TopSpace, bound: usize) -> Result<Vec<ContinuousMap>> {
    if a.len() > bound {
        return Err(Error::bound("homeomorphism enumeration", a.len(), bound));
    }
    let mut out = Vec::new();
    if let Some(search) = Search::new(a, b, None) {
        search.run(None, &mut |f| {
            out.push(f);
            ControlFlow::Continue(())
        });
    }
    Ok(out
        .into_iter()
        .map(|f| ContinuousMap::new(a.clone(), b.clone(), f).expect("search yields homeomorphisms"))
        .collect())
}

pub fn automorphism_group(space: &TopSpace, bound: usize) -> Result<Vec<ContinuousMap>> {
    homeomorphisms_between(space, space, bound)
}

/// One homeomorphism `a → b`, optionally sending a prescribed point `x` to `y`.
pub fn find_homeomorphism(
    a: &TopSpace,
    b: &TopSpace,
    fixed: Option<(usize, usize)>,
    bound: usize,
) -> Result<Option<Vec<usize>>> {
    if a.len() > bound {
        return Err(Error::bound("homeomorphism search", a.len(), bound));
    }
    let Some(search) = Search::new(a, b, fixed.map(|(x, _)| x)) else {
        return Ok(None);
    };
    let mut found = None;
    search.run(fixed, &mut |f| {
        found = Some(f);
        ControlFlow::Break(())
    });
    Ok(found)
}

pub fn are_homeomorphic(a: &TopSpace, b: &TopSpace) -> Result<bool> {
    Ok(find_homeomorphism(a, b, None, DEFAULT_WITNESS_BOUND)?.is_some())
}

/// Transitivity of the autohomeomorphism group, decided by growing the
/// orbit of point 0 under witnesses found one target at a time.
pub fn is_homogeneous(space: &TopSpace, bound: usize) -> Result<bool> {
    let n = space.len();
    if n > bound {
        return Err(Error::bound("homogeneity search", n, bound));
    }
    if n <= 1 {
        return Ok(true);
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut orbit = PointSet::singleton(n, 0);
    for t in 1..n {
        if orbit.contains(t) {
            continue;
        }
        match find_homeomorphism(space, space, Some((0, t)), bound)? {
            None => return Ok(false),
            Some(g) => gens.push(g),
        }
        let mut queue: VecDeque<usize> = orbit.iter().collect();
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                if !orbit.contains(g[x]) {
                    orbit.insert(g[x]);
                    queue.push_back(g[x]);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::generate_topology;

    fn s2() -> TopSpace {
        generate_topology(2, &[PointSet::singleton(2, 1)])
    }

    fn circle() -> TopSpace {
        let sets = [vec![0], vec![1], vec![0, 1, 2], vec![0, 1, 3]];
        let gens: Vec<PointSet> = sets.iter().map(|s| PointSet::from_indices(4, s.clone())).collect();
        generate_topology(4, &gens)
    }

    #[test]
    fn discrete_two() {
        let auts = automorphism_group(&TopSpace::discrete(2), 10).unwrap();
        assert_eq!(auts.len(), 2);
        assert!(is_homogeneous(&TopSpace::discrete(2), 10).unwrap());
    }

    #[test]
    fn sierpinski_rigid() {
        let auts = automorphism_group(&s2(), 10).unwrap();
        assert_eq!(auts.len(), 1);
        assert!(!is_homogeneous(&s2(), 10).unwrap());
    }

    #[test]
    fn circle_not_homogeneous() {
        // swaps a<->b and c<->d independently
        assert_eq!(automorphism_group(&circle(), 10).unwrap().len(), 4);
        assert!(!is_homogeneous(&circle(), 10).unwrap());
    }

    #[test]
    fn group_closure_and_inverses() {
        let space = TopSpace::sum(&[circle(), circle()]);
        let auts = automorphism_group(&space, 10).unwrap();
        assert_eq!(auts.len(), 32);
        for f in &auts {
            assert!(auts.contains(&f.inverse().unwrap()));
            for g in &auts {
                assert!(auts.contains(&f.then(g).unwrap()));
            }
        }
    }

    #[test]
    fn prescribed_point() {
        let d = TopSpace::discrete(5);
        let f = find_homeomorphism(&d, &d, Some((0, 3)), 10).unwrap().unwrap();
        assert_eq!(f[0], 3);
        assert!(find_homeomorphism(&s2(), &s2(), Some((0, 1)), 10).unwrap().is_none());
        assert!(find_homeomorphism(&s2(), &TopSpace::discrete(2), None, 10).unwrap().is_none());
        assert!(homeomorphisms_between(&TopSpace::discrete(11), &TopSpace::discrete(11), 10).is_err());
    }

    #[test]
    fn large_homogeneous_sum() {
        let blocks: Vec<TopSpace> = (0..40).map(|_| TopSpace::indiscrete(3)).collect();
        assert!(is_homogeneous(&TopSpace::sum(&blocks), DEFAULT_WITNESS_BOUND).unwrap());
        assert!(is_homogeneous(&TopSpace::discrete(300), DEFAULT_WITNESS_BOUND).unwrap());
    }
}
