use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// A finite topological space on the points `{0..n-1}`.
///
/// A finite topology is determined by the smallest open set containing each
/// point; every open set is a union of these minimal neighbourhoods. The
/// family of all opens is available through [`TopSpace::opens`] but is never
/// stored, since it can be exponential in `n`.
///
/// Equality compares topologies only; labels are ignored.
#[derive(Clone)]
pub struct TopSpace {
    nbhd: Vec<PointSet>,
    labels: Option<Vec<String>>,
}

impl PartialEq for TopSpace {
    fn eq(&self, other: &Self) -> bool {
        self.nbhd == other.nbhd
    }
}

impl Eq for TopSpace {}

impl fmt::Debug for TopSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("TopSpace");
        d.field("n", &self.len());
        d.field("nbhd", &self.nbhd);
        if let Some(labels) = &self.labels {
            d.field("labels", labels);
        }
        d.finish()
    }
}

/// The smallest topology on `{0..n-1}` containing every generator.
///
/// Generators act as a subbase: the full set is always open (empty
/// intersection) and so is `∅` (empty union).
pub fn generate_topology(n: usize, gens: &[PointSet]) -> TopSpace {
    let mut nbhd = vec![PointSet::full(n); n];
    for g in gens {
        assert_eq!(g.universe(), n, "generator over the wrong universe");
        for x in g.iter() {
            nbhd[x].intersect_with(g);
        }
    }
    let space = TopSpace { nbhd, labels: None };
    debug_assert!(space.check_invariants().is_ok());
    space
}

impl TopSpace {
    /// Builds a space from its minimal neighbourhoods, checking that they
    /// describe a topology (`x ∈ U_x`, and `y ∈ U_x` implies `U_y ⊆ U_x`).
    pub fn from_neighborhoods(nbhd: Vec<PointSet>) -> Result<Self> {
        let space = TopSpace { nbhd, labels: None };
        space.check_invariants()?;
        Ok(space)
    }

    /// Builds a space from an explicit family of open sets, which must
    /// already be a topology.
    pub fn from_opens(n: usize, opens: &[PointSet]) -> Result<Self> {
        if opens.iter().any(|o| o.universe() != n) {
            return Err(Error::NotATopology("set over the wrong universe".into()));
        }
        if !opens.iter().any(|o| o.is_empty()) {
            return Err(Error::NotATopology("∅ missing".into()));
        }
        if !opens.iter().any(|o| o.is_full()) {
            return Err(Error::NotATopology("full set missing".into()));
        }
        let mut family: Vec<&PointSet> = opens.iter().collect();
        family.sort();
        family.dedup();
        let members: std::collections::HashSet<&PointSet> = family.iter().copied().collect();
        for (i, a) in family.iter().enumerate() {
            for b in &family[i + 1..] {
                if !members.contains(&a.union(b)) {
                    return Err(Error::NotATopology(format!("{a:?} ∪ {b:?} not open")));
                }
                if !members.contains(&a.intersection(b)) {
                    return Err(Error::NotATopology(format!("{a:?} ∩ {b:?} not open")));
                }
            }
        }
        let owned: Vec<PointSet> = family.into_iter().cloned().collect();
        Ok(generate_topology(n, &owned))
    }

    pub fn discrete(n: usize) -> Self {
        TopSpace {
            nbhd: (0..n).map(|x| PointSet::singleton(n, x)).collect(),
            labels: None,
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        TopSpace {
            nbhd: vec![PointSet::full(n); n],
            labels: None,
        }
    }

    pub fn empty() -> Self {
        TopSpace {
            nbhd: Vec::new(),
            labels: None,
        }
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert_eq!(labels.len(), self.len(), "one label per point");
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.len();
        for (x, u) in self.nbhd.iter().enumerate() {
            if u.universe() != n {
                return Err(Error::NotATopology(format!("neighbourhood of {x} has wrong universe")));
            }
            if !u.contains(x) {
                return Err(Error::NotATopology(format!("{x} not in its own neighbourhood")));
            }
            for y in u.iter() {
                if !self.nbhd[y].is_subset(u) {
                    return Err(Error::NotATopology(format!(
                        "neighbourhoods of {x} and {y} are not nested"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nbhd.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nbhd.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// The smallest open set containing `x`.
    pub fn neighborhood(&self, x: usize) -> &PointSet {
        &self.nbhd[x]
    }

    pub fn neighborhoods(&self) -> &[PointSet] {
        &self.nbhd
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, points: I) -> PointSet {
        PointSet::from_indices(self.len(), points)
    }

    pub fn is_open(&self, a: &PointSet) -> bool {
        a.iter().all(|x| self.nbhd[x].is_subset(a))
    }

    pub fn is_closed(&self, a: &PointSet) -> bool {
        self.is_open(&a.complement())
    }

    pub fn is_clopen(&self, a: &PointSet) -> bool {
        self.is_open(a) && self.is_closed(a)
    }

    /// Smallest open set containing `a`.
    pub fn open_hull(&self, a: &PointSet) -> PointSet {
        let mut hull = a.clone();
        for x in a.iter() {
            hull.union_with(&self.nbhd[x]);
        }
        hull
    }

    pub fn closure(&self, a: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.len(),
            self.points().filter(|&x| self.nbhd[x].intersects(a)),
        )
    }

    pub fn interior(&self, a: &PointSet) -> PointSet {
        PointSet::from_indices(self.len(), a.iter().filter(|&x| self.nbhd[x].is_subset(a)))
    }

    pub fn boundary(&self, a: &PointSet) -> PointSet {
        self.closure(a).difference(&self.interior(a))
    }

    /// Closure of a single point: every `y` with `x ∈ U_y`.
    pub fn point_closure(&self, x: usize) -> PointSet {
        PointSet::from_indices(self.len(), self.points().filter(|&y| self.nbhd[y].contains(x)))
    }

    /// Every point closure at once.
    pub fn point_closures(&self) -> Vec<PointSet> {
        let mut downs = vec![PointSet::empty(self.len()); self.len()];
        for (x, up) in self.nbhd.iter().enumerate() {
            for y in up.iter() {
                downs[y].insert(x);
            }
        }
        downs
    }

    /// Every open set, ordered by size and then by sorted member list.
    pub fn opens(&self) -> Vec<PointSet> {
        let mut out = Vec::new();
        self.enumerate_opens(&mut out, usize::MAX)
            .expect("unbounded enumeration cannot fail");
        out
    }

    /// As [`TopSpace::opens`], failing once more than `limit` opens exist.
    pub fn opens_bounded(&self, limit: usize) -> Result<Vec<PointSet>> {
        let mut out = Vec::new();
        self.enumerate_opens(&mut out, limit)?;
        Ok(out)
    }

    fn enumerate_opens(&self, out: &mut Vec<PointSet>, limit: usize) -> Result<()> {
        let n = self.len();
        let closures = self.point_closures();
        // Each point is decided once: excluding x excludes its closure,
        // including x includes its neighbourhood.
        fn go(
            space: &TopSpace,
            closures: &[PointSet],
            x: usize,
            inc: PointSet,
            exc: PointSet,
            out: &mut Vec<PointSet>,
            limit: usize,
        ) -> Result<()> {
            let n = space.len();
            let mut x = x;
            while x < n && (inc.contains(x) || exc.contains(x)) {
                x += 1;
            }
            if x == n {
                if out.len() >= limit {
                    return Err(Error::bound("open family", out.len() + 1, limit));
                }
                out.push(inc);
                return Ok(());
            }
            go(space, closures, x + 1, inc.clone(), exc.union(&closures[x]), out, limit)?;
            go(space, closures, x + 1, inc.union(&space.nbhd[x]), exc, out, limit)
        }
        go(self, &closures, 0, PointSet::empty(n), PointSet::empty(n), out, limit)?;
        out.sort_by_cached_key(|s| (s.len(), s.to_vec()));
        Ok(())
    }

    /// Number of open sets, or `None` if it does not fit in a `u128`.
    pub fn count_opens(&self) -> Option<u128> {
        let closures = self.point_closures();
        let mut memo = HashMap::new();
        self.count_upsets(&self.full_set(), &closures, &mut memo)
    }

    fn count_upsets(
        &self,
        part: &PointSet,
        closures: &[PointSet],
        memo: &mut HashMap<PointSet, Option<u128>>,
    ) -> Option<u128> {
        if part.is_empty() {
            return Some(1);
        }
        if let Some(&v) = memo.get(part) {
            return v;
        }
        // Opens of a disjoint union multiply.
        let comps = self.components_within(part, closures);
        let result = if comps.len() > 1 {
            comps.iter().try_fold(1u128, |acc, c| {
                acc.checked_mul(self.count_upsets(c, closures, memo)?)
            })
        } else {
            let x = part.first().unwrap();
            let without_up = part.difference(&self.nbhd[x]);
            let without_down = part.difference(&closures[x]);
            self.count_upsets(&without_up, closures, memo)
                .zip(self.count_upsets(&without_down, closures, memo))
                .and_then(|(a, b)| a.checked_add(b))
        };
        memo.insert(part.clone(), result);
        result
    }

    fn components_within(&self, part: &PointSet, closures: &[PointSet]) -> Vec<PointSet> {
        let mut seen = PointSet::empty(self.len());
        let mut comps = Vec::new();
        for start in part.iter() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = PointSet::singleton(self.len(), start);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                let mut nb = self.nbhd[x].union(&closures[x]);
                nb.intersect_with(part);
                nb.difference_with(&comp);
                for y in nb.iter() {
                    comp.insert(y);
                    stack.push(y);
                }
            }
            seen.union_with(&comp);
            comps.push(comp);
        }
        comps
    }

    /// The subspace on `a`; point `k` of the result is the `k`-th member of `a`.
    pub fn subspace(&self, a: &PointSet) -> TopSpace {
        let positions = a.to_vec();
        self.subspace_at(&positions)
    }

    /// The subspace on the listed points, in the listed order.
    pub fn subspace_at(&self, positions: &[usize]) -> TopSpace {
        let nbhd = positions
            .iter()
            .map(|&x| self.nbhd[x].restrict_to(positions))
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| positions.iter().map(|&x| l[x].clone()).collect());
        TopSpace { nbhd, labels }
    }

    /// Product of spaces. Points are tuples in lexicographic order, the
    /// first factor most significant; see [`product_index`].
    pub fn product(factors: &[TopSpace], bound: usize) -> Result<TopSpace> {
        let sizes: Vec<usize> = factors.iter().map(TopSpace::len).collect();
        let total = checked_product(&sizes).filter(|&t| t <= bound);
        let total = match total {
            Some(t) => t,
            None => {
                return Err(Error::bound(
                    "product",
                    checked_product(&sizes).unwrap_or(usize::MAX),
                    bound,
                ))
            }
        };
        let mut nbhd = Vec::with_capacity(total);
        let tuples: Vec<Vec<usize>> = (0..total).map(|i| product_coords(i, &sizes)).collect();
        for t in &tuples {
            let u = PointSet::from_indices(
                total,
                tuples.iter().enumerate().filter_map(|(j, s)| {
                    s.iter()
                        .zip(t)
                        .zip(factors)
                        .all(|((&sj, &tj), f)| f.nbhd[tj].contains(sj))
                        .then_some(j)
                }),
            );
            nbhd.push(u);
        }
        let labels = if factors.iter().any(|f| f.labels.is_some()) {
            Some(
                tuples
                    .iter()
                    .map(|t| {
                        let parts: Vec<String> =
                            t.iter().zip(factors).map(|(&c, f)| f.label(c)).collect();
                        format!("({})", parts.join(","))
                    })
                    .collect(),
            )
        } else {
            None
        };
        Ok(TopSpace { nbhd, labels })
    }

    /// Topological sum; the points of summand `i` follow those of summand `i-1`.
    pub fn sum(summands: &[TopSpace]) -> TopSpace {
        let total: usize = summands.iter().map(TopSpace::len).sum();
        let mut nbhd = Vec::with_capacity(total);
        let mut offset = 0;
        for s in summands {
            for u in &s.nbhd {
                nbhd.push(PointSet::from_indices(total, u.iter().map(|y| y + offset)));
            }
            offset += s.len();
        }
        TopSpace { nbhd, labels: None }
    }
}

pub(crate) fn checked_product(sizes: &[usize]) -> Option<usize> {
    sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s))
}

/// Index of a tuple within a product of spaces with the given sizes.
pub fn product_index(coords: &[usize], sizes: &[usize]) -> usize {
    coords
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Inverse of [`product_index`].
pub fn product_coords(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for (c, &s) in coords.iter_mut().zip(sizes).rev() {
        *c = index % s;
        index /= s;
    }
    coords
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> TopSpace {
        generate_topology(2, &[PointSet::singleton(2, 1)])
    }

    #[test]
    fn generate_examples() {
        assert_eq!(
            s2().opens(),
            vec![PointSet::empty(2), PointSet::singleton(2, 1), PointSet::full(2)]
        );
        let t = generate_topology(3, &[PointSet::singleton(3, 0), PointSet::singleton(3, 1)]);
        let expected: Vec<PointSet> = [vec![], vec![0], vec![1], vec![0, 1], vec![0, 1, 2]]
            .into_iter()
            .map(|v| PointSet::from_indices(3, v))
            .collect();
        assert_eq!(t.opens(), expected);
        let one = generate_topology(1, &[]);
        assert_eq!(one.opens(), vec![PointSet::empty(1), PointSet::full(1)]);
        assert_eq!(generate_topology(3, &[]), TopSpace::indiscrete(3));
    }

    #[test]
    fn from_opens_rejects_non_topologies() {
        let bad = [PointSet::empty(3), PointSet::singleton(3, 0), PointSet::singleton(3, 1), PointSet::full(3)];
        assert!(TopSpace::from_opens(3, &bad).is_err());
        let missing_full = [PointSet::empty(2), PointSet::singleton(2, 0)];
        assert!(TopSpace::from_opens(2, &missing_full).is_err());
        let ok = [PointSet::empty(2), PointSet::singleton(2, 1), PointSet::full(2)];
        assert_eq!(TopSpace::from_opens(2, &ok).unwrap(), s2());
    }

    #[test]
    fn from_neighborhoods_checks_nesting() {
        let bad = vec![PointSet::from_indices(3, [0, 1]), PointSet::from_indices(3, [1, 2]), PointSet::singleton(3, 2)];
        assert!(TopSpace::from_neighborhoods(bad).is_err());
    }

    #[test]
    fn closure_interior_boundary() {
        let s = s2();
        assert_eq!(s.closure(&s.set([1])).to_vec(), vec![0, 1]);
        assert_eq!(s.closure(&s.set([0])).to_vec(), vec![0]);
        assert!(s.closure(&s.empty_set()).is_empty());
        assert_eq!(s.interior(&s.set([0])).to_vec(), Vec::<usize>::new());
        assert_eq!(s.boundary(&s.set([1])).to_vec(), vec![0]);
        let d2 = TopSpace::discrete(2);
        assert_eq!(d2.closure(&d2.set([0])).to_vec(), vec![0]);
    }

    #[test]
    fn products_and_sums() {
        let p = TopSpace::product(&[TopSpace::discrete(2), TopSpace::discrete(2)], 100).unwrap();
        assert_eq!(p, TopSpace::discrete(4));
        let sum = TopSpace::sum(&[s2(), s2()]);
        assert_eq!(sum.len(), 4);
        assert_eq!(sum.opens().len(), 9);
        assert_eq!(s2().subspace(&PointSet::singleton(2, 0)), TopSpace::discrete(1));
        assert!(TopSpace::product(&[TopSpace::discrete(10), TopSpace::discrete(10)], 50).is_err());
        assert_eq!(product_coords(product_index(&[1, 2, 0], &[2, 3, 4]), &[2, 3, 4]), vec![1, 2, 0]);
    }

    #[test]
    fn count_opens_matches_enumeration() {
        let c = generate_topology(
            4,
            &[
                PointSet::from_indices(4, [0]),
                PointSet::from_indices(4, [1]),
                PointSet::from_indices(4, [0, 1, 2]),
                PointSet::from_indices(4, [0, 1, 3]),
            ],
        );
        assert_eq!(c.count_opens(), Some(c.opens().len() as u128));
        assert_eq!(c.opens().len(), 7);
        assert_eq!(TopSpace::discrete(200).count_opens(), None);
        assert_eq!(TopSpace::discrete(100).count_opens(), Some(1u128 << 100));
        assert!(TopSpace::discrete(12).opens_bounded(100).is_err());
    }
}
