//! Amalgams of factor spaces over a subbase of a finite T0 base space.

mod maps;
mod presentation;
mod projections;
mod reduced;

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::topology::{checked_product, generate_topology, product_coords, TopSpace};

pub use presentation::{AddedPointPresentation, SubspaceAmalgam};
pub use projections::PartialProjection;
pub use reduced::ReducedAmalgam;

/// Default cap on the number of carrier points of an amalgam.
pub const DEFAULT_CARRIER_BUDGET: usize = 2000;

/// A subbase of a nonempty T0 space with no empty members.
///
/// Members are identified by their index; equal members are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubbaseSel {
    base: TopSpace,
    sets: Vec<PointSet>,
}

impl SubbaseSel {
    pub fn new(base: TopSpace, sets: Vec<PointSet>) -> Result<Self> {
        if base.is_empty() {
            return Err(Error::EmptyBase);
        }
        if !base.is_t0() {
            return Err(Error::NotT0Base);
        }
        for (i, s) in sets.iter().enumerate() {
            if s.universe() != base.len() {
                return Err(Error::PreconditionFailed(format!(
                    "subbase member {i} is over a universe of {} points, expected {}",
                    s.universe(),
                    base.len()
                )));
            }
            if s.is_empty() {
                return Err(Error::EmptySubbaseMember(i));
            }
            if let Some(j) = sets[..i].iter().position(|t| t == s) {
                return Err(Error::DuplicateSubbaseMember(j, i));
            }
            if !base.is_open(s) {
                return Err(Error::MemberNotOpen(i));
            }
        }
        if generate_topology(base.len(), &sets) != base {
            return Err(Error::SubbaseDoesNotGenerate);
        }
        Ok(SubbaseSel { base, sets })
    }

    pub fn base(&self) -> &TopSpace {
        &self.base
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn member(&self, s: usize) -> Result<&PointSet> {
        self.sets.get(s).ok_or(Error::UnknownSubbaseMember(s))
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Indices of the members containing `p`, ascending.
    pub fn members_containing(&self, p: usize) -> Vec<usize> {
        (0..self.sets.len()).filter(|&s| self.sets[s].contains(p)).collect()
    }

    /// Whether the full base set is a member; returns its index.
    pub fn whole_space_member(&self) -> Option<usize> {
        self.sets.iter().position(PointSet::is_full)
    }
}

/// One nonempty factor space per subbase member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorAssignment(Vec<TopSpace>);

impl FactorAssignment {
    pub fn new(factors: Vec<TopSpace>) -> Result<Self> {
        if let Some(i) = factors.iter().position(TopSpace::is_empty) {
            return Err(Error::EmptyFactor(i));
        }
        Ok(FactorAssignment(factors))
    }

    /// Every member gets the same factor.
    pub fn uniform(space: &TopSpace, members: usize) -> Result<Self> {
        Self::new(vec![space.clone(); members])
    }

    pub fn get(&self, s: usize) -> &TopSpace {
        &self.0[s]
    }

    pub fn as_slice(&self) -> &[TopSpace] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A point `(p, y)` of an amalgam: a base point and a choice of factor
/// point for exactly the members containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamPoint {
    pub base: usize,
    /// Indexed by subbase member; `None` off the domain.
    pub coords: Vec<Option<usize>>,
}

impl AmalgamPoint {
    /// Restriction of a full selector to the members containing `p`.
    pub fn restrict(sel: &SubbaseSel, p: usize, choice: &[usize]) -> Self {
        AmalgamPoint {
            base: p,
            coords: (0..sel.len())
                .map(|s| sel.sets[s].contains(p).then(|| choice[s]))
                .collect(),
        }
    }

    pub fn get(&self, s: usize) -> Option<usize> {
        self.coords.get(s).copied().flatten()
    }

    /// Members in the domain, ascending.
    pub fn dom(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords
            .iter()
            .enumerate()
            .filter_map(|(s, c)| c.map(|_| s))
    }
}

impl fmt::Display for AmalgamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.base)?;
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter_map(|(s, c)| c.map(|c| format!("{s}:{c}")))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TopologyMode {
    /// Subbasic sets from the minimal neighbourhoods of each factor.
    #[default]
    MinimalOpens,
    /// Subbasic sets from every open set of each factor.
    FullOpens,
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub budget: usize,
    pub mode: TopologyMode,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            budget: DEFAULT_CARRIER_BUDGET,
            mode: TopologyMode::MinimalOpens,
        }
    }
}

/// `Σ_p ∏_{S ∋ p} |Y_S|`, or `None` on overflow.
pub fn carrier_size(sel: &SubbaseSel, factors: &FactorAssignment) -> Option<usize> {
    (0..sel.base.len()).try_fold(0usize, |acc, p| {
        let sizes: Vec<usize> = sel.members_containing(p).iter().map(|&s| factors.get(s).len()).collect();
        acc.checked_add(checked_product(&sizes)?)
    })
}

/// The amalgam space: carrier, topology, and the data it was built from.
#[derive(Clone, Debug)]
pub struct AmalgamSpace {
    sel: SubbaseSel,
    factors: FactorAssignment,
    carrier: Vec<AmalgamPoint>,
    index: HashMap<AmalgamPoint, usize>,
    fibers: Vec<Range<usize>>,
    space: TopSpace,
}

pub fn build_amalgam(sel: &SubbaseSel, factors: &FactorAssignment) -> Result<AmalgamSpace> {
    AmalgamSpace::build(sel, factors, BuildOptions::default())
}

impl AmalgamSpace {
    /// Carrier points are ordered by base point, then lexicographically by
    /// the factor points of the members containing it (in member order).
    pub fn build(sel: &SubbaseSel, factors: &FactorAssignment, opts: BuildOptions) -> Result<Self> {
        if factors.len() != sel.len() {
            return Err(Error::MismatchedFactors(format!(
                "{} factors for {} subbase members",
                factors.len(),
                sel.len()
            )));
        }
        let size = carrier_size(sel, factors).unwrap_or(usize::MAX);
        if size > opts.budget {
            return Err(Error::bound("amalgam carrier", size, opts.budget));
        }
        let mut carrier = Vec::with_capacity(size);
        let mut fibers = Vec::with_capacity(sel.base.len());
        for p in sel.base.points() {
            let dom = sel.members_containing(p);
            let sizes: Vec<usize> = dom.iter().map(|&s| factors.get(s).len()).collect();
            let start = carrier.len();
            for i in 0..checked_product(&sizes).unwrap() {
                let mut coords = vec![None; sel.len()];
                for (&s, c) in dom.iter().zip(product_coords(i, &sizes)) {
                    coords[s] = Some(c);
                }
                carrier.push(AmalgamPoint { base: p, coords });
            }
            fibers.push(start..carrier.len());
        }
        let index = carrier.iter().cloned().enumerate().map(|(i, y)| (y, i)).collect();
        let mut amalgam = AmalgamSpace {
            sel: sel.clone(),
            factors: factors.clone(),
            carrier,
            index,
            fibers,
            space: TopSpace::empty(),
        };
        let subbases: Vec<Vec<PointSet>> = match opts.mode {
            TopologyMode::MinimalOpens => factors
                .as_slice()
                .iter()
                .map(|f| {
                    let mut v = f.neighborhoods().to_vec();
                    v.sort();
                    v.dedup();
                    v
                })
                .collect(),
            TopologyMode::FullOpens => factors
                .as_slice()
                .iter()
                .map(|f| f.opens_bounded(opts.budget.max(1 << 12)))
                .collect::<Result<_>>()?,
        };
        let space = amalgam.subbasic_topology(&subbases);
        amalgam.space = space.with_labels(amalgam.point_labels());
        Ok(amalgam)
    }

    fn point_labels(&self) -> Vec<String> {
        self.carrier
            .iter()
            .map(|y| {
                let parts: Vec<String> = y
                    .dom()
                    .map(|s| format!("{}={}", s, self.factors.get(s).label(y.get(s).unwrap())))
                    .collect();
                format!("{} | {}", self.sel.base.label(y.base), parts.join(","))
            })
            .collect()
    }

    /// `π_S⁻¹(T)` for a set `T` of points of `Y_S`.
    pub fn subbasic_set(&self, s: usize, t: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.carrier.len(),
            self.carrier
                .iter()
                .enumerate()
                .filter(|(_, y)| y.get(s).is_some_and(|c| t.contains(c)))
                .map(|(i, _)| i),
        )
    }

    /// Topology generated by `π_S⁻¹(T)` for `T` ranging over the given
    /// family of subsets of each factor.
    pub fn subbasic_topology(&self, factor_families: &[Vec<PointSet>]) -> TopSpace {
        let gens: Vec<PointSet> = factor_families
            .iter()
            .enumerate()
            .flat_map(|(s, fam)| fam.iter().map(move |t| self.subbasic_set(s, t)))
            .collect();
        generate_topology(self.carrier.len(), &gens)
    }

    pub fn sel(&self) -> &SubbaseSel {
        &self.sel
    }

    pub fn base(&self) -> &TopSpace {
        &self.sel.base
    }

    pub fn factors(&self) -> &FactorAssignment {
        &self.factors
    }

    pub fn carrier(&self) -> &[AmalgamPoint] {
        &self.carrier
    }

    pub fn point(&self, i: usize) -> &AmalgamPoint {
        &self.carrier[i]
    }

    pub fn index_of(&self, y: &AmalgamPoint) -> Option<usize> {
        self.index.get(y).copied()
    }

    pub fn space(&self) -> &TopSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    /// Carrier indices over base point `p`.
    pub fn fiber_range(&self, p: usize) -> Range<usize> {
        self.fibers[p].clone()
    }

    /// `π⁻¹(A)` for a set of base points.
    pub fn over(&self, base_points: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.len(),
            base_points.iter().flat_map(|p| self.fibers[p].clone()),
        )
    }

    /// Replaces the topology, e.g. to inject a deliberate fault when
    /// checking that a verification suite detects it.
    pub fn with_space(mut self, space: TopSpace) -> Self {
        assert_eq!(space.len(), self.carrier.len());
        self.space = space;
        self
    }
}
