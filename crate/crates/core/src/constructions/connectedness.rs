use crate::amalgam::{AmalgamPoint, AmalgamSpace};
use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Whether `E` meets the witness condition: every member either misses a
/// point of `E` or carries a connected factor.
pub fn witness_condition(a: &AmalgamSpace, e: &PointSet) -> bool {
    a.sel()
        .sets()
        .iter()
        .enumerate()
        .all(|(s, member)| !e.is_subset(member) || a.factors().get(s).is_connected())
}

/// Returns `true` when the base is connected and `E` meets the witness
/// condition, in which case the amalgam is checked to be connected (a
/// disconnected amalgam is reported as a verification error). Returns
/// `false`, making no claim, otherwise.
pub fn connectedness_with_witness(a: &AmalgamSpace, e: &PointSet) -> Result<bool> {
    if e.universe() != a.base().len() {
        return Err(Error::PreconditionFailed(format!(
            "witness set lives on {} points, base has {}",
            e.universe(),
            a.base().len()
        )));
    }
    if !a.base().is_connected() || !witness_condition(a, e) {
        return Ok(false);
    }
    if !a.space().is_connected() {
        return Err(Error::Verification(
            "witness condition holds but the amalgam is disconnected".into(),
        ));
    }
    Ok(true)
}

/// Whether the base is connected and either the whole base is not a member
/// or its factor is connected.
pub fn whole_space_condition(a: &AmalgamSpace) -> bool {
    a.base().is_connected()
        && a
            .sel()
            .whole_space_member()
            .is_none_or(|s| a.factors().get(s).is_connected())
}

/// Like [`connectedness_with_witness`] for [`whole_space_condition`].
pub fn connectedness_whole_space(a: &AmalgamSpace) -> Result<bool> {
    if !whole_space_condition(a) {
        return Ok(false);
    }
    if !a.space().is_connected() {
        return Err(Error::Verification(
            "whole-space condition holds but the amalgam is disconnected".into(),
        ));
    }
    Ok(true)
}

/// A chain of embedded base copies linking two amalgam points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnWitness {
    /// The witness points `p_0, ..., p_{n-1}`, ascending.
    pub e: Vec<usize>,
    /// `z_0, ..., z_{n+1}`.
    pub chain: Vec<AmalgamPoint>,
    /// Full selectors `f_0, ..., f_n`.
    pub selectors: Vec<Vec<usize>>,
    /// Carrier images of the base under `f_0, ..., f_n`.
    pub copies: Vec<PointSet>,
}

/// Links `y0` to `y1` by `n + 1` connected base copies, where `n = |E|`.
///
/// Starting from `z_0 = y0`, the selector `f_i` keeps `z_i` where it is
/// defined and copies `y1` elsewhere; `z_{i+1}` is `f_i` read at `p_i`,
/// where `p_n` is the base point of `y1`. The last link is finished inside
/// the fiber over `y1`'s base point, which is connected on the members where
/// `z_{n+1}` and `y1` still differ.
pub fn connecting_chain(a: &AmalgamSpace, e: &PointSet, y0: usize, y1: usize) -> Result<ConnWitness> {
    if y0 >= a.len() || y1 >= a.len() {
        return Err(Error::PreconditionFailed(format!(
            "points {y0}, {y1} not both in a carrier of {}",
            a.len()
        )));
    }
    if e.universe() != a.base().len() || !a.base().is_connected() || !witness_condition(a, e) {
        return Err(Error::PreconditionFailed(
            "base connected and witness condition required".into(),
        ));
    }
    let target = a.point(y1);
    let mut stops = e.to_vec();
    stops.push(target.base);

    let mut chain = vec![a.point(y0).clone()];
    let mut selectors = Vec::with_capacity(stops.len());
    let mut copies = Vec::with_capacity(stops.len());
    for &p in &stops {
        let z = chain.last().expect("chain starts nonempty");
        let f: Vec<usize> = (0..a.sel().len())
            .map(|s| z.get(s).or(target.get(s)).unwrap_or(0))
            .collect();
        copies.push(a.embed_base(&f)?.image());
        chain.push(AmalgamPoint::restrict(a.sel(), p, &f));
        selectors.push(f);
    }
    let w = ConnWitness { e: e.to_vec(), chain, selectors, copies };
    w.verify(a, y0, y1)?;
    Ok(w)
}

impl ConnWitness {
    /// Checks the chain's invariants against `a`, independently of how the
    /// chain was produced.
    pub fn verify(&self, a: &AmalgamSpace, y0: usize, y1: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        let n = self.e.len();
        if self.chain.len() != n + 2 || self.selectors.len() != n + 1 || self.copies.len() != n + 1 {
            return fail(format!("chain shape does not match |E| = {n}"));
        }
        if self.chain[0] != *a.point(y0) {
            return fail("chain does not start at y0".into());
        }
        for (i, copy) in self.copies.iter().enumerate() {
            if *copy != a.embed_base(&self.selectors[i])?.image() {
                return fail(format!("copy {i} is not the image of its selector"));
            }
            if !a.space().subspace(copy).is_connected() {
                return fail(format!("copy {i} is disconnected"));
            }
            for z in &self.chain[i..=i + 1] {
                match a.index_of(z) {
                    Some(t) if copy.contains(t) => {}
                    _ => return fail(format!("chain point {z} is not in copy {i}")),
                }
            }
        }
        let last = &self.chain[n + 1];
        let target = a.point(y1);
        if last.base != target.base {
            return fail("chain does not reach the fiber of y1".into());
        }
        let e = PointSet::from_indices(a.base().len(), self.e.iter().copied());
        for s in last.dom() {
            if last.get(s) != target.get(s) {
                if !e.is_subset(&a.sel().sets()[s]) {
                    return fail(format!("chain end differs from y1 on member {s}, which misses E"));
                }
                if !a.factors().get(s).is_connected() {
                    return fail(format!("chain end differs from y1 on member {s}, whose factor is disconnected"));
                }
            }
        }
        Ok(())
    }
}
