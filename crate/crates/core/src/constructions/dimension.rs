use crate::amalgam::AmalgamSpace;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndComparison {
    pub base: i32,
    pub amalgam: i32,
    pub factors_zero_dimensional: bool,
}

impl IndComparison {
    pub fn equal(&self) -> bool {
        self.base == self.amalgam
    }
}

/// Small inductive dimension of the base and of the amalgam, side by side.
/// Purely observational: nothing is asserted about their relation.
pub fn ind_comparison(a: &AmalgamSpace, bound: usize) -> Result<IndComparison> {
    Ok(IndComparison {
        base: a.base().ind(bound)?,
        amalgam: a.space().ind(bound)?,
        factors_zero_dimensional: a.factors().as_slice().iter().all(|f| f.is_zero_dimensional()),
    })
}
