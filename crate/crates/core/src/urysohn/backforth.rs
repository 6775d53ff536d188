//! Back-and-forth steps inside an approximant.

use crate::error::{Error, Result};
use crate::urysohn::approximant::Approximant;
use crate::urysohn::extension::{prop53_prescription, BfState};

impl BfState {
    pub fn validate_in(&self, a: &Approximant) -> Result<()> {
        self.validate_with(a.len(), |i, j| a.dist(i, j))
    }
}

/// Extends `st` by `z -> z'`, where `z'` is the first point of `a` (in index
/// order) whose distances match the one-point prescription exactly.
pub fn back_and_forth_extend(a: &Approximant, st: &BfState, z: usize) -> Result<BfState> {
    st.validate_in(a)?;
    if z >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: z,
            len: a.len(),
        });
    }
    let anchors = prop53_prescription(|i, j| a.dist(i, j), &a.diam_bound(), st, z)?;
    let found = (0..a.len())
        .find(|&p| anchors.iter().all(|(q, v)| a.dist(p, *q) == *v))
        .ok_or(Error::Unsaturated)?;
    let mut pairs = st.pairs.clone();
    pairs.push((z, found));
    let out = BfState::new(pairs, st.eps.clone());
    out.validate_in(a)?;
    Ok(out)
}
