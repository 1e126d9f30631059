use super::Weight;
use crate::error::{Error, Result};

/// Normalized `GL(r)` highest weight `a_1 >= ... >= a_r = 0` to Dynkin labels
/// `(a_1 - a_2, ..., a_{r-1} - a_r)` of `A_{r-1}`.
///
/// Twisting by a power of the determinant shifts every `a_i` equally, so the
/// normalization loses exactly that ambiguity.
pub fn partition_to_labels(partition: &[i32]) -> Result<Weight> {
    if partition.len() < 2 {
        return Err(Error::InvalidWeight(
            "a GL(r) highest weight needs r >= 2 entries".into(),
        ));
    }
    if partition.last() != Some(&0) {
        return Err(Error::InvalidWeight(format!(
            "{:?} is not normalized (last entry must be 0)",
            partition
        )));
    }
    if partition.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidWeight(format!(
            "{:?} is not weakly decreasing",
            partition
        )));
    }
    Ok(Weight::new(partition.windows(2).map(|w| w[0] - w[1])))
}
