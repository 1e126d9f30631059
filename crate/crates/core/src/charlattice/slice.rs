use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{FormalCharacter, Lattice};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::rootsys::CornerRestriction;

/// One homogeneous piece of a character graded along a corner coweight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlice {
    /// `degree * degree_denominator`, exact.
    pub scaled_degree: i64,
    pub degree: Rational,
    /// Restricted terms of that degree, a character over `g'`.
    pub coefficient: FormalCharacter,
}

/// Splits `c` by the degree `pi(omega_p^vee)`, highest degree first.
pub fn slice_by_degree(cr: &CornerRestriction, c: &FormalCharacter) -> Result<Vec<DegreeSlice>> {
    let parent = Lattice::simple(cr.parent_type());
    if *c.lattice() != parent {
        return Err(Error::LatticeMismatch(c.lattice().to_string(), parent.to_string()));
    }
    let sub = Lattice::simple(cr.sub_type());
    let mut groups: BTreeMap<i64, FormalCharacter> = BTreeMap::new();
    for (w, k) in c.iter() {
        groups
            .entry(cr.scaled_degree(w))
            .or_insert_with(|| FormalCharacter::zero(sub.clone()))
            .terms
            .insert(cr.restrict(w), k.clone());
    }
    let m = BigInt::from(cr.degree_denominator());
    Ok(groups
        .into_iter()
        .rev()
        .map(|(s, coefficient)| DegreeSlice {
            scaled_degree: s,
            degree: Rational::new(BigInt::from(s), m.clone()),
            coefficient,
        })
        .collect())
}

/// Inverse of [`slice_by_degree`].
pub fn reassemble(cr: &CornerRestriction, slices: &[DegreeSlice]) -> Result<FormalCharacter> {
    let mut out = FormalCharacter::zero(Lattice::simple(cr.parent_type()));
    for slice in slices {
        for (w, k) in slice.coefficient.iter() {
            let label = cr.corner_label(slice.scaled_degree, w).ok_or_else(|| {
                Error::InvalidWeight(format!(
                    "no lattice point of degree {}/{} restricts to [{}]",
                    slice.scaled_degree,
                    cr.degree_denominator(),
                    w
                ))
            })?;
            out.add_term(cr.lift(w, label), k.clone());
        }
    }
    Ok(out)
}
