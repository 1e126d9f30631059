//! Tensor products of irreducible modules: decompositions, product
//! characters and PRV components.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::charlattice::{
    bigint_to_json, irreducible_character, irreducible_character_with, weight_to_json,
    weyl_dimension, weyl_numerator, FormalCharacter, Lattice,
};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rootsys::{RootSystem, Weight};

/// Multiplicities of the irreducible summands of a module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    components: BTreeMap<Weight, BigInt>,
}

impl Decomposition {
    pub fn components(&self) -> &BTreeMap<Weight, BigInt> {
        &self.components
    }

    pub fn multiplicity(&self, w: &Weight) -> BigInt {
        self.components.get(w).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `sum mult * dim V_nu`.
    pub fn dimension(&self, rs: &RootSystem) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (w, m) in &self.components {
            total += m * weyl_dimension(rs, w)?;
        }
        Ok(total)
    }

    /// `sum mult * chi_nu`.
    pub fn character(&self, rs: &RootSystem) -> Result<FormalCharacter> {
        let mut acc = FormalCharacter::zero(Lattice::from(rs));
        for (w, m) in &self.components {
            acc = acc.add(&irreducible_character(rs, w)?.scale(m))?;
        }
        Ok(acc)
    }

    /// `{"components":[{"w":[2],"mult":1},...]}`, sorted by weight.
    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|(w, m)| json!({"w": weight_to_json(w), "mult": bigint_to_json(m)}))
            .collect();
        json!({ "components": comps })
    }
}

/// Decomposes `V_lam (x) V_mu` with the Brauer-Klimyk rule.
pub fn tensor_decompose(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<Decomposition> {
    tensor_decompose_with(rs, lam, mu, Execution::Auto)
}

/// Runs over the weights of the smaller factor: each weight `pi` of
/// multiplicity `m` contributes `eps(w) m` to `w(big + pi + rho) - rho`
/// whenever that point is regular.
pub fn tensor_decompose_with(
    rs: &RootSystem,
    lam: &Weight,
    mu: &Weight,
    exec: Execution,
) -> Result<Decomposition> {
    lam.check_dominant(rs.rank())?;
    mu.check_dominant(rs.rank())?;
    let (small, big) = if weyl_dimension(rs, lam)? <= weyl_dimension(rs, mu)? {
        (lam, mu)
    } else {
        (mu, lam)
    };
    let chi = irreducible_character_with(rs, small, exec)?;
    let terms: Vec<(&Weight, &BigInt)> = chi.iter().collect();
    let shift = big + &rs.rho();
    let rho = rs.rho();
    let accumulate = |block: &[(&Weight, &BigInt)]| {
        let mut acc: FxHashMap<Weight, BigInt> = FxHashMap::default();
        for (pi, m) in block {
            let (nu, sign) = rs.dominant_conjugate_strict(&(&shift + *pi));
            if sign != 0 {
                *acc.entry(&nu - &rho).or_default() += *m * sign;
            }
        }
        acc
    };
    let blocks: Vec<&[(&Weight, &BigInt)]> = if exec.parallel_for(terms.len() * rs.rank() * 4) {
        terms.chunks(par::chunk_size(terms.len())).collect()
    } else {
        vec![&terms[..]]
    };
    let partials = par::map_collect(exec, &blocks, |b| accumulate(b));
    let mut components = BTreeMap::new();
    for part in partials {
        for (w, m) in part {
            *components.entry(w).or_insert_with(BigInt::zero) += m;
        }
    }
    components.retain(|_, m: &mut BigInt| !m.is_zero());
    debug_assert!(components.values().all(|m| m.is_positive()));
    Ok(Decomposition { components })
}

/// Product of irreducible characters of `factors`, or of their Weyl
/// numerators when `numerator` is set.
pub fn product_character(rs: &RootSystem, factors: &[Weight], numerator: bool) -> Result<FormalCharacter> {
    product_character_with(rs, factors, numerator, Execution::Auto)
}

pub fn product_character_with(
    rs: &RootSystem,
    factors: &[Weight],
    numerator: bool,
    exec: Execution,
) -> Result<FormalCharacter> {
    if factors.is_empty() {
        return Err(Error::InvalidWeight("product of an empty factor list".into()));
    }
    let mut sorted = factors.to_vec();
    sorted.sort();
    let mut acc: Option<FormalCharacter> = None;
    for lam in &sorted {
        let next = if numerator {
            weyl_numerator(rs, lam)?
        } else {
            irreducible_character_with(rs, lam, exec)?
        };
        acc = Some(match acc {
            None => next,
            Some(a) => a.multiply_with(&next, exec, rs.limits().max_terms)?,
        });
    }
    Ok(acc.unwrap())
}

/// The dominant conjugate of `lam + w(mu)`, with `w` given as a word in
/// simple reflections (last letter acts first).
pub fn prv_component(rs: &RootSystem, lam: &Weight, mu: &Weight, word: &[usize]) -> Result<Weight> {
    lam.check_dominant(rs.rank())?;
    mu.check_dominant(rs.rank())?;
    let wmu = rs.apply_word(word, mu)?;
    Ok(rs.dominant_conjugate(&(lam + &wmu)).0)
}

/// [`prv_component`] at the longest element: the dominant conjugate of
/// `lam - mu*`.
pub fn standard_prv_component(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<Weight> {
    prv_component(rs, lam, mu, &rs.longest_word())
}

/// All distinct PRV components `dom(lam + w mu)` as `w` ranges over `W`.
pub fn prv_components(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<BTreeSet<Weight>> {
    lam.check_dominant(rs.rank())?;
    mu.check_dominant(rs.rank())?;
    Ok(rs
        .orbit(mu)?
        .into_iter()
        .map(|x| rs.dominant_conjugate(&(lam + &x)).0)
        .collect())
}

/// Number of double cosets `W_lam \ W / W_mu` of the stabilizers.
///
/// `W / W_mu` is the orbit of `mu`, and every `W_lam`-orbit on it has exactly
/// one point whose labels are nonnegative on the nodes where `lam` vanishes.
pub fn prv_multiplicity_bound(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<u64> {
    lam.check_dominant(rs.rank())?;
    mu.check_dominant(rs.rank())?;
    rs.check_weyl_cap()?;
    let zero_nodes: Vec<usize> = (0..rs.rank()).filter(|&i| lam[i] == 0).collect();
    let count = rs
        .orbit(mu)?
        .iter()
        .filter(|x| zero_nodes.iter().all(|&i| x[i] >= 0))
        .count();
    Ok(count as u64)
}

/// The dual highest weight and the character of `End(V_lam)`.
pub fn dual_decorations(rs: &RootSystem, lam: &Weight) -> Result<(Weight, FormalCharacter)> {
    let dual = rs.longest_element_action(lam)?;
    let chi = irreducible_character(rs, lam)?;
    let chi_dual = irreducible_character(rs, &dual)?;
    let endo = chi.multiply_with(&chi_dual, Execution::Auto, rs.limits().max_terms)?;
    Ok((dual, endo))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn w<const N: usize>(a: [i32; N]) -> Weight {
        Weight::from(a)
    }

    #[test]
    fn clebsch_gordan() {
        let r = rs("A1");
        let d = tensor_decompose(&r, &w([1]), &w([1])).unwrap();
        assert_eq!(d.to_json().to_string(), r#"{"components":[{"mult":1,"w":[0]},{"mult":1,"w":[2]}]}"#);
        let d = tensor_decompose(&r, &w([2]), &w([5])).unwrap();
        let weights: Vec<i32> = d.components().keys().map(|x| x[0]).collect();
        assert_eq!(weights, vec![3, 5, 7]);
    }

    #[test]
    fn three_times_three_bar() {
        let r = rs("A2");
        let d = tensor_decompose(&r, &w([1, 0]), &w([0, 1])).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.multiplicity(&w([1, 1])), BigInt::from(1));
        assert_eq!(d.multiplicity(&w([0, 0])), BigInt::from(1));
    }

    #[test]
    fn decomposition_conserves_characters() {
        for (t, a, b) in [("B2", w([1, 1]), w([0, 2])), ("G2", w([1, 0]), w([1, 1]))] {
            let r = rs(t);
            let d = tensor_decompose(&r, &a, &b).unwrap();
            let lhs = product_character(&r, &[a.clone(), b.clone()], false).unwrap();
            assert_eq!(d.character(&r).unwrap(), lhs, "{}", t);
            let seq = tensor_decompose_with(&r, &a, &b, Execution::Sequential).unwrap();
            let par = tensor_decompose_with(&r, &b, &a, Execution::Parallel).unwrap();
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn prv_examples() {
        let a1 = rs("A1");
        assert_eq!(prv_component(&a1, &w([2]), &w([2]), &[]).unwrap(), w([4]));
        assert_eq!(standard_prv_component(&a1, &w([2]), &w([2])).unwrap(), w([0]));
        let a2 = rs("A2");
        let p = standard_prv_component(&a2, &w([1, 0]), &w([1, 0])).unwrap();
        assert_eq!(p, w([0, 1]));
        let d = tensor_decompose(&a2, &w([1, 0]), &w([1, 0])).unwrap();
        assert!(d.multiplicity(&p).is_positive());
    }

    #[test]
    fn double_coset_counts() {
        let a1 = rs("A1");
        assert_eq!(prv_multiplicity_bound(&a1, &w([1]), &w([1])).unwrap(), 2);
        assert_eq!(prv_multiplicity_bound(&a1, &w([0]), &w([3])).unwrap(), 1);
        let a2 = rs("A2");
        assert_eq!(prv_multiplicity_bound(&a2, &w([1, 1]), &w([1, 1])).unwrap(), 6);
        assert_eq!(prv_multiplicity_bound(&a2, &w([1, 0]), &w([0, 0])).unwrap(), 1);
    }

    #[test]
    fn endomorphisms_of_the_standard_module() {
        let a2 = rs("A2");
        let (dual, endo) = dual_decorations(&a2, &w([1, 0])).unwrap();
        assert_eq!(dual, w([0, 1]));
        let expect = irreducible_character(&a2, &w([1, 1]))
            .unwrap()
            .add(&FormalCharacter::one(Lattice::from(&a2)))
            .unwrap();
        assert_eq!(endo, expect);
        let (dual, endo) = dual_decorations(&rs("A1"), &w([1])).unwrap();
        assert_eq!(dual, w([1]));
        assert_eq!(endo.len(), 3);
    }
}
