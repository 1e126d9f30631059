use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::{FormalCharacter, Lattice};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::rootsys::{RootSystem, Weight};

/// `S_lambda = sum_w eps(w) e^{w(lambda + rho)}`.
pub fn weyl_numerator(rs: &RootSystem, lam: &Weight) -> Result<FormalCharacter> {
    lam.check_dominant(rs.rank())?;
    let orbit = rs.signed_orbit(&(lam + &rs.rho()))?;
    let terms = orbit.into_iter().map(|(w, s)| (w, BigInt::from(s)));
    Ok(FormalCharacter {
        lattice: Lattice::from(rs),
        terms: terms.collect(),
    })
}

/// `D = S_0`.
pub fn weyl_denominator(rs: &RootSystem) -> Result<FormalCharacter> {
    weyl_numerator(rs, &Weight::zero(rs.rank()))
}

/// `e^rho * prod_{alpha > 0} (1 - e^{-alpha})`, expanded directly.
pub fn weyl_denominator_product_form(rs: &RootSystem) -> Result<FormalCharacter> {
    let lat = Lattice::from(rs);
    let mut acc = FormalCharacter::monomial(lat.clone(), rs.rho(), 1);
    for root in rs.positive_root_labels() {
        let factor = FormalCharacter::from_terms(
            lat.clone(),
            [(Weight::zero(rs.rank()), 1), (-root, -1)],
        )?;
        acc = acc.multiply_with(&factor, Execution::Sequential, rs.limits().max_terms)?;
    }
    Ok(acc)
}

/// Dominant weights of `V_lambda` with their multiplicities, by the
/// Freudenthal recursion, ordered from `lambda` downwards by height.
pub fn dominant_multiplicities(rs: &RootSystem, lam: &Weight) -> Result<Vec<(Weight, BigInt)>> {
    lam.check_dominant(rs.rank())?;
    let l = rs.rank();
    if l == 1 {
        // sl2: every weight lam, lam - 2, ..., >= 0 occurs once.
        return Ok((0..=lam[0] / 2).map(|k| (Weight::from([lam[0] - 2 * k]), BigInt::one())).collect());
    }
    let roots = rs.positive_roots();
    let labels = rs.positive_root_labels();

    // Dominant weights below lambda, each with lambda - mu in simple-root
    // coordinates. Covering relations among dominant weights are by positive
    // roots, so a search that stays inside the dominant chamber finds all.
    let mut depth: FxHashMap<Weight, Vec<i32>> = FxHashMap::default();
    depth.insert(lam.clone(), vec![0; l]);
    let mut queue = vec![lam.clone()];
    while let Some(mu) = queue.pop() {
        let base = depth[&mu].clone();
        for (coords, root) in roots.iter().zip(labels) {
            let nu = &mu - root;
            if nu.is_dominant() && !depth.contains_key(&nu) {
                let d: Vec<i32> = base.iter().zip(coords).map(|(a, b)| a + b).collect();
                depth.insert(nu.clone(), d);
                queue.push(nu);
            }
        }
        if depth.len() > rs.limits().max_terms {
            return Err(Error::cap("dominant weight count", rs.limits().max_terms as u64));
        }
    }
    let mut order: Vec<(Weight, Vec<i32>)> = depth.into_iter().collect();
    order.sort_by(|a, b| {
        let ha: i32 = a.1.iter().sum();
        let hb: i32 = b.1.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });

    let d = rs.half_norms();
    let two_rho = rs.rho().scaled(2);
    let mut mult: FxHashMap<Weight, BigInt> = FxHashMap::default();
    let mut out = Vec::with_capacity(order.len());
    for (mu, k) in order {
        if mu == *lam {
            mult.insert(mu.clone(), BigInt::one());
            out.push((mu, BigInt::one()));
            continue;
        }
        // |lambda + rho|^2 - |mu + rho|^2 = (lambda + mu + 2 rho, lambda - mu)
        let s = &(lam + &mu) + &two_rho;
        let denom: i64 = (0..l).map(|i| k[i] as i64 * d[i] * s[i] as i64).sum();
        let mut num = BigInt::zero();
        for (r, root) in labels.iter().enumerate() {
            let mut x = &mu + root;
            loop {
                let (dom, _) = rs.dominant_conjugate(&x);
                let Some(m) = mult.get(&dom) else { break };
                num += m * BigInt::from(rs.form_with_root(&x, r));
                x = &x + root;
            }
        }
        num *= 2;
        let (q, rem) = num.div_rem(&BigInt::from(denom));
        debug_assert!(rem.is_zero(), "Freudenthal quotient must be integral");
        if !q.is_zero() {
            mult.insert(mu.clone(), q.clone());
            out.push((mu, q));
        }
    }
    Ok(out)
}

/// The character `chi_lambda` of the irreducible module `V_lambda`.
pub fn irreducible_character(rs: &RootSystem, lam: &Weight) -> Result<FormalCharacter> {
    irreducible_character_with(rs, lam, Execution::Auto)
}

pub(crate) fn irreducible_character_with(
    rs: &RootSystem,
    lam: &Weight,
    exec: Execution,
) -> Result<FormalCharacter> {
    let dominant = dominant_multiplicities(rs, lam)?;
    let orbits = par::map_collect(exec, &dominant, |(mu, _)| rs.orbit(mu));
    let mut terms: FxHashMap<Weight, BigInt> = FxHashMap::default();
    for ((_, m), orbit) in dominant.iter().zip(orbits) {
        for w in orbit? {
            terms.insert(w, m.clone());
        }
        if terms.len() > rs.limits().max_terms {
            return Err(Error::cap("character support", rs.limits().max_terms as u64));
        }
    }
    Ok(FormalCharacter {
        lattice: Lattice::from(rs),
        terms,
    })
}

/// `prod_{alpha > 0} (lambda + rho, alpha) / (rho, alpha)`.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<BigInt> {
    lam.check_dominant(rs.rank())?;
    let rho = rs.rho();
    let shifted = lam + &rho;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for r in 0..rs.positive_roots().len() {
        num *= BigInt::from(rs.form_with_root(&shifted, r));
        den *= BigInt::from(rs.form_with_root(&rho, r));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a1_numerator_and_character() {
        let r = rs("A1");
        let s = weyl_numerator(&r, &Weight::from([1])).unwrap();
        assert_eq!(s.to_string(), "e^[2] - e^[-2] [A1]");
        let chi = irreducible_character(&r, &Weight::from([2])).unwrap();
        assert_eq!(chi.to_string(), "e^[2] + e^[0] + e^[-2] [A1]");
        assert_eq!(weyl_denominator(&r).unwrap().to_string(), "e^[1] - e^[-1] [A1]");
    }

    #[test]
    fn denominator_product_form_agrees() {
        for t in ["A1", "A2", "B2", "G2", "A3", "C3", "F4"] {
            let r = rs(t);
            assert_eq!(weyl_denominator(&r).unwrap(), weyl_denominator_product_form(&r).unwrap(), "{}", t);
        }
        assert_eq!(weyl_denominator(&rs("B2")).unwrap().len(), 8);
    }

    #[test]
    fn adjoint_of_a2() {
        let r = rs("A2");
        let chi = irreducible_character(&r, &Weight::from([1, 1])).unwrap();
        assert_eq!(chi.coefficient_sum(), BigInt::from(8));
        assert_eq!(chi.coefficient(&Weight::zero(2)), BigInt::from(2));
    }

    #[test]
    fn g2_seven_dimensional() {
        let r = rs("G2");
        // alpha_1 is short, so omega_1 is the 7-dimensional module
        let chi = irreducible_character(&r, &Weight::from([1, 0])).unwrap();
        assert_eq!(chi.coefficient_sum(), BigInt::from(7));
        assert_eq!(weyl_dimension(&r, &Weight::from([0, 1])).unwrap(), BigInt::from(14));
    }

    #[test]
    fn numerator_sums_to_zero() {
        let r = rs("A2");
        let s = weyl_numerator(&r, &Weight::from([1, 0])).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.coefficient_sum().is_zero());
        assert!(s.is_weyl_symmetric(&r, true));
    }

    #[test]
    fn dimensions_against_multiplicity_sums() {
        for (t, w) in [("A1", vec![4]), ("C3", vec![2, 2, 2]), ("B3", vec![1, 0, 1]), ("F4", vec![0, 0, 0, 1])] {
            let r = rs(t);
            let lam = Weight::from(w);
            let chi = irreducible_character(&r, &lam).unwrap();
            assert_eq!(chi.coefficient_sum(), weyl_dimension(&r, &lam).unwrap(), "{}", t);
            assert!(chi.is_weyl_symmetric(&r, false));
        }
        assert_eq!(weyl_dimension(&rs("A1"), &Weight::from([4])).unwrap(), BigInt::from(5));
        assert_eq!(weyl_dimension(&rs("F4"), &Weight::from([0, 0, 0, 1])).unwrap(), BigInt::from(26));
    }

    #[test]
    fn character_times_denominator_is_numerator() {
        let r = rs("A2");
        let lam = Weight::from([1, 1]);
        let chi = irreducible_character(&r, &lam).unwrap();
        let d = weyl_denominator(&r).unwrap();
        let s = weyl_numerator(&r, &lam).unwrap();
        assert_eq!(chi.multiply(&d).unwrap(), s);
        assert_eq!(s.exact_divide(&d).unwrap(), chi);
    }
}
