use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::{as_not_a_product, not_a_product, Ctx, FactorizeOptions, PeelRecord};
use crate::charlattice::{weyl_numerator, FormalCharacter};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::rootsys::{RootSystem, Weight};

/// Factorizes `P = prod_i (e^{m_i} - e^{-m_i})` over `A1`, returning the
/// labels `a_i = m_i - 1`.
///
/// Below the top exponent `N = sum m_i`, the next exponent present is
/// `N - 2 min m_i`, with coefficient minus the number of minimal factors.
/// One minimal factor is divided out and the rest is handled the same way.
pub fn sl2_numerator_factorize(p: &FormalCharacter, n: usize) -> Result<Vec<Weight>> {
    let t = p
        .lattice()
        .as_simple()
        .filter(|t| t.rank() == 1)
        .ok_or_else(|| Error::LatticeMismatch(p.lattice().to_string(), "A1".into()))?;
    let rs = RootSystem::new(t)?;
    let mut ctx = Ctx::new(FactorizeOptions::default());
    let mut out = super::numerator_recursion(&rs, p, n, 0, &mut ctx)?;
    out.sort();
    Ok(out)
}

pub(super) fn peel(rs: &RootSystem, p: &FormalCharacter, n: usize, depth: usize, ctx: &mut Ctx) -> Result<Vec<Weight>> {
    let max_terms = rs.limits().max_terms;
    let mut cur = p.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let terms = cur.sorted_terms();
        let Some(&(top, lead)) = terms.last() else {
            return Err(not_a_product("the zero character is not a product"));
        };
        let Some(&(next, coeff)) = terms.get(terms.len().wrapping_sub(2)) else {
            return Err(not_a_product("a single monomial is not a numerator product"));
        };
        if !lead.is_one() || !coeff.is_negative() {
            return Err(not_a_product(format!(
                "top coefficients {} and {} do not match a numerator product",
                lead, coeff
            )));
        }
        let diff = top[0] as i64 - next[0] as i64;
        if diff % 2 != 0 {
            return Err(not_a_product("top exponents differ by an odd amount"));
        }
        let m = diff / 2;
        let count = (-coeff).to_i64().unwrap_or(i64::MAX);
        let lam = Weight::from([(m - 1) as i32]);
        let top_degree = Rational::new(BigInt::from(top[0]), BigInt::from(2));
        let s = weyl_numerator(rs, &lam)?;
        cur = cur.exact_divide_capped(&s, max_terms).map_err(as_not_a_product)?;
        ctx.trace.push(PeelRecord {
            depth,
            lie_type: rs.lie_type(),
            corner: None,
            top_degree,
            gap: m,
            class: lam.clone(),
            count,
            peeled: lam.clone(),
        });
        out.push(lam);
    }
    if cur.len() == 1 && cur.coefficient(&Weight::zero(1)).is_one() {
        Ok(out)
    } else {
        Err(not_a_product("a nontrivial remainder is left after all factors were peeled"))
    }
}
