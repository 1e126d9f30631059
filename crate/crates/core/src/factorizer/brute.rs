use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::charlattice::{weyl_dimension, FormalCharacter};
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::tensorops::product_character;

/// Candidate multisets evaluated before [`brute_force_factorize`] gives up.
pub const BRUTE_FORCE_CAP: usize = 200_000;

/// Every multiset of `n` dominant weights with labels at most `label_bound`
/// whose character product equals `c`, sorted.
///
/// The highest weight of a product is the sum of the factors' highest
/// weights and its dimension is the product of their dimensions, which
/// prunes the search before any character is multiplied.
pub fn brute_force_factorize(
    rs: &RootSystem,
    c: &FormalCharacter,
    n: usize,
    label_bound: i32,
) -> Result<Vec<Vec<Weight>>> {
    brute_force_factorize_capped(rs, c, n, label_bound, BRUTE_FORCE_CAP)
}

pub fn brute_force_factorize_capped(
    rs: &RootSystem,
    c: &FormalCharacter,
    n: usize,
    label_bound: i32,
    cap: usize,
) -> Result<Vec<Vec<Weight>>> {
    if n == 0 {
        return Err(Error::InvalidWeight("the number of factors must be positive".into()));
    }
    let Some((top, lead)) = c.leading_term() else {
        return Ok(Vec::new());
    };
    if !lead.is_one() || !top.is_dominant() || top.rank() != rs.rank() {
        return Ok(Vec::new());
    }
    let total_dim = c.coefficient_sum();
    let l = rs.rank();
    let mut candidates: Vec<(Weight, BigInt)> = Vec::new();
    let mut labels = vec![0i32; l];
    loop {
        let w = Weight::from(labels.clone());
        if (0..l).all(|i| w[i] <= top[i]) {
            let dim = weyl_dimension(rs, &w)?;
            if total_dim.is_multiple_of(&dim) {
                candidates.push((w, dim));
            }
        }
        let Some(i) = (0..l).find(|&i| labels[i] < label_bound) else { break };
        labels[i] += 1;
        for x in &mut labels[..i] {
            *x = 0;
        }
    }
    candidates.sort();

    let mut search = Search {
        rs,
        c,
        candidates: &candidates,
        target: top.clone(),
        total_dim,
        cap,
        evaluated: 0,
        found: Vec::new(),
        stack: Vec::with_capacity(n),
    };
    search.descend(n, 0, Weight::zero(l), BigInt::one())?;
    let mut found = search.found;
    found.sort();
    Ok(found)
}

struct Search<'a> {
    rs: &'a RootSystem,
    c: &'a FormalCharacter,
    candidates: &'a [(Weight, BigInt)],
    target: Weight,
    total_dim: BigInt,
    cap: usize,
    evaluated: usize,
    found: Vec<Vec<Weight>>,
    stack: Vec<Weight>,
}

impl Search<'_> {
    fn descend(&mut self, left: usize, from: usize, sum: Weight, dim: BigInt) -> Result<()> {
        if left == 0 {
            if sum != self.target || dim != self.total_dim {
                return Ok(());
            }
            self.evaluated += 1;
            if self.evaluated > self.cap {
                return Err(Error::cap("brute-force candidate count", self.cap as u64));
            }
            if product_character(self.rs, &self.stack, false)? == *self.c {
                self.found.push(self.stack.clone());
            }
            return Ok(());
        }
        for k in from..self.candidates.len() {
            let (w, d) = &self.candidates[k];
            let next = &sum + w;
            if (0..next.rank()).any(|i| next[i] > self.target[i]) {
                continue;
            }
            let next_dim = &dim * d;
            if !self.total_dim.is_multiple_of(&next_dim) {
                continue;
            }
            self.stack.push(w.clone());
            self.descend(left - 1, k, next, next_dim)?;
            self.stack.pop();
        }
        Ok(())
    }
}
