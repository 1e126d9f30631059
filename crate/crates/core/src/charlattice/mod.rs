//! The group ring `Z[P]` of formal characters: finite sums of lattice
//! exponentials `e^pi` with integer coefficients.
//!
//! Exponents are Dynkin-label vectors (negatives allowed) and coefficients
//! are arbitrary-precision integers. Products convolve supports; exact
//! division eliminates leading terms under a fixed monomial order (see
//! [`FormalCharacter::exact_divide`]).

mod json;
mod slice;
mod weyl;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

pub use json::{bigint_to_json, character_from_json, character_to_json};
pub use slice::{reassemble, slice_by_degree, DegreeSlice};
pub use weyl::{
    dominant_multiplicities, irreducible_character, weyl_denominator,
    weyl_denominator_product_form, weyl_dimension, weyl_numerator,
};
pub(crate) use json::weight_to_json;
pub(crate) use weyl::irreducible_character_with;

use crate::error::{Error, Result};
#[cfg(feature = "parallel")]
use crate::par;
use crate::par::Execution;
use crate::rootsys::{Limits, LieType, RootSystem, Weight};

/// The weight lattice a character lives on: that of a simple type, or the
/// direct sum of several (labels concatenated in factor order).
#[derive(Clone)]
pub struct Lattice(Arc<LatticeInner>);

struct LatticeInner {
    factors: Vec<LieType>,
    grading: Vec<i64>,
}

impl Lattice {
    pub fn simple(t: LieType) -> Self {
        Self::product(vec![t])
    }

    /// Direct sum lattice. Panics on an empty factor list.
    pub fn product(factors: Vec<LieType>) -> Self {
        assert!(!factors.is_empty(), "a lattice needs at least one factor");
        let grading = factors.iter().flat_map(|t| t.grading()).collect();
        Lattice(Arc::new(LatticeInner { factors, grading }))
    }

    pub fn factors(&self) -> &[LieType] {
        &self.0.factors
    }

    pub fn as_simple(&self) -> Option<LieType> {
        match self.0.factors.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.0.grading.len()
    }

    /// Positive integer functional defining the monomial order.
    pub fn grading(&self) -> &[i64] {
        &self.0.grading
    }

    pub fn concat(&self, other: &Lattice) -> Lattice {
        Lattice::product(self.factors().iter().chain(other.factors()).copied().collect())
    }
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.factors == other.0.factors
    }
}

impl Eq for Lattice {}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({})", self)
    }
}

/// `"C3"` or a product such as `"A1xA2"`.
impl FromStr for Lattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(['x', 'X'])
            .map(str::parse)
            .collect::<Result<Vec<LieType>>>()?;
        Ok(Lattice::product(factors))
    }
}

impl From<LieType> for Lattice {
    fn from(t: LieType) -> Self {
        Lattice::simple(t)
    }
}

impl From<&RootSystem> for Lattice {
    fn from(rs: &RootSystem) -> Self {
        Lattice::simple(rs.lie_type())
    }
}

/// A finite integer combination of lattice exponentials.
#[derive(Clone)]
pub struct FormalCharacter {
    lattice: Lattice,
    terms: FxHashMap<Weight, BigInt>,
}

impl PartialEq for FormalCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.lattice == other.lattice && self.terms == other.terms
    }
}

impl Eq for FormalCharacter {}

impl FormalCharacter {
    pub fn zero(lattice: impl Into<Lattice>) -> Self {
        FormalCharacter {
            lattice: lattice.into(),
            terms: FxHashMap::default(),
        }
    }

    pub fn one(lattice: impl Into<Lattice>) -> Self {
        let lattice = lattice.into();
        let rank = lattice.rank();
        Self::monomial(lattice, Weight::zero(rank), BigInt::one())
    }

    pub fn monomial(lattice: impl Into<Lattice>, w: Weight, c: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(lattice);
        x.add_term(w, c.into());
        x
    }

    /// Collects terms, summing repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(lattice: impl Into<Lattice>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Weight, C)>,
        C: Into<BigInt>,
    {
        let mut x = Self::zero(lattice);
        let rank = x.lattice.rank();
        for (w, c) in terms {
            w.check_rank(rank)?;
            x.add_term(w, c.into());
        }
        Ok(x)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    /// Terms sorted lexicographically by exponent.
    pub fn sorted_terms(&self) -> Vec<(&Weight, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        use std::collections::hash_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn add_term_ref(&mut self, w: &Weight, c: &BigInt) {
        match self.terms.get_mut(w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(w);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(w.clone(), c.clone());
                }
            }
        }
    }

    fn check_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(Error::LatticeMismatch(
                self.lattice.to_string(),
                other.lattice.to_string(),
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_lattice(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term_ref(w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.lattice.clone());
        }
        FormalCharacter {
            lattice: self.lattice.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Sum of all coefficients; the dimension of a module's character.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Applies `f` to every exponent, re-collecting terms.
    pub fn map_exponents(&self, f: impl Fn(&Weight) -> Weight) -> Self {
        let mut out = Self::zero(self.lattice.clone());
        for (w, c) in &self.terms {
            out.add_term_ref(&f(w), c);
        }
        out
    }

    fn order_key(&self, w: &Weight) -> i64 {
        w.dot(self.lattice.grading())
    }

    /// Largest term under the monomial order: grade by the lattice grading,
    /// ties broken lexicographically. For the character of a module this is
    /// its highest weight.
    pub fn leading_term(&self) -> Option<(&Weight, &BigInt)> {
        self.terms
            .iter()
            .max_by(|a, b| (self.order_key(a.0), a.0).cmp(&(self.order_key(b.0), b.0)))
    }

    pub fn lowest_term(&self) -> Option<(&Weight, &BigInt)> {
        self.terms
            .iter()
            .min_by(|a, b| (self.order_key(a.0), a.0).cmp(&(self.order_key(b.0), b.0)))
    }

    /// Product with the default term cap.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.multiply_with(other, Execution::Auto, Limits::default().max_terms)
    }

    /// Product; fails with a cap error when the result has more than
    /// `max_terms` terms. The parallel path splits the larger factor into
    /// blocks and merges the partial sums, which is deterministic.
    pub fn multiply_with(&self, other: &Self, exec: Execution, max_terms: usize) -> Result<Self> {
        self.check_lattice(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.lattice.clone()));
        }
        let (outer, inner) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let parallel = exec.parallel_for(outer.len() * inner.len());
        let terms = match (small_terms(outer), small_terms(inner)) {
            (Some(o), Some(i)) => match convolve_small(&o, &i, parallel) {
                Some(map) => map
                    .into_iter()
                    .filter(|(_, c)| *c != 0)
                    .map(|(w, c)| (w, BigInt::from(c)))
                    .collect(),
                None => convolve_big(outer, inner, parallel),
            },
            _ => convolve_big(outer, inner, parallel),
        };
        if terms.len() > max_terms {
            return Err(Error::cap("product support", max_terms as u64));
        }
        Ok(FormalCharacter {
            lattice: self.lattice.clone(),
            terms,
        })
    }

    pub fn pow(&self, n: usize) -> Result<Self> {
        let mut acc = Self::one(self.lattice.clone());
        for _ in 0..n {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / den` in `Z[P]`.
    ///
    /// Repeatedly cancels the leading term of the remainder against the
    /// leading term of `den`. The quotient's support is confined to the box
    /// `[min(num) - min(den), max(num) - max(den)]` coordinatewise, and the
    /// leading exponent strictly decreases, so the loop terminates. Any
    /// remainder that cannot be cancelled exactly is reported as
    /// [`Error::NotDivisible`].
    pub fn exact_divide(&self, den: &Self) -> Result<Self> {
        self.exact_divide_capped(den, Limits::default().max_terms)
    }

    pub fn exact_divide_capped(&self, den: &Self, max_terms: usize) -> Result<Self> {
        self.check_lattice(den)?;
        if den.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        let zero = Self::zero(self.lattice.clone());
        if self.is_zero() {
            return Ok(zero);
        }
        let rank = self.lattice.rank();
        let (lo, hi) = quotient_box(self, den, rank)
            .ok_or_else(|| Error::NotDivisible("Newton boxes are incompatible".into()))?;
        let (lead_w, lead_c) = den.leading_term().map(|(w, c)| (w.clone(), c.clone())).unwrap();
        let rest: Vec<(Weight, BigInt)> = den
            .terms
            .iter()
            .filter(|(w, _)| **w != lead_w)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        let mut rem: BTreeMap<(i64, Weight), BigInt> = self
            .terms
            .iter()
            .map(|(w, c)| ((self.order_key(w), w.clone()), c.clone()))
            .collect();
        let mut quotient = zero;
        while let Some(((_, w), c)) = rem.pop_last() {
            let t = &w - &lead_w;
            if (0..rank).any(|i| t[i] < lo[i] || t[i] > hi[i]) {
                return Err(Error::NotDivisible(format!(
                    "remainder term e^[{}] cannot be cancelled",
                    w
                )));
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!(
                    "coefficient {} at e^[{}] is not a multiple of {}",
                    c, w, lead_c
                )));
            }
            for (dw, dc) in &rest {
                let k = &t + dw;
                let key = (self.order_key(&k), k);
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(e) => {
                        *e -= delta;
                        if e.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.terms.insert(t, qc);
            if quotient.len() > max_terms || rem.len() > max_terms.saturating_mul(4) {
                return Err(Error::cap("quotient support", max_terms as u64));
            }
        }
        Ok(quotient)
    }

    /// Whether every simple reflection maps the character to itself
    /// (`anti = false`) or to its negative (`anti = true`).
    pub fn is_weyl_symmetric(&self, rs: &RootSystem, anti: bool) -> bool {
        if self.lattice.as_simple() != Some(rs.lie_type()) {
            return false;
        }
        (0..rs.rank()).all(|i| {
            self.terms.iter().all(|(w, c)| {
                let image = self.coefficient(&rs.reflect(w, i));
                if anti {
                    image == -c
                } else {
                    image == *c
                }
            })
        })
    }

    /// Character on the direct-sum lattice: `e^a (x) e^b = e^(a, b)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.lattice.concat(&other.lattice));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 [{}]", self.lattice);
        }
        for (i, (w, c)) in self.sorted_terms().into_iter().rev().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{}*", a)?;
            }
            write!(f, "e^[{}]", w)?;
        }
        write!(f, " [{}]", self.lattice)
    }
}

fn quotient_box(num: &FormalCharacter, den: &FormalCharacter, rank: usize) -> Option<(Vec<i32>, Vec<i32>)> {
    let bounds = |x: &FormalCharacter| {
        let mut lo = vec![i32::MAX; rank];
        let mut hi = vec![i32::MIN; rank];
        for w in x.terms.keys() {
            for i in 0..rank {
                lo[i] = lo[i].min(w[i]);
                hi[i] = hi[i].max(w[i]);
            }
        }
        (lo, hi)
    };
    let (nlo, nhi) = bounds(num);
    let (dlo, dhi) = bounds(den);
    let lo: Vec<i32> = (0..rank).map(|i| nlo[i] - dlo[i]).collect();
    let hi: Vec<i32> = (0..rank).map(|i| nhi[i] - dhi[i]).collect();
    (0..rank).all(|i| lo[i] <= hi[i]).then_some((lo, hi))
}

fn small_terms(x: &FormalCharacter) -> Option<Vec<(&Weight, i64)>> {
    x.terms.iter().map(|(w, c)| c.to_i64().map(|v| (w, v))).collect()
}

type SmallMap = FxHashMap<Weight, i128>;

fn convolve_small_block(outer: &[(&Weight, i64)], inner: &[(&Weight, i64)]) -> Option<SmallMap> {
    let mut out: SmallMap = FxHashMap::default();
    out.reserve(outer.len().max(inner.len()));
    for (a, ca) in outer {
        for (b, cb) in inner {
            let w = *a + *b;
            let prod = *ca as i128 * *cb as i128;
            let e = out.entry(w).or_insert(0);
            *e = e.checked_add(prod)?;
        }
    }
    Some(out)
}

#[cfg(feature = "parallel")]
fn merge_small(mut a: SmallMap, b: SmallMap) -> Option<SmallMap> {
    if a.len() < b.len() {
        return merge_small(b, a);
    }
    for (w, c) in b {
        let e = a.entry(w).or_insert(0);
        *e = e.checked_add(c)?;
    }
    Some(a)
}

/// `i128` accumulation; `None` on overflow so the caller can fall back.
fn convolve_small(outer: &[(&Weight, i64)], inner: &[(&Weight, i64)], parallel: bool) -> Option<SmallMap> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return outer
            .par_chunks(par::chunk_size(outer.len()))
            .map(|block| convolve_small_block(block, inner))
            .try_reduce(FxHashMap::default, merge_small);
    }
    let _ = parallel;
    convolve_small_block(outer, inner)
}

fn convolve_big_block(outer: &[(&Weight, &BigInt)], inner: &FormalCharacter) -> FxHashMap<Weight, BigInt> {
    let mut out: FxHashMap<Weight, BigInt> = FxHashMap::default();
    for (a, ca) in outer {
        for (b, cb) in &inner.terms {
            *out.entry(*a + b).or_default() += *ca * cb;
        }
    }
    out
}

fn convolve_big(outer: &FormalCharacter, inner: &FormalCharacter, parallel: bool) -> FxHashMap<Weight, BigInt> {
    let outer_terms: Vec<(&Weight, &BigInt)> = outer.terms.iter().collect();
    #[cfg(feature = "parallel")]
    let mut map = if parallel {
        use rayon::prelude::*;
        outer_terms
            .par_chunks(par::chunk_size(outer_terms.len()))
            .map(|block| convolve_big_block(block, inner))
            .reduce(FxHashMap::default, |a, b| {
                let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                for (w, c) in small {
                    *big.entry(w).or_default() += c;
                }
                big
            })
    } else {
        convolve_big_block(&outer_terms, inner)
    };
    #[cfg(not(feature = "parallel"))]
    let mut map = {
        let _ = parallel;
        convolve_big_block(&outer_terms, inner)
    };
    map.retain(|_, c| !c.is_zero());
    map
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Lattice {
        Lattice::simple("A1".parse().unwrap())
    }

    fn poly(terms: &[(i32, i64)]) -> FormalCharacter {
        FormalCharacter::from_terms(a1(), terms.iter().map(|&(e, c)| (Weight::from([e]), c))).unwrap()
    }

    #[test]
    fn multiply_small() {
        let a = poly(&[(1, 1), (-1, -1)]);
        let b = poly(&[(1, 1), (-1, 1)]);
        assert_eq!(a.multiply(&b).unwrap(), poly(&[(2, 1), (-2, -1)]));
        let seq = a.multiply_with(&b, Execution::Sequential, 100).unwrap();
        let par = a.multiply_with(&b, Execution::Parallel, 100).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn multiply_overflow_falls_back_to_bigint() {
        let big = i64::MAX;
        let a = poly(&[(0, big), (1, big)]);
        let sq = a.multiply(&a).unwrap();
        let expect = BigInt::from(big) * BigInt::from(big) * 2;
        assert_eq!(sq.coefficient(&Weight::from([1])), expect);
    }

    #[test]
    fn lattice_mismatch() {
        let a = poly(&[(1, 1)]);
        let b = FormalCharacter::one(Lattice::simple("A2".parse().unwrap()));
        assert!(matches!(a.multiply(&b), Err(Error::LatticeMismatch(..))));
    }

    #[test]
    fn divide_exact_and_not() {
        let x = poly(&[(2, 1), (0, 3), (-5, -2)]);
        assert_eq!(x.exact_divide(&x).unwrap(), FormalCharacter::one(a1()));
        let num = poly(&[(2, 1), (0, 1)]);
        let den = poly(&[(1, 1), (-1, -1)]);
        assert!(matches!(num.exact_divide(&den), Err(Error::NotDivisible(_))));
        let q = poly(&[(3, 2), (-1, 1)]);
        let p = q.multiply(&den).unwrap();
        assert_eq!(p.exact_divide(&den).unwrap(), q);
    }

    #[test]
    fn cap_is_enforced() {
        let a = poly(&[(1, 1), (-1, 1)]);
        let b = poly(&[(10, 1), (-10, 1)]);
        assert!(matches!(
            a.multiply_with(&b, Execution::Sequential, 3),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn add_term_cancels() {
        let mut x = poly(&[(1, 1), (2, 1)]);
        x.add_term(Weight::from([1]), BigInt::from(-1));
        assert_eq!(x, poly(&[(2, 1)]));
    }

    #[test]
    fn lattice_strings() {
        let l: Lattice = "A1xA2".parse().unwrap();
        assert_eq!(l.rank(), 3);
        assert_eq!(l.to_string(), "A1xA2");
        assert!("A1xQ2".parse::<Lattice>().is_err());
    }
}
