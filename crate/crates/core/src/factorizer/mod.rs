//! Recovering the highest weights of a tensor product from its character.
//!
//! A product `chi_{lambda_1} ... chi_{lambda_n}` is turned into the
//! numerator product `S_{lambda_1} ... S_{lambda_n}` by multiplying with
//! `D^n`. The numerator product is then peeled one factor at a time:
//!
//! 1. Grade by the degree along a corner coweight `omega_p^vee`. The top
//!    slice is the numerator product of the restrictions `lambda_i'` over
//!    the subalgebra `g'`, which is factorized recursively.
//! 2. The gap to the second slice is the smallest `n_p(lambda_i) + 1`.
//! 3. The second slice is `-sum_v k_v T_v`, where `T_v` replaces one factor
//!    `S'_v` by its spiked version. The counts `k_v` are unique, found by
//!    exact linear algebra.
//! 4. Any class with `k_v > 0` determines one `lambda_i` completely. Divide
//!    it out and repeat with `n - 1` factors.
//!
//! Rank one is handled directly by [`sl2_numerator_factorize`].

mod brute;
mod sl2;

use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use num_traits::{One, ToPrimitive, Zero};
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

pub use brute::{brute_force_factorize, brute_force_factorize_capped};
pub use sl2::sl2_numerator_factorize;

use crate::charlattice::{
    slice_by_degree, weight_to_json, weyl_denominator, weyl_numerator, FormalCharacter, Lattice,
};
use crate::error::{Error, Result};
use crate::linalg::{rational_is_nonneg_integer, rational_to_string, Matrix, Rational, SolveFailure};
use crate::par::Execution;
use crate::rootsys::{CornerRestriction, LieType, RootSystem, Weight};
use crate::tensorops::product_character_with;

/// A recovered multiset of highest weights, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Weight>,
}

impl Factorization {
    pub fn new(mut factors: Vec<Weight>) -> Self {
        factors.sort();
        Factorization { factors }
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    /// Factors with the zero weights removed.
    pub fn nonzero(&self) -> Vec<Weight> {
        self.factors.iter().filter(|w| !w.is_zero()).cloned().collect()
    }
}

/// One peeling step of the recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelRecord {
    /// Number of corner restrictions between the input type and `lie_type`.
    pub depth: usize,
    pub lie_type: LieType,
    /// Corner used for slicing; `None` for the rank-one base case.
    pub corner: Option<usize>,
    /// Degree of the top slice; at rank one, the pairing of the top exponent
    /// with the fundamental coweight.
    pub top_degree: Rational,
    /// Degree difference between the top two slices. Equals
    /// `n_p(peeled) + 1`, or `n(peeled) + 1` at rank one.
    pub gap: i64,
    /// Restricted weight class the peeled factor came from.
    pub class: Weight,
    /// Number of factors in that class at the minimal gap.
    pub count: i64,
    pub peeled: Weight,
}

impl PeelRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "type": self.lie_type.to_string(),
            "corner": self.corner.map(|p| p + 1),
            "top_degree": rational_to_string(&self.top_degree),
            "gap": self.gap,
            "class": weight_to_json(&self.class),
            "count": self.count,
            "peeled": weight_to_json(&self.peeled),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizeReport {
    pub factorization: Factorization,
    pub trace: Vec<PeelRecord>,
}

impl FactorizeReport {
    pub fn factors(&self) -> &[Weight] {
        &self.factorization.factors
    }

    /// `{"factors":[[..],..],"n":k,"trace":[..]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "factors": self.factors().iter().map(weight_to_json).collect::<Vec<_>>(),
            "n": self.factorization.n(),
            "trace": self.trace.iter().map(PeelRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorizeOptions {
    /// Re-multiply the recovered factors and compare with the input.
    pub strict: bool,
    /// Peel every factor of the matched classes in one pass instead of one.
    pub batch: bool,
    pub exec: Execution,
}

impl Default for FactorizeOptions {
    fn default() -> Self {
        FactorizeOptions {
            strict: true,
            batch: false,
            exec: Execution::Auto,
        }
    }
}

pub(crate) fn not_a_product(msg: impl Into<String>) -> Error {
    Error::NotAProduct(msg.into())
}

/// Division failures below the top level mean the input was not a product.
fn as_not_a_product(e: Error) -> Error {
    match e {
        Error::NotDivisible(m) => Error::NotAProduct(m),
        other => other,
    }
}

pub(crate) struct Ctx {
    opts: FactorizeOptions,
    corners: FxHashMap<LieType, Rc<CornerRestriction>>,
    pub(crate) trace: Vec<PeelRecord>,
}

impl Ctx {
    fn new(opts: FactorizeOptions) -> Self {
        Ctx {
            opts,
            corners: FxHashMap::default(),
            trace: Vec::new(),
        }
    }

    /// Lowest-index corner whose `g'` has the smallest Weyl group.
    fn corner(&mut self, rs: &RootSystem) -> Result<Rc<CornerRestriction>> {
        if let Some(cr) = self.corners.get(&rs.lie_type()) {
            return Ok(cr.clone());
        }
        let mut best: Option<CornerRestriction> = None;
        for p in rs.corner_indices() {
            let cr = rs.restrict_corner(p)?;
            if best.as_ref().is_none_or(|b| cr.sub_system().weyl_order() < b.sub_system().weyl_order()) {
                best = Some(cr);
            }
        }
        let cr = Rc::new(best.expect("rank >= 2 has corners"));
        self.corners.insert(rs.lie_type(), cr.clone());
        Ok(cr)
    }
}

fn is_one(p: &FormalCharacter) -> bool {
    p.len() == 1 && p.coefficient(&Weight::zero(p.lattice().rank())).is_one()
}

/// Recovers `{lambda_i}` from `P = S_{lambda_1} ... S_{lambda_n}`.
pub fn factorize_numerator_product(rs: &RootSystem, p: &FormalCharacter, n: usize) -> Result<Vec<Weight>> {
    let mut ctx = Ctx::new(FactorizeOptions::default());
    let mut out = numerator_recursion(rs, p, n, 0, &mut ctx)?;
    out.sort();
    Ok(out)
}

/// Like [`factorize_numerator_product`], also returning the trace.
pub fn factorize_numerator_product_with(
    rs: &RootSystem,
    p: &FormalCharacter,
    n: usize,
    opts: FactorizeOptions,
) -> Result<FactorizeReport> {
    check_lattice(rs, p)?;
    let mut ctx = Ctx::new(opts);
    let factors = numerator_recursion(rs, p, n, 0, &mut ctx)?;
    Ok(FactorizeReport {
        factorization: Factorization::new(factors),
        trace: ctx.trace,
    })
}

fn check_lattice(rs: &RootSystem, c: &FormalCharacter) -> Result<()> {
    let lat = Lattice::from(rs);
    if *c.lattice() != lat {
        return Err(Error::LatticeMismatch(c.lattice().to_string(), lat.to_string()));
    }
    Ok(())
}

pub(crate) fn numerator_recursion(
    rs: &RootSystem,
    p: &FormalCharacter,
    n: usize,
    depth: usize,
    ctx: &mut Ctx,
) -> Result<Vec<Weight>> {
    if n == 0 {
        return if is_one(p) {
            Ok(Vec::new())
        } else {
            Err(not_a_product("a nontrivial remainder is left after all factors were peeled"))
        };
    }
    if rs.rank() == 1 {
        return sl2::peel(rs, p, n, depth, ctx);
    }
    let max_terms = rs.limits().max_terms;
    let cr = ctx.corner(rs)?;
    let sub = cr.sub_system();
    let slices = slice_by_degree(&cr, p)?;
    if slices.len() < 2 {
        return Err(not_a_product(format!(
            "only one degree occurs along corner {} of {}",
            cr.corner() + 1,
            rs.lie_type()
        )));
    }
    let (top, second) = (&slices[0], &slices[1]);
    let restricted = numerator_recursion(sub, &top.coefficient, n, depth + 1, ctx)?;

    let unit = cr.degree_denominator();
    let gap_scaled = top.scaled_degree - second.scaled_degree;
    if gap_scaled % unit != 0 {
        return Err(not_a_product("the top two slices are not an integral distance apart"));
    }
    let gap = gap_scaled / unit;
    let (_, m_ps) = cr.adjacent();
    let spike = i32::try_from(m_ps as i64 * gap)
        .map_err(|_| not_a_product("degree gap out of range"))?;
    let spike_weight = Weight::fundamental(sub.rank(), cr.neighbour_in_sub()).scaled(spike);

    let mut classes: BTreeMap<Weight, usize> = BTreeMap::new();
    for v in &restricted {
        *classes.entry(v.clone()).or_default() += 1;
    }
    let class_list: Vec<Weight> = classes.keys().cloned().collect();
    let mut columns = Vec::with_capacity(class_list.len());
    for v in &class_list {
        let mut factors = restricted.clone();
        let i = factors.iter().position(|x| x == v).unwrap();
        factors[i] = v + &spike_weight;
        columns.push(product_character_with(sub, &factors, true, ctx.opts.exec)?);
    }
    let counts = solve_class_counts(&columns, &second.coefficient.neg())?;

    let mut peel: Vec<(usize, usize)> = Vec::new();
    for (k, c) in counts.iter().enumerate() {
        if *c > 0 {
            if *c > classes[&class_list[k]] {
                return Err(not_a_product("second slice needs more factors than the class holds"));
            }
            peel.push((k, *c));
            if !ctx.opts.batch {
                break;
            }
        }
    }
    if peel.is_empty() {
        return Err(not_a_product("no restricted class accounts for the second slice"));
    }

    let label_p = i32::try_from(gap - 1).map_err(|_| not_a_product("degree gap out of range"))?;
    let mut quotient = p.clone();
    let mut peeled = Vec::new();
    for (k, c) in peel {
        let lam = cr.lift(&class_list[k], label_p);
        let s = weyl_numerator(rs, &lam)?;
        let copies = if ctx.opts.batch { c } else { 1 };
        for _ in 0..copies {
            quotient = quotient.exact_divide_capped(&s, max_terms).map_err(as_not_a_product)?;
            peeled.push(lam.clone());
        }
        ctx.trace.push(PeelRecord {
            depth,
            lie_type: rs.lie_type(),
            corner: Some(cr.corner()),
            top_degree: top.degree.clone(),
            gap,
            class: class_list[k].clone(),
            count: c as i64,
            peeled: lam,
        });
    }
    if peeled.len() > n {
        return Err(not_a_product("more factors matched than requested"));
    }
    let mut rest = numerator_recursion(rs, &quotient, n - peeled.len(), depth, ctx)?;
    rest.extend(peeled);
    Ok(rest)
}

/// Solves `sum_k x_k columns[k] = target` over the union of supports and
/// requires the unique solution to consist of nonnegative integers.
fn solve_class_counts(columns: &[FormalCharacter], target: &FormalCharacter) -> Result<Vec<usize>> {
    let mut support: BTreeSet<&Weight> = target.iter().map(|(w, _)| w).collect();
    for col in columns {
        support.extend(col.iter().map(|(w, _)| w));
    }
    let rows: Vec<&Weight> = support.into_iter().collect();
    let mut a = Matrix::zeros(rows.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, w) in rows.iter().enumerate() {
            let c = col.coefficient(w);
            if !c.is_zero() {
                a[(i, j)] = Rational::from_integer(c);
            }
        }
    }
    let b: Vec<Rational> = rows.iter().map(|w| Rational::from_integer(target.coefficient(w))).collect();
    let x = a.solve_unique(&b).map_err(|f| match f {
        SolveFailure::Inconsistent => not_a_product("second slice is not a combination of spiked products"),
        SolveFailure::Underdetermined => not_a_product("spiked products are linearly dependent"),
    })?;
    x.iter()
        .map(|q| {
            if rational_is_nonneg_integer(q) {
                q.to_integer()
                    .to_usize()
                    .ok_or_else(|| not_a_product("class count out of range"))
            } else {
                Err(not_a_product(format!(
                    "class count {} is not a nonnegative integer",
                    rational_to_string(q)
                )))
            }
        })
        .collect()
}

/// Factorizes a product of irreducible characters.
///
/// With `n` given, the answer has exactly `n` weights, zeros included. With
/// `n` omitted, `n = 1, 2, ...` is tried up to the label sum of the highest
/// weight of `c` and the first validating answer is returned.
pub fn factorize_character(rs: &RootSystem, c: &FormalCharacter, n: Option<usize>) -> Result<FactorizeReport> {
    factorize_character_with(rs, c, n, FactorizeOptions::default())
}

pub fn factorize_character_with(
    rs: &RootSystem,
    c: &FormalCharacter,
    n: Option<usize>,
    opts: FactorizeOptions,
) -> Result<FactorizeReport> {
    check_lattice(rs, c)?;
    let (top, _) = c
        .leading_term()
        .ok_or_else(|| not_a_product("the zero character is not a product"))?;
    let d = weyl_denominator(rs)?;
    let max_terms = rs.limits().max_terms;
    let attempt = |p: &FormalCharacter, n: usize| -> Result<FactorizeReport> {
        let mut ctx = Ctx::new(opts);
        let factors = numerator_recursion(rs, p, n, 0, &mut ctx)?;
        let report = FactorizeReport {
            factorization: Factorization::new(factors),
            trace: ctx.trace,
        };
        if opts.strict {
            validate(rs, c, &report.factorization, opts.exec)?;
        }
        Ok(report)
    };
    match n {
        Some(0) => Err(Error::InvalidWeight("the number of factors must be positive".into())),
        Some(n) => {
            let mut p = c.clone();
            for _ in 0..n {
                p = p.multiply_with(&d, opts.exec, max_terms)?;
            }
            attempt(&p, n)
        }
        None => {
            let bound = usize::try_from(top.label_sum().max(1)).unwrap_or(usize::MAX);
            let mut p = c.clone();
            for k in 1..=bound {
                p = p.multiply_with(&d, opts.exec, max_terms)?;
                match attempt(&p, k) {
                    Ok(r) => return Ok(r),
                    Err(Error::NotAProduct(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(not_a_product(format!(
                "no factor count up to {} reproduces the character",
                bound
            )))
        }
    }
}

fn validate(rs: &RootSystem, c: &FormalCharacter, f: &Factorization, exec: Execution) -> Result<()> {
    let nonzero = f.nonzero();
    let product = if nonzero.is_empty() {
        FormalCharacter::one(Lattice::from(rs))
    } else {
        product_character_with(rs, &nonzero, false, exec)?
    };
    if product == *c {
        Ok(())
    } else {
        Err(not_a_product("the recovered factors do not reproduce the character"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorops::product_character;
    use num_bigint::BigInt;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    fn ws(s: &str) -> Vec<Weight> {
        let mut v = crate::rootsys::parse_weight_list(s).unwrap();
        v.sort();
        v
    }

    #[test]
    fn single_irreducible() {
        let r = rs("A2");
        let lam = Weight::from([2, 1]);
        let c = crate::charlattice::irreducible_character(&r, &lam).unwrap();
        let rep = factorize_character(&r, &c, Some(1)).unwrap();
        assert_eq!(rep.factors(), std::slice::from_ref(&lam));
        let rep = factorize_character(&r, &c, None).unwrap();
        assert_eq!(rep.factors(), &[lam]);
    }

    #[test]
    fn powers_of_the_denominator() {
        let r = rs("B2");
        let d = weyl_denominator(&r).unwrap();
        let p = d.pow(3).unwrap();
        assert_eq!(factorize_numerator_product(&r, &p, 3).unwrap(), vec![Weight::zero(2); 3]);
    }

    #[test]
    fn gl3_triple() {
        let r = rs("A2");
        let lams = ws("2,1;0,2;1,0");
        let p = product_character(&r, &lams, true).unwrap();
        assert_eq!(factorize_numerator_product(&r, &p, 3).unwrap(), lams);
        let q = product_character(&r, &ws("1,2;2,0;0,1"), true).unwrap();
        assert_ne!(p, q);
    }

    #[test]
    fn round_trips_on_small_types() {
        for (t, m) in [("A1", "2;3"), ("B2", "1,0;0,2;1,1"), ("G2", "1,0;0,1"), ("A3", "1,0,1;0,1,0"), ("C3", "1,0,0;0,0,1")] {
            let r = rs(t);
            let lams = ws(m);
            let c = product_character(&r, &lams, false).unwrap();
            let rep = factorize_character(&r, &c, Some(lams.len())).unwrap();
            assert_eq!(rep.factors(), &lams[..], "{}", t);
            for rec in &rep.trace {
                assert_eq!(rec.gap, rec.peeled[rec.corner.unwrap_or(0)] as i64 + 1);
            }
        }
    }

    #[test]
    fn padding_only_adds_zeros() {
        let r = rs("A2");
        let lams = ws("1,0;1,1");
        let c = product_character(&r, &lams, false).unwrap();
        let rep = factorize_character(&r, &c, Some(4)).unwrap();
        assert_eq!(rep.factorization.nonzero(), lams);
        assert_eq!(rep.factors().iter().filter(|w| w.is_zero()).count(), 2);
    }

    #[test]
    fn batch_mode_agrees() {
        let r = rs("A2");
        let lams = ws("1,0;1,0;0,1");
        let c = product_character(&r, &lams, false).unwrap();
        let opts = FactorizeOptions { batch: true, ..Default::default() };
        let rep = factorize_character_with(&r, &c, Some(3), opts).unwrap();
        assert_eq!(rep.factors(), &lams[..]);
    }

    #[test]
    fn rejects_non_products() {
        // chi_[2] + chi_[0] is chi_[1]^2, but adding the trivial character
        // twice gives a prime dimension that no nontrivial product has
        let r = rs("A1");
        let two = FormalCharacter::one(Lattice::from(&r)).scale(&BigInt::from(2));
        let c = product_character(&r, &ws("2"), false).unwrap().add(&two).unwrap();
        assert!(matches!(factorize_character(&r, &c, None), Err(Error::NotAProduct(_))));
        assert!(matches!(factorize_character(&r, &c, Some(2)), Err(Error::NotAProduct(_))));
        let r = rs("A2");
        let two = FormalCharacter::one(Lattice::from(&r)).scale(&BigInt::from(2));
        let c = product_character(&r, &ws("1,1"), false).unwrap().add(&two).unwrap();
        assert!(matches!(factorize_character(&r, &c, None), Err(Error::NotAProduct(_))));
    }

    #[test]
    fn report_json_shape() {
        let r = rs("A1");
        let c = product_character(&r, &ws("2;3"), false).unwrap();
        let rep = factorize_character(&r, &c, Some(2)).unwrap();
        let v = rep.to_json();
        assert_eq!(v["factors"], json!([[2], [3]]));
        assert_eq!(v["n"], json!(2));
        assert_eq!(v["trace"].as_array().unwrap().len(), 2);
    }
}
