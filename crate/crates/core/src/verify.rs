//! Replayable worked examples, each a list of named clauses.
//!
//! * `sp6`: two pairs of `C3` weights with equal sums and conjugate
//!   differences whose tensor products still differ.
//! * `gl3`: two triples of `GL(3)` weights that no coroot evaluation tells
//!   apart but whose second slices do.
//! * `divisibility`: staircase numerators dividing each other.
//! * `adjoint`: `End(V)` determines `V` up to duality.
//! * `cg`: the Clebsch-Gordan ladder for `A1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::charlattice::{
    irreducible_character, slice_by_degree, weyl_dimension, weyl_numerator, FormalCharacter,
};
use crate::error::{Error, Result};
use crate::factorizer::factorize_character;
use crate::rootsys::{partition_to_labels, RootSystem, Weight};
use crate::tensorops::{product_character, standard_prv_component, tensor_decompose};

pub const EXAMPLES: [&str; 5] = ["sp6", "gl3", "divisibility", "adjoint", "cg"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub example: String,
    pub clauses: Vec<Clause>,
}

impl VerifyReport {
    fn new(example: &str) -> Self {
        VerifyReport {
            example: example.to_string(),
            clauses: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.clauses.push(Clause {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn failed_clauses(&self) -> Vec<&str> {
        self.clauses.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        let clauses: Vec<Value> = self
            .clauses
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        json!({"example": self.example, "passed": self.passed(), "clauses": clauses})
    }
}

/// Runs one example by name.
pub fn verify(example: &str) -> Result<VerifyReport> {
    match example {
        "sp6" => verify_sp6(),
        "gl3" => verify_gl3(),
        "divisibility" => verify_divisibility(),
        "adjoint" => verify_adjoint(),
        "cg" => verify_cg(),
        other => Err(Error::Parse(format!(
            "unknown example {:?}; expected one of {}",
            other,
            EXAMPLES.join(", ")
        ))),
    }
}

fn system(t: &str) -> Result<RootSystem> {
    RootSystem::new(t.parse()?)
}

fn list(ws: &[Weight]) -> String {
    ws.iter().map(|w| format!("[{}]", w)).collect::<Vec<_>>().join(" ")
}

/// `C3` Dynkin labels of `c_1 e_1 + c_2 e_2 + c_3 e_3`.
pub fn sp6_labels(c: [i32; 3]) -> Weight {
    Weight::from([c[0] - c[1], c[1] - c[2], c[2]])
}

fn verify_sp6() -> Result<VerifyReport> {
    let rs = system("C3")?;
    let mut r = VerifyReport::new("sp6");
    let lam = [sp6_labels([6, 4, 2]), sp6_labels([4, 2, 0])];
    let mu = [sp6_labels([6, 2, 2]), sp6_labels([4, 4, 0])];
    r.check(
        "labels",
        lam == [Weight::from([2, 2, 2]), Weight::from([2, 2, 0])]
            && mu == [Weight::from([4, 0, 2]), Weight::from([0, 4, 0])],
        format!("lambda {} mu {}", list(&lam), list(&mu)),
    );
    let sum_l = &lam[0] + &lam[1];
    let sum_m = &mu[0] + &mu[1];
    r.check("sums_equal", sum_l == sum_m, format!("[{}] vs [{}]", sum_l, sum_m));
    let dl = rs.dominant_conjugate(&(&lam[0] - &lam[1])).0;
    let dm = rs.dominant_conjugate(&(&mu[0] - &mu[1])).0;
    r.check(
        "differences_conjugate",
        dl == dm,
        format!("dominant representatives [{}] and [{}]", dl, dm),
    );
    let pl = standard_prv_component(&rs, &lam[0], &lam[1])?;
    let pm = standard_prv_component(&rs, &mu[0], &mu[1])?;
    r.check(
        "standard_prv_agree",
        pl == pm,
        format!("[{}] and [{}]", pl, pm),
    );
    let cl = product_character(&rs, &lam, false)?;
    let cm = product_character(&rs, &mu, false)?;
    r.check(
        "products_differ",
        cl != cm,
        format!("{} and {} terms", cl.len(), cm.len()),
    );
    let rep = factorize_character(&rs, &cl, Some(2))?;
    let mut expect = lam.to_vec();
    expect.sort();
    r.check(
        "factorization_recovers_lambda",
        rep.factors() == &expect[..],
        format!("recovered {}", list(rep.factors())),
    );
    Ok(r)
}

/// The two `GL(3)` triples as `A2` labels.
pub fn gl3_triples() -> Result<([Weight; 3], [Weight; 3])> {
    let l = [
        partition_to_labels(&[3, 1, 0])?,
        partition_to_labels(&[2, 2, 0])?,
        partition_to_labels(&[1, 0, 0])?,
    ];
    let m = [
        partition_to_labels(&[3, 2, 0])?,
        partition_to_labels(&[2, 0, 0])?,
        partition_to_labels(&[1, 1, 0])?,
    ];
    Ok((l, m))
}

fn verify_gl3() -> Result<VerifyReport> {
    let rs = system("A2")?;
    let mut r = VerifyReport::new("gl3");
    let (lam, mu) = gl3_triples()?;
    let rho = rs.rho();
    let mut all_agree = true;
    let mut detail = Vec::new();
    for a in 0..rs.positive_roots().len() {
        let eval = |ws: &[Weight]| {
            let mut v: Vec<i64> = ws.iter().map(|w| rs.coroot_pairing(&(w + &rho), a)).collect();
            v.sort();
            v
        };
        let (x, y) = (eval(&lam), eval(&mu));
        all_agree &= x == y;
        detail.push(format!("{:?}/{:?}", x, y));
    }
    r.check("coroot_multisets_agree", all_agree, detail.join(" "));

    let pl = product_character(&rs, &lam, true)?;
    let pm = product_character(&rs, &mu, true)?;
    let cr = rs.restrict_corner(0)?;
    let sl = slice_by_degree(&cr, &pl)?;
    let sm = slice_by_degree(&cr, &pm)?;
    r.check(
        "top_slices_agree",
        sl[0] == sm[0],
        format!("degree {} with {} terms", sl[0].degree, sl[0].coefficient.len()),
    );
    r.check(
        "second_slices_differ",
        sl[1] != sm[1],
        format!("degrees {} and {}", sl[1].degree, sm[1].degree),
    );
    r.check("products_differ", pl != pm, "numerator products compared term by term");
    let c = product_character(&rs, &lam, false)?;
    let rep = factorize_character(&rs, &c, Some(3))?;
    let mut expect = lam.to_vec();
    expect.sort();
    r.check(
        "factorization_recovers_lambda",
        rep.factors() == &expect[..],
        format!("recovered {}", list(rep.factors())),
    );
    Ok(r)
}

fn divides(num: &FormalCharacter, den: &FormalCharacter) -> Result<bool> {
    match num.exact_divide(den) {
        Ok(q) => Ok(q.multiply(den)? == *num),
        Err(Error::NotDivisible(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn verify_divisibility() -> Result<VerifyReport> {
    let mut r = VerifyReport::new("divisibility");
    let a1 = system("A1")?;
    let s1 = |a: i32| weyl_numerator(&a1, &Weight::from([a]));
    r.check("gl2_a1_b3", divides(&s1(3)?, &s1(1)?)?, "S_(3,0) / S_(1,0)");

    let mut sufficient = true;
    let mut exact = true;
    for a in 0..=6 {
        for b in a..=20 {
            let d = divides(&s1(b)?, &s1(a)?)?;
            let staircase = (b + 1) % (a + 1) == 0;
            sufficient &= !staircase || d;
            exact &= d == staircase;
        }
    }
    r.check("gl2_staircase_sufficient", sufficient, "0 <= a <= 6, a <= b <= 20");
    // for GL(2) the condition is also necessary: x^(b+1) - x^-(b+1) has
    // primitive (2(a+1))-th roots of unity among its zeros only if (a+1) | (b+1)
    r.check("gl2_staircase_exact", exact, "0 <= a <= 6, a <= b <= 20");

    let a2 = system("A2")?;
    let s2 = |a: i32| -> Result<FormalCharacter> {
        let w = partition_to_labels(&[2 * a, a, 0])?;
        weyl_numerator(&a2, &w)
    };
    let mut gl3 = true;
    let mut cases = Vec::new();
    for a in 0..=2 {
        for b in a..=5 {
            if (b + 1) % (a + 1) == 0 {
                gl3 &= divides(&s2(b)?, &s2(a)?)?;
                cases.push(format!("({},{})", a, b));
            }
        }
    }
    r.check("gl3_staircase_sufficient", gl3, cases.join(" "));
    Ok(r)
}

/// Dominant `W` with labels at most `label_bound` and
/// `chi_W chi_{W*} = chi_V chi_{V*}`.
pub fn end_character_matches(rs: &RootSystem, v: &Weight, label_bound: i32) -> Result<Vec<Weight>> {
    let target_dim = weyl_dimension(rs, v)?;
    let (_, target) = crate::tensorops::dual_decorations(rs, v)?;
    let l = rs.rank();
    let mut found = Vec::new();
    let mut labels = vec![0i32; l];
    loop {
        let w = Weight::from(labels.clone());
        if weyl_dimension(rs, &w)? == target_dim {
            let (_, endo) = crate::tensorops::dual_decorations(rs, &w)?;
            if endo == target {
                found.push(w);
            }
        }
        let Some(i) = (0..l).find(|&i| labels[i] < label_bound) else { break };
        labels[i] += 1;
        for x in &mut labels[..i] {
            *x = 0;
        }
    }
    found.sort();
    Ok(found)
}

fn verify_adjoint() -> Result<VerifyReport> {
    let mut r = VerifyReport::new("adjoint");
    for (t, v, bound) in [("A2", [2, 1].as_slice(), 3), ("A3", [1, 0, 2].as_slice(), 2), ("C3", [1, 0, 1].as_slice(), 2)] {
        let rs = system(t)?;
        let v = Weight::from(v);
        let dual = rs.longest_element_action(&v)?;
        let (_, endo) = crate::tensorops::dual_decorations(&rs, &v)?;
        let rep = factorize_character(&rs, &endo, Some(2))?;
        let mut expect = [v.clone(), dual.clone()];
        expect.sort();
        r.check(
            &format!("{}_end_factorizes", t.to_lowercase()),
            rep.factors() == &expect[..],
            format!("End(V_[{}]) = {}", v, list(rep.factors())),
        );
        let matches = end_character_matches(&rs, &v, bound)?;
        let ok = matches.iter().all(|w| *w == v || *w == dual) && matches.contains(&v);
        r.check(
            &format!("{}_search_finds_only_v_or_dual", t.to_lowercase()),
            ok,
            format!("labels <= {}: {}", bound, list(&matches)),
        );
    }
    Ok(r)
}

fn verify_cg() -> Result<VerifyReport> {
    let rs = system("A1")?;
    let mut r = VerifyReport::new("cg");
    let mut ladder = true;
    let mut conserved = true;
    for l in 0..=12 {
        for k in 0..=l {
            let d = tensor_decompose(&rs, &Weight::from([k]), &Weight::from([l]))?;
            let expect: BTreeMap<Weight, BigInt> = (0..=k)
                .map(|j| (Weight::from([l + k - 2 * j]), BigInt::from(1)))
                .collect();
            ladder &= *d.components() == expect;
            let lhs = product_character(&rs, &[Weight::from([k]), Weight::from([l])], false)?;
            conserved &= d.character(&rs)? == lhs;
        }
    }
    r.check("ladder", ladder, "V_k (x) V_l = V_(l+k) + V_(l+k-2) + ... + V_(l-k), 0 <= k <= l <= 12");
    r.check("characters_conserved", conserved, "chi_k chi_l equals the sum of the ladder");
    let dims = (0..=12).all(|n| {
        weyl_dimension(&rs, &Weight::from([n])).ok() == Some(BigInt::from(n + 1))
            && irreducible_character(&rs, &Weight::from([n])).map(|c| c.coefficient_sum()).ok()
                == Some(BigInt::from(n + 1))
    });
    r.check("dimension_n_plus_one", dims, "0 <= n <= 12");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_example_passes() {
        for e in EXAMPLES {
            let r = verify(e).unwrap();
            assert!(r.passed(), "{}: {:?}", e, r.failed_clauses());
        }
        assert!(verify("nope").is_err());
    }

    #[test]
    fn sp6_conversion() {
        assert_eq!(sp6_labels([6, 4, 2]), Weight::from([2, 2, 2]));
        assert_eq!(sp6_labels([4, 4, 0]), Weight::from([0, 4, 0]));
    }
}
