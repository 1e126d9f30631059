//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every check is exact; random draws come from a seeded
//! ChaCha stream so runs are reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylfactor::charlattice::{
    irreducible_character, slice_by_degree, weyl_denominator, weyl_denominator_product_form,
    weyl_dimension, weyl_numerator,
};
use weylfactor::factorizer::{brute_force_factorize, factorize_character};
use weylfactor::lindep::{class_independence_check, spiked_products};
use weylfactor::tensorops::{product_character, tensor_decompose};
use weylfactor::verify::{verify, EXAMPLES};
use weylfactor::{FormalCharacter, Lattice, LieType, RootSystem, Weight};

type Outcome = Result<String, String>;

fn system(name: &str) -> RootSystem {
    RootSystem::new(name.parse::<LieType>().unwrap()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn random_dominant(rng: &mut ChaCha8Rng, rank: usize, max_label: i32) -> Weight {
    Weight::new((0..rank).map(|_| rng.gen_range(0..=max_label)))
}

/// Alternating sum over `W (lam + rho)`, found by breadth-first search with
/// simple reflections. `lam + rho` is regular, so BFS depth is Weyl length.
fn oracle_numerator(rs: &RootSystem, lam: &Weight) -> FormalCharacter {
    let start = lam + &rs.rho();
    let mut seen: BTreeMap<Weight, i32> = BTreeMap::new();
    seen.insert(start.clone(), 1);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        let sign = seen[&x];
        for i in 0..rs.rank() {
            let y = rs.reflect(&x, i);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), -sign);
                queue.push_back(y);
            }
        }
    }
    FormalCharacter::from_terms(Lattice::from(rs), seen.into_iter().map(|(w, s)| (w, BigInt::from(s)))).unwrap()
}

/// All dominant weights with Weyl dimension at most `cap`. Dimension grows
/// with every label, so the search prunes at the first weight over the cap.
fn dominant_up_to_dimension(rs: &RootSystem, cap: u64) -> Vec<Weight> {
    let cap = BigInt::from(cap);
    let mut out = BTreeSet::new();
    let mut queue = VecDeque::from([Weight::zero(rs.rank())]);
    while let Some(w) = queue.pop_front() {
        if out.contains(&w) || weyl_dimension(rs, &w).unwrap() > cap {
            continue;
        }
        for i in 0..rs.rank() {
            queue.push_back(w.add_scaled(&Weight::fundamental(rs.rank(), i), 1));
        }
        out.insert(w);
    }
    out.into_iter().collect()
}

fn criterion_cg_ladder(_: &mut ChaCha8Rng) -> Outcome {
    let rs = system("A1");
    let mut pairs = 0;
    for k in 0..=12 {
        for l in k..=12 {
            let d = tensor_decompose(&rs, &Weight::from([k]), &Weight::from([l])).map_err(e)?;
            let expect: BTreeMap<Weight, BigInt> =
                (0..=k).map(|j| (Weight::from([l + k - 2 * j]), BigInt::one())).collect();
            ensure(*d.components() == expect, || format!("V_{k} x V_{l} gave {:?}", d.components()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs (k <= l <= 12)"))
}

fn criterion_weyl_character(_: &mut ChaCha8Rng) -> Outcome {
    let mut total = 0;
    let mut summary = Vec::new();
    for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "F4"] {
        let rs = system(t);
        let den = weyl_denominator(&rs).map_err(e)?;
        ensure(den == weyl_denominator_product_form(&rs).map_err(e)?, || format!("{t}: denominator forms differ"))?;
        ensure(den == oracle_numerator(&rs, &Weight::zero(rs.rank())), || format!("{t}: denominator differs from BFS"))?;
        let weights = dominant_up_to_dimension(&rs, 5000);
        for lam in &weights {
            let chi = irreducible_character(&rs, lam).map_err(e)?;
            let s = weyl_numerator(&rs, lam).map_err(e)?;
            ensure(s == oracle_numerator(&rs, lam), || format!("{t}[{lam}]: numerator differs from BFS"))?;
            ensure(chi.multiply(&den).map_err(e)? == s, || format!("{t}[{lam}]: chi D != S"))?;
            let dim = weyl_dimension(&rs, lam).map_err(e)?;
            ensure(chi.coefficient_sum() == dim, || format!("{t}[{lam}]: sum of multiplicities != {dim}"))?;
            ensure(chi.iter().all(|(_, m)| m.sign() == num_bigint::Sign::Plus), || format!("{t}[{lam}]: nonpositive multiplicity"))?;
        }
        total += weights.len();
        summary.push(format!("{t}:{}", weights.len()));
    }
    Ok(format!("{total} characters with dim <= 5000 ({})", summary.join(" ")))
}

fn criterion_slice_law(rng: &mut ChaCha8Rng) -> Outcome {
    let mut checked = 0;
    for rank in 1..=4 {
        for t in LieType::of_rank(rank) {
            let rs = RootSystem::new(t).map_err(e)?;
            for p in rs.corner_indices() {
                let cr = rs.restrict_corner(p).map_err(e)?;
                let sub = cr.sub_system();
                let (_, m_ps) = cr.adjacent();
                for _ in 0..20 {
                    let lam = random_dominant(rng, rank, 3);
                    let slices = slice_by_degree(&cr, &weyl_numerator(&rs, &lam).map_err(e)?).map_err(e)?;
                    ensure(slices.len() >= 2, || format!("{t} p={p} [{lam}]: fewer than two slices"))?;
                    let top = weyl_numerator(sub, &cr.restrict(&lam)).map_err(e)?;
                    ensure(slices[0].coefficient == top, || format!("{t} p={p} [{lam}]: top slice is not S'(lam')"))?;

                    // lam'' from the reflected regular weight, independent of the library formula.
                    let reflected = rs.reflect(&(&lam + &rs.rho()), p);
                    let lam2 = &cr.restrict(&reflected) - &sub.rho();
                    ensure(lam2 == cr.lambda_double_prime(&lam).map_err(e)?, || format!("{t} p={p} [{lam}]: lambda'' formula disagrees"))?;
                    let second = weyl_numerator(sub, &lam2).map_err(e)?.neg();
                    ensure(slices[1].coefficient == second, || format!("{t} p={p} [{lam}]: second slice is not -S'(lam'')"))?;

                    let gap = slices[0].scaled_degree - slices[1].scaled_degree;
                    let expect = (lam[p] as i64 + 1) * cr.degree_denominator();
                    ensure(gap == expect, || format!("{t} p={p} [{lam}]: scaled gap {gap}, expected {expect}"))?;
                    ensure(m_ps > 0, || format!("{t} p={p}: m_ps = {m_ps}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (type, corner, lambda) cases up to rank 4"))
}

fn criterion_round_trip(rng: &mut ChaCha8Rng) -> Outcome {
    const TYPES: [&str; 7] = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"];
    const DIM_CAP: u64 = 2_000_000;
    let systems: Vec<RootSystem> = TYPES.iter().map(|t| system(t)).collect();
    let mut done = 0;
    let mut nonzero_factors = 0;
    while done < 200 {
        let rs = &systems[rng.gen_range(0..systems.len())];
        let n = rng.gen_range(1..=3);
        let factors: Vec<Weight> = (0..n).map(|_| random_dominant(rng, rs.rank(), 3)).collect();
        let mut dim = BigInt::one();
        for f in &factors {
            dim *= weyl_dimension(rs, f).map_err(e)?;
        }
        if dim > BigInt::from(DIM_CAP) {
            continue;
        }
        let c = product_character(rs, &factors, false).map_err(e)?;
        let rep = factorize_character(rs, &c, Some(n)).map_err(e)?;
        let mut expect = factors.clone();
        expect.sort();
        ensure(rep.factors() == &expect[..], || {
            format!("{}: {:?} recovered as {:?}", rs.lie_type(), expect, rep.factors())
        })?;
        nonzero_factors += factors.iter().filter(|f| !f.is_zero()).count();
        done += 1;
    }
    Ok(format!("200 round trips, {nonzero_factors} nonzero factors, product dim <= {DIM_CAP}"))
}

fn multisets(candidates: &[Weight], n: usize, start: usize, cur: &mut Vec<Weight>, out: &mut Vec<Vec<Weight>>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for i in start..candidates.len() {
        cur.push(candidates[i].clone());
        multisets(candidates, n, i, cur, out);
        cur.pop();
    }
}

fn criterion_brute_force_uniqueness(_: &mut ChaCha8Rng) -> Outcome {
    let mut cases = 0;
    for (t, bound, max_n) in [("A1", 4, 3), ("A2", 2, 2)] {
        let rs = system(t);
        let mut labels = Vec::new();
        let l = rs.rank();
        let mut cur = vec![0i32; l];
        loop {
            let w = Weight::from(cur.clone());
            if !w.is_zero() {
                labels.push(w);
            }
            let Some(i) = (0..l).find(|&i| cur[i] < bound) else { break };
            cur[i] += 1;
            for x in &mut cur[..i] {
                *x = 0;
            }
        }
        for n in 1..=max_n {
            let mut all = Vec::new();
            multisets(&labels, n, 0, &mut Vec::new(), &mut all);
            for mut factors in all {
                factors.sort();
                let c = product_character(&rs, &factors, false).map_err(e)?;
                let fast = factorize_character(&rs, &c, Some(n)).map_err(e)?;
                let brute = brute_force_factorize(&rs, &c, n, bound).map_err(e)?;
                ensure(brute.len() == 1, || format!("{t} {factors:?}: brute force found {brute:?}"))?;
                ensure(brute[0] == fast.factors(), || {
                    format!("{t} {factors:?}: brute {:?} vs fast {:?}", brute[0], fast.factors())
                })?;
                ensure(brute[0] == factors, || format!("{t} {factors:?}: brute force found {:?}", brute[0]))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} products, each with exactly one factorization"))
}

fn criterion_verify_examples(_: &mut ChaCha8Rng) -> Outcome {
    let mut clauses = 0;
    for name in EXAMPLES {
        let r = verify(name).map_err(e)?;
        ensure(r.passed(), || format!("{name}: failed {:?}", r.failed_clauses()))?;
        clauses += r.clauses.len();
    }
    Ok(format!("{} examples, {clauses} clauses", EXAMPLES.len()))
}

fn criterion_class_independence(rng: &mut ChaCha8Rng) -> Outcome {
    let mut families = 0;
    let mut with_duplicates = 0;
    for t in ["A1", "A2", "B2"] {
        let rs = system(t);
        for _ in 0..100 {
            let distinct = rng.gen_range(1..=4);
            let mut lams: Vec<Weight> = Vec::new();
            while lams.len() < distinct {
                let w = random_dominant(rng, rs.rank(), 3);
                if !lams.contains(&w) {
                    lams.push(w);
                }
            }
            for _ in 0..rng.gen_range(0..=2) {
                let k = rng.gen_range(0..lams.len());
                let pos = rng.gen_range(0..=lams.len());
                let w = lams[k].clone();
                lams.insert(pos, w);
            }
            let d = rng.gen_range(1..=3);
            let p = rng.gen_range(0..rs.rank());
            let fam = spiked_products(&rs, &lams, d, p).map_err(e)?;
            let rep = class_independence_check(&fam);
            ensure(rep.independent, || format!("{t} {lams:?} d={d} p={p}: classes are dependent"))?;
            ensure(rep.classes.len() == distinct, || format!("{t} {lams:?}: {} classes", rep.classes.len()))?;
            ensure(rep.kernel.len() == lams.len() - distinct, || format!("{t} {lams:?}: kernel has dimension {}", rep.kernel.len()))?;
            for v in &rep.kernel {
                for class in &rep.classes {
                    let s: weylfactor::linalg::Rational = class.iter().map(|&i| v[i].clone()).sum();
                    ensure(s == Default::default(), || format!("{t} {lams:?}: kernel vector not inside classes"))?;
                }
            }
            if lams.len() > distinct {
                with_duplicates += 1;
            }
            families += 1;
        }
    }
    Ok(format!("{families} families, {with_duplicates} with repeated classes"))
}

fn criterion_end_character(rng: &mut ChaCha8Rng) -> Outcome {
    const DIM_CAP: u64 = 1000;
    let systems = [(system("A2"), 4), (system("C3"), 2)];
    let mut done = 0;
    let mut searched = 0;
    while done < 50 {
        let (rs, max_label) = &systems[rng.gen_range(0..systems.len())];
        let v = random_dominant(rng, rs.rank(), *max_label);
        let dim = weyl_dimension(rs, &v).map_err(e)?;
        if v.is_zero() || dim > BigInt::from(DIM_CAP) {
            continue;
        }
        let dual = rs.longest_element_action(&v).map_err(e)?;
        let end = |w: &Weight| -> Result<FormalCharacter, String> {
            let lam = irreducible_character(rs, w).map_err(e)?;
            let star = lam.map_exponents(|x| -x);
            lam.multiply(&star).map_err(e)
        };
        let target = end(&v)?;
        let bound = *v.labels().iter().max().unwrap() + 2;
        let mut found = Vec::new();
        let l = rs.rank();
        let mut cur = vec![0i32; l];
        loop {
            let w = Weight::from(cur.clone());
            if weyl_dimension(rs, &w).map_err(e)? == dim {
                searched += 1;
                if end(&w)? == target {
                    found.push(w);
                }
            }
            let Some(i) = (0..l).find(|&i| cur[i] < bound) else { break };
            cur[i] += 1;
            for x in &mut cur[..i] {
                *x = 0;
            }
        }
        found.sort();
        let mut expect = vec![v.clone(), dual];
        expect.sort();
        expect.dedup();
        ensure(found == expect, || format!("{} V=[{v}]: End matches {found:?}", rs.lie_type()))?;
        done += 1;
    }
    Ok(format!("50 representations, {searched} equal-dimension candidates compared"))
}

type Criterion = (&'static str, fn(&mut ChaCha8Rng) -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("cg_ladder", criterion_cg_ladder),
        ("weyl_character_and_dimension", criterion_weyl_character),
        ("corner_slice_law", criterion_slice_law),
        ("factorization_round_trip", criterion_round_trip),
        ("brute_force_uniqueness", criterion_brute_force_uniqueness),
        ("verify_examples", criterion_verify_examples),
        ("class_independence", criterion_class_independence),
        ("end_character_search", criterion_end_character),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + k as u64);
        let t0 = Instant::now();
        let outcome = run(&mut rng);
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{secs:.2}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
