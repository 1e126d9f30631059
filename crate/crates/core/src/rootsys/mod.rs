//! Root systems of the simple types A-G and the Weyl-group machinery built on
//! them: reflections, dominant conjugates, orbits and corner restrictions.
//!
//! Node indices are 0-based throughout the library; the CLI and JSON output
//! use the 1-based Bourbaki labels from the table in [`cartan`].
//!
//! The Weyl group is never stored. Everything that needs it walks orbits of
//! lattice points by simple reflections.

pub mod cartan;
mod corner;
mod gl;
mod weight;

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rustc_hash::FxHashSet;

pub use cartan::{Family, LieType};
pub use corner::CornerRestriction;
pub use gl::partition_to_labels;
pub use weight::{parse_weight_list, Weight};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

/// Resource caps shared by everything that enumerates orbits or multiplies
/// characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest Weyl group whose regular orbits may be enumerated.
    pub max_weyl_order: u128,
    /// Largest number of terms an intermediate character may hold.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_weyl_order: 1_000_000,
            max_terms: 10_000_000,
        }
    }
}

/// Root-system data for one simple type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    cartan: Vec<Vec<i32>>,
    cartan_inverse: Matrix,
    /// `cartan_inverse * inverse_denominator`, all integral.
    inverse_scaled: Vec<Vec<i64>>,
    inverse_denominator: i64,
    /// Positive roots in simple-root coordinates, sorted by height.
    positive_roots: Vec<Vec<i32>>,
    /// The same roots in Dynkin labels.
    root_labels: Vec<Weight>,
    /// Dynkin labels of the simple roots (columns of the Cartan matrix).
    simple_roots: Vec<Weight>,
    /// `(alpha_i, alpha_i) / 2`, normalized so short roots have 1.
    half_norms: Vec<i64>,
    root_half_norms: Vec<i64>,
    grading: Vec<i64>,
    weyl_order: u128,
    limits: Limits,
}

impl RootSystem {
    pub fn new(lie_type: LieType) -> Result<Self> {
        Self::with_limits(lie_type, Limits::default())
    }

    /// Builds the root system of `lie_type`: Cartan matrix, its exact
    /// inverse, and the positive roots by closure under root strings.
    pub fn with_limits(lie_type: LieType, limits: Limits) -> Result<Self> {
        // re-validate in case the type was assembled by hand
        let lie_type = LieType::new(lie_type.family(), lie_type.rank())?;
        let cartan = lie_type.cartan_matrix();
        let l = lie_type.rank();
        let as_i64: Vec<Vec<i64>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| x as i64).collect())
            .collect();
        let cartan_inverse = Matrix::from_integers(&as_i64)
            .inverse()
            .ok_or_else(|| Error::InvalidType(format!("{} has a singular Cartan matrix", lie_type)))?;
        let mut denom = BigInt::from(1);
        for i in 0..l {
            for j in 0..l {
                denom = denom.lcm(cartan_inverse[(i, j)].denom());
            }
        }
        let inverse_denominator = denom.to_i64().expect("small denominator");
        let inverse_scaled: Vec<Vec<i64>> = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| {
                        (&cartan_inverse[(i, j)] * Rational::from_integer(denom.clone()))
                            .to_integer()
                            .to_i64()
                            .expect("small entry")
                    })
                    .collect()
            })
            .collect();
        let simple_roots: Vec<Weight> = (0..l).map(|j| Weight::new((0..l).map(|i| cartan[i][j]))).collect();
        let half_norms = symmetrizer(&cartan);
        let positive_roots = positive_root_closure(&cartan);
        let root_labels = positive_roots
            .iter()
            .map(|c| {
                let mut w = Weight::zero(l);
                for (j, &cj) in c.iter().enumerate() {
                    w = w.add_scaled(&simple_roots[j], cj);
                }
                w
            })
            .collect();
        let root_half_norms = positive_roots
            .iter()
            .map(|c| {
                let mut twice = 0i64;
                for i in 0..l {
                    for j in 0..l {
                        twice += c[i] as i64 * c[j] as i64 * half_norms[i] * cartan[i][j] as i64;
                    }
                }
                twice / 2
            })
            .collect();
        let grading = lie_type.grading();
        Ok(RootSystem {
            lie_type,
            cartan,
            cartan_inverse,
            inverse_scaled,
            inverse_denominator,
            positive_roots,
            root_labels,
            simple_roots,
            half_norms,
            root_half_norms,
            grading,
            weyl_order: lie_type.weyl_order(),
            limits,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn set_limits(&mut self, limits: Limits) {
        self.limits = limits;
    }

    /// Entry `(i, j)` is `<alpha_i^vee, alpha_j>`.
    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn cartan_inverse(&self) -> &Matrix {
        &self.cartan_inverse
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.positive_roots
    }

    pub fn positive_root_labels(&self) -> &[Weight] {
        &self.root_labels
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i]
    }

    pub fn half_norms(&self) -> &[i64] {
        &self.half_norms
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    pub fn rho(&self) -> Weight {
        Weight::rho(self.rank())
    }

    /// Integer functional positive on every positive root, used to order
    /// exponents; see [`LieType::grading`].
    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    /// Determinant of the Cartan matrix.
    pub fn cartan_determinant(&self) -> i64 {
        let m = Matrix::from_integers(
            &self
                .cartan
                .iter()
                .map(|r| r.iter().map(|&x| x as i64).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
        let mut det = Rational::from_integer(BigInt::from(1));
        let mut work = m;
        let n = self.rank();
        for c in 0..n {
            let p = (c..n).find(|&r| work[(r, c)] != Rational::from_integer(BigInt::from(0))).unwrap();
            if p != c {
                for j in 0..n {
                    let a = work[(c, j)].clone();
                    work[(c, j)] = work[(p, j)].clone();
                    work[(p, j)] = a;
                }
                det = -det;
            }
            let piv = work[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                let f = &work[(r, c)] / &piv;
                for j in c..n {
                    let v = &f * &work[(c, j)];
                    work[(r, j)] -= v;
                }
            }
        }
        det.to_integer().to_i64().unwrap()
    }

    pub(crate) fn check_node(&self, p: usize) -> Result<()> {
        if p < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "node {} (0-based) in {} of rank {}",
                p,
                self.lie_type,
                self.rank()
            )))
        }
    }

    /// The coweight pairing `pi(omega_p^vee)`, an exact rational whose
    /// denominator divides the Cartan determinant.
    pub fn coweight_pairing(&self, pi: &Weight, p: usize) -> Result<Rational> {
        self.check_node(p)?;
        pi.check_rank(self.rank())?;
        let num = pi.dot(&self.inverse_scaled[p]);
        Ok(Rational::new(BigInt::from(num), BigInt::from(self.inverse_denominator)))
    }

    pub(crate) fn inverse_row_scaled(&self, p: usize) -> (&[i64], i64) {
        (&self.inverse_scaled[p], self.inverse_denominator)
    }

    /// The invariant form `(x, alpha)` for a positive root given by index.
    pub fn form_with_root(&self, x: &Weight, root: usize) -> i64 {
        self.positive_roots[root]
            .iter()
            .enumerate()
            .map(|(j, &c)| x[j] as i64 * c as i64 * self.half_norms[j])
            .sum()
    }

    /// `<alpha^vee, x>` for a positive root given by index.
    pub fn coroot_pairing(&self, x: &Weight, root: usize) -> i64 {
        self.form_with_root(x, root) / self.root_half_norms[root]
    }

    /// Applies the simple reflection `s_i`.
    pub fn reflect(&self, x: &Weight, i: usize) -> Weight {
        x.add_scaled(&self.simple_roots[i], -x[i])
    }

    fn reflect_in_place(&self, x: &mut Weight, i: usize) {
        let k = x[i];
        if k != 0 {
            for (j, &a) in self.simple_roots[i].labels().iter().enumerate() {
                x[j] -= k * a;
            }
        }
    }

    /// Applies `s_{word[0]} s_{word[1]} ... s_{word[k-1]}` to `x`, so the
    /// last letter acts first.
    pub fn apply_word(&self, word: &[usize], x: &Weight) -> Result<Weight> {
        for &i in word {
            self.check_node(i)?;
        }
        let mut y = x.clone();
        for &i in word.iter().rev() {
            self.reflect_in_place(&mut y, i);
        }
        Ok(y)
    }

    /// Dominant representative of the orbit of `x` and the length parity of
    /// the reducing word (`true` for odd).
    pub fn dominant_conjugate(&self, x: &Weight) -> (Weight, bool) {
        let mut y = x.clone();
        let mut odd = false;
        while let Some(i) = y.labels().iter().position(|&v| v < 0) {
            self.reflect_in_place(&mut y, i);
            odd = !odd;
        }
        (y, odd)
    }

    /// Like [`dominant_conjugate`](Self::dominant_conjugate) but returns a
    /// sign: `0` when `x` lies on a wall (its dominant representative has a
    /// zero label), otherwise `epsilon(w)` of the reducing word.
    pub fn dominant_conjugate_strict(&self, x: &Weight) -> (Weight, i32) {
        let (y, odd) = self.dominant_conjugate(x);
        let sign = if y.is_regular_dominant() {
            if odd {
                -1
            } else {
                1
            }
        } else {
            0
        };
        (y, sign)
    }

    /// A reduced word for the longest element `w_0`.
    pub fn longest_word(&self) -> Vec<usize> {
        let mut y = -self.rho();
        let mut word = Vec::new();
        while let Some(i) = y.labels().iter().position(|&v| v < 0) {
            self.reflect_in_place(&mut y, i);
            word.push(i);
        }
        word
    }

    /// `-w_0(lambda)`, the highest weight of the dual module.
    pub fn longest_element_action(&self, lambda: &Weight) -> Result<Weight> {
        lambda.check_dominant(self.rank())?;
        Ok(self.dominant_conjugate(&-lambda).0)
    }

    /// All points of the Weyl orbit of `x`, dominant representative first.
    /// Fails on types above `limits.max_weyl_order` and once the orbit
    /// outgrows `limits.max_terms`.
    pub fn orbit(&self, x: &Weight) -> Result<Vec<Weight>> {
        x.check_rank(self.rank())?;
        self.check_weyl_cap()?;
        let (start, _) = self.dominant_conjugate(x);
        let cap = self.limits.max_terms;
        let mut seen: FxHashSet<Weight> = FxHashSet::default();
        seen.insert(start.clone());
        let mut out = vec![start];
        let mut head = 0;
        while head < out.len() {
            let y = out[head].clone();
            head += 1;
            for i in 0..self.rank() {
                // moving down only: s_i lowers y exactly when its label is positive
                if y[i] > 0 {
                    let z = self.reflect(&y, i);
                    if seen.insert(z.clone()) {
                        out.push(z);
                        if out.len() > cap {
                            return Err(Error::cap("Weyl orbit size", cap as u64));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// The signed orbit `{(w x, epsilon(w)) : w in W}` of a regular dominant
    /// point, enumerated breadth-first from `x`. BFS depth equals the length
    /// of `w`, which fixes the sign.
    pub fn signed_orbit(&self, x: &Weight) -> Result<Vec<(Weight, i32)>> {
        x.check_rank(self.rank())?;
        if !x.is_regular_dominant() {
            return Err(Error::NotRegular(x.to_string()));
        }
        self.check_weyl_cap()?;
        let mut seen: FxHashSet<Weight> = FxHashSet::default();
        seen.insert(x.clone());
        let mut out = Vec::with_capacity(self.weyl_order as usize);
        let mut level = vec![x.clone()];
        let mut sign = 1;
        while !level.is_empty() {
            let mut next = Vec::new();
            for y in &level {
                for i in 0..self.rank() {
                    if y[i] > 0 {
                        let z = self.reflect(y, i);
                        if seen.insert(z.clone()) {
                            next.push(z);
                        }
                    }
                }
            }
            out.extend(level.into_iter().map(|y| (y, sign)));
            level = next;
            sign = -sign;
        }
        debug_assert_eq!(out.len() as u128, self.weyl_order);
        Ok(out)
    }

    pub(crate) fn check_weyl_cap(&self) -> Result<()> {
        if self.weyl_order > self.limits.max_weyl_order {
            Err(Error::cap(
                format!("Weyl group order {} of {}", self.weyl_order, self.lie_type),
                self.limits.max_weyl_order.min(u64::MAX as u128) as u64,
            ))
        } else {
            Ok(())
        }
    }

    /// Neighbours of node `i` in the Dynkin diagram.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (0..self.rank())
            .filter(|&j| j != i && self.cartan[i][j] != 0)
            .collect()
    }

    /// Leaves of the Dynkin tree in ascending order. Empty for rank one,
    /// where no restriction exists and the factorizer uses its base case.
    pub fn corner_indices(&self) -> Vec<usize> {
        if self.rank() < 2 {
            return Vec::new();
        }
        (0..self.rank())
            .filter(|&i| self.neighbours(i).len() == 1)
            .collect()
    }

    /// Restriction data for removing the corner node `p`.
    pub fn restrict_corner(&self, p: usize) -> Result<CornerRestriction> {
        CornerRestriction::new(self, p)
    }
}

/// `(alpha_i, alpha_i)/2` from a connected Cartan matrix, scaled so the
/// smallest entry is 1.
fn symmetrizer(cartan: &[Vec<i32>]) -> Vec<i64> {
    let n = cartan.len();
    // d_j = d_i * A[i][j] / A[j][i] along edges; start large enough to stay integral
    let mut d = vec![0i64; n];
    d[0] = 6;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if j != i && cartan[i][j] != 0 && d[j] == 0 {
                d[j] = d[i] * cartan[i][j] as i64 / cartan[j][i] as i64;
                queue.push_back(j);
            }
        }
    }
    let g = d.iter().fold(0i64, |g, &x| g.gcd(&x));
    d.iter().map(|x| x / g).collect()
}

/// Positive roots by the root-string closure: for a root `beta` and a
/// simple root `alpha_i`, `beta + alpha_i` is a root iff `p - <alpha_i^vee,
/// beta> > 0`, where `p` is how far the string extends below `beta`.
fn positive_root_closure(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = cartan.len();
    let mut all: FxHashSet<Vec<i32>> = FxHashSet::default();
    let mut roots = Vec::new();
    let mut layer: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    while !layer.is_empty() {
        for r in &layer {
            all.insert(r.clone());
        }
        let mut next: Vec<Vec<i32>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let label: i32 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut p = 0;
                let mut lower = beta.clone();
                loop {
                    lower[i] -= 1;
                    if lower[i] >= 0 && all.contains(&lower) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - label > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        roots.extend(layer);
        next.sort();
        layer = next;
    }
    roots
}
