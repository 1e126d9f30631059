use num_bigint::BigInt;
use num_integer::Integer;

use super::cartan::{self, LieType};
use super::{RootSystem, Weight};
use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Data for removing a corner node `p` from the Dynkin diagram.
///
/// The remaining nodes span a simple subalgebra `g'` of rank `l - 1`.
/// Lattice points of the parent are graded by the degree `pi(omega_p^vee)`
/// and restricted to `g'` by dropping label `p`.
#[derive(Clone, Debug)]
pub struct CornerRestriction {
    parent: LieType,
    corner: usize,
    sub: RootSystem,
    /// Node `k` of `g'` (Bourbaki order) is parent node `index_map[k]`.
    index_map: Vec<usize>,
    neighbour: usize,
    neighbour_in_sub: usize,
    /// Coefficient of the neighbour label in `s_p(lambda + rho)`:
    /// `-<alpha_s^vee, alpha_p>`.
    m_adjacent: i32,
    degree_denominator: i64,
    degree_numerators: Vec<i64>,
}

impl CornerRestriction {
    pub(crate) fn new(rs: &RootSystem, p: usize) -> Result<Self> {
        rs.check_node(p)?;
        if !rs.corner_indices().contains(&p) {
            return Err(Error::NotACorner(p));
        }
        let others: Vec<usize> = (0..rs.rank()).filter(|&i| i != p).collect();
        let sub_matrix: Vec<Vec<i32>> = others
            .iter()
            .map(|&i| others.iter().map(|&j| rs.cartan()[i][j]).collect())
            .collect();
        let (sub_type, order) = cartan::identify(&sub_matrix)?;
        let index_map: Vec<usize> = order.iter().map(|&k| others[k]).collect();
        let neighbour = rs.neighbours(p)[0];
        let neighbour_in_sub = index_map.iter().position(|&i| i == neighbour).unwrap();
        let m_adjacent = -rs.cartan()[neighbour][p];

        let (row, den) = rs.inverse_row_scaled(p);
        let g = row.iter().fold(den, |g, &x| g.gcd(&x));
        let unit = den / g; // degrees live in (1/unit) Z
        let degree_numerators = row.iter().map(|&x| x / g).collect();

        Ok(CornerRestriction {
            parent: rs.lie_type(),
            corner: p,
            sub: RootSystem::with_limits(sub_type, rs.limits())?,
            index_map,
            neighbour,
            neighbour_in_sub,
            m_adjacent,
            degree_denominator: unit,
            degree_numerators,
        })
    }

    pub fn parent_type(&self) -> LieType {
        self.parent
    }

    pub fn corner(&self) -> usize {
        self.corner
    }

    pub fn sub_type(&self) -> LieType {
        self.sub.lie_type()
    }

    /// Root system of `g'`.
    pub fn sub_system(&self) -> &RootSystem {
        &self.sub
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    /// The unique neighbour `s` of `p` (parent numbering) with `m_ps`.
    pub fn adjacent(&self) -> (usize, i32) {
        (self.neighbour, self.m_adjacent)
    }

    /// Index of the neighbour of `p` inside `g'`.
    pub fn neighbour_in_sub(&self) -> usize {
        self.neighbour_in_sub
    }

    /// Smallest `m` with `pi(omega_p^vee)` in `(1/m) Z` for all `pi`.
    pub fn degree_denominator(&self) -> i64 {
        self.degree_denominator
    }

    /// `pi(omega_p^vee) * degree_denominator`.
    pub fn scaled_degree(&self, pi: &Weight) -> i64 {
        pi.dot(&self.degree_numerators)
    }

    pub fn degree(&self, pi: &Weight) -> Rational {
        Rational::new(
            BigInt::from(self.scaled_degree(pi)),
            BigInt::from(self.degree_denominator),
        )
    }

    /// Restriction `pi'` to `g'`, in the Dynkin labels of `g'`.
    pub fn restrict(&self, pi: &Weight) -> Weight {
        Weight::new(self.index_map.iter().map(|&i| pi[i]))
    }

    /// Inverse of restriction on the fibre with label `label_p` at node `p`.
    pub fn lift(&self, sub_weight: &Weight, label_p: i32) -> Weight {
        let mut w = Weight::zero(self.index_map.len() + 1);
        for (k, &i) in self.index_map.iter().enumerate() {
            w[i] = sub_weight[k];
        }
        w[self.corner] = label_p;
        w
    }

    /// Recovers the label at `p` from the degree and the restriction.
    pub(crate) fn corner_label(&self, scaled_degree: i64, sub_weight: &Weight) -> Option<i32> {
        let rest: i64 = self
            .index_map
            .iter()
            .enumerate()
            .map(|(k, &i)| sub_weight[k] as i64 * self.degree_numerators[i])
            .sum();
        let c = self.degree_numerators[self.corner];
        let num = scaled_degree - rest;
        (num % c == 0).then(|| (num / c) as i32)
    }

    /// `lambda'' = (s_p(lambda + rho))' - rho'`: the restriction of `lambda`
    /// with `m_ps (n_p(lambda) + 1)` added at the neighbour of `p`.
    pub fn lambda_double_prime(&self, lambda: &Weight) -> Result<Weight> {
        lambda.check_dominant(self.index_map.len() + 1)?;
        let mut w = self.restrict(lambda);
        w[self.neighbour_in_sub] += self.m_adjacent * (lambda[self.corner] + 1);
        Ok(w)
    }
}
