use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Neg, Sub};
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A point of the weight lattice written in Dynkin labels, i.e. its
/// coordinates in the basis of fundamental weights.
///
/// The same type carries dominant weights (all labels nonnegative) and
/// arbitrary lattice points, which appear as exponents of formal characters.
/// Ordering is lexicographic on the labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(SmallVec<[i32; 8]>);

impl Weight {
    pub fn new(labels: impl IntoIterator<Item = i32>) -> Self {
        Weight(labels.into_iter().collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(SmallVec::from_elem(0, rank))
    }

    /// The Weyl vector: every label equal to one.
    pub fn rho(rank: usize) -> Self {
        Weight(SmallVec::from_elem(1, rank))
    }

    /// The fundamental weight of node `i` (0-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> &[i32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }

    pub fn label_sum(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn scaled(&self, k: i32) -> Self {
        Weight(self.0.iter().map(|&x| x * k).collect())
    }

    /// `self + k * other`, used for reflections and root strings.
    pub fn add_scaled(&self, other: &Weight, k: i32) -> Self {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(self.0.iter().zip(other.0.iter()).map(|(&a, &b)| a + k * b).collect())
    }

    pub fn dot(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(&a, &b)| a as i64 * b).sum()
    }

    /// Concatenation, used for lattices of semisimple algebras.
    pub fn concat(&self, other: &Weight) -> Self {
        Weight(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::InvalidWeight(format!(
                "{} has {} labels, expected {}",
                self,
                self.rank(),
                rank
            )))
        }
    }

    pub(crate) fn check_dominant(&self, rank: usize) -> Result<()> {
        self.check_rank(rank)?;
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::InvalidWeight(format!("{} is not dominant", self)))
        }
    }
}

impl From<Vec<i32>> for Weight {
    fn from(v: Vec<i32>) -> Self {
        Weight(SmallVec::from_vec(v))
    }
}

impl From<&[i32]> for Weight {
    fn from(v: &[i32]) -> Self {
        Weight(SmallVec::from_slice(v))
    }
}

impl<const N: usize> From<[i32; N]> for Weight {
    fn from(v: [i32; N]) -> Self {
        Weight(v.iter().copied().collect())
    }
}

impl Index<usize> for Weight {
    type Output = i32;
    fn index(&self, i: usize) -> &i32 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Weight {
    fn index_mut(&mut self, i: usize) -> &mut i32 {
        &mut self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, 1)
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(rhs.0.iter()) {
            *a += b;
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.add_scaled(rhs, -1)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scaled(-1)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scaled(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// Parses comma-separated labels: `"2,2,2"`.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|e| Error::Parse(format!("bad label {:?} in {:?}: {}", t, s, e)))
            })
            .collect::<Result<SmallVec<_>>>()
            .map(Weight)
    }
}

/// Parses semicolon-separated weights: `"2,2,2;2,2,0"`.
pub fn parse_weight_list(s: &str) -> Result<Vec<Weight>> {
    s.split(';').map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates() {
        assert!(Weight::rho(3).is_regular_dominant());
        assert!(Weight::zero(2).is_dominant());
        assert!(!Weight::zero(2).is_regular_dominant());
        assert!(!Weight::from([1, -1]).is_dominant());
    }

    #[test]
    fn parse_and_display() {
        let w: Weight = "2, -1,0".parse().unwrap();
        assert_eq!(w, Weight::from([2, -1, 0]));
        assert_eq!(w.to_string(), "2,-1,0");
        assert!("".parse::<Weight>().is_err());
        assert!("1,x".parse::<Weight>().is_err());
        let ws = parse_weight_list("1;2").unwrap();
        assert_eq!(ws, vec![Weight::from([1]), Weight::from([2])]);
    }

    #[test]
    fn arithmetic() {
        let a = Weight::from([1, 2]);
        let b = Weight::from([3, -1]);
        assert_eq!(&a + &b, Weight::from([4, 1]));
        assert_eq!(&a - &b, Weight::from([-2, 3]));
        assert_eq!(a.add_scaled(&b, 2), Weight::from([7, 0]));
        assert_eq!(-&a, Weight::from([-1, -2]));
        assert_eq!(a.concat(&b).rank(), 4);
    }
}
