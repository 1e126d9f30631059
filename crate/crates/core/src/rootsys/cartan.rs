//! Cartan types and their Cartan matrices in Bourbaki numbering.
//!
//! | type | diagram (nodes 1-based)                        | short roots |
//! |------|------------------------------------------------|-------------|
//! | A_n  | 1 - 2 - ... - n                                | none        |
//! | B_n  | 1 - ... - (n-1) => n                           | n           |
//! | C_n  | 1 - ... - (n-1) <= n                           | 1..n-1      |
//! | D_n  | 1 - ... - (n-2), with n-1 and n both on n-2    | none        |
//! | E_n  | 1 - 3 - 4 - 5 - ... - n, with 2 on 4           | none        |
//! | F_4  | 1 - 2 => 3 - 4                                 | 3, 4        |
//! | G_2  | 1 <= 2 (triple bond)                           | 1           |
//!
//! Entry `(i, j)` of a Cartan matrix is `<alpha_i^vee, alpha_j>`, so column
//! `j` holds the Dynkin labels of the simple root `alpha_j`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Cartan type such as `A2`, `C3` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidType(format!(
                "{}{} is not a simple type (rank out of range)",
                family.letter(),
                rank
            )))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All valid types of the given rank, in family order.
    pub fn of_rank(rank: usize) -> Vec<LieType> {
        Family::ALL
            .iter()
            .filter_map(|&f| LieType::new(f, rank).ok())
            .collect()
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 1..n {
                    link(i - 1, i);
                }
            }
            Family::D => {
                for i in 1..n - 1 {
                    link(i - 1, i);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 3..n {
                    link(i - 1, i);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        // Entry (short, long) carries the bond multiplicity.
        match self.family {
            Family::B => a[n - 1][n - 2] = -2,
            Family::C => a[n - 2][n - 1] = -2,
            Family::F => a[2][1] = -2,
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Integer functional `g` on Dynkin labels with `g . alpha_j` equal for
    /// every simple root, scaled to be integral and primitive. It pairs a
    /// weight with `rho^vee` up to a positive factor.
    pub fn grading(&self) -> Vec<i64> {
        let a = self.cartan_matrix();
        let n = self.rank;
        let at: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| a[j][i] as i64).collect()).collect();
        let inv = Matrix::from_integers(&at).inverse().expect("Cartan matrices are invertible");
        let g: Vec<Rational> = (0..n)
            .map(|i| (0..n).fold(Rational::zero(), |acc, j| acc + &inv[(i, j)]))
            .collect();
        let denom = g.iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let ints: Vec<i64> = g
            .iter()
            .map(|x| (x * Rational::from_integer(denom.clone())).to_integer().to_i64().unwrap())
            .collect();
        let common = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        ints.into_iter().map(|x| x / common).collect()
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Parses a letter immediately followed by the rank: `"C3"`.
impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(format!("unknown Lie type {:?}", s))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(format!("missing or bad rank in {:?}", s)))?;
        LieType::new(family, rank)
    }
}

/// Finds the simple type and node correspondence of a Cartan matrix.
///
/// Returns the type together with `map`, where node `k` of the type
/// corresponds to row `map[k]` of `matrix`. Among all matching types the
/// lexicographically smallest correspondence wins, so a submatrix that is
/// already in Bourbaki order keeps its order.
pub fn identify(matrix: &[Vec<i32>]) -> Result<(LieType, Vec<usize>)> {
    let n = matrix.len();
    let mut best: Option<(LieType, Vec<usize>)> = None;
    for t in LieType::of_rank(n) {
        let target = t.cartan_matrix();
        if let Some(map) = first_isomorphism(&target, matrix) {
            if best.as_ref().is_none_or(|(_, m)| map < *m) {
                best = Some((t, map));
            }
        }
    }
    best.ok_or_else(|| Error::InvalidType("Cartan matrix is not of simple type".into()))
}

fn first_isomorphism(target: &[Vec<i32>], matrix: &[Vec<i32>]) -> Option<Vec<usize>> {
    fn extend(
        target: &[Vec<i32>],
        matrix: &[Vec<i32>],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let k = map.len();
        if k == target.len() {
            return true;
        }
        for cand in 0..matrix.len() {
            if used[cand] {
                continue;
            }
            let consistent = map.iter().enumerate().all(|(j, &mj)| {
                target[k][j] == matrix[cand][mj] && target[j][k] == matrix[mj][cand]
            });
            if !consistent {
                continue;
            }
            used[cand] = true;
            map.push(cand);
            if extend(target, matrix, map, used) {
                return true;
            }
            map.pop();
            used[cand] = false;
        }
        false
    }
    let mut map = Vec::with_capacity(target.len());
    let mut used = vec![false; matrix.len()];
    extend(target, matrix, &mut map, &mut used).then_some(map)
}
