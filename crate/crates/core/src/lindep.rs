//! Exact rank checks for families of spiked numerator products.
//!
//! Given dominant `lambda_1, ..., lambda_n`, the `i`-th spiked product is
//! `S_{lambda_1} ... S_{lambda_i + s} ... S_{lambda_n}` for a fixed spike
//! `s` (normally `d omega_p`). Products with equal `lambda_i` coincide, and
//! the check confirms that these coincidences are the only linear relations.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::charlattice::{weyl_numerator, FormalCharacter, Lattice};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rational};
use crate::par::{self, Execution};
use crate::rootsys::{RootSystem, Weight};

/// The base weights, the spike and the resulting products.
#[derive(Clone, Debug)]
pub struct SpikeFamily {
    pub base_weights: Vec<Weight>,
    /// `(node, d)` when the spike is `d omega_p`; `None` for a general spike.
    pub node_spike: Option<(usize, i32)>,
    pub spike: Weight,
    pub products: Vec<FormalCharacter>,
}

/// Spiked products with spike `d omega_p` over a simple type.
pub fn spiked_products(rs: &RootSystem, lams: &[Weight], d: i32, p: usize) -> Result<SpikeFamily> {
    check_spike_args(lams, d)?;
    rs.check_node(p)?;
    let spike = Weight::fundamental(rs.rank(), p).scaled(d);
    let mut fam = build_family(lams, &spike, Lattice::from(rs), |w| weyl_numerator(rs, w))?;
    fam.node_spike = Some((p, d));
    Ok(fam)
}

/// Spiked products with an arbitrary nonzero dominant spike.
pub fn spiked_products_general(rs: &RootSystem, lams: &[Weight], spike: &Weight) -> Result<SpikeFamily> {
    spike.check_dominant(rs.rank())?;
    if spike.is_zero() {
        return Err(Error::InvalidWeight("the spike must be nonzero".into()));
    }
    check_spike_args(lams, 1)?;
    build_family(lams, spike, Lattice::from(rs), |w| weyl_numerator(rs, w))
}

/// Spiked products over a direct sum of simple types. Weights and the node
/// index use the concatenated labels, and `S_lambda` is the tensor product
/// of the numerators of the components.
pub fn semisimple_spiked_products(
    systems: &[RootSystem],
    lams: &[Weight],
    d: i32,
    p: usize,
) -> Result<SpikeFamily> {
    check_spike_args(lams, d)?;
    if systems.is_empty() {
        return Err(Error::InvalidType("empty list of simple factors".into()));
    }
    let lattice = Lattice::product(systems.iter().map(|r| r.lie_type()).collect());
    let rank = lattice.rank();
    if p >= rank {
        return Err(Error::IndexOutOfRange(format!("node {} of a rank {} lattice", p + 1, rank)));
    }
    let numerator = |w: &Weight| -> Result<FormalCharacter> {
        w.check_dominant(rank)?;
        let mut offset = 0;
        let mut acc: Option<FormalCharacter> = None;
        for r in systems {
            let part = Weight::new(w.labels()[offset..offset + r.rank()].iter().copied());
            offset += r.rank();
            let s = weyl_numerator(r, &part)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.tensor(&s),
            });
        }
        Ok(acc.unwrap())
    };
    let spike = Weight::fundamental(rank, p).scaled(d);
    let mut fam = build_family(lams, &spike, lattice, numerator)?;
    fam.node_spike = Some((p, d));
    Ok(fam)
}

fn check_spike_args(lams: &[Weight], d: i32) -> Result<()> {
    if lams.is_empty() {
        return Err(Error::InvalidWeight("a spike family needs at least one weight".into()));
    }
    if d < 1 {
        return Err(Error::InvalidWeight(format!("spike multiple {} must be positive", d)));
    }
    Ok(())
}

fn build_family<F>(lams: &[Weight], spike: &Weight, lattice: Lattice, numerator: F) -> Result<SpikeFamily>
where
    F: Fn(&Weight) -> Result<FormalCharacter> + Sync + Send,
{
    let plain = par::map_collect(Execution::Auto, lams, &numerator)
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let spiked = par::map_collect(Execution::Auto, lams, |w| numerator(&(w + spike)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let indices: Vec<usize> = (0..lams.len()).collect();
    let products = par::map_collect(Execution::Auto, &indices, |&i| {
        let mut acc = spiked[i].clone();
        for (j, s) in plain.iter().enumerate() {
            if j != i {
                acc = acc.multiply_with(s, Execution::Sequential, usize::MAX)?;
            }
        }
        Ok(acc)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    debug_assert!(products.iter().all(|p| *p.lattice() == lattice));
    Ok(SpikeFamily {
        base_weights: lams.to_vec(),
        node_spike: None,
        spike: spike.clone(),
        products,
    })
}

/// Outcome of [`class_independence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    /// Indices grouped by equal base weight, in order of first occurrence.
    pub classes: Vec<Vec<usize>>,
    pub rank: usize,
    /// `rank == classes.len()`: only within-class relations exist.
    pub independent: bool,
    /// Basis of all linear relations among the products.
    pub kernel: Vec<Vec<Rational>>,
}

impl IndependenceReport {
    /// `{"classes":[[..]],"independent":b,"kernel":[[..]]}` with node
    /// indices and kernel entries as integers where possible.
    pub fn to_json(&self) -> Value {
        let kernel: Vec<Value> = self
            .kernel
            .iter()
            .map(|v| Value::Array(v.iter().map(rational_to_json).collect()))
            .collect();
        json!({
            "classes": self.classes,
            "independent": self.independent,
            "kernel": kernel,
        })
    }
}

fn rational_to_json(q: &Rational) -> Value {
    if q.is_integer() {
        crate::charlattice::bigint_to_json(&q.to_integer())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

/// Exact rank of the products as vectors over their full union support.
pub fn class_independence_check(family: &SpikeFamily) -> IndependenceReport {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, w) in family.base_weights.iter().enumerate() {
        match classes.iter_mut().find(|c| family.base_weights[c[0]] == *w) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let support: BTreeSet<&Weight> = family
        .products
        .iter()
        .flat_map(|p| p.iter().map(|(w, _)| w))
        .collect();
    let rows: Vec<&Weight> = support.into_iter().collect();
    let n = family.products.len();
    // transpose layout keeps the elimination on the short side
    let mut m = Matrix::zeros(rows.len(), n);
    for (j, p) in family.products.iter().enumerate() {
        for (i, w) in rows.iter().enumerate() {
            let c = p.coefficient(w);
            if !c.is_zero() {
                m[(i, j)] = Rational::from_integer(c);
            }
        }
    }
    let kernel = m.kernel_basis();
    let rank = n - kernel.len();
    IndependenceReport {
        independent: rank == classes.len(),
        classes,
        rank,
        kernel,
    }
}
