//! Partitions and the Littlewood-Richardson rule.
//!
//! `c^mu_{lambda nu}` is computed as the number of semistandard fillings of
//! the skew shape `mu / lambda` with content `nu` whose reverse reading word
//! (rows top to bottom, each row right to left) is a lattice word.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::domain;
use crate::rootsys::Weight;
use crate::Result;

/// A partition with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain!("{parts:?} is not weakly decreasing"));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `k` (0-based), zero past the length.
    pub fn part(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Young diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|k| other.0[k] <= self.0[k])
    }

    /// All partitions of `size` with at most `max_parts` parts, in
    /// reverse lexicographic order.
    pub fn all_of_size(size: u32, max_parts: usize) -> Vec<Partition> {
        fn go(rest: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if slots == 0 {
                return;
            }
            for p in (1..=rest.min(max_part)).rev() {
                cur.push(p);
                go(rest - p, p, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(size, size, max_parts, &mut Vec::new(), &mut out);
        out
    }

    /// `s_lambda(1, ..., 1)` with `n` ones: the dimension of the polynomial
    /// `GL_n` representation.
    pub fn schur_dimension(&self, n: usize) -> BigUint {
        if self.len() > n {
            return BigUint::from(0u32);
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for i in 0..n {
            for j in i + 1..n {
                let diff = self.part(i) as u64 + (j - i) as u64 - self.part(j) as u64;
                num *= BigUint::from(diff);
                den *= BigUint::from((j - i) as u64);
            }
        }
        num / den
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Number of LR tableaux of shape `mu / lambda` and content `nu`.
pub fn lr_coefficient(lambda: &Partition, nu: &Partition, mu: &Partition) -> u64 {
    if mu.size() != lambda.size() + nu.size() || !mu.contains(lambda) || !mu.contains(nu) {
        return 0;
    }
    // Cells in reverse reading order: (row, col).
    let mut cells = Vec::new();
    for r in 0..mu.len() {
        for c in (lambda.part(r)..mu.part(r)).rev() {
            cells.push((r, c));
        }
    }
    let mut filling: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    let mut counts = vec![0u32; nu.len()];
    let mut total = 0u64;
    fill(0, &cells, lambda, nu, &mut filling, &mut counts, &mut total);
    total
}

fn fill(
    k: usize,
    cells: &[(usize, u32)],
    lambda: &Partition,
    nu: &Partition,
    filling: &mut BTreeMap<(usize, u32), usize>,
    counts: &mut Vec<u32>,
    total: &mut u64,
) {
    if k == cells.len() {
        *total += 1;
        return;
    }
    let (r, c) = cells[k];
    // Rows weakly increase left to right; we fill right to left.
    let upper = filling.get(&(r, c + 1)).copied().unwrap_or(nu.len());
    // Columns strictly increase downwards (only cells of the skew shape count).
    let lower = if r > 0 && c >= lambda.part(r - 1) {
        filling[&(r - 1, c)] + 1
    } else {
        0
    };
    // A lattice word puts nothing larger than `r + 1` into row `r`.
    let hi = upper.min(nu.len() - 1).min(r);
    if lower > hi {
        return;
    }
    for v in lower..=hi {
        if counts[v] == nu.0[v] {
            continue;
        }
        if v > 0 && counts[v] + 1 > counts[v - 1] {
            continue;
        }
        counts[v] += 1;
        filling.insert((r, c), v);
        fill(k + 1, cells, lambda, nu, filling, counts, total);
        filling.remove(&(r, c));
        counts[v] -= 1;
    }
}

/// Expansion of `s_lambda * s_nu` in the ring of symmetric polynomials in
/// `n` variables.
pub fn schur_product_expansion(
    lambda: &Partition,
    nu: &Partition,
    n: usize,
) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if lambda.len() > n || nu.len() > n {
        return out;
    }
    for mu in Partition::all_of_size(lambda.size() + nu.size(), n) {
        let c = lr_coefficient(lambda, nu, &mu);
        if c > 0 {
            out.insert(mu, c);
        }
    }
    out
}

/// Partition of a dominant `sl_{r+1}` weight: `lambda_j = sum_{k >= j} l_k`.
pub fn partition_of_weight(weight: &Weight) -> Result<Partition> {
    if !weight.is_dominant() {
        return Err(domain!("weight {:?} is not dominant", weight.0));
    }
    let r = weight.rank();
    let parts: Vec<u32> = (0..r)
        .map(|j| weight.0[j..].iter().sum::<i64>() as u32)
        .collect();
    Partition::new(parts)
}

/// Dominant `sl_{r+1}` weight of a partition with at most `r + 1` parts;
/// full columns of height `r + 1` are dropped.
pub fn weight_of_partition(p: &Partition, rank: usize) -> Result<Weight> {
    if p.len() > rank + 1 {
        return Err(domain!("{p} has more than {} parts", rank + 1));
    }
    Ok(Weight(
        (0..rank)
            .map(|j| p.part(j) as i64 - p.part(j + 1) as i64)
            .collect(),
    ))
}

/// `c^mu_{lambda nu}` for `sl_{r+1}` dominant weights via the partition
/// dictionary: `mu` is padded with full columns of height `r + 1` so the
/// sizes balance. Zero when they cannot.
pub fn lr_coefficient_of_weights(lambda: &Weight, nu: &Weight, mu: &Weight) -> Result<u64> {
    let r = lambda.rank();
    let (pl, pn, pm) = (
        partition_of_weight(lambda)?,
        partition_of_weight(nu)?,
        partition_of_weight(mu)?,
    );
    let excess = pl.size() as i64 + pn.size() as i64 - pm.size() as i64;
    let height = r as i64 + 1;
    if excess < 0 || excess % height != 0 {
        return Ok(0);
    }
    let cols = (excess / height) as u32;
    let padded = Partition::new((0..=r).map(|j| pm.part(j) + cols).collect())?;
    Ok(lr_coefficient(&pl, &pn, &padded))
}
