use alloc::vec;
use alloc::vec::Vec;

use crate::error::domain;
use crate::rootsys::{find_symmetrizer, CartanMatrix};
use crate::Result;

/// An `m x n` integer matrix whose top `n x n` block is skew-symmetrizable.
/// Rows `n..m` are coefficient (frozen) rows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    m: usize,
    entries: Vec<i64>,
}

/// A positive-integer `D` with `D B` skew-symmetric, or `None`.
pub fn is_skew_symmetrizable(b: &[Vec<i64>]) -> Option<Vec<i64>> {
    if b.iter().any(|r| r.len() != b.len()) {
        return None;
    }
    if b.is_empty() {
        return Some(Vec::new());
    }
    find_symmetrizer(b, true)
}

/// `a_ii = 2`, `a_ij = -|b_ij|`.
pub fn cartan_companion(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    b.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| if i == j { 2 } else { -x.abs() })
                .collect()
        })
        .collect()
}

impl ExchangeMatrix {
    /// `rows` has `m` rows of length `n` with `m >= n`.
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if n == 0 || m < n || rows.iter().any(|r| r.len() != n) {
            return Err(domain!("exchange matrix must be m x n with m >= n >= 1"));
        }
        let principal: Vec<Vec<i64>> = rows[..n].to_vec();
        if is_skew_symmetrizable(&principal).is_none() {
            return Err(domain!("principal part {principal:?} is not skew-symmetrizable"));
        }
        Ok(ExchangeMatrix {
            n,
            m,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    /// The acyclic exchange matrix of a Cartan matrix of finite type:
    /// `b_ij = -a_ij` for `i < j` and `a_ij` for `i > j`.
    pub fn from_cartan(cartan: &CartanMatrix) -> Self {
        let n = cartan.rank();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        core::cmp::Ordering::Less => -cartan.a(i, j),
                        core::cmp::Ordering::Greater => cartan.a(i, j),
                        core::cmp::Ordering::Equal => 0,
                    })
                    .collect()
            })
            .collect();
        ExchangeMatrix::new(&rows).expect("Cartan orientation is skew-symmetrizable")
    }

    /// Rank `n` (number of mutable directions).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of rows `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Entry `b_ij`, 0-based.
    #[inline]
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn symmetrizer(&self) -> Vec<i64> {
        is_skew_symmetrizable(&self.principal_part()).expect("checked on construction")
    }

    /// Matrix mutation in direction `k` (1-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(domain!("direction {k} outside 1..={}", self.n));
        }
        let k = k - 1;
        let mut entries = vec![0i64; self.m * self.n];
        for i in 0..self.m {
            for j in 0..self.n {
                entries[i * self.n + j] = if i == k || j == k {
                    -self.b(i, j)
                } else {
                    let (bik, bkj) = (self.b(i, k), self.b(k, j));
                    self.b(i, j) + (bik.abs() * bkj + bik * bkj.abs()) / 2
                };
            }
        }
        Ok(ExchangeMatrix {
            n: self.n,
            m: self.m,
            entries,
        })
    }
}

/// Matrix mutation `mu_k` (1-based direction).
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    b.mutate(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::parse_cartan_type;

    fn em(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::new(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn mutation_examples() {
        let b = em(&[&[0, 1], &[-1, 0]]);
        assert_eq!(b.mutate(1).unwrap(), em(&[&[0, -1], &[1, 0]]));
        let a3 = em(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]]);
        assert_eq!(a3.mutate(2).unwrap(), em(&[&[0, -1, 1], &[1, 0, -1], &[-1, 1, 0]]));
        assert_eq!(a3.mutate(2).unwrap().mutate(2).unwrap(), a3);
        assert!(a3.mutate(0).is_err());
        assert!(a3.mutate(4).is_err());
    }

    #[test]
    fn coefficient_rows_mutate() {
        // Rank 1 with two coefficient rows: only signs flip.
        let b = em(&[&[0], &[1], &[1]]);
        assert_eq!(b.mutate(1).unwrap(), em(&[&[0], &[-1], &[-1]]));
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![-1, 0]]), Some(vec![1, 1]));
        assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![-2, 0]]), Some(vec![2, 1]));
        assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![1, 0]]), None);
        assert_eq!(is_skew_symmetrizable(&[vec![1, 0], vec![0, 0]]), None);
        assert_eq!(is_skew_symmetrizable(&[vec![0, 1], vec![0, 0]]), None);
        // A cycle whose ratios do not close up.
        let bad = [vec![0, 1, -1], vec![-1, 0, 1], vec![2, -1, 0]];
        assert_eq!(is_skew_symmetrizable(&bad), None);
        assert!(ExchangeMatrix::new(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(ExchangeMatrix::new(&[vec![0, 1]]).is_err());
    }

    #[test]
    fn companions() {
        assert_eq!(cartan_companion(&[vec![0, 1], vec![-1, 0]]), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(cartan_companion(&[vec![0, 2], vec![-2, 0]]), vec![vec![2, -2], vec![-2, 2]]);
        let a3 = vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]];
        assert_eq!(cartan_companion(&a3), parse_cartan_type("A3").unwrap().rows());
        for name in ["B3", "C3", "G2", "F4", "D5"] {
            let c = parse_cartan_type(name).unwrap();
            let b = ExchangeMatrix::from_cartan(&c);
            assert_eq!(cartan_companion(&b.principal_part()), c.rows(), "{name}");
            assert_eq!(b.symmetrizer(), c.symmetrizer(), "{name}");
        }
    }
}
