//! Cartan matrices of finite type, weights, Weyl-group words and braid moves.
//!
//! Conventions:
//!
//! - `a_ij = <alpha_i^vee, alpha_j>`, so row `i` of the Cartan matrix holds
//!   the values of the coroot `alpha_i^vee` on the simple roots. With this
//!   convention `B_2` is `[[2,-1],[-2,2]]` with symmetrizer `(2,1)`: the long
//!   root comes first and `d_i a_ij = d_j a_ji`.
//! - Weights are stored in the basis of fundamental weights, roots in the
//!   basis of simple roots.
//! - Letters of reduced words are 1-based (`1..=rank`); matrix accessors are
//!   0-based.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::domain;
use crate::{Error, Result};

/// A Cartan matrix together with a minimal positive symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    rank: usize,
    entries: Vec<i64>,
    symmetrizer: Vec<i64>,
    name: Option<String>,
}

/// Weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub Vec<i64>);

/// Element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RootVector(pub Vec<i64>);

/// Word in the simple reflections (1-based letters). Constructed through
/// [`CartanMatrix::reduced_word`], which checks reducedness.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord(Vec<usize>);

/// Kind of a braid move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// `i j -> j i` for commuting reflections (`a_ij = 0`).
    Commute,
    /// `i j i -> j i j` for a simple bond (`a_ij = a_ji = -1`).
    Braid,
}

/// One braid move applied at a 0-based position of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidMove {
    pub position: usize,
    pub kind: MoveKind,
}

/// A neighbor of a reduced word in the braid-move graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidNeighbor {
    pub mv: BraidMove,
    pub word: ReducedWord,
}

/// Length, a reduced word and the involution `i -> i*` of the longest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestElement {
    pub length: usize,
    pub word: ReducedWord,
    /// `star[i-1] = i*` (1-based values), defined by `w0(alpha_i) = -alpha_{i*}`.
    pub star: Vec<usize>,
}

/// An element of a finite Weyl group, stored as its action on fundamental
/// weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub length: usize,
    /// Row-major `rank x rank` integer matrix.
    pub matrix: Vec<i64>,
}

impl WeylElement {
    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, weight: &Weight) -> Weight {
        let r = weight.0.len();
        Weight(
            (0..r)
                .map(|i| (0..r).map(|k| self.matrix[i * r + k] * weight.0[k]).sum())
                .collect(),
        )
    }
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `<alpha_i^vee, lambda>` for a 1-based index `i`.
    pub fn pairing(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl RootVector {
    pub fn zero(rank: usize) -> Self {
        RootVector(vec![0; rank])
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        RootVector(v)
    }

    /// Membership in the positive cone `Q_+`.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl ReducedWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Rewrites the word by `mv` without any legality check beyond the shape
    /// of the letters; used after [`CartanMatrix::check_move`].
    pub(crate) fn apply_unchecked(&self, mv: BraidMove) -> ReducedWord {
        let mut w = self.0.clone();
        let p = mv.position;
        match mv.kind {
            MoveKind::Commute => w.swap(p, p + 1),
            MoveKind::Braid => {
                let (i, j) = (w[p], w[p + 1]);
                w[p] = j;
                w[p + 1] = i;
                w[p + 2] = j;
            }
        }
        ReducedWord(w)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => f.write_str(n),
            None => write!(f, "Cartan{:?}", self.rows()),
        }
    }
}

/// Builds the standard Cartan matrix of a Cartan-Killing type.
pub fn cartan_matrix(series: char, rank: usize) -> Result<CartanMatrix> {
    let series = series.to_ascii_uppercase();
    let legal = match series {
        'A' => rank >= 1,
        'B' => rank >= 2,
        'C' => rank >= 3,
        'D' => rank >= 4,
        'E' => (6..=8).contains(&rank),
        'F' => rank == 4,
        'G' => rank == 2,
        _ => false,
    };
    if !legal {
        return Err(domain!("{series}{rank} is not a Cartan-Killing type"));
    }
    // Half squared root lengths and the Dynkin edges (0-based).
    let mut norms = vec![1i64; rank];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    match series {
        'A' | 'B' | 'C' => {
            edges.extend((0..rank - 1).map(|i| (i, i + 1)));
            if series == 'B' {
                norms.iter_mut().take(rank - 1).for_each(|d| *d = 2);
            } else if series == 'C' {
                norms[rank - 1] = 2;
            }
        }
        'D' => {
            edges.extend((0..rank - 2).map(|i| (i, i + 1)));
            edges.push((rank - 3, rank - 1));
        }
        'E' => {
            // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
            edges.push((0, 2));
            edges.push((1, 3));
            edges.extend((2..rank - 1).map(|i| (i, i + 1)));
        }
        'F' => {
            norms[0] = 2;
            norms[1] = 2;
            edges.extend([(0, 1), (1, 2), (2, 3)]);
        }
        'G' => {
            norms[1] = 3;
            edges.push((0, 1));
        }
        _ => unreachable!(),
    }
    let mut entries = vec![0i64; rank * rank];
    for i in 0..rank {
        entries[i * rank + i] = 2;
    }
    for &(i, j) in &edges {
        // (alpha_i, alpha_j) = -max(d_i, d_j); a_ij = (alpha_i, alpha_j) / d_i.
        let inner = -norms[i].max(norms[j]);
        entries[i * rank + j] = inner / norms[i];
        entries[j * rank + i] = inner / norms[j];
    }
    Ok(CartanMatrix {
        rank,
        entries,
        symmetrizer: norms,
        name: Some(format!("{series}{rank}")),
    })
}

/// Parses names such as `"A2"`, `"d6"`, `"E8"`.
pub fn parse_cartan_type(name: &str) -> Result<CartanMatrix> {
    let name = name.trim();
    let mut chars = name.chars();
    let series = chars.next().ok_or_else(|| domain!("empty Cartan type"))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| domain!("cannot parse Cartan type {name:?}"))?;
    cartan_matrix(series, rank)
}

/// Checks conditions (1)-(2) of a Cartan matrix: `a_ii = 2`, nonpositive
/// off-diagonal entries and `a_ij = 0 <=> a_ji = 0`.
fn check_generalized_cartan(rows: &[Vec<i64>]) -> Result<usize> {
    let n = rows.len();
    if n == 0 {
        return Err(domain!("empty matrix"));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(domain!("matrix is not square"));
        }
        if row[i] != 2 {
            return Err(domain!("diagonal entry a_{0}{0} = {1} != 2", i + 1, row[i]));
        }
        for j in 0..n {
            if i != j {
                if row[j] > 0 {
                    return Err(domain!("positive off-diagonal entry at ({}, {})", i + 1, j + 1));
                }
                if (row[j] == 0) != (rows[j][i] == 0) {
                    return Err(domain!("zero pattern is not symmetric at ({}, {})", i + 1, j + 1));
                }
            }
        }
    }
    Ok(n)
}

/// Exact determinant of a small integer matrix (fraction-free Bareiss).
pub fn integer_determinant(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// True iff every principal minor is positive.
pub fn is_finite_type_cartan(rows: &[Vec<i64>]) -> Result<bool> {
    let n = check_generalized_cartan(rows)?;
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| rows[i][j]).collect())
            .collect();
        if integer_determinant(&sub) <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finds a minimal positive integer `d` with `d_i a_ij = d_j a_ji`, by
/// propagating ratios along the graph of nonzero entries.
pub(crate) fn find_symmetrizer(rows: &[Vec<i64>], skew: bool) -> Option<Vec<i64>> {
    let n = rows.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i]?;
            for j in 0..n {
                if i == j || rows[i][j] == 0 {
                    continue;
                }
                if rows[j][i] == 0 {
                    return None;
                }
                // d_i b_ij = -d_j b_ji (skew) or d_i a_ij = d_j a_ji.
                let target = di * Ratio::new(rows[i][j], 1) / Ratio::new(rows[j][i], 1);
                let target = if skew { -target } else { target };
                if target <= Ratio::from_integer(0) {
                    return None;
                }
                match d[j] {
                    Some(dj) if dj != target => return None,
                    Some(_) => {}
                    None => {
                        d[j] = Some(target);
                        queue.push_back(j);
                    }
                }
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().collect::<Option<_>>()?;
    let lcm = d.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    let ints: Vec<i64> = ints.into_iter().map(|x| x / g).collect();
    // Diagonal entries must also balance (always true for zero/equal diagonals).
    for i in 0..n {
        for j in 0..n {
            let lhs = ints[i] * rows[i][j];
            let rhs = ints[j] * rows[j][i];
            if (skew && lhs != -rhs) || (!skew && lhs != rhs) {
                return None;
            }
        }
    }
    Some(ints)
}

impl CartanMatrix {
    /// Builds a Cartan matrix from rows, checking conditions (1)-(2) and the
    /// existence of a symmetrizer.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rank = check_generalized_cartan(rows)?;
        let symmetrizer = find_symmetrizer(rows, false)
            .ok_or_else(|| domain!("matrix is not symmetrizable"))?;
        Ok(CartanMatrix {
            rank,
            entries: rows.iter().flatten().copied().collect(),
            symmetrizer,
            name: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `a_ij` with 0-based indices.
    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn is_finite_type(&self) -> bool {
        is_finite_type_cartan(&self.rows()).unwrap_or(false)
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| i == j || self.a(i, j) >= -1))
    }

    fn require_finite(&self) -> Result<()> {
        if self.is_finite_type() {
            Ok(())
        } else {
            Err(domain!("{self} is not of finite type"))
        }
    }

    pub(crate) fn require_simply_laced(&self) -> Result<()> {
        if self.is_simply_laced() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{self} is not simply-laced")))
        }
    }

    /// `<alpha_i^vee, beta>` for a 1-based `i` and `beta` in root coordinates.
    pub fn coroot_pairing(&self, i: usize, beta: &RootVector) -> i64 {
        (0..self.rank).map(|j| self.a(i - 1, j) * beta.0[j]).sum()
    }

    /// Simple reflection `s_i` (1-based) on root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &RootVector) -> RootVector {
        let mut out = beta.clone();
        out.0[i - 1] -= self.coroot_pairing(i, beta);
        out
    }

    /// Simple reflection `s_i` (1-based) on weight coordinates.
    pub fn reflect_weight(&self, i: usize, lambda: &Weight) -> Weight {
        let li = lambda.0[i - 1];
        Weight(
            (0..self.rank)
                .map(|j| lambda.0[j] - li * self.a(j, i - 1))
                .collect(),
        )
    }

    /// Applies `s_{w_1} ... s_{w_k}` to a root (rightmost letter first).
    pub fn act_root(&self, word: &[usize], beta: &RootVector) -> RootVector {
        word.iter()
            .rev()
            .fold(beta.clone(), |b, &i| self.reflect_root(i, &b))
    }

    /// Applies `s_{w_1} ... s_{w_k}` to a weight (rightmost letter first).
    pub fn act_weight(&self, word: &[usize], lambda: &Weight) -> Weight {
        word.iter()
            .rev()
            .fold(lambda.clone(), |l, &i| self.reflect_weight(i, &l))
    }

    /// Simple root `alpha_i` expressed in fundamental-weight coordinates
    /// (column `i` of the Cartan matrix).
    pub fn simple_root_as_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|j| self.a(j, i - 1)).collect())
    }

    /// Weight of a root-lattice vector.
    pub fn root_to_weight(&self, beta: &RootVector) -> Weight {
        Weight(
            (0..self.rank)
                .map(|i| (0..self.rank).map(|j| self.a(i, j) * beta.0[j]).sum())
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight, exact over the rationals.
    pub fn weight_to_root_rational(&self, lambda: &Weight) -> Vec<Ratio<i64>> {
        let n = self.rank;
        let mut m: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|i| {
                let mut row: Vec<Ratio<i64>> =
                    (0..n).map(|j| Ratio::from_integer(self.a(i, j))).collect();
                row.push(Ratio::from_integer(lambda.0[i]));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m[r][col] != Ratio::from_integer(0))
                .expect("Cartan matrix of finite type is invertible");
            m.swap(col, pivot);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && m[r][col] != Ratio::from_integer(0) {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                        *x -= y * f;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n]).collect()
    }

    /// Simple-root coordinates of a weight, when it lies in the root lattice.
    pub fn weight_to_root(&self, lambda: &Weight) -> Option<RootVector> {
        self.weight_to_root_rational(lambda)
            .into_iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(RootVector)
    }

    /// Symmetric form `(beta, gamma) = sum beta_i d_i a_ij gamma_j` on roots.
    pub fn form_roots(&self, beta: &RootVector, gamma: &RootVector) -> i64 {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            if beta.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += beta.0[i] * self.symmetrizer[i] * self.a(i, j) * gamma.0[j];
            }
        }
        s
    }

    /// `(lambda, beta) = sum lambda_j d_j beta_j` for a weight and a root.
    pub fn form_weight_root(&self, lambda: &Weight, beta: &RootVector) -> i64 {
        (0..self.rank)
            .map(|j| lambda.0[j] * self.symmetrizer[j] * beta.0[j])
            .sum()
    }

    /// Half sum of positive roots, `(1, ..., 1)` in weight coordinates.
    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    /// All positive roots, by closing the simple roots under simple
    /// reflections and keeping vectors in `Q_+`. Sorted by height, then
    /// lexicographically.
    pub fn positive_roots(&self) -> Result<Vec<RootVector>> {
        self.require_finite()?;
        let n = self.rank;
        let mut seen: BTreeSet<RootVector> = (1..=n).map(|i| RootVector::simple(n, i)).collect();
        let mut queue: VecDeque<RootVector> = seen.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 1..=n {
                let next = self.reflect_root(i, &beta);
                if next.is_nonnegative() && next != beta && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut roots: Vec<RootVector> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        Ok(roots)
    }

    /// True iff the word is reduced: every root
    /// `beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}` is positive.
    pub fn is_reduced(&self, letters: &[usize]) -> bool {
        if letters.iter().any(|&l| l == 0 || l > self.rank) {
            return false;
        }
        (0..letters.len()).all(|k| {
            let beta = self.act_root(&letters[..k], &RootVector::simple(self.rank, letters[k]));
            beta.is_nonnegative()
        })
    }

    /// Length of the Weyl group element given by an arbitrary word: the number
    /// of positive roots `alpha` with `(w rho, alpha) < 0`.
    pub fn element_length(&self, letters: &[usize]) -> Result<usize> {
        let w_rho = self.act_weight(letters, &self.rho());
        Ok(self
            .positive_roots()?
            .iter()
            .filter(|alpha| self.form_weight_root(&w_rho, alpha) < 0)
            .count())
    }

    /// Wraps letters into a [`ReducedWord`], checking reducedness.
    pub fn reduced_word(&self, letters: &[usize]) -> Result<ReducedWord> {
        if self.is_reduced(letters) {
            Ok(ReducedWord(letters.to_vec()))
        } else {
            Err(domain!("{letters:?} is not a reduced word for {self}"))
        }
    }

    /// Reduced word of the element `w` with `w rho = x`, by repeatedly
    /// stripping the smallest left descent.
    fn word_from_rho_image(&self, mut x: Weight) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some(i) = (1..=self.rank).find(|&i| x.0[i - 1] < 0) {
            word.push(i);
            x = self.reflect_weight(i, &x);
        }
        word
    }

    /// Length, a reduced word and the star involution of `w0`.
    pub fn longest_element(&self) -> Result<LongestElement> {
        self.require_finite()?;
        let neg_rho = Weight(vec![-1; self.rank]);
        let word = self.word_from_rho_image(neg_rho);
        let star = (1..=self.rank)
            .map(|i| {
                let img = self.act_root(&word, &RootVector::simple(self.rank, i));
                let pos = RootVector(img.0.iter().map(|c| -c).collect());
                (1..=self.rank)
                    .find(|&j| pos == RootVector::simple(self.rank, j))
                    .ok_or_else(|| Error::Internal(format!("w0 does not permute simple roots of {self}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LongestElement {
            length: word.len(),
            word: ReducedWord(word),
            star,
        })
    }

    /// A reduced word for `w0` that begins with `first` and/or ends with
    /// `last`. Both together are impossible when `last = first*` and the
    /// length exceeds one.
    pub fn reduced_word_with_boundary(
        &self,
        first: Option<usize>,
        last: Option<usize>,
    ) -> Result<ReducedWord> {
        let w0 = self.longest_element()?;
        for l in [first, last].into_iter().flatten() {
            if l == 0 || l > self.rank {
                return Err(domain!("letter {l} out of range for {self}"));
            }
        }
        let m = w0.length;
        let letters = match (first, last) {
            (None, None) => w0.word.0.clone(),
            (Some(f), None) => {
                // s_f w0 has rho image s_f(-rho).
                let x = self.reflect_weight(f, &Weight(vec![-1; self.rank]));
                let mut w = vec![f];
                w.extend(self.word_from_rho_image(x));
                w
            }
            (None, Some(l)) => {
                // A word for w0 s_l is the reverse of one for s_l w0.
                let mut w = self.reduced_word_with_boundary(Some(l), None)?.0;
                w.reverse();
                w
            }
            (Some(f), Some(l)) => {
                if m == 1 {
                    vec![f]
                } else {
                    if w0.star[f - 1] == l {
                        return Err(domain!(
                            "no reduced word of w0 starts with {f} and ends with {l} = {f}*"
                        ));
                    }
                    // s_f w0 s_l rho = s_f (w0 (s_l rho)).
                    let x = self.act_weight(&w0.word.0, &self.reflect_weight(l, &self.rho()));
                    let x = self.reflect_weight(f, &x);
                    let mut w = vec![f];
                    w.extend(self.word_from_rho_image(x));
                    w.push(l);
                    w
                }
            }
        };
        if letters.len() != m || !self.is_reduced(&letters) {
            return Err(Error::Internal(format!(
                "boundary word construction produced {letters:?}"
            )));
        }
        Ok(ReducedWord(letters))
    }

    /// Checks that `mv` is a legal braid move on `word`.
    pub fn check_move(&self, word: &ReducedWord, mv: BraidMove) -> Result<()> {
        let w = &word.0;
        let p = mv.position;
        let ok = match mv.kind {
            MoveKind::Commute => {
                p + 1 < w.len() && w[p] != w[p + 1] && self.a(w[p] - 1, w[p + 1] - 1) == 0
            }
            MoveKind::Braid => {
                p + 2 < w.len()
                    && w[p] == w[p + 2]
                    && w[p] != w[p + 1]
                    && self.a(w[p] - 1, w[p + 1] - 1) == -1
                    && self.a(w[p + 1] - 1, w[p] - 1) == -1
            }
        };
        if ok {
            Ok(())
        } else {
            Err(domain!("illegal {:?} move at position {} of ({})", mv.kind, p, word))
        }
    }

    /// Applies a legal braid move.
    pub fn apply_move(&self, word: &ReducedWord, mv: BraidMove) -> Result<ReducedWord> {
        self.check_move(word, mv)?;
        Ok(word.apply_unchecked(mv))
    }

    /// All words one 2-move or 3-move away, in order of position.
    pub fn braid_neighbors(&self, word: &ReducedWord) -> Result<Vec<BraidNeighbor>> {
        if !self.is_reduced(&word.0) {
            return Err(domain!("({word}) is not reduced for {self}"));
        }
        Ok(self.braid_neighbors_unchecked(word))
    }

    pub(crate) fn braid_neighbors_unchecked(&self, word: &ReducedWord) -> Vec<BraidNeighbor> {
        let mut out = Vec::new();
        for p in 0..word.len() {
            for kind in [MoveKind::Commute, MoveKind::Braid] {
                let mv = BraidMove { position: p, kind };
                if self.check_move(word, mv).is_ok() {
                    out.push(BraidNeighbor {
                        mv,
                        word: word.apply_unchecked(mv),
                    });
                }
            }
        }
        out
    }

    /// Shortest braid-move path between two reduced words of the same
    /// element. Ties are broken towards lexicographically smaller words.
    pub fn braid_path(&self, from: &ReducedWord, to: &ReducedWord) -> Result<Vec<BraidMove>> {
        if from == to {
            return Ok(Vec::new());
        }
        let mut parent: BTreeMap<ReducedWord, (ReducedWord, BraidMove)> = BTreeMap::new();
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(w) = queue.pop_front() {
            let mut nbrs = self.braid_neighbors_unchecked(&w);
            nbrs.sort_by(|a, b| a.word.cmp(&b.word));
            for nb in nbrs {
                if nb.word == *from || parent.contains_key(&nb.word) {
                    continue;
                }
                parent.insert(nb.word.clone(), (w.clone(), nb.mv));
                if nb.word == *to {
                    let mut path = Vec::new();
                    let mut cur = nb.word;
                    while cur != *from {
                        let (prev, mv) = parent.remove(&cur).expect("parent recorded");
                        path.push(mv);
                        cur = prev;
                    }
                    path.reverse();
                    return Ok(path);
                }
                queue.push_back(nb.word);
            }
        }
        Err(Error::Internal(format!("no braid path from ({from}) to ({to})")))
    }

    /// All reduced words of `w0` reachable from the returned word by braid
    /// moves, sorted. For simply-laced types this is all of `R(w0)`.
    pub fn reduced_words_of_longest(&self, cap: usize) -> Result<Vec<ReducedWord>> {
        let start = self.longest_element()?.word;
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for nb in self.braid_neighbors_unchecked(&w) {
                if seen.insert(nb.word.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Resource(format!(
                            "more than {cap} reduced words of w0 for {self}"
                        )));
                    }
                    queue.push_back(nb.word);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// All elements of the Weyl group with their actions on weights.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.require_finite()?;
        let n = self.rank;
        let mut identity = vec![0i64; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        let start = WeylElement {
            length: 0,
            matrix: identity,
        };
        let mut seen: BTreeSet<Weight> = BTreeSet::from([self.rho()]);
        let mut out = vec![start.clone()];
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            for i in 1..=n {
                // s_i w as a matrix: row j becomes row_j - a_{j,i} row_i.
                let mut m = w.matrix.clone();
                for j in 0..n {
                    let f = self.a(j, i - 1);
                    if f != 0 {
                        for k in 0..n {
                            m[j * n + k] -= f * w.matrix[(i - 1) * n + k];
                        }
                    }
                }
                let next = WeylElement {
                    length: w.length + 1,
                    matrix: m,
                };
                if seen.insert(next.act(&self.rho())) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(name: &str) -> CartanMatrix {
        parse_cartan_type(name).unwrap()
    }

    #[test]
    fn cartan_matrices_of_small_types() {
        assert_eq!(a("A2").rows(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(a("A1").rows(), vec![vec![2]]);
        let b2 = a("B2");
        assert_eq!(b2.rows(), vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(b2.symmetrizer(), &[2, 1]);
        let g2 = a("G2");
        // alpha_1 is short.
        assert_eq!(g2.rows(), vec![vec![2, -3], vec![-1, 2]]);
        assert!(cartan_matrix('B', 1).is_err());
        assert!(cartan_matrix('C', 2).is_err());
        assert!(cartan_matrix('E', 9).is_err());
        assert!(parse_cartan_type("X3").is_err());
    }

    #[test]
    fn symmetrizer_balances_every_type() {
        for name in ["A4", "B3", "C3", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let c = a(name);
            let d = c.symmetrizer();
            for i in 0..c.rank() {
                for j in 0..c.rank() {
                    assert_eq!(d[i] * c.a(i, j), d[j] * c.a(j, i), "{name}");
                }
            }
            assert!(c.is_finite_type(), "{name}");
            assert_eq!(CartanMatrix::from_rows(&c.rows()).unwrap().symmetrizer(), d);
        }
    }

    #[test]
    fn finite_type_test() {
        assert!(is_finite_type_cartan(&[vec![2, -1], vec![-1, 2]]).unwrap());
        assert!(!is_finite_type_cartan(&[vec![2, -2], vec![-2, 2]]).unwrap());
        assert!(is_finite_type_cartan(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap());
        // Affine A2: a 3-cycle.
        assert!(!is_finite_type_cartan(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]).unwrap());
        assert!(is_finite_type_cartan(&[vec![2, 1], vec![1, 2]]).is_err());
        assert!(is_finite_type_cartan(&[vec![2, -1], vec![0, 2]]).is_err());
        assert!(is_finite_type_cartan(&[vec![3, 0], vec![0, 2]]).is_err());
    }

    #[test]
    fn leading_minors_of_a3() {
        let rows = a("A3").rows();
        let lead: Vec<i128> = (1..=3)
            .map(|k| {
                let sub: Vec<Vec<i64>> = rows[..k].iter().map(|r| r[..k].to_vec()).collect();
                integer_determinant(&sub)
            })
            .collect();
        assert_eq!(lead, vec![2, 3, 4]);
    }

    #[test]
    fn positive_root_counts() {
        let counts = [
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("D6", 30),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ];
        for (name, count) in counts {
            assert_eq!(a(name).positive_roots().unwrap().len(), count, "{name}");
        }
        let roots = a("A2").positive_roots().unwrap();
        assert_eq!(
            roots,
            vec![RootVector(vec![0, 1]), RootVector(vec![1, 0]), RootVector(vec![1, 1])]
        );
        let affine = CartanMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(affine.positive_roots().is_err());
    }

    #[test]
    fn longest_elements() {
        let a2 = a("A2").longest_element().unwrap();
        assert_eq!(a2.length, 3);
        assert_eq!(a2.word.letters(), &[1, 2, 1]);
        assert_eq!(a2.star, vec![2, 1]);
        let a1 = a("A1").longest_element().unwrap();
        assert_eq!((a1.length, a1.word.letters(), a1.star.clone()), (1, &[1usize][..], vec![1]));
        let a3 = a("A3").longest_element().unwrap();
        assert_eq!(a3.length, 6);
        assert_eq!(a3.star, vec![3, 2, 1]);
        assert_eq!(a("D5").longest_element().unwrap().star, vec![1, 2, 3, 5, 4]);
        assert_eq!(a("D4").longest_element().unwrap().star, vec![1, 2, 3, 4]);
        assert_eq!(a("E6").longest_element().unwrap().star, vec![6, 2, 5, 4, 3, 1]);
        for name in ["B3", "G2", "F4", "E7"] {
            let c = a(name);
            let w0 = c.longest_element().unwrap();
            assert!(c.is_reduced(w0.word.letters()));
            assert_eq!(w0.length, c.positive_roots().unwrap().len());
        }
    }

    #[test]
    fn star_matches_negated_fundamental_weights() {
        for name in ["A3", "A4", "D5", "E6"] {
            let c = a(name);
            let w0 = c.longest_element().unwrap();
            for i in 1..=c.rank() {
                let mut omega = Weight::zero(c.rank());
                omega.0[i - 1] = 1;
                let img = c.act_weight(w0.word.letters(), &omega);
                let neg: Vec<i64> = img.0.iter().map(|x| -x).collect();
                let mut expect = vec![0; c.rank()];
                expect[w0.star[i - 1] - 1] = 1;
                assert_eq!(neg, expect, "{name} i={i}");
            }
        }
    }

    #[test]
    fn braid_neighbors_examples() {
        let a2 = a("A2");
        let w = a2.reduced_word(&[1, 2, 1]).unwrap();
        let nb = a2.braid_neighbors(&w).unwrap();
        assert_eq!(nb.len(), 1);
        assert_eq!(nb[0].word.letters(), &[2, 1, 2]);
        assert_eq!(nb[0].mv, BraidMove { position: 0, kind: MoveKind::Braid });

        let a1 = a("A1");
        assert!(a1.braid_neighbors(&a1.reduced_word(&[1]).unwrap()).unwrap().is_empty());

        let a3 = a("A3");
        let w = a3.reduced_word(&[1, 3, 2, 1, 3, 2]).unwrap();
        let nb = a3.braid_neighbors(&w).unwrap();
        assert!(nb.iter().any(|n| n.word.letters() == [3, 1, 2, 1, 3, 2]
            && n.mv.kind == MoveKind::Commute));
        assert!(a2.reduced_word(&[1, 1]).is_err());
        assert!(a2.braid_neighbors(&ReducedWord(vec![1, 1, 2])).is_err());
    }

    #[test]
    fn boundary_words() {
        let a2 = a("A2");
        assert_eq!(a2.reduced_word_with_boundary(Some(2), None).unwrap().letters(), &[2, 1, 2]);
        assert_eq!(a2.reduced_word_with_boundary(None, Some(2)).unwrap().letters(), &[2, 1, 2]);
        assert_eq!(a2.reduced_word_with_boundary(Some(1), Some(1)).unwrap().letters(), &[1, 2, 1]);
        assert!(a2.reduced_word_with_boundary(Some(1), Some(2)).is_err());
        let a1 = a("A1");
        assert_eq!(a1.reduced_word_with_boundary(Some(1), Some(1)).unwrap().letters(), &[1]);
        for name in ["A3", "A4", "D4", "D5", "E6", "B3", "G2"] {
            let c = a(name);
            let w0 = c.longest_element().unwrap();
            for i in 1..=c.rank() {
                let f = c.reduced_word_with_boundary(Some(i), None).unwrap();
                assert_eq!(f.first(), Some(i));
                let l = c.reduced_word_with_boundary(None, Some(i)).unwrap();
                assert_eq!(l.last(), Some(i));
                for j in 1..=c.rank() {
                    if w0.star[i - 1] != j {
                        let both = c.reduced_word_with_boundary(Some(i), Some(j)).unwrap();
                        assert_eq!((both.first(), both.last()), (Some(i), Some(j)));
                    }
                }
            }
        }
    }

    #[test]
    fn lengths_and_root_lattice() {
        let a3 = a("A3");
        assert_eq!(a3.element_length(&[1, 2, 1, 2]).unwrap(), 2);
        assert_eq!(a3.element_length(&[1, 1]).unwrap(), 0);
        assert_eq!(a3.element_length(&[1, 3, 2]).unwrap(), 3);
        let rho = a3.rho();
        assert_eq!(a3.weight_to_root(&rho), None);
        let two_rho = Weight(rho.0.iter().map(|x| 2 * x).collect());
        assert_eq!(a3.weight_to_root(&two_rho), Some(RootVector(vec![3, 4, 3])));
        assert_eq!(a3.weight_to_root(&Weight(vec![1, 0, 0])), None);
        let beta = RootVector(vec![1, 2, 1]);
        assert_eq!(a3.weight_to_root(&a3.root_to_weight(&beta)), Some(beta));
    }

    #[test]
    fn weyl_group_orders() {
        for (name, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("G2", 12), ("D4", 192)] {
            let w = a(name).weyl_group().unwrap();
            assert_eq!(w.len(), order, "{name}");
            assert_eq!(w.iter().map(|e| e.sign()).sum::<i64>(), 0);
        }
    }
}
