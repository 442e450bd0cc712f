//! Exact computations in `SL_n`: products of one-parameter subgroups,
//! minors, the Dodgson and Plücker identities, and total positivity of upper
//! unitriangular matrices.
//!
//! Weyl group elements act as permutations of `1..=n`; the generalized minor
//! `Delta_{u omega_i, v omega_i}` is the ordinary minor with rows
//! `{u(1), ..., u(i)}` and columns `{v(1), ..., v(i)}`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::domain;
use crate::rootsys::{cartan_matrix, CartanMatrix, ReducedWord};
use crate::{Error, Rational, Result};

/// Square matrix over exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        ExactMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(domain!("matrix is not square"));
        }
        Ok(ExactMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        let n = self.n;
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        ExactMatrix { n, entries }
    }

    /// Right multiplication by `x_i(t) = 1 + t E_{i,i+1}`: adds `t` times
    /// column `i` to column `i + 1`.
    fn mul_elementary(&mut self, i: usize, t: &Rational) {
        let n = self.n;
        for r in 0..n {
            let v = &self.entries[r * n + (i - 1)] * t;
            self.entries[r * n + i] += v;
        }
    }

    /// Determinant of the submatrix on `rows x cols` (1-based), by Gaussian
    /// elimination.
    fn sub_determinant(&self, rows: &[usize], cols: &[usize]) -> Rational {
        let k = rows.len();
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        let mut det = Rational::one();
        for col in 0..k {
            let Some(p) = (col..k).find(|&r| !m[r][col].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap(p, col);
                det = -det;
            }
            let pivot = m[col][col].clone();
            det *= &pivot;
            for r in col + 1..k {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &pivot;
                let (top, rest) = m.split_at_mut(r);
                for (x, y) in rest[0][col..k].iter_mut().zip(&top[col][col..k]) {
                    *x -= y * &f;
                }
            }
        }
        det
    }

    pub fn determinant(&self) -> Rational {
        let all: Vec<usize> = (1..=self.n).collect();
        self.sub_determinant(&all, &all)
    }

    pub fn is_upper_unitriangular(&self) -> bool {
        (1..=self.n).all(|i| {
            (1..=self.n).all(|j| {
                let x = self.get(i, j);
                match i.cmp(&j) {
                    core::cmp::Ordering::Equal => x.is_one(),
                    core::cmp::Ordering::Greater => x.is_zero(),
                    core::cmp::Ordering::Less => true,
                }
            })
        })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.entries.chunks(self.n) {
            f.write_str("[")?;
            for (k, x) in row.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

/// Row and column sets of a minor, strictly increasing and 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MinorIndex {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl MinorIndex {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>, n: usize) -> Result<Self> {
        let ok = |s: &[usize]| {
            !s.is_empty() && s.windows(2).all(|w| w[0] < w[1]) && s[0] >= 1 && s[s.len() - 1] <= n
        };
        if rows.len() != cols.len() || !ok(&rows) || !ok(&cols) {
            return Err(domain!("illegal minor index {rows:?} x {cols:?} for size {n}"));
        }
        Ok(MinorIndex { rows, cols })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Componentwise `rows <= cols`.
    pub fn is_upper(&self) -> bool {
        self.rows.iter().zip(&self.cols).all(|(r, c)| r <= c)
    }
}

/// Exact minor `Delta_{I,J}(x)`.
pub fn minor(x: &ExactMatrix, idx: &MinorIndex) -> Rational {
    x.sub_determinant(&idx.rows, &idx.cols)
}

/// A permutation of `1..=n`, `images[k-1] = w(k)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The permutation `s_{a_1} ... s_{a_k}` for a word in `1..n`.
    pub fn from_word(n: usize, letters: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &l in letters {
            if l == 0 || l >= n {
                return Err(domain!("letter {l} out of range for SL_{n}"));
            }
            p = p.times_simple(l);
        }
        Ok(p)
    }

    /// `w s_i`: swaps the images of `i` and `i + 1`.
    pub fn times_simple(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        Permutation(v)
    }

    /// `s_i w`: swaps the values `i` and `i + 1`.
    pub fn simple_times(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
                .collect(),
        )
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inversions(&self) -> usize {
        let v = &self.0;
        (0..v.len())
            .map(|a| (a + 1..v.len()).filter(|&b| v[a] > v[b]).count())
            .sum()
    }

    /// Index set of the weight `w omega_i`: sorted `{w(1), ..., w(i)}`.
    pub fn omega(&self, i: usize) -> Vec<usize> {
        let mut s = self.0[..i].to_vec();
        s.sort_unstable();
        s
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if rest.is_empty() {
                out.push(Permutation(cur.clone()));
                return;
            }
            for k in 0..rest.len() {
                let x = rest.remove(k);
                cur.push(x);
                go(rest, cur, out);
                cur.pop();
                rest.insert(k, x);
            }
        }
        let mut out = Vec::new();
        go(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
        out
    }

    /// A reduced word (bubble sort: strip right descents).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut v = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (1..v.0.len()).find(|&i| v.0[i - 1] > v.0[i]) {
            word.push(i);
            v = v.times_simple(i);
        }
        word.reverse();
        word
    }
}

/// `x_{i_1}(t_1) ... x_{i_m}(t_m)` in `SL_n`.
pub fn group_element_from_word(word: &[usize], params: &[Rational], n: usize) -> Result<ExactMatrix> {
    if word.len() != params.len() {
        return Err(domain!("{} letters but {} parameters", word.len(), params.len()));
    }
    let mut x = ExactMatrix::identity(n);
    for (&i, t) in word.iter().zip(params) {
        if i == 0 || i >= n {
            return Err(domain!("letter {i} out of range for SL_{n}"));
        }
        if !t.is_positive() {
            return Err(domain!("parameter {t} is not positive"));
        }
        x.mul_elementary(i, t);
    }
    Ok(x)
}

fn sl_cartan(n: usize) -> Result<CartanMatrix> {
    cartan_matrix('A', n - 1)
}

fn minor_of(x: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    x.sub_determinant(rows, cols)
}

/// The Dodgson identity at fixed `(u, v, i)`, with index sets precomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DodgsonInstance {
    n: usize,
    left: [(Vec<usize>, Vec<usize>); 2],
    right: [(Vec<usize>, Vec<usize>); 2],
    /// `(rows, cols, exponent)` for the product over `j != i`.
    product: Vec<(Vec<usize>, Vec<usize>, u32)>,
}

impl DodgsonInstance {
    pub fn new(n: usize, u: &[usize], v: &[usize], i: usize) -> Result<Self> {
        let cartan = sl_cartan(n)?;
        if i == 0 || i >= n {
            return Err(domain!("index {i} out of range for SL_{n}"));
        }
        for (name, w) in [("u", u), ("v", v)] {
            let mut ws = w.to_vec();
            ws.push(i);
            if cartan.element_length(&ws)? != cartan.element_length(w)? + 1 {
                return Err(domain!("l({name} s_{i}) != l({name}) + 1 for {name} = {w:?}"));
            }
        }
        let pu = Permutation::from_word(n, u)?;
        let pv = Permutation::from_word(n, v)?;
        let (pus, pvs) = (pu.times_simple(i), pv.times_simple(i));
        let mut product = Vec::new();
        for j in 1..n {
            let e = -cartan.a(j - 1, i - 1);
            if j != i && e > 0 {
                product.push((pu.omega(j), pv.omega(j), e as u32));
            }
        }
        Ok(DodgsonInstance {
            n,
            left: [(pu.omega(i), pv.omega(i)), (pus.omega(i), pvs.omega(i))],
            right: [(pus.omega(i), pv.omega(i)), (pu.omega(i), pvs.omega(i))],
            product,
        })
    }

    pub fn residual(&self, x: &ExactMatrix) -> Result<Rational> {
        if x.size() != self.n {
            return Err(domain!("matrix size {} != {}", x.size(), self.n));
        }
        let pair = |p: &[(Vec<usize>, Vec<usize>); 2]| {
            minor_of(x, &p[0].0, &p[0].1) * minor_of(x, &p[1].0, &p[1].1)
        };
        let mut prod = Rational::one();
        for (r, c, e) in &self.product {
            let m = minor_of(x, r, c);
            for _ in 0..*e {
                prod *= &m;
            }
        }
        Ok(pair(&self.left) - pair(&self.right) - prod)
    }
}

/// LHS - RHS of the Dodgson identity for `Delta_{u omega_i, v omega_i}`.
pub fn dodgson_residual(x: &ExactMatrix, u: &[usize], v: &[usize], i: usize) -> Result<Rational> {
    DodgsonInstance::new(x.size(), u, v, i)?.residual(x)
}

/// Row and column sets of the two minors in one product.
type MinorPair = (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

/// The three-term Plücker identity at fixed `(w, i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerInstance {
    n: usize,
    /// `(i-rows, i-cols, j-rows, j-cols)` for the three products.
    terms: [MinorPair; 3],
}

impl PluckerInstance {
    pub fn new(n: usize, w: &[usize], i: usize, j: usize) -> Result<Self> {
        let cartan = sl_cartan(n)?;
        if i == 0 || j == 0 || i >= n || j >= n {
            return Err(domain!("indices ({i}, {j}) out of range for SL_{n}"));
        }
        if cartan.a(i - 1, j - 1) != -1 || cartan.a(j - 1, i - 1) != -1 {
            return Err(domain!("a_ij = a_ji = -1 fails for ({i}, {j})"));
        }
        let mut wl = w.to_vec();
        wl.extend([i, j, i]);
        if cartan.element_length(&wl)? != cartan.element_length(w)? + 3 {
            return Err(domain!("l(w s_i s_j s_i) != l(w) + 3 for w = {w:?}"));
        }
        let pw = Permutation::from_word(n, w)?;
        let id = Permutation::identity(n);
        let (oi, oj) = (id.omega(i), id.omega(j));
        let wsi = pw.times_simple(i);
        let wsj = pw.times_simple(j);
        let wsisj = wsi.times_simple(j);
        let wsjsi = wsj.times_simple(i);
        Ok(PluckerInstance {
            n,
            terms: [
                (oi.clone(), wsi.omega(i), oj.clone(), wsj.omega(j)),
                (oi.clone(), pw.omega(i), oj.clone(), wsisj.omega(j)),
                (oi, wsjsi.omega(i), oj, pw.omega(j)),
            ],
        })
    }

    pub fn residual(&self, x: &ExactMatrix) -> Result<Rational> {
        if x.size() != self.n {
            return Err(domain!("matrix size {} != {}", x.size(), self.n));
        }
        let term = |t: &(Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>)| {
            minor_of(x, &t.0, &t.1) * minor_of(x, &t.2, &t.3)
        };
        Ok(term(&self.terms[0]) - term(&self.terms[1]) - term(&self.terms[2]))
    }
}

/// LHS - RHS of the Plücker identity
/// `D(w_i, w s_i w_i) D(w_j, w s_j w_j) = D(w_i, w w_i) D(w_j, w s_i s_j w_j) + D(w_i, w s_j s_i w_i) D(w_j, w w_j)`.
pub fn plucker_residual(x: &ExactMatrix, w: &[usize], i: usize, j: usize) -> Result<Rational> {
    PluckerInstance::new(x.size(), w, i, j)?.residual(x)
}

/// All `(u, v, i)` satisfying the Dodgson length conditions in `SL_n`, with
/// `u`, `v` given by reduced words.
pub fn legal_dodgson_triples(n: usize) -> Vec<(Vec<usize>, Vec<usize>, usize)> {
    let perms = Permutation::all(n);
    let mut out = Vec::new();
    for i in 1..n {
        let ok: Vec<&Permutation> = perms.iter().filter(|p| p.images()[i - 1] < p.images()[i]).collect();
        for u in &ok {
            for v in &ok {
                out.push((u.reduced_word(), v.reduced_word(), i));
            }
        }
    }
    out
}

/// All `(w, i, j)` satisfying the Plücker preconditions in `SL_n`.
pub fn legal_plucker_triples(n: usize) -> Vec<(Vec<usize>, usize, usize)> {
    let mut out = Vec::new();
    for w in Permutation::all(n) {
        for i in 1..n {
            for j in 1..n {
                if i.abs_diff(j) != 1 {
                    continue;
                }
                let longer = w.times_simple(i).times_simple(j).times_simple(i);
                if longer.inversions() == w.inversions() + 3 {
                    out.push((w.reduced_word(), i, j));
                }
            }
        }
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every upper minor index `I <= J` of an `n x n` matrix.
pub fn upper_minor_indices(n: usize) -> Vec<MinorIndex> {
    let mut out = Vec::new();
    for k in 1..=n {
        let sets = subsets(n, k);
        for rows in &sets {
            for cols in &sets {
                let idx = MinorIndex {
                    rows: rows.clone(),
                    cols: cols.clone(),
                };
                if idx.is_upper() {
                    out.push(idx);
                }
            }
        }
    }
    out
}

/// First upper minor that is not strictly positive, if any.
pub fn first_nonpositive_upper_minor(x: &ExactMatrix) -> Result<Option<(MinorIndex, Rational)>> {
    if !x.is_upper_unitriangular() {
        return Err(domain!("matrix is not upper unitriangular"));
    }
    for idx in upper_minor_indices(x.size()) {
        let m = minor(x, &idx);
        if !m.is_positive() {
            return Ok(Some((idx, m)));
        }
    }
    Ok(None)
}

/// True iff `Delta_{I,J}(x) > 0` for every `I <= J`.
pub fn is_totally_positive_upper(x: &ExactMatrix) -> Result<bool> {
    Ok(first_nonpositive_upper_minor(x)?.is_none())
}

/// Recovers `(t_1, t_m)` of the factorization of `x` along `word` from
/// minors, where `word` is a reduced word for `w0` in `SL_n`.
pub fn boundary_parameters(x: &ExactMatrix, word: &ReducedWord) -> Result<(Rational, Rational)> {
    let n = x.size();
    let cartan = sl_cartan(n)?;
    let w0 = cartan.longest_element()?;
    if word.len() != w0.length || !cartan.is_reduced(word.letters()) {
        return Err(domain!("({word}) is not a reduced word of w0 in SL_{n}"));
    }
    let longest = Permutation::from_word(n, w0.word.letters())?;
    let id = Permutation::identity(n);
    let ratio = |num: Rational, den: Rational| -> Result<Rational> {
        if den.is_zero() {
            Err(domain!("zero denominator: matrix is not totally positive"))
        } else {
            Ok(num / den)
        }
    };
    let i1 = word.letters()[0];
    let t1 = ratio(
        minor_of(x, &id.omega(i1), &longest.omega(i1)),
        minor_of(x, &id.simple_times(i1).omega(i1), &longest.omega(i1)),
    )?;
    let im = word.letters()[word.len() - 1];
    let s = w0.star[im - 1];
    let tm = ratio(
        minor_of(x, &id.omega(s), &longest.omega(s)),
        minor_of(x, &id.omega(s), &longest.simple_times(im).omega(s)),
    )?;
    Ok((t1, tm))
}

/// `Delta_{omega_i, s_i omega_i}(x)`, the minor on rows `1..=i` and columns
/// `1..i-1, i+1`.
pub fn special_minor(x: &ExactMatrix, i: usize) -> Result<Rational> {
    let n = x.size();
    if i == 0 || i >= n {
        return Err(domain!("index {i} out of range for SL_{n}"));
    }
    let id = Permutation::identity(n);
    Ok(minor_of(x, &id.omega(i), &id.times_simple(i).omega(i)))
}

/// Random positive rational `p/q` with `1 <= p, q <= bound`.
pub fn random_positive_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(1..=bound)),
        BigInt::from(rng.gen_range(1..=bound)),
    )
}

/// Random rational `p/q` with `|p| <= bound`, `1 <= q <= bound`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    Rational::new(
        BigInt::from(rng.gen_range(-bound..=bound)),
        BigInt::from(rng.gen_range(1..=bound)),
    )
}

/// Random element of `SL_n(Q)`: a lower unitriangular, a diagonal of
/// determinant one, an upper unitriangular factor and a signed permutation
/// matrix of determinant one.
pub fn random_sl<R: Rng + ?Sized>(n: usize, rng: &mut R, bound: i64) -> ExactMatrix {
    let mut lower = ExactMatrix::identity(n);
    let mut upper = ExactMatrix::identity(n);
    let mut diag = ExactMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.entries[i * n + j] = random_rational(rng, bound);
            upper.entries[j * n + i] = random_rational(rng, bound);
        }
    }
    let mut prod = Rational::one();
    for i in 0..n - 1 {
        let mut d = random_positive_rational(rng, bound);
        if rng.gen_bool(0.5) {
            d = -d;
        }
        prod *= &d;
        diag.entries[i * n + i] = d;
    }
    diag.entries[(n - 1) * n + (n - 1)] = prod.recip();
    // Signed permutation of determinant one.
    let mut perm = ExactMatrix {
        n,
        entries: vec![Rational::zero(); n * n],
    };
    let mut images: Vec<usize> = (0..n).collect();
    for k in (1..n).rev() {
        let r = rng.gen_range(0..=k);
        images.swap(k, r);
    }
    let mut sign = Permutation(images.iter().map(|x| x + 1).collect()).inversions() % 2;
    for (r, &c) in images.iter().enumerate() {
        let neg = r + 1 < n && rng.gen_bool(0.5);
        if neg {
            sign ^= 1;
        }
        perm.entries[r * n + c] = if neg { -Rational::one() } else { Rational::one() };
    }
    if sign == 1 {
        let c = images[n - 1];
        perm.entries[(n - 1) * n + c] = -perm.entries[(n - 1) * n + c].clone();
    }
    let x = lower.mul(&diag).mul(&upper).mul(&perm);
    debug_assert!(x.determinant().is_one());
    x
}

/// Checks an element is in `SL_n`.
pub fn require_sl(x: &ExactMatrix) -> Result<()> {
    if x.determinant().is_one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("determinant {} != 1", x.determinant())))
    }
}
