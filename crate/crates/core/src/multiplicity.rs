//! Tensor-product multiplicities `c^mu_{lambda nu}`.
//!
//! The main route enumerates tropical parameter tuples `t` on a base reduced
//! word of `w0` whose degree `sum t_k beta_k` equals `lambda + nu - mu`, and
//! keeps those for which, after transition to any reduced word beginning with
//! `i`, the first parameter is at most `<alpha_i^vee, lambda>`, and after
//! transition to any word ending with `j`, the last parameter is at most
//! `<alpha_{j*}^vee, nu>`. Since the first parameter only depends on the first
//! letter, one representative word per boundary letter suffices.
//!
//! [`racah_oracle`] is an independent check through Freudenthal's weight
//! multiplicity recursion and the alternating sum over the Weyl group:
//!
//! ```text
//! c^mu_{lambda nu} = sum_{w in W} sign(w) m_nu( w(mu + rho) - (lambda + rho) )
//! ```

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::domain;
use crate::rootsys::{CartanMatrix, ReducedWord, RootVector, Weight};
use crate::tropical::TransitionPlan;
use crate::{Error, Result};

/// A multiplicity question `c^mu_{lambda nu}` for a fixed Cartan matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityQuery {
    pub cartan: CartanMatrix,
    pub lambda: Weight,
    pub nu: Weight,
    pub mu: Weight,
}

impl MultiplicityQuery {
    pub fn new(cartan: CartanMatrix, lambda: Weight, nu: Weight, mu: Weight) -> Result<Self> {
        for (name, w) in [("lambda", &lambda), ("nu", &nu), ("mu", &mu)] {
            if w.rank() != cartan.rank() {
                return Err(domain!("{name} has {} coordinates, rank is {}", w.rank(), cartan.rank()));
            }
            if !w.is_dominant() {
                return Err(domain!("{name} = {:?} is not dominant", w.0));
            }
        }
        if !cartan.is_finite_type() {
            return Err(domain!("{cartan} is not of finite type"));
        }
        Ok(MultiplicityQuery { cartan, lambda, nu, mu })
    }

    /// `lambda + nu - mu` in simple-root coordinates, if it lies in `Q_+`.
    pub fn degree(&self) -> Option<RootVector> {
        let diff = Weight(
            (0..self.cartan.rank())
                .map(|i| self.lambda.0[i] + self.nu.0[i] - self.mu.0[i])
                .collect(),
        );
        self.cartan
            .weight_to_root(&diff)
            .filter(RootVector::is_nonnegative)
    }
}

/// The roots `beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}` of a word.
pub fn degree_roots(cartan: &CartanMatrix, word: &ReducedWord) -> Vec<RootVector> {
    let letters = word.letters();
    (0..letters.len())
        .map(|k| cartan.act_root(&letters[..k], &RootVector::simple(cartan.rank(), letters[k])))
        .collect()
}

/// All `t` in `Z^m_{>=0}` with `sum_k t_k beta_k = gamma`, in lexicographic
/// order.
pub fn degree_tuples(cartan: &CartanMatrix, word: &ReducedWord, gamma: &RootVector) -> Vec<Vec<u64>> {
    let betas = degree_roots(cartan, word);
    let mut out = Vec::new();
    if !gamma.is_nonnegative() || gamma.0.len() != cartan.rank() {
        return out;
    }
    let mut cur = vec![0u64; betas.len()];
    enumerate_degree(&betas, 0, &mut gamma.0.clone(), &mut cur, &mut out);
    out
}

fn enumerate_degree(
    betas: &[RootVector],
    k: usize,
    rest: &mut Vec<i64>,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if k == betas.len() {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
        }
        return;
    }
    let beta = &betas[k].0;
    let bound = beta
        .iter()
        .zip(rest.iter())
        .filter(|(b, _)| **b > 0)
        .map(|(b, r)| r / b)
        .min()
        .unwrap_or(0);
    for t in 0..=bound {
        cur[k] = t as u64;
        for (r, b) in rest.iter_mut().zip(beta) {
            *r -= t * b;
        }
        enumerate_degree(betas, k + 1, rest, cur, out);
        for (r, b) in rest.iter_mut().zip(beta) {
            *r += t * b;
        }
    }
    cur[k] = 0;
}

/// Which reduced words the boundary constraints are checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryWords {
    /// One word per first letter and one per last letter.
    Representatives,
    /// Every reduced word of `w0` (small ranks only).
    Exhaustive,
}

/// Result of a multiplicity count, with the accepted tuples on the base word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityCount {
    pub count: u64,
    pub base_word: ReducedWord,
    pub witnesses: Vec<Vec<u64>>,
}

/// Precomputed transition plans for counting multiplicities of one Cartan
/// matrix. Reusable across queries.
#[derive(Clone, Debug)]
pub struct MultiplicityEngine {
    cartan: CartanMatrix,
    base: ReducedWord,
    star: Vec<usize>,
    /// (letter, plan) pairs for words beginning with the letter.
    first: Vec<(usize, TransitionPlan)>,
    /// (letter, plan) pairs for words ending with the letter.
    last: Vec<(usize, TransitionPlan)>,
}

impl MultiplicityEngine {
    pub fn new(cartan: &CartanMatrix) -> Result<Self> {
        let base = cartan.longest_element()?.word;
        Self::with_base_word(cartan, &base, BoundaryWords::Representatives)
    }

    pub fn with_base_word(cartan: &CartanMatrix, base: &ReducedWord, mode: BoundaryWords) -> Result<Self> {
        cartan.require_simply_laced()?;
        let w0 = cartan.longest_element()?;
        let (mut first, mut last) = (Vec::new(), Vec::new());
        match mode {
            BoundaryWords::Representatives => {
                for i in 1..=cartan.rank() {
                    let wf = cartan.reduced_word_with_boundary(Some(i), None)?;
                    first.push((i, TransitionPlan::new(cartan, base, &wf)?));
                    let wl = cartan.reduced_word_with_boundary(None, Some(i))?;
                    last.push((i, TransitionPlan::new(cartan, base, &wl)?));
                }
            }
            BoundaryWords::Exhaustive => {
                for w in cartan.reduced_words_of_longest(100_000)? {
                    let plan = TransitionPlan::new(cartan, base, &w)?;
                    let (f, l) = (w.first().unwrap_or(1), w.last().unwrap_or(1));
                    first.push((f, plan.clone()));
                    last.push((l, plan));
                }
            }
        }
        Ok(MultiplicityEngine {
            cartan: cartan.clone(),
            base: base.clone(),
            star: w0.star,
            first,
            last,
        })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn base_word(&self) -> &ReducedWord {
        &self.base
    }

    fn accepts(&self, t: &[u64], lambda: &Weight, nu: &Weight) -> bool {
        let m = t.len();
        let mut buf = t.to_vec();
        for (i, plan) in &self.first {
            buf.copy_from_slice(t);
            plan.apply_values(&mut buf);
            if buf[0] as i64 > lambda.pairing(*i) {
                return false;
            }
        }
        for (j, plan) in &self.last {
            buf.copy_from_slice(t);
            plan.apply_values(&mut buf);
            if buf[m - 1] as i64 > nu.pairing(self.star[*j - 1]) {
                return false;
            }
        }
        true
    }

    /// Counts `c^mu_{lambda nu}` and returns the accepted tuples.
    pub fn count(&self, lambda: &Weight, nu: &Weight, mu: &Weight) -> Result<MultiplicityCount> {
        let q = MultiplicityQuery::new(self.cartan.clone(), lambda.clone(), nu.clone(), mu.clone())?;
        let witnesses: Vec<Vec<u64>> = match q.degree() {
            None => Vec::new(),
            Some(gamma) => degree_tuples(&self.cartan, &self.base, &gamma)
                .into_iter()
                .filter(|t| self.accepts(t, lambda, nu))
                .collect(),
        };
        Ok(MultiplicityCount {
            count: witnesses.len() as u64,
            base_word: self.base.clone(),
            witnesses,
        })
    }
}

/// `c^mu_{lambda nu}` through tropical parameter tuples (simply-laced only).
pub fn tensor_multiplicity(q: &MultiplicityQuery) -> Result<u64> {
    Ok(MultiplicityEngine::new(&q.cartan)?.count(&q.lambda, &q.nu, &q.mu)?.count)
}

/// Weight multiplicities of the irreducible module of highest weight `nu`,
/// keyed by `nu - beta` in simple-root coordinates. Only nonzero entries.
pub fn weight_multiplicities(cartan: &CartanMatrix, nu: &Weight) -> Result<BTreeMap<RootVector, u64>> {
    if !nu.is_dominant() || nu.rank() != cartan.rank() {
        return Err(domain!("{:?} is not a dominant weight of {cartan}", nu.0));
    }
    let positive = cartan.positive_roots()?;
    let n = cartan.rank();
    let nu_rho = Weight(nu.0.iter().map(|x| x + 1).collect());
    let mut mult: BTreeMap<RootVector, u64> = BTreeMap::new();
    mult.insert(RootVector::zero(n), 1);
    let mut level: BTreeSet<RootVector> = BTreeSet::from([RootVector::zero(n)]);
    while !level.is_empty() {
        let mut next_level = BTreeSet::new();
        let candidates: BTreeSet<RootVector> = level
            .iter()
            .flat_map(|g| {
                (0..n).map(move |i| {
                    let mut h = g.clone();
                    h.0[i] += 1;
                    h
                })
            })
            .collect();
        for gamma in candidates {
            let denom = 2 * cartan.form_weight_root(&nu_rho, &gamma) - cartan.form_roots(&gamma, &gamma);
            // |beta + rho| < |nu + rho| for every weight beta != nu.
            if denom <= 0 {
                continue;
            }
            let mut numer: i128 = 0;
            for alpha in &positive {
                let nu_alpha = cartan.form_weight_root(nu, alpha) as i128;
                let mut k = 1i64;
                loop {
                    let shifted = RootVector(
                        gamma.0.iter().zip(&alpha.0).map(|(g, a)| g - k * a).collect(),
                    );
                    if !shifted.is_nonnegative() {
                        break;
                    }
                    if let Some(&m) = mult.get(&shifted) {
                        // (beta + k alpha, alpha) with beta + k alpha = nu - shifted.
                        let pair = nu_alpha - cartan.form_roots(&shifted, alpha) as i128;
                        numer += m as i128 * pair;
                    }
                    k += 1;
                }
            }
            let numer = 2 * numer;
            if numer % denom as i128 != 0 {
                return Err(Error::Internal("inexact Freudenthal recursion".into()));
            }
            let m = numer / denom as i128;
            if m > 0 {
                mult.insert(gamma.clone(), m as u64);
                next_level.insert(gamma);
            }
        }
        level = next_level;
    }
    Ok(mult)
}

/// `c^mu_{lambda nu}` by the alternating Weyl-group sum (any finite type).
pub fn racah_oracle(q: &MultiplicityQuery) -> Result<u64> {
    let cartan = &q.cartan;
    let mults = weight_multiplicities(cartan, &q.nu)?;
    let weyl = cartan.weyl_group()?;
    let mu_rho = Weight(q.mu.0.iter().map(|x| x + 1).collect());
    let mut total: i64 = 0;
    for w in &weyl {
        let image = w.act(&mu_rho);
        // kappa = w(mu + rho) - (lambda + rho); look up m_nu(kappa) via nu - kappa.
        let diff = Weight(
            (0..cartan.rank())
                .map(|i| q.nu.0[i] - (image.0[i] - q.lambda.0[i] - 1))
                .collect(),
        );
        if let Some(gamma) = cartan.weight_to_root(&diff) {
            if let Some(&m) = mults.get(&gamma) {
                total += w.sign() * m as i64;
            }
        }
    }
    u64::try_from(total).map_err(|_| Error::Internal("negative alternating sum".into()))
}

/// Weyl dimension formula `prod_{alpha > 0} (lambda + rho, alpha) / (rho, alpha)`.
pub fn weyl_dimension(cartan: &CartanMatrix, lambda: &Weight) -> Result<BigUint> {
    let rho = cartan.rho();
    let lr = Weight(lambda.0.iter().map(|x| x + 1).collect());
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for alpha in cartan.positive_roots()? {
        let a = cartan.form_weight_root(&lr, &alpha);
        if a <= 0 {
            return Err(domain!("{:?} is not dominant", lambda.0));
        }
        num *= BigUint::from(a as u64);
        den *= BigUint::from(cartan.form_weight_root(&rho, &alpha) as u64);
    }
    Ok(num / den)
}

/// All dominant `mu` with `lambda + nu - mu` in `Q_+`, sorted.
pub fn dominant_targets(cartan: &CartanMatrix, lambda: &Weight, nu: &Weight) -> Result<Vec<Weight>> {
    // Dominant weights have nonnegative simple-root coordinates in finite
    // type, so gamma = lambda + nu - mu is bounded by those of lambda + nu.
    let top = Weight((0..cartan.rank()).map(|i| lambda.0[i] + nu.0[i]).collect());
    let bounds: Vec<i64> = cartan
        .weight_to_root_rational(&top)
        .iter()
        .map(|x| x.floor().to_integer())
        .collect();
    let mut out = Vec::new();
    let mut gamma = vec![0i64; cartan.rank()];
    loop {
        let wt = cartan.root_to_weight(&RootVector(gamma.clone()));
        let mu = Weight((0..cartan.rank()).map(|i| top.0[i] - wt.0[i]).collect());
        if mu.is_dominant() {
            out.push(mu);
        }
        // Odometer over the box 0 <= gamma <= bounds.
        let mut k = 0;
        while k < gamma.len() && gamma[k] == bounds[k] {
            gamma[k] = 0;
            k += 1;
        }
        if k == gamma.len() {
            break;
        }
        gamma[k] += 1;
    }
    out.sort();
    Ok(out)
}
