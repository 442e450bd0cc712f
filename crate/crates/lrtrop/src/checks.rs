//! Randomized and exhaustive checks composed from the core engines. The
//! command line and the acceptance suite run the same code.
//!
//! Every randomized check is driven by a seeded ChaCha8 generator, so a
//! report is a pure function of its arguments.

use lrtrop_core::minors::{
    boundary_parameters, group_element_from_word, is_totally_positive_upper, legal_dodgson_triples,
    legal_plucker_triples, random_positive_rational, random_sl, special_minor, DodgsonInstance, PluckerInstance,
};
use lrtrop_core::multiplicity::{dominant_targets, racah_oracle, MultiplicityEngine, MultiplicityQuery};
use lrtrop_core::rootsys::{CartanMatrix, ReducedWord, Weight};
use lrtrop_core::tableaux::lr_coefficient_of_weights;
use lrtrop_core::tropical::{transition, GeometricTuple, ParamTuple, TropicalTuple};
use lrtrop_core::{Error, Rational, Result};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Cap on the number of reduced words of `w0` listed by the checks.
pub const MAX_WORDS: usize = 100_000;
/// Mismatches quoted in a report; the counts are always complete.
const QUOTED: usize = 10;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn is_type_a(cartan: &CartanMatrix) -> bool {
    cartan.name().is_some_and(|n| n.starts_with('A'))
}

/// All dominant weights with every coordinate in `0..=max`.
pub fn weight_box(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (0..=max).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

/// Agreement of the tropical count, the tableau rule (type A) and the
/// alternating-sum oracle over a box of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub cartan_type: String,
    pub max_coordinate: i64,
    /// Number of `(lambda, nu, mu)` triples compared.
    pub cases: usize,
    /// Sum of all multiplicities found.
    pub total_multiplicity: u64,
    /// Whether the tableau rule took part (type A only).
    pub tableau_rule: bool,
    pub mismatch_count: usize,
    pub mismatches: Vec<String>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.cases > 0 && self.mismatch_count == 0
    }
}

/// For all dominant `lambda`, `nu` with coordinates `<= max` and every
/// dominant `mu` with `lambda + nu - mu` in `Q_+`, compares the routes.
/// Parallel over `(lambda, nu)` pairs.
pub fn oracle_grid(cartan: &CartanMatrix, max: i64) -> Result<GridReport> {
    let engine = MultiplicityEngine::new(cartan)?;
    let with_lr = is_type_a(cartan);
    let weights = weight_box(cartan.rank(), max);
    let pairs: Vec<(&Weight, &Weight)> = weights.iter().flat_map(|l| weights.iter().map(move |n| (l, n))).collect();
    let parts = pairs
        .par_iter()
        .map(|(lambda, nu)| -> Result<(usize, u64, Vec<String>)> {
            let (mut cases, mut total, mut bad) = (0, 0, Vec::new());
            for mu in dominant_targets(cartan, lambda, nu)? {
                let tropical = engine.count(lambda, nu, &mu)?.count;
                let q = MultiplicityQuery::new(cartan.clone(), (*lambda).clone(), (*nu).clone(), mu.clone())?;
                let oracle = racah_oracle(&q)?;
                let lr = if with_lr { Some(lr_coefficient_of_weights(lambda, nu, &mu)?) } else { None };
                cases += 1;
                total += oracle;
                if tropical != oracle || lr.is_some_and(|c| c != oracle) {
                    bad.push(format!(
                        "lambda={:?} nu={:?} mu={:?}: tropical {tropical}, tableaux {lr:?}, oracle {oracle}",
                        lambda.0, nu.0, mu.0
                    ));
                }
            }
            Ok((cases, total, bad))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = GridReport {
        cartan_type: cartan.to_string(),
        max_coordinate: max,
        tableau_rule: with_lr,
        ..GridReport::default()
    };
    for (cases, total, bad) in parts {
        report.cases += cases;
        report.total_multiplicity += total;
        report.mismatch_count += bad.len();
        report.mismatches.extend(bad);
    }
    report.mismatches.truncate(QUOTED);
    Ok(report)
}

/// Randomized contract checks of the transition maps.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TransitionReport {
    pub cartan_type: String,
    pub trials: usize,
    /// Trials where `R_{j,i} R_{i,j}` returned the input exactly.
    pub involutive: usize,
    /// Trials where going through a third word gave the direct result.
    pub path_independent: usize,
    /// Geometric trials where both factorizations gave the same matrix.
    pub geometric_trials: usize,
    pub geometric_preserved: usize,
}

impl TransitionReport {
    pub fn passed(&self) -> bool {
        self.involutive == self.trials
            && self.path_independent == self.trials
            && self.geometric_preserved == self.geometric_trials
    }
}

/// `trials` tropical trials of each property with values in `0..=20`, and
/// `geometric` trials with positive rationals whose numerator and
/// denominator are at most 9 (type A only).
pub fn transition_checks(cartan: &CartanMatrix, trials: usize, geometric: usize, seed: u64) -> Result<TransitionReport> {
    let words = cartan.reduced_words_of_longest(MAX_WORDS)?;
    let mut rng = rng(seed);
    let mut report = TransitionReport {
        cartan_type: cartan.to_string(),
        trials,
        geometric_trials: geometric,
        ..TransitionReport::default()
    };
    let pick = |rng: &mut ChaCha8Rng| words.choose(rng).expect("w0 has a reduced word").clone();
    for _ in 0..trials {
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let t: TropicalTuple = ParamTuple::new(cartan, a.clone(), (0..a.len()).map(|_| rng.gen_range(0..=20)).collect())?;
        let there = transition(cartan, &t, &b)?;
        if transition(cartan, &there, &a)? == t {
            report.involutive += 1;
        }
        let (c, d) = (pick(&mut rng), pick(&mut rng));
        let t: TropicalTuple = ParamTuple::new(cartan, c.clone(), (0..c.len()).map(|_| rng.gen_range(0..=20)).collect())?;
        let via = pick(&mut rng);
        if transition(cartan, &t, &d)? == transition(cartan, &transition(cartan, &t, &via)?, &d)? {
            report.path_independent += 1;
        }
    }
    if geometric > 0 {
        if !is_type_a(cartan) {
            return Err(Error::Unsupported(format!("geometric factorization check needs type A, got {cartan}")));
        }
        let n = cartan.rank() + 1;
        for _ in 0..geometric {
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            let values: Vec<Rational> = (0..a.len()).map(|_| random_positive_rational(&mut rng, 9)).collect();
            let t: GeometricTuple = ParamTuple::new(cartan, a.clone(), values)?;
            let out = transition(cartan, &t, &b)?;
            let x = group_element_from_word(a.letters(), t.values(), n)?;
            let y = group_element_from_word(b.letters(), out.values(), n)?;
            if x == y {
                report.geometric_preserved += 1;
            }
        }
    }
    Ok(report)
}

/// Which minor identities to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identities {
    Dodgson,
    Plucker,
    Both,
}

/// Dodgson and Plücker residuals on random `SL_n(Q)` matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub samples: usize,
    /// Legal instances enumerated at this rank.
    pub dodgson_instances: usize,
    pub plucker_instances: usize,
    /// Instance evaluations with a nonzero residual.
    pub dodgson_nonzero: usize,
    pub plucker_nonzero: usize,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.dodgson_nonzero == 0 && self.plucker_nonzero == 0
    }
}

/// Evaluates every legal instance on `samples` random matrices with entries
/// of height at most 5 in each factor.
pub fn identity_checks(n: usize, which: Identities, samples: usize, seed: u64) -> Result<IdentityReport> {
    if n < 2 {
        return Err(Error::Domain(format!("identities need n >= 2, got {n}")));
    }
    let dodgson: Vec<DodgsonInstance> = if which != Identities::Plucker {
        legal_dodgson_triples(n)
            .iter()
            .map(|(u, v, i)| DodgsonInstance::new(n, u, v, *i))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let plucker: Vec<PluckerInstance> = if which != Identities::Dodgson {
        legal_plucker_triples(n)
            .iter()
            .map(|(w, i, j)| PluckerInstance::new(n, w, *i, *j))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let mut rng = rng(seed);
    let mut report = IdentityReport {
        n,
        samples,
        dodgson_instances: dodgson.len(),
        plucker_instances: plucker.len(),
        ..IdentityReport::default()
    };
    for _ in 0..samples {
        let x = random_sl(n, &mut rng, 5);
        for d in &dodgson {
            if !d.residual(&x)?.is_zero() {
                report.dodgson_nonzero += 1;
            }
        }
        for p in &plucker {
            if !p.residual(&x)?.is_zero() {
                report.plucker_nonzero += 1;
            }
        }
    }
    Ok(report)
}

/// Total positivity of products along reduced words of `w0` in `SL_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub n: usize,
    pub words: Vec<Vec<usize>>,
    pub samples_per_word: usize,
    pub products: usize,
    pub totally_positive: usize,
    pub boundary_recovered: usize,
    pub special_minor_sums: usize,
}

impl PositivityReport {
    pub fn passed(&self) -> bool {
        self.products > 0
            && self.totally_positive == self.products
            && self.boundary_recovered == self.products
            && self.special_minor_sums == self.products
    }
}

/// Outcome of the three checks on one factored product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductCheck {
    pub totally_positive: bool,
    pub boundary_recovered: bool,
    /// One flag per `i = 1..n-1`.
    pub special_minor_sums: Vec<bool>,
}

/// Builds `x_{i_1}(t_1) ... x_{i_m}(t_m)` and checks total positivity, the
/// recovery of `(t_1, t_m)` and `Delta_{omega_i, s_i omega_i} = sum_{i_k = i} t_k`.
pub fn check_product(word: &ReducedWord, t: &[Rational], n: usize) -> Result<ProductCheck> {
    let x = group_element_from_word(word.letters(), t, n)?;
    let totally_positive = is_totally_positive_upper(&x)?;
    let boundary_recovered = match boundary_parameters(&x, word) {
        Ok((t1, tm)) => t1 == t[0] && tm == t[t.len() - 1],
        Err(Error::Domain(_)) => false,
        Err(e) => return Err(e),
    };
    let special_minor_sums = (1..n)
        .map(|i| {
            let sum: Rational = word
                .letters()
                .iter()
                .zip(t)
                .filter(|(l, _)| **l == i)
                .map(|(_, v)| v.clone())
                .sum();
            Ok(special_minor(&x, i)? == sum)
        })
        .collect::<Result<_>>()?;
    Ok(ProductCheck {
        totally_positive,
        boundary_recovered,
        special_minor_sums,
    })
}

/// `samples` random positive parameter vectors (heights at most 7) on each
/// of `words` reduced words of `w0`; all words when `words` is `None` or
/// exceeds their number, otherwise a seeded random choice.
pub fn positivity_checks(cartan: &CartanMatrix, words: Option<usize>, samples: usize, seed: u64) -> Result<PositivityReport> {
    if !is_type_a(cartan) {
        return Err(Error::Unsupported(format!("total positivity checks need type A, got {cartan}")));
    }
    let n = cartan.rank() + 1;
    let all = cartan.reduced_words_of_longest(MAX_WORDS)?;
    let mut rng = rng(seed);
    let chosen: Vec<ReducedWord> = match words {
        Some(k) if k < all.len() => all.choose_multiple(&mut rng, k).cloned().collect(),
        _ => all,
    };
    let mut report = PositivityReport {
        n,
        words: chosen.iter().map(|w| w.letters().to_vec()).collect(),
        samples_per_word: samples,
        ..PositivityReport::default()
    };
    for w in &chosen {
        for _ in 0..samples {
            let t: Vec<Rational> = (0..w.len()).map(|_| random_positive_rational(&mut rng, 7)).collect();
            let c = check_product(w, &t, n)?;
            report.products += 1;
            report.totally_positive += usize::from(c.totally_positive);
            report.boundary_recovered += usize::from(c.boundary_recovered);
            report.special_minor_sums += usize::from(c.special_minor_sums.iter().all(|&b| b));
        }
    }
    Ok(report)
}
