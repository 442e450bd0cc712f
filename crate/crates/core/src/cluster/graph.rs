use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::laurent::LaurentPoly;
use super::matrix::ExchangeMatrix;
use super::seed::{ones, Seed};
use crate::{Error, Rational, Result};

/// Limits for seed-graph searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExchangeCaps {
    /// Maximum number of distinct seeds (clusters) visited.
    pub max_seeds: usize,
    /// Maximum number of terms in any single cluster variable.
    pub max_terms: usize,
}

impl Default for ExchangeCaps {
    fn default() -> Self {
        ExchangeCaps {
            max_seeds: 20_000,
            max_terms: 50_000,
        }
    }
}

/// The exchange graph found by breadth-first search from an initial seed.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    /// Distinct cluster variables in discovery order.
    pub variables: Vec<LaurentPoly>,
    /// Each cluster as the sorted list of its variable indices.
    pub clusters: Vec<Vec<usize>>,
    /// A representative seed for every cluster, aligned with `clusters`.
    pub seeds: Vec<Seed>,
    /// Pairs of cluster indices joined by one mutation, `a < b`.
    pub edges: Vec<(usize, usize)>,
    /// True iff the closure was reached within the caps.
    pub complete: bool,
    /// Why the search stopped early, if it did.
    pub stopped: Option<String>,
}

struct Interner {
    ids: BTreeMap<LaurentPoly, usize>,
    list: Vec<LaurentPoly>,
}

impl Interner {
    fn id(&mut self, p: &LaurentPoly) -> usize {
        if let Some(&i) = self.ids.get(p) {
            return i;
        }
        let i = self.list.len();
        self.ids.insert(p.clone(), i);
        self.list.push(p.clone());
        i
    }

    fn key(&mut self, seed: &Seed) -> Vec<usize> {
        let mut k: Vec<usize> = seed.cluster().iter().map(|p| self.id(p)).collect();
        k.sort_unstable();
        k
    }
}

fn max_terms(seed: &Seed) -> usize {
    seed.cluster().iter().map(LaurentPoly::num_terms).max().unwrap_or(0)
}

/// Breadth-first search over seeds, identifying two seeds when their clusters
/// agree as sets. Caps turn into `complete = false`; a failed exact division
/// is an error.
pub fn enumerate_exchange_graph(matrix: &ExchangeMatrix, caps: ExchangeCaps) -> Result<ExchangeGraph> {
    enumerate_from_seed(Seed::initial(matrix.clone()), caps)
}

/// As [`enumerate_exchange_graph`], starting from an arbitrary seed.
pub fn enumerate_from_seed(initial: Seed, caps: ExchangeCaps) -> Result<ExchangeGraph> {
    let mut interner = Interner {
        ids: BTreeMap::new(),
        list: Vec::new(),
    };
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut clusters = Vec::new();
    let mut seeds = Vec::new();
    let mut edges = BTreeSet::new();
    let mut stopped = None;

    let key = interner.key(&initial);
    index.insert(key.clone(), 0);
    clusters.push(key);
    seeds.push(initial);
    let mut queue = VecDeque::from([0usize]);
    'search: while let Some(at) = queue.pop_front() {
        for k in 1..=seeds[at].n() {
            let next = seeds[at].mutate(k)?;
            if max_terms(&next) > caps.max_terms {
                stopped = Some(format!("a cluster variable exceeds {} terms", caps.max_terms));
                break 'search;
            }
            let key = interner.key(&next);
            let to = match index.get(&key) {
                Some(&to) => to,
                None => {
                    if seeds.len() >= caps.max_seeds {
                        stopped = Some(format!("more than {} seeds", caps.max_seeds));
                        break 'search;
                    }
                    let to = seeds.len();
                    index.insert(key.clone(), to);
                    clusters.push(key);
                    seeds.push(next);
                    queue.push_back(to);
                    to
                }
            };
            if to != at {
                edges.insert((at.min(to), at.max(to)));
            }
        }
    }
    Ok(ExchangeGraph {
        variables: interner.list,
        clusters,
        seeds,
        edges: edges.into_iter().collect(),
        complete: stopped.is_none(),
        stopped,
    })
}

/// Outcome of [`laurent_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentReport {
    pub depth: usize,
    /// Distinct seeds reached (after collapsing equal clusters).
    pub seeds_visited: usize,
    /// Distinct cluster variables produced, including the initial ones.
    pub distinct_variables: usize,
    /// Largest number of terms of any produced variable.
    pub max_terms: usize,
    /// Largest total degree of a denominator monomial.
    pub max_denominator_degree: i64,
    /// True iff the search ran out of new seeds before reaching `depth`.
    pub closed: bool,
    /// Violations of the Laurent phenomenon; empty when the check passes.
    pub violations: Vec<String>,
    /// Set when a cap stopped the walk; the report is then partial.
    pub resource: Option<String>,
}

impl LaurentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.resource.is_none()
    }
}

/// Walks all mutation sequences of length at most `depth` from the initial
/// seed, pruning seeds already seen, and checks that every produced variable
/// is a Laurent polynomial in the initial cluster whose dependence on the
/// coefficient variables is polynomial.
pub fn laurent_check(matrix: &ExchangeMatrix, depth: usize, caps: ExchangeCaps) -> LaurentReport {
    let initial = Seed::initial(matrix.clone());
    let n = initial.n();
    let mut seen: BTreeSet<Vec<LaurentPoly>> = BTreeSet::new();
    let mut variables: BTreeSet<LaurentPoly> = initial.cluster().iter().cloned().collect();
    seen.insert(initial.cluster_set());
    let mut frontier = Vec::from([initial]);
    let mut report = LaurentReport {
        depth,
        seeds_visited: 1,
        distinct_variables: 0,
        max_terms: 1,
        max_denominator_degree: 0,
        closed: false,
        violations: Vec::new(),
        resource: None,
    };
    'walk: for _ in 0..depth {
        let mut next_frontier = Vec::new();
        for seed in &frontier {
            for k in 1..=n {
                let next = match seed.mutate(k) {
                    Ok(s) => s,
                    Err(Error::Internal(msg)) => {
                        report.violations.push(msg);
                        continue;
                    }
                    Err(e) => {
                        report.violations.push(format!("{e}"));
                        continue;
                    }
                };
                let x = &next.cluster()[k - 1];
                report.max_terms = report.max_terms.max(x.num_terms());
                let den: i64 = x.denominator().iter().map(|&d| i64::from(d)).sum();
                report.max_denominator_degree = report.max_denominator_degree.max(den);
                if !x.is_polynomial_in(n..next.m()) {
                    report.violations.push(format!("coefficient exponent negative in {x:?}"));
                }
                if x.num_terms() > caps.max_terms {
                    report.resource = Some(format!("a cluster variable exceeds {} terms", caps.max_terms));
                    break 'walk;
                }
                variables.insert(x.clone());
                if seen.insert(next.cluster_set()) {
                    if seen.len() > caps.max_seeds {
                        report.resource = Some(format!("more than {} seeds", caps.max_seeds));
                        break 'walk;
                    }
                    next_frontier.push(next);
                }
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            report.closed = true;
            break;
        }
    }
    report.seeds_visited = seen.len();
    report.distinct_variables = variables.len();
    report
}

/// Mutates cyclically in directions `1, 2, ..., n, 1, ...` for `steps`
/// steps and returns the initial cluster values followed by each new
/// variable, all evaluated at the all-ones point.
pub fn cyclic_mutation_values(matrix: &ExchangeMatrix, steps: usize) -> Result<Vec<Rational>> {
    let mut seed = Seed::initial(matrix.clone());
    let point = ones(seed.m());
    let mut out = seed.evaluate(&point);
    for step in 0..steps {
        let k = 1 + step % seed.n();
        seed = seed.mutate(k)?;
        out.push(seed.cluster()[k - 1].eval(&point));
    }
    Ok(out)
}
