//! Transition maps between parametrizations attached to reduced words of
//! the longest element.
//!
//! A 2-move swaps the two affected parameters. A 3-move `i j i -> j i j`
//! rewrites `(t1, t2, t3)` as
//!
//! ```text
//! geometric:  (t2 t3 / (t1 + t3),  t1 + t3,  t1 t2 / (t1 + t3))
//! tropical:   (t2 + t3 - min(t1, t3),  min(t1, t3),  t1 + t2 - min(t1, t3))
//! ```
//!
//! Both are involutions. Only simply-laced Cartan matrices are supported.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};
use rand::Rng;

use crate::error::domain;
use crate::rootsys::{BraidMove, CartanMatrix, MoveKind, ReducedWord};
use crate::{Error, Rational, Result};

/// Values a parametrization can carry.
pub trait BraidParameter: Clone + PartialEq + fmt::Debug {
    /// Image of three consecutive parameters under a 3-move.
    fn three_move(t1: &Self, t2: &Self, t3: &Self) -> [Self; 3];
    /// Tropical values must be nonnegative, geometric ones strictly positive.
    fn is_admissible(&self) -> bool;
}

/// Tropical (min-plus) parameters.
impl BraidParameter for u64 {
    fn three_move(t1: &u64, t2: &u64, t3: &u64) -> [u64; 3] {
        let m = (*t1).min(*t3);
        [t2 + t3 - m, m, t1 + t2 - m]
    }

    fn is_admissible(&self) -> bool {
        true
    }
}

/// Geometric (positive rational) parameters.
impl BraidParameter for Rational {
    fn three_move(t1: &Rational, t2: &Rational, t3: &Rational) -> [Rational; 3] {
        let s = t1 + t3;
        [t2 * t3 / &s, s.clone(), t1 * t2 / &s]
    }

    fn is_admissible(&self) -> bool {
        self.is_positive()
    }
}

/// A reduced word for `w0` with one parameter per letter.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamTuple<V> {
    word: ReducedWord,
    values: Vec<V>,
}

pub type TropicalTuple = ParamTuple<u64>;
pub type GeometricTuple = ParamTuple<Rational>;

impl<V: BraidParameter> ParamTuple<V> {
    /// Checks that `word` is a reduced word of `w0` and that the values
    /// match its length and are admissible.
    pub fn new(cartan: &CartanMatrix, word: ReducedWord, values: Vec<V>) -> Result<Self> {
        let m = cartan.longest_element()?.length;
        if word.len() != m || !cartan.is_reduced(word.letters()) {
            return Err(domain!("({word}) is not a reduced word of w0 for {cartan}"));
        }
        if values.len() != word.len() {
            return Err(domain!(
                "{} parameters for a word of length {}",
                values.len(),
                word.len()
            ));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_admissible()) {
            return Err(domain!("inadmissible parameter {bad:?}"));
        }
        Ok(ParamTuple { word, values })
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn into_values(self) -> Vec<V> {
        self.values
    }

    fn apply_unchecked(&mut self, mv: BraidMove) {
        let p = mv.position;
        match mv.kind {
            MoveKind::Commute => self.values.swap(p, p + 1),
            MoveKind::Braid => {
                let [a, b, c] =
                    V::three_move(&self.values[p], &self.values[p + 1], &self.values[p + 2]);
                self.values[p] = a;
                self.values[p + 1] = b;
                self.values[p + 2] = c;
            }
        }
        self.word = self.word.apply_unchecked(mv);
    }
}

/// Applies one braid move to the word and its parameters.
pub fn apply_braid_move<V: BraidParameter>(
    cartan: &CartanMatrix,
    t: &ParamTuple<V>,
    mv: BraidMove,
) -> Result<ParamTuple<V>> {
    cartan.require_simply_laced()?;
    cartan.check_move(&t.word, mv)?;
    let mut out = t.clone();
    out.apply_unchecked(mv);
    Ok(out)
}

/// A precomputed braid-move path between two reduced words of `w0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionPlan {
    from: ReducedWord,
    to: ReducedWord,
    moves: Vec<BraidMove>,
}

impl TransitionPlan {
    /// Shortest path, ties broken towards lexicographically smaller words.
    pub fn new(cartan: &CartanMatrix, from: &ReducedWord, to: &ReducedWord) -> Result<Self> {
        cartan.require_simply_laced()?;
        let m = cartan.longest_element()?.length;
        for w in [from, to] {
            if w.len() != m || !cartan.is_reduced(w.letters()) {
                return Err(domain!("({w}) is not a reduced word of w0 for {cartan}"));
            }
        }
        Ok(TransitionPlan {
            from: from.clone(),
            to: to.clone(),
            moves: cartan.braid_path(from, to)?,
        })
    }

    pub fn from_moves(cartan: &CartanMatrix, from: &ReducedWord, moves: Vec<BraidMove>) -> Result<Self> {
        cartan.require_simply_laced()?;
        let mut w = from.clone();
        for &mv in &moves {
            w = cartan.apply_move(&w, mv)?;
        }
        Ok(TransitionPlan {
            from: from.clone(),
            to: w,
            moves,
        })
    }

    pub fn moves(&self) -> &[BraidMove] {
        &self.moves
    }

    pub fn source(&self) -> &ReducedWord {
        &self.from
    }

    pub fn target(&self) -> &ReducedWord {
        &self.to
    }

    pub fn apply<V: BraidParameter>(&self, t: &ParamTuple<V>) -> Result<ParamTuple<V>> {
        if t.word != self.from {
            return Err(domain!("tuple word ({}) does not match plan source ({})", t.word, self.from));
        }
        let mut out = t.clone();
        for &mv in &self.moves {
            out.apply_unchecked(mv);
        }
        Ok(out)
    }

    /// Applies the plan to raw values, skipping all checks. The caller
    /// guarantees `values.len()` equals the word length.
    pub fn apply_values<V: BraidParameter>(&self, values: &mut [V]) {
        for mv in &self.moves {
            let p = mv.position;
            match mv.kind {
                MoveKind::Commute => values.swap(p, p + 1),
                MoveKind::Braid => {
                    let [a, b, c] = V::three_move(&values[p], &values[p + 1], &values[p + 2]);
                    values[p] = a;
                    values[p + 1] = b;
                    values[p + 2] = c;
                }
            }
        }
    }
}

/// Transition map from `t.word()` to `target` along a BFS braid path.
pub fn transition<V: BraidParameter>(
    cartan: &CartanMatrix,
    t: &ParamTuple<V>,
    target: &ReducedWord,
) -> Result<ParamTuple<V>> {
    TransitionPlan::new(cartan, &t.word, target)?.apply(t)
}

/// Index of a node in an [`ExprArena`].
pub type ExprId = usize;

/// Subtraction-free rational expression node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expr {
    Var(usize),
    Add(ExprId, ExprId),
    Mul(ExprId, ExprId),
    Div(ExprId, ExprId),
}

/// Hash-consed DAG of subtraction-free expressions.
#[derive(Clone, Debug, Default)]
pub struct ExprArena {
    nodes: Vec<Expr>,
    index: BTreeMap<Expr, ExprId>,
    cap: Option<usize>,
}

impl ExprArena {
    pub fn with_cap(cap: usize) -> Self {
        ExprArena {
            cap: Some(cap),
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: ExprId) -> Expr {
        self.nodes[id]
    }

    pub fn intern(&mut self, e: Expr) -> Result<ExprId> {
        if let Some(&id) = self.index.get(&e) {
            return Ok(id);
        }
        if let Some(cap) = self.cap {
            if self.nodes.len() >= cap {
                return Err(Error::Resource(format!("expression DAG exceeds {cap} nodes")));
            }
        }
        self.nodes.push(e);
        self.index.insert(e, self.nodes.len() - 1);
        Ok(self.nodes.len() - 1)
    }

    /// Min-plus evaluation: `+ -> min`, `* -> +`, `/ -> -`.
    pub fn eval_min_plus(&self, roots: &[ExprId], vars: &[i64]) -> Vec<i64> {
        let mut vals = vec![0i64; self.nodes.len()];
        for (id, e) in self.nodes.iter().enumerate() {
            vals[id] = match *e {
                Expr::Var(k) => vars[k],
                Expr::Add(a, b) => vals[a].min(vals[b]),
                Expr::Mul(a, b) => vals[a] + vals[b],
                Expr::Div(a, b) => vals[a] - vals[b],
            };
        }
        roots.iter().map(|&r| vals[r]).collect()
    }

    /// Ordinary evaluation over the rationals.
    pub fn eval_rational(&self, roots: &[ExprId], vars: &[Rational]) -> Vec<Rational> {
        let mut vals: Vec<Rational> = Vec::with_capacity(self.nodes.len());
        for e in &self.nodes {
            let v = match *e {
                Expr::Var(k) => vars[k].clone(),
                Expr::Add(a, b) => &vals[a] + &vals[b],
                Expr::Mul(a, b) => &vals[a] * &vals[b],
                Expr::Div(a, b) => &vals[a] / &vals[b],
            };
            vals.push(v);
        }
        roots.iter().map(|&r| vals[r].clone()).collect()
    }

    pub fn render(&self, id: ExprId) -> String {
        match self.nodes[id] {
            Expr::Var(k) => format!("t{}", k + 1),
            Expr::Add(a, b) => format!("({} + {})", self.render(a), self.render(b)),
            Expr::Mul(a, b) => format!("{}*{}", self.render(a), self.render(b)),
            Expr::Div(a, b) => format!("{}/{}", self.render(a), self.render(b)),
        }
    }
}

/// Composes the geometric braid moves of a plan symbolically. Returns one
/// expression per output slot in the variables `t1..tm` of the source word.
pub fn symbolic_transition(plan: &TransitionPlan, arena: &mut ExprArena) -> Result<Vec<ExprId>> {
    let mut slots = (0..plan.from.len())
        .map(|k| arena.intern(Expr::Var(k)))
        .collect::<Result<Vec<_>>>()?;
    for mv in &plan.moves {
        let p = mv.position;
        match mv.kind {
            MoveKind::Commute => slots.swap(p, p + 1),
            MoveKind::Braid => {
                let (t1, t2, t3) = (slots[p], slots[p + 1], slots[p + 2]);
                let s = arena.intern(Expr::Add(t1, t3))?;
                let n1 = arena.intern(Expr::Mul(t2, t3))?;
                let n3 = arena.intern(Expr::Mul(t1, t2))?;
                slots[p] = arena.intern(Expr::Div(n1, s))?;
                slots[p + 1] = s;
                slots[p + 2] = arena.intern(Expr::Div(n3, s))?;
            }
        }
    }
    Ok(slots)
}

/// Outcome of comparing tropical transitions with the tropicalized
/// symbolic geometric transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalizationReport {
    pub from: ReducedWord,
    pub to: ReducedWord,
    pub samples_requested: usize,
    pub samples_checked: usize,
    /// Per output component: number of samples where both routes agreed.
    pub component_passes: Vec<usize>,
    pub expression_nodes: usize,
    /// Set when the expression DAG exceeded its cap; the report is partial.
    pub resource_error: Option<String>,
}

impl TropicalizationReport {
    pub fn passed(&self) -> bool {
        self.resource_error.is_none()
            && self.samples_checked == self.samples_requested
            && self.component_passes.iter().all(|&c| c == self.samples_checked)
    }
}

/// For `samples` random tropical tuples, checks that the min-plus braid
/// moves agree with min-plus evaluation of the symbolic geometric map.
pub fn verify_tropicalization<R: Rng + ?Sized>(
    cartan: &CartanMatrix,
    from: &ReducedWord,
    to: &ReducedWord,
    samples: usize,
    max_value: u64,
    max_nodes: usize,
    rng: &mut R,
) -> Result<TropicalizationReport> {
    let plan = TransitionPlan::new(cartan, from, to)?;
    let m = from.len();
    let mut report = TropicalizationReport {
        from: from.clone(),
        to: to.clone(),
        samples_requested: samples,
        samples_checked: 0,
        component_passes: vec![0; m],
        expression_nodes: 0,
        resource_error: None,
    };
    let mut arena = ExprArena::with_cap(max_nodes);
    let roots = match symbolic_transition(&plan, &mut arena) {
        Ok(r) => r,
        Err(Error::Resource(msg)) => {
            report.expression_nodes = arena.len();
            report.resource_error = Some(msg);
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.expression_nodes = arena.len();
    for _ in 0..samples {
        let t: Vec<u64> = (0..m).map(|_| rng.gen_range(0..=max_value)).collect();
        let mut direct = t.clone();
        plan.apply_values(&mut direct);
        let vars: Vec<i64> = t.iter().map(|&x| x as i64).collect();
        let symbolic = arena.eval_min_plus(&roots, &vars);
        for k in 0..m {
            if symbolic[k] >= 0 && symbolic[k] as u64 == direct[k] {
                report.component_passes[k] += 1;
            }
        }
        report.samples_checked += 1;
    }
    Ok(report)
}

/// Checks that a rational parameter vector is strictly positive.
pub fn all_positive(values: &[Rational]) -> bool {
    values.iter().all(|v| !v.is_zero() && v.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::parse_cartan_type;
    use num_bigint::BigInt;
    use rand::SeedableRng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn setup() -> (CartanMatrix, ReducedWord, ReducedWord) {
        let a2 = parse_cartan_type("A2").unwrap();
        let w = a2.reduced_word(&[1, 2, 1]).unwrap();
        let w2 = a2.reduced_word(&[2, 1, 2]).unwrap();
        (a2, w, w2)
    }

    #[test]
    fn tropical_three_move() {
        let (a2, w, w2) = setup();
        let t = ParamTuple::new(&a2, w.clone(), vec![1u64, 2, 3]).unwrap();
        let mv = BraidMove { position: 0, kind: MoveKind::Braid };
        let out = apply_braid_move(&a2, &t, mv).unwrap();
        assert_eq!(out.word(), &w2);
        assert_eq!(out.values(), &[4, 1, 2]);
        let zero = ParamTuple::new(&a2, w, vec![0u64, 0, 0]).unwrap();
        assert_eq!(apply_braid_move(&a2, &zero, mv).unwrap().values(), &[0, 0, 0]);
    }

    #[test]
    fn geometric_three_move() {
        let (a2, w, _) = setup();
        let t = ParamTuple::new(&a2, w, vec![q(1, 1), q(2, 1), q(3, 1)]).unwrap();
        let out = apply_braid_move(&a2, &t, BraidMove { position: 0, kind: MoveKind::Braid }).unwrap();
        assert_eq!(out.values(), &[q(3, 2), q(4, 1), q(1, 2)]);
    }

    #[test]
    fn illegal_moves_and_types() {
        let (a2, w, _) = setup();
        let t = ParamTuple::new(&a2, w.clone(), vec![1u64, 2, 3]).unwrap();
        assert!(matches!(
            apply_braid_move(&a2, &t, BraidMove { position: 0, kind: MoveKind::Commute }),
            Err(Error::Domain(_))
        ));
        assert!(apply_braid_move(&a2, &t, BraidMove { position: 1, kind: MoveKind::Braid }).is_err());
        let b2 = parse_cartan_type("B2").unwrap();
        let wb = b2.longest_element().unwrap().word;
        let tb = ParamTuple::new(&b2, wb.clone(), vec![1u64; 4]).unwrap();
        assert!(matches!(transition(&b2, &tb, &wb), Err(Error::Unsupported(_))));
        assert!(ParamTuple::new(&a2, w.clone(), vec![1u64, 2]).is_err());
        assert!(ParamTuple::new(&a2, w.clone(), vec![q(1, 1), q(0, 1), q(1, 1)]).is_err());
        assert!(ParamTuple::new(&a2, a2.reduced_word(&[1, 2]).unwrap(), vec![1u64, 2]).is_err());
    }

    #[test]
    fn transitions_and_round_trip() {
        let (a2, w, w2) = setup();
        let t = ParamTuple::new(&a2, w.clone(), vec![1u64, 2, 3]).unwrap();
        let there = transition(&a2, &t, &w2).unwrap();
        assert_eq!(there.values(), &[4, 1, 2]);
        assert_eq!(transition(&a2, &t, &w).unwrap(), t);
        assert_eq!(transition(&a2, &there, &w).unwrap(), t);
    }

    #[test]
    fn a2_symbolic_expressions_match_printed_formulas() {
        let (a2, w, w2) = setup();
        let plan = TransitionPlan::new(&a2, &w, &w2).unwrap();
        let mut arena = ExprArena::default();
        let roots = symbolic_transition(&plan, &mut arena).unwrap();
        let rendered: Vec<String> = roots.iter().map(|&r| arena.render(r)).collect();
        assert_eq!(rendered, vec!["t2*t3/(t1 + t3)", "(t1 + t3)", "t1*t2/(t1 + t3)"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let report = verify_tropicalization(&a2, &w, &w2, 50, 20, 1000, &mut rng).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn a1_trivial_and_resource_cap() {
        let a1 = parse_cartan_type("A1").unwrap();
        let w = a1.reduced_word(&[1]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        assert!(verify_tropicalization(&a1, &w, &w, 5, 10, 10, &mut rng).unwrap().passed());

        let a3 = parse_cartan_type("A3").unwrap();
        let from = a3.reduced_word(&[1, 2, 1, 3, 2, 1]).unwrap();
        let to = a3.reduced_word(&[3, 2, 3, 1, 2, 3]).unwrap();
        let report = verify_tropicalization(&a3, &from, &to, 5, 10, 8, &mut rng).unwrap();
        assert!(report.resource_error.is_some());
        assert!(!report.passed());
    }
}
