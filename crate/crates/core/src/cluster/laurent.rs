use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Laurent polynomial with big-integer coefficients in a fixed number of
/// variables. Terms are kept in canonical form: no zero coefficients, one
/// entry per exponent vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    /// The variable with 0-based index `k`.
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exponents: Vec<i32>, coeff: BigInt) -> Self {
        let nvars = exponents.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponents, coeff);
        }
        LaurentPoly { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Componentwise minimum of the exponents (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut out: Option<Vec<i32>> = None;
        for e in self.terms.keys() {
            match &mut out {
                None => out = Some(e.clone()),
                Some(m) => m.iter_mut().zip(e).for_each(|(a, b)| *a = (*a).min(*b)),
            }
        }
        out.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / divisor` in the Laurent polynomial ring over
    /// the integers, or `None` when it does not exist.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let dmin = divisor.min_exponents();
        let nmin = self.min_exponents();
        // Both shifted into the polynomial ring; the divisor then has no
        // monomial factor, so divisibility in the Laurent ring reduces to
        // divisibility in the polynomial ring.
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let d = divisor.shift(&neg(&dmin));
        let mut rem = self.shift(&neg(&nmin));
        let (lead_e, lead_c) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut quotient = LaurentPoly::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Vec<i32> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().any(|&x| x < 0) {
                return None;
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return None;
            }
            for (de, dc) in &d.terms {
                let te: Vec<i32> = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(dc * &qc));
            }
            quotient.add_term(qe, qc);
        }
        let back: Vec<i32> = nmin.iter().zip(&dmin).map(|(a, b)| a - b).collect();
        Some(quotient.shift(&back))
    }

    /// Evaluation at a point with nonzero rational coordinates.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = Rational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                let base = if k < 0 { x.recip() } else { x.clone() };
                for _ in 0..k.unsigned_abs() {
                    term *= &base;
                }
            }
            total += term;
        }
        total
    }

    /// Denominator exponent vector: `max(0, -min exponent)` per variable.
    pub fn denominator(&self) -> Vec<i32> {
        self.min_exponents().iter().map(|&x| (-x).max(0)).collect()
    }

    /// True iff every exponent of the variables in `range` is nonnegative.
    pub fn is_polynomial_in(&self, range: core::ops::Range<usize>) -> bool {
        self.terms.keys().all(|e| e[range.clone()].iter().all(|&x| x >= 0))
    }

    /// Renders with the given variable names, e.g. `(x2 + 1)/x1`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let den = self.denominator();
        let num = self.shift(&den);
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in num.terms.iter().rev() {
            let mono = render_monomial(e, names);
            let abs = c.abs();
            let body = match (mono.is_empty(), abs.is_one()) {
                (true, _) => format!("{abs}"),
                (false, true) => mono,
                (false, false) => format!("{abs}*{mono}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c.is_negative() { "-" } else { "+" }));
            }
        }
        let numer = parts.join(" ");
        let denom = render_monomial(&den, names);
        if denom.is_empty() {
            numer
        } else if num.terms.len() == 1 {
            format!("{numer}/{denom}")
        } else {
            format!("({numer})/{denom}")
        }
    }
}

fn render_monomial(e: &[i32], names: &[String]) -> String {
    let mut factors = Vec::new();
    for (k, &p) in e.iter().enumerate() {
        match p {
            0 => {}
            1 => factors.push(names[k].clone()),
            _ => factors.push(format!("{}^{}", names[k], p)),
        }
    }
    factors.join("*")
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|k| format!("v{k}")).collect();
        f.write_str(&self.render(&names))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    // Exponents add when monomials multiply.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}
