use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::laurent::LaurentPoly;
use super::matrix::ExchangeMatrix;
use crate::error::domain;
use crate::{Error, Result};

/// A seed: an exchange matrix together with `n` cluster variables written as
/// Laurent polynomials in the initial cluster `x_1..x_n` and the coefficient
/// variables attached to rows `n+1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
    names: Vec<String>,
}

/// Default variable names: `x1..xn` for the cluster, `p1..p(m-n)` for
/// coefficients.
pub fn default_names(n: usize, m: usize) -> Vec<String> {
    (1..=n)
        .map(|k| format!("x{k}"))
        .chain((1..=m - n).map(|k| format!("p{k}")))
        .collect()
}

impl Seed {
    /// The initial seed: cluster `(x_1, ..., x_n)`.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let names = default_names(matrix.n(), matrix.m());
        Self::with_names(matrix, names).expect("default names have the right length")
    }

    /// The initial seed with one name per row of the matrix.
    pub fn with_names(matrix: ExchangeMatrix, names: Vec<String>) -> Result<Self> {
        if names.len() != matrix.m() {
            return Err(domain!("expected {} variable names, got {}", matrix.m(), names.len()));
        }
        let m = matrix.m();
        let cluster = (0..matrix.n()).map(|k| LaurentPoly::var(m, k)).collect();
        Ok(Seed {
            matrix,
            cluster,
            names,
        })
    }

    /// A seed with an explicit cluster, e.g. one read back from a file. Each
    /// variable must be a nonzero Laurent polynomial in the `m` initial
    /// variables, polynomial in the coefficients.
    pub fn from_parts(matrix: ExchangeMatrix, cluster: Vec<LaurentPoly>, names: Vec<String>) -> Result<Self> {
        let (n, m) = (matrix.n(), matrix.m());
        if names.len() != m {
            return Err(domain!("expected {m} variable names, got {}", names.len()));
        }
        if cluster.len() != n {
            return Err(domain!("expected {n} cluster variables, got {}", cluster.len()));
        }
        for (k, x) in cluster.iter().enumerate() {
            if x.nvars() != m || x.is_zero() || !x.is_polynomial_in(n..m) {
                return Err(domain!(
                    "cluster variable {} must be a nonzero Laurent polynomial in {m} variables, polynomial in the coefficients",
                    k + 1
                ));
            }
        }
        Ok(Seed {
            matrix,
            cluster,
            names,
        })
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    /// Names of the initial cluster variables followed by the coefficients.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn m(&self) -> usize {
        self.matrix.m()
    }

    /// The unordered cluster, sorted canonically.
    pub fn cluster_set(&self) -> Vec<LaurentPoly> {
        let mut v = self.cluster.clone();
        v.sort();
        v
    }

    fn row_value(&self, i: usize) -> LaurentPoly {
        if i < self.n() {
            self.cluster[i].clone()
        } else {
            LaurentPoly::var(self.m(), i)
        }
    }

    /// The two monomials `prod x_i^[b_ik]+` and `prod x_i^[-b_ik]+` of the
    /// exchange relation in direction `k` (1-based), taken over all rows.
    pub fn exchange_monomials(&self, k: usize) -> Result<(LaurentPoly, LaurentPoly)> {
        if k == 0 || k > self.n() {
            return Err(domain!("direction {k} outside 1..={}", self.n()));
        }
        let m = self.m();
        let mut plus = LaurentPoly::one(m);
        let mut minus = LaurentPoly::one(m);
        for i in 0..m {
            let b = self.matrix.b(i, k - 1);
            if b == 0 {
                continue;
            }
            let factor = self.row_value(i).pow(b.unsigned_abs() as u32);
            if b > 0 {
                plus = &plus * &factor;
            } else {
                minus = &minus * &factor;
            }
        }
        Ok((plus, minus))
    }

    /// Seed mutation in direction `k` (1-based).
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let (plus, minus) = self.exchange_monomials(k)?;
        let numerator = &plus + &minus;
        let old = &self.cluster[k - 1];
        let new = numerator.exact_div(old).ok_or_else(|| {
            Error::Internal(format!(
                "Laurent phenomenon violated: {} does not divide {}",
                old.render(&self.names),
                numerator.render(&self.names)
            ))
        })?;
        if !new.is_polynomial_in(self.n()..self.m()) {
            return Err(Error::Internal(format!(
                "Laurent phenomenon violated: negative coefficient exponent in {}",
                new.render(&self.names)
            )));
        }
        let mut cluster = self.cluster.clone();
        cluster[k - 1] = new;
        Ok(Seed {
            matrix: self.matrix.mutate(k)?,
            cluster,
            names: self.names.clone(),
        })
    }

    /// Numeric value of every cluster variable at the given point of the
    /// initial variables (cluster then coefficients).
    pub fn evaluate(&self, point: &[crate::Rational]) -> Vec<crate::Rational> {
        self.cluster.iter().map(|x| x.eval(point)).collect()
    }

    /// Renders cluster variable `k` (1-based).
    pub fn render_variable(&self, k: usize) -> String {
        self.cluster[k - 1].render(&self.names)
    }
}

/// Seed mutation `mu_k` (1-based direction).
pub fn mutate_seed(seed: &Seed, k: usize) -> Result<Seed> {
    seed.mutate(k)
}

/// The all-ones point for `m` variables.
pub fn ones(m: usize) -> Vec<crate::Rational> {
    (0..m).map(|_| crate::Rational::from_integer(BigInt::one())).collect()
}
