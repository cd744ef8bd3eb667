use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Polynomial in two variables with exact rational coefficients, stored
/// sparsely as `(i, j) ↦ coefficient of Pⁱ Qʲ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RatPoly2 {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl RatPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, BigRational::from_integer(1.into()));
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    /// Largest total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn eval_exact(&self, p: &BigRational, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * pow(p, i) * pow(q, j);
        }
        acc
    }

    /// Coefficients rounded to `f64`, for fast repeated evaluation.
    pub fn to_f64(&self) -> F64Poly2 {
        F64Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| (i as i32, j as i32, c.to_f64().unwrap_or(f64::NAN)))
                .collect(),
        }
    }
}

fn pow(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::from_integer(BigInt::from(1));
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Display for RatPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*P^{i}")?;
            }
            if j > 0 {
                write!(f, "*Q^{j}")?;
            }
        }
        Ok(())
    }
}

/// Floating-point copy of a [`RatPoly2`].
#[derive(Debug, Clone, PartialEq)]
pub struct F64Poly2 {
    terms: Vec<(i32, i32, f64)>,
}

impl F64Poly2 {
    pub fn eval(&self, p: f64, q: f64) -> f64 {
        self.terms.iter().map(|&(i, j, c)| c * p.powi(i) * q.powi(j)).sum()
    }
}
