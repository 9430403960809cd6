//! Exact closed forms `Σ c_i (n_i / n)^e`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerTerm {
    pub coefficient: BigInt,
    /// `n_i`, with `1 ≤ n_i ≤ n`.
    pub numerator: u64,
}

/// `Σ c_i (n_i / n)^e` for `e ≥ first_exponent`, with exceptional values
/// listed in `prefix` for smaller `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPowerSum {
    base: u64,
    /// Distinct `n_i`, ascending, no zero coefficients.
    terms: Vec<PowerTerm>,
    prefix: Vec<(usize, BigRational)>,
    first_exponent: usize,
}

impl SignedPowerSum {
    /// Merges repeated `n_i` and drops cancelled terms.
    pub fn new(
        base: u64,
        terms: impl IntoIterator<Item = (BigInt, u64)>,
        prefix: Vec<(usize, BigRational)>,
        first_exponent: usize,
    ) -> Result<Self> {
        if base == 0 {
            return Err(Error::InvalidForm("base n must be positive".into()));
        }
        if first_exponent == 0 {
            return Err(Error::InvalidForm("e_1 must be at least 1".into()));
        }
        let mut merged: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (c, ni) in terms {
            if ni == 0 || ni > base {
                return Err(Error::InvalidForm(format!("term numerator {ni} outside 1..={base}")));
            }
            *merged.entry(ni).or_insert_with(BigInt::zero) += c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(numerator, coefficient)| PowerTerm { coefficient, numerator })
            .collect();
        let mut prefix = prefix;
        prefix.sort_by_key(|(e, _)| *e);
        let expected: Vec<usize> = (1..first_exponent).collect();
        if prefix.iter().map(|(e, _)| *e).collect::<Vec<_>>() != expected {
            return Err(Error::InvalidForm(format!("prefix must list exactly e = 1..{}", first_exponent)));
        }
        Ok(SignedPowerSum { base, terms, prefix, first_exponent })
    }

    /// Shorthand for a form valid from `e = 1`.
    pub fn from_terms(base: u64, terms: impl IntoIterator<Item = (i64, u64)>) -> Result<Self> {
        Self::new(base, terms.into_iter().map(|(c, n)| (BigInt::from(c), n)), Vec::new(), 1)
    }

    pub fn zero(base: u64) -> Self {
        SignedPowerSum { base, terms: Vec::new(), prefix: Vec::new(), first_exponent: 1 }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn prefix(&self) -> &[(usize, BigRational)] {
        &self.prefix
    }

    pub fn first_exponent(&self) -> usize {
        self.first_exponent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.prefix.iter().all(|(_, v)| v.is_zero())
    }

    pub fn ratio(&self, term: &PowerTerm) -> BigRational {
        BigRational::new(BigInt::from(term.numerator), BigInt::from(self.base))
    }

    /// Value of the closed form alone, ignoring the prefix.
    pub fn evaluate_terms(&self, e: usize) -> BigRational {
        let n = BigInt::from(self.base).pow(e as u32);
        let num: BigInt = self
            .terms
            .iter()
            .map(|t| &t.coefficient * BigInt::from(t.numerator).pow(e as u32))
            .sum();
        BigRational::new(num, n)
    }

    pub fn evaluate(&self, e: usize) -> BigRational {
        if e < self.first_exponent {
            if let Some((_, v)) = self.prefix.iter().find(|(pe, _)| *pe == e) {
                return v.clone();
            }
        }
        self.evaluate_terms(e)
    }

    /// Coefficient of the `n_i = n` term; the limit as `e → ∞`.
    pub fn leading_coefficient(&self) -> BigInt {
        self.terms
            .iter()
            .find(|t| t.numerator == self.base)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Expands integer coefficients into `±1` terms with repetition, the
    /// presentation `Σ ε_i (n_i/n)^e` with `ε_i ∈ {±1}`.
    pub fn signed_expansion(&self) -> Vec<(i8, u64)> {
        let mut out = Vec::new();
        for t in &self.terms {
            let sign = if t.coefficient.is_negative() { -1 } else { 1 };
            let count = t.coefficient.abs().to_biguint().unwrap_or_else(BigUint::zero);
            let mut k = BigUint::zero();
            while k < count {
                out.push((sign, t.numerator));
                k += BigUint::one();
            }
        }
        out
    }
}

impl fmt::Display for SignedPowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().rev().enumerate() {
            let c = &t.coefficient;
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "({}/{})^e", t.numerator, self.base)?;
        }
        Ok(())
    }
}
