//! Behavior of closed forms as the rank grows: series over `e` and the limit.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::measure::{closed_form, CoverScenario};
use crate::powersum::SignedPowerSum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesValue {
    Finite(BigRational),
    Infinite,
}

impl SeriesValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, SeriesValue::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            SeriesValue::Finite(v) => Some(v),
            SeriesValue::Infinite => None,
        }
    }
}

impl fmt::Display for SeriesValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesValue::Finite(v) => write!(f, "{v}"),
            SeriesValue::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSumReport {
    pub form: SignedPowerSum,
    pub start: usize,
    pub value: SeriesValue,
}

/// `Σ_{e ≥ start} form(e)`, summing each term as a geometric series.
///
/// Diverges exactly when the `n_i = n` term has a positive coefficient; a
/// negative one would make the form negative for large `e` and is rejected.
pub fn omega_sum(form: &SignedPowerSum, start: usize) -> Result<OmegaSumReport> {
    if start == 0 {
        return Err(Error::ZeroRank);
    }
    let top = form.leading_coefficient();
    if top.is_negative() {
        return Err(Error::InvalidForm(format!("coefficient {top} of the (n/n)^e term is negative")));
    }
    let value = if top.is_positive() {
        SeriesValue::Infinite
    } else {
        let from = start.max(form.first_exponent());
        let mut sum: BigRational = (start..from).map(|e| form.evaluate(e)).sum();
        for t in form.terms() {
            let r = form.ratio(t);
            // Σ_{e ≥ from} r^e = r^from / (1 - r)
            let geometric = r.pow(from as i32) / (BigRational::one() - &r);
            sum += BigRational::from_integer(t.coefficient.clone()) * geometric;
        }
        SeriesValue::Finite(sum)
    };
    Ok(OmegaSumReport { form: form.clone(), start, value })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltralimitReport {
    pub form: SignedPowerSum,
    pub value: u8,
}

/// `lim_{e→∞} form(e)`: only the `n_i = n` term survives.
pub fn ultralimit(form: &SignedPowerSum) -> Result<UltralimitReport> {
    let c = form.leading_coefficient();
    let value = if c.is_zero() {
        0
    } else if c == BigInt::one() {
        1
    } else {
        return Err(Error::NotZeroOne(c.to_string()));
    };
    Ok(UltralimitReport { form: form.clone(), value })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericReport {
    /// Target whose class is `[G]`.
    pub target: String,
    /// Ultralimit of every target, in scenario order.
    pub ultralimits: Vec<(String, u8)>,
}

impl GenericReport {
    /// Exactly one target has limit 1, and it is the class of `G`.
    pub fn is_consistent(&self) -> bool {
        let ones: Vec<&str> =
            self.ultralimits.iter().filter(|(_, v)| *v == 1).map(|(n, _)| n.as_str()).collect();
        ones == [self.target.as_str()]
    }
}

/// Finds the target whose ultralimit is 1 and checks that it is `[G]`.
pub fn generic_target(s: &CoverScenario) -> Result<GenericReport> {
    if !s.is_split() {
        return Err(Error::NotSplit);
    }
    let whole = s.lattice().whole_node();
    let target = s.targets().iter().find(|t| t.node == whole).ok_or(Error::GenericMissing)?.name.clone();
    let mut ultralimits = Vec::with_capacity(s.targets().len());
    for t in s.targets() {
        let f = closed_form(s, &t.name)?;
        ultralimits.push((t.name.clone(), ultralimit(&f)?.value));
    }
    Ok(GenericReport { target, ultralimits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{scenario_spec, SCENARIO_IDS};
    use crate::limits::Limits;
    use crate::measure::validate_scenario;

    fn load(id: &str) -> CoverScenario {
        validate_scenario(&scenario_spec(id).unwrap(), &Limits::default()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn squares_series() {
        let s = load("squares");
        let trivial = closed_form(&s, "trivial").unwrap();
        let full = closed_form(&s, "full").unwrap();
        assert_eq!(omega_sum(&trivial, 1).unwrap().value, SeriesValue::Finite(q(1, 1)));
        assert_eq!(omega_sum(&trivial, 2).unwrap().value, SeriesValue::Finite(q(1, 2)));
        assert!(omega_sum(&full, 1).unwrap().value.is_infinite());
        assert_eq!(omega_sum(&SignedPowerSum::zero(3), 1).unwrap().value, SeriesValue::Finite(q(0, 1)));
        assert_eq!(ultralimit(&trivial).unwrap().value, 0);
        assert_eq!(ultralimit(&full).unwrap().value, 1);
        assert_eq!(ultralimit(&SignedPowerSum::from_terms(4, [(1, 4)]).unwrap()).unwrap().value, 1);
    }

    #[test]
    fn invalid_forms() {
        let neg = SignedPowerSum::from_terms(2, [(-1, 2)]).unwrap();
        assert!(matches!(omega_sum(&neg, 1), Err(Error::InvalidForm(_))));
        assert!(matches!(ultralimit(&neg), Err(Error::NotZeroOne(_))));
        let two = SignedPowerSum::from_terms(2, [(2, 2)]).unwrap();
        assert!(matches!(ultralimit(&two), Err(Error::NotZeroOne(_))));
    }

    #[test]
    fn prefix_values_enter_the_series() {
        let f = SignedPowerSum::new(5, [(BigInt::from(5), 1)], vec![(1, q(1, 1))], 2).unwrap();
        // 1 + Σ_{e≥2} 5^{1-e} = 1 + 1/4
        assert_eq!(omega_sum(&f, 1).unwrap().value, SeriesValue::Finite(q(5, 4)));
        assert_eq!(omega_sum(&f, 3).unwrap().value, SeriesValue::Finite(q(1, 20)));
    }

    #[test]
    fn telescoping() {
        let f = closed_form(&load("fifth-root"), "image").unwrap();
        for s in 1..6 {
            let a = omega_sum(&f, s).unwrap().value.finite().unwrap().clone();
            let b = omega_sum(&f, s + 1).unwrap().value.finite().unwrap().clone();
            assert_eq!(a, f.evaluate(s) + b);
        }
    }

    #[test]
    fn generic_is_the_whole_group() {
        for id in SCENARIO_IDS {
            let s = load(id);
            if !s.is_split() {
                assert_eq!(generic_target(&s).unwrap_err(), Error::NotSplit);
                continue;
            }
            let all = s.with_all_regular_targets();
            let r = generic_target(&all).unwrap();
            assert!(r.is_consistent(), "{id}: {r:?}");
            let total: u32 = r.ultralimits.iter().map(|(_, v)| *v as u32).sum();
            assert_eq!(total, 1);
        }
        let sq = load("squares");
        assert_eq!(generic_target(&sq).unwrap().target, "full");
        let only = sq.with_targets(vec![("trivial".into(), 0)]).unwrap();
        assert_eq!(generic_target(&only).unwrap_err(), Error::GenericMissing);
    }
}
