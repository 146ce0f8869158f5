//! Divisor systems for numeral systems and the reflexive simplices they
//! produce.
//!
//! A strictly increasing `d = (d_0, d_1, ...)` is a divisor system for the
//! place values `a` when, for every `n >= 1`, each `d_i` with `i < n` divides
//! `a_n` and `1 + sum_{i<n} a_n / d_i = a_n`. All checks here run over an
//! explicit finite prefix.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numsys::{self, NumeralSystemSpec, NumsysError};
use crate::simplex::{self, QSimplex, SimplexError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReflexiveError {
    #[error("divisor entries must be positive and strictly increasing")]
    NotIncreasing,
    #[error("divisor prefix has {len} entries, {needed} needed")]
    InsufficientPrefix { len: usize, needed: usize },
    #[error("n must be at least 1")]
    ZeroDimension,
    #[error("{0} is not a mixed radix system; supply divisors explicitly")]
    NotMixedRadix(String),
    #[error("divisor conditions fail at n = {n}")]
    ConditionsFail { n: usize },
    #[error("b = {b} must be below a_n = {bound}")]
    OutOfRange { b: BigUint, bound: BigUint },
    #[error(transparent)]
    Numsys(#[from] NumsysError),
    #[error(transparent)]
    Simplex(#[from] SimplexError),
}

/// A finite prefix `d_0, ..., d_(m-1)` of a candidate divisor system for `system`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorPrefix {
    system: NumeralSystemSpec,
    d: Vec<BigUint>,
}

impl DivisorPrefix {
    pub fn new(system: NumeralSystemSpec, d: Vec<BigUint>) -> Result<Self, ReflexiveError> {
        if d.first().is_some_and(Zero::is_zero) || d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ReflexiveError::NotIncreasing);
        }
        Ok(Self { system, d })
    }

    pub fn system(&self) -> &NumeralSystemSpec {
        &self.system
    }

    pub fn d(&self) -> &[BigUint] {
        &self.d
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }
}

fn conditions_hold(a_n: &BigUint, d: &[BigUint]) -> bool {
    let mut total = BigUint::one();
    for di in d {
        let (q, r) = a_n.div_rem(di);
        if !r.is_zero() {
            return false;
        }
        total += q;
    }
    &total == a_n
}

/// First `n` in `1..=n_max` at which the conditions fail.
fn first_failure(dp: &DivisorPrefix, n_max: usize) -> Result<Option<usize>, ReflexiveError> {
    if dp.d.len() < n_max {
        return Err(ReflexiveError::InsufficientPrefix {
            len: dp.d.len(),
            needed: n_max,
        });
    }
    let a = dp.system.places(n_max + 1)?;
    Ok((1..=n_max).find(|&n| !conditions_hold(&a[n], &dp.d[..n])))
}

pub fn check_divisor_system(dp: &DivisorPrefix, n_max: usize) -> Result<bool, ReflexiveError> {
    Ok(first_failure(dp, n_max)?.is_none())
}

/// Candidates `d_k = a_(k+1) / (c_(k+1) - 1)` for `k < n_max`, as exact rationals.
pub fn mixed_radix_candidates(
    s: &NumeralSystemSpec,
    n_max: usize,
) -> Result<Vec<BigRational>, ReflexiveError> {
    let c =
        numsys::radices(s, n_max)?.ok_or_else(|| ReflexiveError::NotMixedRadix(s.to_string()))?;
    let a = s.places(n_max + 1)?;
    Ok((0..n_max)
        .map(|k| {
            let num = BigInt::from(a[k + 1].clone());
            let den = BigInt::from(c[k + 1].clone()) - BigInt::one();
            if den.is_zero() {
                // radix 1 gives no candidate; report it as 0/1 so it never passes
                BigRational::zero()
            } else {
                BigRational::new(num, den)
            }
        })
        .collect())
}

/// Index and value of the first candidate that is not a positive integer.
pub fn first_nonintegral_candidate(
    s: &NumeralSystemSpec,
    n_max: usize,
) -> Result<Option<(usize, BigRational)>, ReflexiveError> {
    Ok(mixed_radix_candidates(s, n_max)?
        .into_iter()
        .enumerate()
        .find(|(_, x)| !x.is_integer() || x <= &BigRational::zero()))
}

/// The unique divisor system of a mixed radix system, up to `n_max`, or
/// `None` when it does not exist.
pub fn mixed_radix_divisor_system(
    s: &NumeralSystemSpec,
    n_max: usize,
) -> Result<Option<DivisorPrefix>, ReflexiveError> {
    let candidates = mixed_radix_candidates(s, n_max)?;
    let mut d = Vec::with_capacity(n_max);
    for x in candidates {
        if !x.is_integer() || x <= BigRational::zero() {
            return Ok(None);
        }
        d.push(x.to_integer().to_biguint().expect("positive"));
    }
    let Ok(dp) = DivisorPrefix::new(s.clone(), d) else {
        return Ok(None);
    };
    Ok(check_divisor_system(&dp, n_max)?.then_some(dp))
}

/// `q = (a_n/d_(n-1), ..., a_n/d_0)`.
pub fn q_from_divisors(dp: &DivisorPrefix, n: usize) -> Result<QSimplex, ReflexiveError> {
    if n == 0 {
        return Err(ReflexiveError::ZeroDimension);
    }
    if let Some(bad) = first_failure(dp, n)? {
        return Err(ReflexiveError::ConditionsFail { n: bad });
    }
    let a_n = numsys::place_value(&dp.system, n)?;
    Ok(QSimplex::new(
        dp.d[..n].iter().rev().map(|di| &a_n / di).collect(),
    )?)
}

/// `omega(b)` through `omega(b) = omega(b') + b_(n-1) - floor(b / d_(n-1))`,
/// where `b_(n-1)` is the top digit of `b` and `b' = b - b_(n-1) a_(n-1)`.
pub fn omega_recursive(
    dp: &DivisorPrefix,
    n: usize,
    b: &BigUint,
) -> Result<BigUint, ReflexiveError> {
    if n == 0 {
        return Err(ReflexiveError::ZeroDimension);
    }
    if let Some(bad) = first_failure(dp, n)? {
        return Err(ReflexiveError::ConditionsFail { n: bad });
    }
    let a = dp.system.places(n + 1)?;
    if b >= &a[n] {
        return Err(ReflexiveError::OutOfRange {
            b: b.clone(),
            bound: a[n].clone(),
        });
    }
    let base = q_from_divisors(dp, 1)?;
    let mut rest = b.clone();
    let mut acc = BigInt::zero();
    for k in (2..=n).rev() {
        let (digit, rem) = rest.div_rem(&a[k - 1]);
        acc += BigInt::from(digit) - BigInt::from(&rest / &dp.d[k - 1]);
        rest = rem;
    }
    acc += BigInt::from(simplex::omega(&base, &rest)?);
    Ok(acc.to_biguint().expect("omega is nonnegative"))
}
