//! The simplices `conv(e_1, ..., e_n, -q)` for weakly increasing positive
//! integer vectors `q`.
//!
//! The h*-polynomial is `sum_{b=0}^{q_1+...+q_n} z^omega(b)` with
//! `omega(b) = b - sum_i floor(q_i b / (1 + q_1 + ... + q_n))`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplexError {
    #[error("q must be nonempty")]
    Empty,
    #[error("entries of q must be positive")]
    NonPositive,
    #[error("q must be weakly increasing")]
    NotWeaklyIncreasing,
    #[error("b = {b} is outside 0..={max}")]
    OutOfRange { b: BigUint, max: BigUint },
}

/// A weakly increasing vector of positive integers `q = (q_1, ..., q_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSimplex {
    q: Vec<BigUint>,
}

impl QSimplex {
    pub fn new(q: Vec<BigUint>) -> Result<Self, SimplexError> {
        if q.is_empty() {
            return Err(SimplexError::Empty);
        }
        if q.iter().any(Zero::is_zero) {
            return Err(SimplexError::NonPositive);
        }
        if q.windows(2).any(|w| w[0] > w[1]) {
            return Err(SimplexError::NotWeaklyIncreasing);
        }
        Ok(Self { q })
    }

    pub fn from_u64s(q: &[u64]) -> Result<Self, SimplexError> {
        Self::new(q.iter().map(|&x| BigUint::from(x)).collect())
    }

    pub fn q(&self) -> &[BigUint] {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    pub fn q_sum(&self) -> BigUint {
        self.q.iter().sum()
    }
}

impl fmt::Display for QSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.q.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `n! vol = 1 + q_1 + ... + q_n`.
pub fn normalized_volume(s: &QSimplex) -> BigUint {
    s.q_sum() + 1u8
}

/// `q_i` divides `1 + sum_{j != i} q_j` for every `i`.
pub fn is_reflexive(s: &QSimplex) -> bool {
    let vol = normalized_volume(s);
    s.q.iter().all(|qi| (&vol - qi).is_multiple_of(qi))
}

pub fn omega(s: &QSimplex, b: &BigUint) -> Result<BigUint, SimplexError> {
    let max = s.q_sum();
    if b > &max {
        return Err(SimplexError::OutOfRange { b: b.clone(), max });
    }
    let vol = max + 1u8;
    let floors: BigUint = s.q.iter().map(|qi| (qi * b) / &vol).sum();
    Ok(b - floors)
}

/// Machine-word evaluation of `omega` for volumes below `2^64`.
struct SmallOmega {
    q: Vec<u128>,
    vol: u128,
}

impl SmallOmega {
    fn new(s: &QSimplex) -> Option<Self> {
        let vol = normalized_volume(s).to_u64()? as u128;
        let q =
            s.q.iter()
                .map(|x| x.to_u64().map(u128::from))
                .collect::<Option<_>>()?;
        Some(Self { q, vol })
    }

    fn omega(&self, b: u128) -> usize {
        let floors: u128 = self.q.iter().map(|&qi| qi * b / self.vol).sum();
        (b - floors) as usize
    }
}

const CHUNK: u128 = 1 << 14;

/// h*-polynomial by summing `z^omega(b)` over `0 <= b <= q_1 + ... + q_n`.
/// Cost is linear in the normalized volume.
pub fn hstar(s: &QSimplex) -> IntPolynomial {
    let n = s.dim();
    let Some(small) = SmallOmega::new(s) else {
        // volumes this large cannot be enumerated in practice; kept exact
        let mut counts = vec![0u64; n + 1];
        let mut b = BigUint::zero();
        let max = s.q_sum();
        while b <= max {
            let w = omega(s, &b).unwrap().to_usize().unwrap();
            counts[w] += 1;
            b += 1u8;
        }
        return IntPolynomial::from_counts(&counts);
    };
    let chunks = small.vol.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = vec![0u64; n + 1];
            for b in c * CHUNK..((c + 1) * CHUNK).min(small.vol) {
                local[small.omega(b)] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    IntPolynomial::from_counts(&counts)
}

/// Weight `(1, q_1, ..., q_n)`, its gcd (the factor), and the reduced weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightData {
    pub weight: Vec<BigUint>,
    pub factor: BigUint,
    pub reduced: Vec<BigUint>,
}

pub fn weight_factor(s: &QSimplex) -> WeightData {
    let weight: Vec<BigUint> = std::iter::once(BigUint::one())
        .chain(s.q.iter().cloned())
        .collect();
    let factor = weight.iter().fold(BigUint::zero(), |g, w| g.gcd(w));
    let reduced = weight.iter().map(|w| w / &factor).collect();
    WeightData {
        weight,
        factor,
        reduced,
    }
}
