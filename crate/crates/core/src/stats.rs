//! Permutation statistics (descents, maximal descent, lexicographic
//! unranking) and digit statistics of base-r numerals (support, average
//! weighted height, nonascents).
//!
//! A descent of `pi` is a position `i` with `pi_i > pi_(i+1)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::numsys::{self, NumeralSystemSpec};
use crate::poly::IntPolynomial;

/// Largest `n` for which `S_n` is enumerated unless a caller raises it.
pub const DEFAULT_PERMUTATION_BUDGET: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("rank {rank} is out of range for permutations of {n} letters")]
    RankOutOfRange { n: usize, rank: BigUint },
    #[error("enumerating S_{n} exceeds the budget of n <= {budget}")]
    BudgetExceeded { n: usize, budget: usize },
    #[error("{b} does not fit in {width} base-{r} digits")]
    DigitsOutOfRange { b: BigUint, r: u32, width: usize },
    #[error("n must be positive")]
    EmptyPermutation,
    #[error(transparent)]
    Numsys(#[from] numsys::NumsysError),
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    letters: Vec<usize>,
}

impl Permutation {
    pub fn new(letters: Vec<usize>) -> Result<Self, StatsError> {
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for &l in &letters {
            if l == 0 || l > n || std::mem::replace(&mut seen[l], true) {
                return Err(StatsError::NotAPermutation(n));
            }
        }
        Ok(Self { letters })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            letters: (1..=n).collect(),
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Lehmer code: entry `k` counts the later letters smaller than `pi_k`.
    pub fn lehmer_code(&self) -> Vec<usize> {
        self.letters
            .iter()
            .enumerate()
            .map(|(k, &l)| self.letters[k + 1..].iter().filter(|&&m| m < l).count())
            .collect()
    }

    /// Position in lexicographic order, counting from 0.
    pub fn lex_rank(&self) -> BigUint {
        let n = self.len();
        let mut rank = BigUint::zero();
        let mut fact = BigUint::one();
        // Horner over the factorial base, least significant (rightmost) first
        for (k, c) in self.lehmer_code().into_iter().enumerate().rev() {
            rank += &fact * c;
            fact *= n - k;
        }
        rank
    }

    /// Advances to the lexicographic successor; `false` at the last one.
    fn next_lex(&mut self) -> bool {
        let v = &mut self.letters;
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return false;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() > 9 { " " } else { "" };
        let parts: Vec<String> = self.letters.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DescentStats {
    pub des: usize,
    /// Largest descent position (1-based); 0 when there is none.
    pub maxdes: usize,
}

pub fn descent_stats(p: &Permutation) -> DescentStats {
    let mut des = 0;
    let mut maxdes = 0;
    for (i, w) in p.letters.windows(2).enumerate() {
        if w[0] > w[1] {
            des += 1;
            maxdes = i + 1;
        }
    }
    DescentStats { des, maxdes }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// The permutation of rank `b` (from 0) in lexicographic order on `S_n`,
/// read off the factoradic digits of `b` as a Lehmer code.
pub fn perm_of_lex_rank(n: usize, b: &BigUint) -> Result<Permutation, StatsError> {
    if n == 0 {
        return Err(StatsError::EmptyPermutation);
    }
    if b >= &factorial(n) {
        return Err(StatsError::RankOutOfRange { n, rank: b.clone() });
    }
    // Factoradic places (i+1)! for i < n-1; the Lehmer entry at position k
    // (0-based) is the digit of weight (n-1-k)!, and the last entry is 0.
    let digits = numsys::encode(&NumeralSystemSpec::factoradic(), b, Some(n - 1))?;
    let mut available: Vec<usize> = (1..=n).collect();
    let letters = (0..n)
        .map(|k| {
            let weight_place = n - 1 - k;
            let c = match weight_place {
                0 => 0,
                w => digits.digit(w - 1).to_usize().unwrap(),
            };
            available.remove(c)
        })
        .collect();
    Ok(Permutation { letters })
}

fn check_budget(n: usize, budget: usize) -> Result<(), StatsError> {
    if n == 0 {
        return Err(StatsError::EmptyPermutation);
    }
    if n > budget {
        return Err(StatsError::BudgetExceeded { n, budget });
    }
    Ok(())
}

/// Calls `f` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation)) {
    let mut p = Permutation::identity(n);
    loop {
        f(&p);
        if !p.next_lex() {
            break;
        }
    }
}

/// Descent and max-descent distributions over `S_n` by full enumeration.
fn enumerate_descent_counts(n: usize) -> (Vec<u64>, Vec<u64>) {
    let mut des = vec![0u64; n];
    let mut maxdes = vec![0u64; n];
    for_each_permutation(n, |p| {
        let s = descent_stats(p);
        des[s.des] += 1;
        maxdes[s.maxdes] += 1;
    });
    (des, maxdes)
}

/// Eulerian polynomial `A_n(z) = sum_{pi in S_n} z^des(pi)`, by enumeration.
pub fn eulerian_poly(n: usize) -> Result<IntPolynomial, StatsError> {
    eulerian_poly_with_budget(n, DEFAULT_PERMUTATION_BUDGET)
}

pub fn eulerian_poly_with_budget(n: usize, budget: usize) -> Result<IntPolynomial, StatsError> {
    check_budget(n, budget)?;
    Ok(IntPolynomial::from_counts(&enumerate_descent_counts(n).0))
}

/// Max-descent polynomial `B_n(z) = sum_{pi in S_n} z^maxdes(pi)` by
/// enumeration; an independent check on [`maxdes_poly`].
pub fn maxdes_poly_enumerated(n: usize, budget: usize) -> Result<IntPolynomial, StatsError> {
    check_budget(n, budget)?;
    Ok(IntPolynomial::from_counts(&enumerate_descent_counts(n).1))
}

/// `B_n(z)` from its coefficients: `B(n,0) = 1`, `B(n,1) = n-1` and
/// `B(n,k) = (n)_(k-1) (n-k)` for `k > 1`, with `(n)_j` the falling factorial.
pub fn maxdes_poly(n: usize) -> IntPolynomial {
    assert!(n >= 1, "maxdes_poly requires n >= 1");
    let mut coeffs = vec![BigInt::one()];
    if n >= 2 {
        coeffs.push(BigInt::from(n - 1));
    }
    let mut falling = BigInt::from(n); // (n)_(k-1) for k = 2
    for k in 2..n {
        coeffs.push(&falling * (n - k));
        falling *= n - k + 1;
    }
    IntPolynomial::new(coeffs)
}

/// `B_n(z) = 1 - z + n z B_(n-1)(z)` for `n > 1`, from `B_1 = 1`.
pub fn maxdes_poly_recursive(n: usize) -> IntPolynomial {
    assert!(n >= 1, "maxdes_poly_recursive requires n >= 1");
    let one_minus_z = IntPolynomial::from_i64s(&[1, -1]);
    (2..=n).fold(IntPolynomial::one(), |b, m| {
        &one_minus_z + &b.shift(1).scale(&BigInt::from(m))
    })
}

/// `B_n(z) = 1 + sum_{k=1}^{n-1} n! / ((n-k)! + (n-k-1)!) z^k`.
pub fn maxdes_poly_closed_form(n: usize) -> IntPolynomial {
    assert!(n >= 1, "maxdes_poly_closed_form requires n >= 1");
    let nf = BigInt::from(factorial(n));
    let mut coeffs = vec![BigInt::one()];
    for k in 1..n {
        let denom = BigInt::from(factorial(n - k) + factorial(n - k - 1));
        debug_assert!((&nf % &denom).is_zero());
        coeffs.push(&nf / denom);
    }
    IntPolynomial::new(coeffs)
}

/// Support, average weighted heights and nonascents of a base-r numeral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitStats {
    pub support: BTreeSet<usize>,
    pub heights: BTreeMap<usize, BigRational>,
    pub nonascents: BTreeSet<usize>,
}

impl DigitStats {
    pub fn nasc(&self) -> usize {
        self.nonascents.len()
    }

    pub fn supp(&self) -> usize {
        self.support.len()
    }
}

/// Digit statistics of `b` written with exactly `width` base-`r` digits.
///
/// For a supported place `i > 0` the height is
/// `(1/i) * sum_{j < i} (d_i - d_j) r^j`; place 0 has height 1 when its digit
/// is nonzero. Nonascents are the supported places of nonnegative height.
pub fn digit_stats(b: &BigUint, r: u32, width: usize) -> Result<DigitStats, StatsError> {
    let system = NumeralSystemSpec::base(r)?;
    let numeral = numsys::encode(&system, b, Some(width)).map_err(|e| match e {
        numsys::NumsysError::TooLarge { .. } => StatsError::DigitsOutOfRange {
            b: b.clone(),
            r,
            width,
        },
        other => other.into(),
    })?;
    let digits: Vec<BigInt> = numeral
        .digits()
        .iter()
        .map(|d| BigInt::from(d.clone()))
        .collect();
    let radix = BigInt::from(r);

    let mut stats = DigitStats {
        support: BTreeSet::new(),
        heights: BTreeMap::new(),
        nonascents: BTreeSet::new(),
    };
    for (i, d) in digits.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let height = if i == 0 {
            BigRational::one()
        } else {
            let mut weight = BigInt::one();
            let mut sum = BigInt::zero();
            for dj in &digits[..i] {
                sum += (d - dj) * &weight;
                weight *= &radix;
            }
            BigRational::new(sum, BigInt::from(i))
        };
        stats.support.insert(i);
        if !height.is_negative() {
            stats.nonascents.insert(i);
        }
        stats.heights.insert(i, height);
    }
    Ok(stats)
}
