//! Brute-force Ehrhart data for `conv(e_1, ..., e_n, -q)`.
//!
//! Nothing here uses the closed forms for h*. Lattice points of the dilate
//! `tP` are counted directly, the Ehrhart polynomial is interpolated exactly,
//! and h* is read off the Ehrhart series numerator.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::IntPolynomial;
use crate::simplex::{normalized_volume, QSimplex};
use crate::DEFAULT_BUDGET;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("dilate {t} needs {size} candidate points, above the budget of {budget}")]
    BudgetExceeded { t: u64, size: BigUint, budget: u64 },
    #[error("need counts for t = 0..={n}, got {got}")]
    InsufficientCounts { n: usize, got: usize },
    #[error("counts are not the Ehrhart function of a simplex with interior: {0}")]
    InconsistentCounts(String),
    #[error("interpolated value {predicted} at t = {t} differs from counted {counted}")]
    PredictionMismatch {
        t: usize,
        predicted: BigRational,
        counted: BigUint,
    },
}

/// Number of integer points in `tP`.
///
/// A point `x` lies in `tP` when its barycentric coordinates are nonnegative:
/// `t - sum x_i >= 0` and `x_i (1 + sum q) + (t - sum x_i) q_i >= 0`. The box
/// `-t q_i <= x_i <= t` contains every such point.
pub fn count_lattice_points(q: &QSimplex, t: u64, budget: u64) -> Result<BigUint, OracleError> {
    let size: BigUint = q.q().iter().map(|qi| qi * t + t + 1u8).product();
    let over = || OracleError::BudgetExceeded {
        t,
        size: size.clone(),
        budget,
    };
    if size > BigUint::from(budget) {
        return Err(over());
    }
    // the box fits the budget, so t*q_i and the volume are small enough for i128
    let qs: Vec<i128> = q
        .q()
        .iter()
        .map(|x| x.to_i128().ok_or_else(over))
        .collect::<Result<_, _>>()?;
    let vol = normalized_volume(q).to_i128().ok_or_else(over)?;
    let t = t as i128;
    let n = qs.len();

    let last = n - 1;
    let outer: Vec<i128> = (-t * qs[last]..=t).collect();
    let total: u64 = outer
        .into_par_iter()
        .map(|x_last| {
            let mut x = vec![0i128; n];
            x[last] = x_last;
            count_inner(&qs, vol, t, &mut x, 0)
        })
        .sum();
    Ok(BigUint::from(total))
}

fn count_inner(qs: &[i128], vol: i128, t: i128, x: &mut [i128], i: usize) -> u64 {
    if i == qs.len() - 1 {
        let rest = t - x.iter().sum::<i128>();
        let inside = rest >= 0 && x.iter().zip(qs).all(|(&xi, &qi)| xi * vol + rest * qi >= 0);
        return inside as u64;
    }
    let mut total = 0;
    for xi in -t * qs[i]..=t {
        x[i] = xi;
        total += count_inner(qs, vol, t, x, i + 1);
    }
    total
}

/// `h*_k = sum_{j=0}^{k} (-1)^j C(n+1, j) counts[k-j]` for `k = 0..=n`.
///
/// The counts must come from an `n`-simplex whose interior contains a lattice
/// point, so `counts[0] = 1`, every `h*_k >= 0` and `h*_n >= 1`.
pub fn hstar_from_counts(counts: &[BigUint], n: usize) -> Result<IntPolynomial, OracleError> {
    if counts.len() < n + 1 {
        return Err(OracleError::InsufficientCounts {
            n,
            got: counts.len(),
        });
    }
    if !counts[0].is_one() {
        return Err(OracleError::InconsistentCounts(format!(
            "counts[0] = {}, expected 1",
            counts[0]
        )));
    }
    let mut h = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = BigInt::zero();
        for j in 0..=k {
            let term = BigInt::from(binomial(n as u64 + 1, j as u64))
                * BigInt::from(counts[k - j].clone());
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if acc.is_negative() {
            return Err(OracleError::InconsistentCounts(format!(
                "h*_{k} = {acc} is negative"
            )));
        }
        h.push(acc);
    }
    if h[n].is_zero() {
        return Err(OracleError::InconsistentCounts(format!(
            "h*_{n} = 0, no interior lattice point"
        )));
    }
    Ok(IntPolynomial::new(h))
}

/// Monomial coefficients (constant term first) of the degree `<= n`
/// polynomial through `(t, counts[t])` for `t = 0..=n`.
pub fn ehrhart_polynomial(counts: &[BigUint], n: usize) -> Result<Vec<BigRational>, OracleError> {
    if counts.len() < n + 1 {
        return Err(OracleError::InsufficientCounts {
            n,
            got: counts.len(),
        });
    }
    // forward differences give the binomial basis: p(t) = sum_k D^k(0) C(t, k)
    let mut diffs: Vec<BigInt> = counts[..=n]
        .iter()
        .map(|c| BigInt::from(c.clone()))
        .collect();
    let mut leading = Vec::with_capacity(n + 1);
    for k in 0..=n {
        leading.push(diffs[0].clone());
        for i in 0..n - k {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    // falling[j] holds the monomial coefficients of t(t-1)...(t-k+1)
    let mut falling = vec![BigInt::one()];
    let mut factorial = BigInt::one();
    for (k, dk) in leading.iter().enumerate() {
        if k > 0 {
            factorial *= k;
            let shift = BigInt::from(k - 1);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (j, c) in falling.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * &shift;
            }
            falling = next;
        }
        for (j, c) in falling.iter().enumerate() {
            coeffs[j] += BigRational::new(dk * c, factorial.clone());
        }
    }
    Ok(coeffs)
}

pub fn evaluate_ehrhart(coeffs: &[BigRational], t: u64) -> BigRational {
    let t = BigRational::from_integer(BigInt::from(t));
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * &t + c)
}

/// Counts, interpolated Ehrhart polynomial and h* for one simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartTable {
    pub q: QSimplex,
    pub counts: Vec<BigUint>,
    pub ehrhart_coeffs: Vec<BigRational>,
    pub hstar: IntPolynomial,
}

impl EhrhartTable {
    /// Counts dilates `t = 0..=t_max` (at least `n + 1`, so one count is
    /// out of sample) and checks the interpolant against every extra count.
    pub fn compute(q: &QSimplex, t_max: Option<usize>, budget: u64) -> Result<Self, OracleError> {
        let n = q.dim();
        let t_max = t_max.unwrap_or(n + 1).max(n);
        let counts = (0..=t_max as u64)
            .map(|t| count_lattice_points(q, t, budget))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_counts(q.clone(), counts)
    }

    pub fn compute_default(q: &QSimplex) -> Result<Self, OracleError> {
        Self::compute(q, None, DEFAULT_BUDGET)
    }

    pub fn from_counts(q: QSimplex, counts: Vec<BigUint>) -> Result<Self, OracleError> {
        let n = q.dim();
        if counts.len() < n + 1 {
            return Err(OracleError::InsufficientCounts {
                n,
                got: counts.len(),
            });
        }
        if let Some(t) = (1..counts.len()).find(|&t| counts[t] <= counts[t - 1]) {
            return Err(OracleError::InconsistentCounts(format!(
                "counts not strictly increasing at t = {t}"
            )));
        }
        let hstar = hstar_from_counts(&counts, n)?;
        let ehrhart_coeffs = ehrhart_polynomial(&counts, n)?;
        for (t, counted) in counts.iter().enumerate().skip(n + 1) {
            let predicted = evaluate_ehrhart(&ehrhart_coeffs, t as u64);
            if predicted != BigRational::from_integer(BigInt::from(counted.clone())) {
                return Err(OracleError::PredictionMismatch {
                    t,
                    predicted,
                    counted: counted.clone(),
                });
            }
        }
        Ok(Self {
            q,
            counts,
            ehrhart_coeffs,
            hstar,
        })
    }
}

pub fn is_ehrhart_positive(table: &EhrhartTable) -> bool {
    table.ehrhart_coeffs.iter().all(Signed::is_positive)
}
