//! Base-r simplices: `q = (r-1)(1, r, r^2, ..., r^(n-1))`, normalized volume `r^n`.
//!
//! Their h*-polynomials come from three routes: nonascent counts over base-r
//! numerals, sections of `f_(r,n) = (1 + z + ... + z^(r-1))^n`, and
//! composition counts.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::poly::{interlaces, IntPolynomial, PolyError};
use crate::simplex::QSimplex;
use crate::stats::{digit_stats, StatsError};
use crate::DEFAULT_BUDGET;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BaseRError {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("enumerating {size} numerals exceeds the budget of {budget}")]
    BudgetExceeded { size: BigUint, budget: u64 },
    #[error("expected {expected} polynomials, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("coefficient index {k} exceeds dimension {n}")]
    CoefficientOutOfRange { k: usize, n: usize },
    #[error("sections do not reconstruct f")]
    ReconstructionFailed,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Stats(#[from] StatsError),
}

fn validate(r: u32, n: usize) -> Result<(), BaseRError> {
    if r < 2 {
        return Err(BaseRError::InvalidBase(r));
    }
    if n == 0 {
        return Err(BaseRError::ZeroDimension);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRSimplex {
    r: u32,
    n: usize,
    q: QSimplex,
}

impl BaseRSimplex {
    pub fn new(r: u32, n: usize) -> Result<Self, BaseRError> {
        validate(r, n)?;
        let mut q = Vec::with_capacity(n);
        let mut entry = BigUint::from(r - 1);
        for _ in 0..n {
            q.push(entry.clone());
            entry *= r;
        }
        let q = QSimplex::new(q).expect("positive and increasing");
        Ok(Self { r, n, q })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &QSimplex {
        &self.q
    }

    pub fn volume(&self) -> BigUint {
        BigUint::from(self.r).pow(self.n as u32)
    }
}

/// `(1 + z + ... + z^(r-1))^n`.
pub fn f_poly(r: u32, n: usize) -> IntPolynomial {
    IntPolynomial::new(vec![BigInt::one(); r as usize]).pow(n as u32)
}

pub fn hstar_nasc(r: u32, n: usize) -> Result<IntPolynomial, BaseRError> {
    hstar_nasc_with_budget(r, n, DEFAULT_BUDGET)
}

/// `sum_{b < r^n} z^nasc(b)`.
pub fn hstar_nasc_with_budget(r: u32, n: usize, budget: u64) -> Result<IntPolynomial, BaseRError> {
    validate(r, n)?;
    let size = BigUint::from(r).pow(n as u32);
    let total = match size.to_u64() {
        Some(s) if s <= budget => s,
        _ => return Err(BaseRError::BudgetExceeded { size, budget }),
    };
    const CHUNK: u64 = 1 << 12;
    let counts = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| -> Result<Vec<u64>, StatsError> {
            let mut local = vec![0u64; n + 1];
            for b in c * CHUNK..((c + 1) * CHUNK).min(total) {
                local[digit_stats(&BigUint::from(b), r, n)?.nasc()] += 1;
            }
            Ok(local)
        })
        .try_reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    Ok(IntPolynomial::from_counts(&counts))
}

/// `f^<r-1,0> + z * sum_{l=1}^{r-2} f^<r-1,l>`.
pub fn hstar_sections(r: u32, n: usize) -> Result<IntPolynomial, BaseRError> {
    let (a, b) = symmetric_decomposition(r, n)?;
    Ok(a + b.shift(1))
}

/// `(a, b)` with `a = f^<r-1,0>` and `b = sum_{l>=1} f^<r-1,l>`.
pub fn symmetric_decomposition(
    r: u32,
    n: usize,
) -> Result<(IntPolynomial, IntPolynomial), BaseRError> {
    validate(r, n)?;
    let m = (r - 1) as usize;
    let f = f_poly(r, n);
    let a = f.section(m, 0)?;
    let b = (1..m)
        .map(|l| f.section(m, l))
        .sum::<Result<IntPolynomial, _>>()?;
    Ok((a, b))
}

/// Ordered `t`-tuples with parts in `1..=max_part` summing to `m`.
pub fn comp_count(t: usize, m: i64, max_part: u64) -> BigUint {
    if m < t as i64 || max_part == 0 || m as u128 > t as u128 * max_part as u128 {
        return BigUint::zero();
    }
    let m = m as usize;
    let max_part = max_part as usize;
    let mut ways = vec![BigUint::zero(); m + 1];
    ways[0] = BigUint::one();
    for _ in 0..t {
        let mut next = vec![BigUint::zero(); m + 1];
        for (s, w) in ways.iter().enumerate().filter(|(_, w)| !w.is_zero()) {
            for part in 1..=max_part.min(m - s) {
                next[s + part] += w;
            }
        }
        ways = next;
    }
    ways.swap_remove(m)
}

/// `[z^k] h* = comp_n(n + k(r-1); [r]) + sum_{l=1}^{r-2} comp_n(n + (k-1)(r-1) + l; [r])`.
pub fn hstar_coeff_via_comps(r: u32, n: usize, k: usize) -> Result<BigUint, BaseRError> {
    validate(r, n)?;
    if k > n {
        return Err(BaseRError::CoefficientOutOfRange { k, n });
    }
    let (ni, ki, m) = (n as i64, k as i64, (r - 1) as i64);
    let first = comp_count(n, ni + ki * m, r as u64);
    let rest: BigUint = (1..m)
        .map(|l| comp_count(n, ni + (ki - 1) * m + l, r as u64))
        .sum();
    Ok(first + rest)
}

fn apply_matrix(
    r: u32,
    v: &[IntPolynomial],
    diagonal: &IntPolynomial,
) -> Result<Vec<IntPolynomial>, BaseRError> {
    if r < 2 {
        return Err(BaseRError::InvalidBase(r));
    }
    let size = (r - 1) as usize;
    if v.len() != size {
        return Err(BaseRError::WrongLength {
            expected: size,
            got: v.len(),
        });
    }
    let z = IntPolynomial::z();
    Ok((0..size)
        .map(|i| {
            v.iter()
                .enumerate()
                .map(|(j, p)| match j.cmp(&i) {
                    std::cmp::Ordering::Less => &z * p,
                    std::cmp::Ordering::Equal => diagonal * p,
                    std::cmp::Ordering::Greater => p.clone(),
                })
                .sum()
        })
        .collect())
}

/// Multiply by the `(r-1) x (r-1)` matrix with `z+1` on the diagonal, `1` above and `z` below.
#[allow(non_snake_case)]
pub fn apply_G(r: u32, v: &[IntPolynomial]) -> Result<Vec<IntPolynomial>, BaseRError> {
    apply_matrix(r, v, &(IntPolynomial::z() + IntPolynomial::one()))
}

/// Multiply by the `(r-1) x (r-1)` matrix with `1` on the diagonal, `1` above and `z` below.
/// On a section sequence the last entry of the result is h*.
#[allow(non_snake_case)]
pub fn apply_H(r: u32, v: &[IntPolynomial]) -> Result<Vec<IntPolynomial>, BaseRError> {
    apply_matrix(r, v, &IntPolynomial::one())
}

/// Sections `(f^<r-1,r-2>, ..., f^<r-1,1>, f^<r-1,0>)` of `f_(r,n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionSequence {
    r: u32,
    n: usize,
    polys: Vec<IntPolynomial>,
}

impl SectionSequence {
    pub fn polys(&self) -> &[IntPolynomial] {
        &self.polys
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `sum_l z^l f^<m,l>(z^m)`.
    pub fn reconstruct(&self) -> IntPolynomial {
        let m = (self.r - 1) as usize;
        self.polys
            .iter()
            .rev()
            .enumerate()
            .map(|(l, p)| p.compose_power(m).shift(l))
            .sum()
    }

    /// Verdicts `(i, j, strict interlacing of polys[i] into polys[j])` for all `i < j`.
    pub fn interlacing_pairs(&self) -> Result<Vec<(usize, usize, bool)>, BaseRError> {
        let mut out = Vec::new();
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                out.push((i, j, interlaces(&self.polys[i], &self.polys[j], true)?));
            }
        }
        Ok(out)
    }

    pub fn is_strictly_interlacing(&self) -> Result<bool, BaseRError> {
        Ok(self.interlacing_pairs()?.iter().all(|&(_, _, ok)| ok))
    }
}

pub fn section_sequence(r: u32, n: usize) -> Result<SectionSequence, BaseRError> {
    validate(r, n)?;
    let m = (r - 1) as usize;
    let f = f_poly(r, n);
    let polys = (0..m)
        .rev()
        .map(|l| f.section(m, l))
        .collect::<Result<Vec<_>, _>>()?;
    let seq = SectionSequence { r, n, polys };
    if seq.reconstruct() != f {
        return Err(BaseRError::ReconstructionFailed);
    }
    Ok(seq)
}
