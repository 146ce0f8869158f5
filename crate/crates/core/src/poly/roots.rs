//! Exact real-root machinery: primitive remainder sequences, Yun squarefree
//! decomposition, Sturm chains and bisection-based root isolation.
//!
//! Everything here stays in `Z[z]`. Remainders are pseudo-remainders with the
//! sign of the leading-coefficient power folded back in, so Sturm chains have
//! the same sign pattern as their rational counterparts.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPolynomial, PolyError};

fn content(p: &IntPolynomial) -> BigInt {
    p.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the (positive) content, keeping signs.
fn drop_content(p: &IntPolynomial) -> IntPolynomial {
    if p.is_zero() {
        return IntPolynomial::zero();
    }
    let g = content(p);
    IntPolynomial::new(p.coeffs().iter().map(|c| c / &g).collect())
}

/// Divides out the content and makes the leading coefficient positive.
fn primitive(p: &IntPolynomial) -> IntPolynomial {
    let q = drop_content(p);
    match q.leading_coeff() {
        Some(lc) if lc.is_negative() => -&q,
        _ => q,
    }
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("pseudo-remainder by zero polynomial");
    let lb = b.leading_coeff().unwrap().clone();
    let Some(da) = a.degree() else {
        return IntPolynomial::zero();
    };
    if da < db {
        return a.clone();
    }
    let mut r = a.clone();
    let mut e = da - db + 1;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let t = r.leading_coeff().unwrap().clone();
        r = &r.scale(&lb) - &b.shift(dr - db).scale(&t);
        e -= 1;
    }
    r.scale(&num_traits::pow(lb, e))
}

/// Greatest common divisor up to a unit: primitive with positive leading
/// coefficient.
pub(crate) fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

/// `a / b` when `b` divides `a` in `Z[z]`.
fn div_exact(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("division by zero polynomial");
    let lb = b.leading_coeff().unwrap();
    let Some(da) = a.degree() else {
        return IntPolynomial::zero();
    };
    let mut q = vec![BigInt::zero(); da.saturating_sub(db) + 1];
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        assert!(dr >= db, "inexact polynomial division");
        let (t, rem) = r.leading_coeff().unwrap().div_rem(lb);
        assert!(rem.is_zero(), "inexact polynomial division");
        r = &r - &b.shift(dr - db).scale(&t);
        q[dr - db] = t;
    }
    IntPolynomial::new(q)
}

/// Yun's algorithm: returns `(s_k, k)` with `p = c * prod s_k^k`, each `s_k`
/// squarefree, primitive, nonconstant and pairwise coprime.
pub(crate) fn squarefree_decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let f = primitive(p);
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let a0 = gcd(&f, &df);
    let mut b = div_exact(&f, &a0);
    let c = div_exact(&df, &a0);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut k = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), k));
        }
        b = div_exact(&b, &a);
        let c = div_exact(&d, &a);
        d = &c - &b.derivative();
        k += 1;
    }
    out
}

fn squarefree_part(p: &IntPolynomial) -> IntPolynomial {
    let f = primitive(p);
    let g = gcd(&f, &f.derivative());
    div_exact(&f, &g)
}

/// Sign of `p(x)` for rational `x`, computed on the homogenised numerator.
fn sign_at(p: &IntPolynomial, x: &BigRational) -> Ordering {
    let (num, den) = (x.numer(), x.denom());
    // den > 0, so the homogenised value has the sign of p(x)
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    // sum c_i num^i den^(deg - i), accumulated from the top coefficient down
    for c in p.coeffs().iter().rev() {
        acc = acc * num + c * &den_pow;
        den_pow *= den;
    }
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

#[derive(Clone, Copy)]
enum Point<'a> {
    NegInf,
    PosInf,
    At(&'a BigRational),
}

fn sign_at_point(p: &IntPolynomial, at: Point<'_>) -> Ordering {
    match at {
        Point::At(x) => sign_at(p, x),
        Point::PosInf => p
            .leading_coeff()
            .map_or(Ordering::Equal, |c| c.sign_ordering()),
        Point::NegInf => match p.degree() {
            None => Ordering::Equal,
            Some(d) => {
                let s = p.leading_coeff().unwrap().sign_ordering();
                if d % 2 == 0 {
                    s
                } else {
                    s.reverse()
                }
            }
        },
    }
}

struct SturmChain(Vec<IntPolynomial>);

impl SturmChain {
    /// `p` must be squarefree and nonzero.
    fn new(p: &IntPolynomial) -> Self {
        let p = primitive(p);
        let dp = drop_content(&p.derivative());
        let mut seq = vec![p];
        if dp.is_zero() {
            return Self(seq);
        }
        seq.push(dp);
        loop {
            let k = seq.len();
            let (a, b) = (&seq[k - 2], &seq[k - 1]);
            let r = pseudo_rem(a, b);
            if r.is_zero() {
                break;
            }
            // rem(a, b) = r / lc(b)^e; the chain continues with -rem(a, b)
            let e = a.degree().unwrap() - b.degree().unwrap() + 1;
            let flip = b.leading_coeff().unwrap().is_negative() && e % 2 == 1;
            let r = drop_content(&r);
            let next = if flip { r } else { -&r };
            let done = next.degree() == Some(0);
            seq.push(next);
            if done {
                break;
            }
        }
        Self(seq)
    }

    fn variations(&self, at: Point<'_>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for p in &self.0 {
            let s = sign_at_point(p, at);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn roots_between(&self, lo: Point<'_>, hi: Point<'_>) -> usize {
        self.variations(lo) - self.variations(hi)
    }
}

/// Strict bound on the absolute value of every root.
fn cauchy_bound(p: &IntPolynomial) -> BigInt {
    let lc = p.leading_coeff().unwrap().abs();
    let max = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_default();
    BigInt::one() + max.div_ceil(&lc) + BigInt::one()
}

/// A point strictly inside `(lo, hi)` at which `p` does not vanish.
fn split_point(p: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    let mid = lo + &width / BigInt::from(2);
    if sign_at(p, &mid) != Ordering::Equal {
        return mid;
    }
    // lo + width * k / (2k + 1) for k = 1, 2, ...: pairwise distinct points,
    // at most deg(p) of which can be roots
    let mut k = BigInt::one();
    loop {
        let s = lo + &width * BigRational::new(k.clone(), BigInt::from(2) * &k + 1);
        if sign_at(p, &s) != Ordering::Equal {
            return s;
        }
        k += 1;
    }
}

fn isolate_squarefree(p: &IntPolynomial) -> Vec<(BigRational, BigRational)> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let b = BigRational::from_integer(cauchy_bound(p));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.roots_between(Point::At(&lo), Point::At(&hi)) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let s = split_point(p, &lo, &hi);
                stack.push((lo, s.clone()));
                stack.push((s, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Isolating intervals for the distinct real roots of a polynomial.
///
/// Each interval `(lo, hi)` is open, contains exactly one distinct real root,
/// and neither endpoint is a root. Intervals are disjoint and listed in
/// increasing order, with the multiplicity of each root alongside.
#[derive(Debug, Clone)]
pub struct RootIsolation {
    intervals: Vec<(BigRational, BigRational)>,
    multiplicities: Vec<usize>,
    squarefree: IntPolynomial,
}

impl RootIsolation {
    pub fn intervals(&self) -> &[(BigRational, BigRational)] {
        &self.intervals
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn distinct_roots(&self) -> usize {
        self.intervals.len()
    }

    /// Number of real roots counted with multiplicity.
    pub fn total_roots(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Bisects every interval until its width is at most `width`.
    pub fn refine(&self, width: &BigRational) -> Self {
        assert!(width.is_positive(), "refinement width must be positive");
        let intervals = self
            .intervals
            .iter()
            .map(|(lo, hi)| {
                let (mut lo, mut hi) = (lo.clone(), hi.clone());
                let s_lo = sign_at(&self.squarefree, &lo);
                while &(&hi - &lo) > width {
                    let m = split_point(&self.squarefree, &lo, &hi);
                    if sign_at(&self.squarefree, &m) == s_lo {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
                (lo, hi)
            })
            .collect();
        Self {
            intervals,
            multiplicities: self.multiplicities.clone(),
            squarefree: self.squarefree.clone(),
        }
    }
}

/// Multiplicity of the unique root of `squarefree` inside `(lo, hi)` as a
/// root of the polynomial whose Yun factors are `factors`; zero if it is not
/// a root of that polynomial.
fn multiplicity_in(
    factors: &[(IntPolynomial, usize)],
    lo: &BigRational,
    hi: &BigRational,
) -> usize {
    // each factor is squarefree with roots among those of the isolated
    // polynomial, so it vanishes at the isolated root iff it changes sign
    factors
        .iter()
        .find(|(s, _)| sign_at(s, lo) != sign_at(s, hi))
        .map_or(0, |&(_, k)| k)
}

pub fn isolate_real_roots(p: &IntPolynomial) -> Result<RootIsolation, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let factors = squarefree_decomposition(p);
    let squarefree = if p.degree() == Some(0) {
        IntPolynomial::one()
    } else {
        squarefree_part(p)
    };
    let intervals = isolate_squarefree(&squarefree);
    let multiplicities = intervals
        .iter()
        .map(|(lo, hi)| multiplicity_in(&factors, lo, hi))
        .collect();
    Ok(RootIsolation {
        intervals,
        multiplicities,
        squarefree,
    })
}

/// Number of real roots counted with multiplicity, via Sturm chains on the
/// Yun factors.
pub fn real_root_count(p: &IntPolynomial) -> Result<usize, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(squarefree_decomposition(p)
        .iter()
        .map(|(s, k)| k * SturmChain::new(s).roots_between(Point::NegInf, Point::PosInf))
        .sum())
}

/// Whether `g` interlaces `f`: with roots `a_1 >= a_2 >= ...` of `f` and
/// `b_1 >= b_2 >= ...` of `g`, the chain `a_1 >= b_1 >= a_2 >= b_2 >= ...`
/// holds. `strict` demands strict inequalities throughout, which forces
/// `gcd(f, g)` to be constant.
pub fn interlaces(g: &IntPolynomial, f: &IntPolynomial, strict: bool) -> Result<bool, PolyError> {
    let df = f.degree().ok_or(PolyError::ZeroPolynomial)?;
    let dg = g.degree().ok_or(PolyError::ZeroPolynomial)?;
    if df != dg && df != dg + 1 {
        return Err(PolyError::DegreeGap { f: df, g: dg });
    }
    if !f.is_real_rooted()? || !g.is_real_rooted()? {
        return Err(PolyError::NotRealRooted);
    }
    if strict && gcd(f, g).degree() != Some(0) {
        return Ok(false);
    }
    if df == 0 {
        return Ok(true);
    }

    // Joint isolation of the distinct roots of f*g orders every root of f
    // relative to every root of g; equal roots share an interval.
    let joint = squarefree_part(&(f * g));
    let intervals = isolate_squarefree(&joint);
    let f_factors = squarefree_decomposition(f);
    let g_factors = squarefree_decomposition(g);
    let mut alphas = Vec::with_capacity(df);
    let mut betas = Vec::with_capacity(dg);
    for (rank, (lo, hi)) in intervals.iter().enumerate().rev() {
        alphas.extend(std::iter::repeat_n(
            rank,
            multiplicity_in(&f_factors, lo, hi),
        ));
        betas.extend(std::iter::repeat_n(
            rank,
            multiplicity_in(&g_factors, lo, hi),
        ));
    }
    debug_assert_eq!((alphas.len(), betas.len()), (df, dg));

    let above = |x: usize, y: usize| if strict { x > y } else { x >= y };
    let ok = (0..dg).all(|i| above(alphas[i], betas[i]))
        && (0..dg)
            .filter(|&i| i + 1 < df)
            .all(|i| above(betas[i], alphas[i + 1]));
    Ok(ok)
}
