//! Positional numeral systems.
//!
//! A system is a strictly increasing sequence of place values
//! `1 = a_0 < a_1 < a_2 < ...`. Every nonnegative integer has a unique
//! representation `b = sum digit_i * a_i` in which each prefix sum
//! `sum_{j <= i} digit_j * a_j` stays below `a_(i+1)`; the greedy division
//! algorithm produces it. Mixed radix systems are those where each place
//! value divides the next.
//!
//! Digits are stored little-endian (index `i` is place `i`) and rendered
//! big-endian, most significant place first.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumsysError {
    #[error("invalid numeral system: {0}")]
    InvalidSystem(String),
    #[error("place {index} is beyond the {available} place values this system defines")]
    PlaceOutOfRange { index: usize, available: usize },
    #[error("{value} does not fit in {width} places")]
    TooLarge { value: BigUint, width: usize },
    #[error("{value} exceeds every place value this system defines")]
    Unrepresentable { value: BigUint },
    #[error("invalid numeral: {0}")]
    InvalidNumeral(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// Place values `r^n`.
    BaseR(u32),
    /// Place values `(n+1)!`.
    Factoradic,
    /// Place values `F_(n+1)`: 1, 2, 3, 5, 8, ...
    Fibonacci,
    /// Radices `c_0 = 1, c_1, c_2, ...` with `a_n = c_0 c_1 ... c_n`.
    MixedRadix(Vec<BigUint>),
    /// A finite prefix of place values given directly.
    ExplicitPlaces(Vec<BigUint>),
}

/// A validated numeral system description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumeralSystemSpec {
    kind: SystemKind,
}

impl NumeralSystemSpec {
    pub fn base(r: u32) -> Result<Self, NumsysError> {
        if r < 2 {
            return Err(NumsysError::InvalidSystem(format!(
                "base must be at least 2, got {r}"
            )));
        }
        Ok(Self {
            kind: SystemKind::BaseR(r),
        })
    }

    pub fn factoradic() -> Self {
        Self {
            kind: SystemKind::Factoradic,
        }
    }

    pub fn fibonacci() -> Self {
        Self {
            kind: SystemKind::Fibonacci,
        }
    }

    /// `radices` is the full sequence `c_0, c_1, ...` and must start with 1.
    pub fn mixed_radix(radices: Vec<BigUint>) -> Result<Self, NumsysError> {
        match radices.split_first() {
            Some((c0, rest)) if c0.is_one() => {
                if let Some(bad) = rest.iter().find(|c| **c <= BigUint::one()) {
                    return Err(NumsysError::InvalidSystem(format!(
                        "radices after the first must exceed 1, got {bad}"
                    )));
                }
            }
            _ => {
                return Err(NumsysError::InvalidSystem(
                    "mixed radix sequence must start with c_0 = 1".into(),
                ))
            }
        }
        Ok(Self {
            kind: SystemKind::MixedRadix(radices),
        })
    }

    pub fn explicit_places(places: Vec<BigUint>) -> Result<Self, NumsysError> {
        if !places.first().is_some_and(One::is_one) {
            return Err(NumsysError::InvalidSystem(
                "place values must start with a_0 = 1".into(),
            ));
        }
        if places.windows(2).any(|w| w[0] >= w[1]) {
            return Err(NumsysError::InvalidSystem(
                "place values must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            kind: SystemKind::ExplicitPlaces(places),
        })
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }

    /// Number of defined place values; `None` for infinite systems.
    pub fn place_count(&self) -> Option<usize> {
        match &self.kind {
            SystemKind::MixedRadix(c) => Some(c.len()),
            SystemKind::ExplicitPlaces(a) => Some(a.len()),
            _ => None,
        }
    }

    /// Place values `a_0, ..., a_(count-1)`.
    pub fn places(&self, count: usize) -> Result<Vec<BigUint>, NumsysError> {
        if let Some(available) = self.place_count() {
            if count > available {
                return Err(NumsysError::PlaceOutOfRange {
                    index: count - 1,
                    available,
                });
            }
        }
        let mut out: Vec<BigUint> = Vec::with_capacity(count);
        for n in 0..count {
            let next = match &self.kind {
                SystemKind::BaseR(r) => match n {
                    0 => BigUint::one(),
                    _ => &out[n - 1] * *r,
                },
                SystemKind::Factoradic => match n {
                    0 => BigUint::one(),
                    _ => &out[n - 1] * (n + 1),
                },
                SystemKind::Fibonacci => match n {
                    0 => BigUint::one(),
                    1 => BigUint::from(2u8),
                    _ => &out[n - 1] + &out[n - 2],
                },
                SystemKind::MixedRadix(c) => match n {
                    0 => c[0].clone(),
                    _ => &out[n - 1] * &c[n],
                },
                SystemKind::ExplicitPlaces(a) => a[n].clone(),
            };
            out.push(next);
        }
        Ok(out)
    }

    /// Place values `a_0, a_1, ...` up to and including the first one
    /// exceeding `b`.
    fn places_exceeding(&self, b: &BigUint) -> Result<Vec<BigUint>, NumsysError> {
        let limit = self.place_count().unwrap_or(usize::MAX);
        let mut count = 1;
        loop {
            let places = self.places(count)?;
            if places.last().unwrap() > b {
                return Ok(places);
            }
            if count == limit {
                return Err(NumsysError::Unrepresentable { value: b.clone() });
            }
            count = (count * 2).min(limit);
        }
    }
}

impl fmt::Display for NumeralSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigUint]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match &self.kind {
            SystemKind::BaseR(r) => write!(f, "base:{r}"),
            SystemKind::Factoradic => write!(f, "factoradic"),
            SystemKind::Fibonacci => write!(f, "fib"),
            SystemKind::MixedRadix(c) => write!(f, "mixed:{}", join(&c[1..])),
            SystemKind::ExplicitPlaces(a) => write!(f, "places:{}", join(a)),
        }
    }
}

impl FromStr for NumeralSystemSpec {
    type Err = NumsysError;

    /// Accepts `base:R`, `factoradic`, `fib`, `mixed:c1,c2,...` (with `c_0 = 1`
    /// implied) and `places:a0,a1,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| NumsysError::InvalidSystem(format!("{msg}: {s:?}"));
        let list = |body: &str| -> Result<Vec<BigUint>, NumsysError> {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigUint>()
                        .map_err(|_| bad("expected comma-separated integers"))
                })
                .collect()
        };
        let s = s.trim();
        match s.split_once(':') {
            None if s == "factoradic" => Ok(Self::factoradic()),
            None if s == "fib" || s == "fibonacci" => Ok(Self::fibonacci()),
            Some(("base", r)) => Self::base(
                r.trim()
                    .parse()
                    .map_err(|_| bad("expected an integer base"))?,
            ),
            Some(("mixed", body)) => {
                let mut radices = vec![BigUint::one()];
                radices.extend(list(body)?);
                Self::mixed_radix(radices)
            }
            Some(("places", body)) => Self::explicit_places(list(body)?),
            _ => Err(bad("unrecognised system")),
        }
    }
}

/// A digit string within a numeral system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Numeral {
    digits: Vec<BigUint>,
    system: NumeralSystemSpec,
}

impl Numeral {
    /// `digits` little-endian: `digits[i]` is the digit at place `i`.
    pub fn new(system: NumeralSystemSpec, digits: Vec<BigUint>) -> Self {
        Self { digits, system }
    }

    /// Parses a big-endian digit string: one character per digit, or
    /// comma-separated digits when any digit exceeds 9.
    pub fn parse(system: NumeralSystemSpec, s: &str) -> Result<Self, NumsysError> {
        let s = s.trim();
        let bad = || NumsysError::InvalidNumeral(format!("cannot parse digits {s:?}"));
        let mut digits: Vec<BigUint> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<BigUint>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|ch| ch.to_digit(10).map(BigUint::from).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        if digits.is_empty() {
            return Err(bad());
        }
        digits.reverse();
        Ok(Self { digits, system })
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn system(&self) -> &NumeralSystemSpec {
        &self.system
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    /// Digit at place `i`, zero beyond the width.
    pub fn digit(&self, i: usize) -> BigUint {
        self.digits.get(i).cloned().unwrap_or_default()
    }

    /// Whether some place below the width admits a digit of 10 or more.
    fn needs_separator(&self) -> bool {
        if self.digits.iter().any(|d| *d >= BigUint::from(10u8)) {
            return true;
        }
        let Ok(places) = self.system.places(self.width() + 1) else {
            return false;
        };
        places.windows(2).any(|w| w[1] > &w[0] * 10u8)
    }
}

impl fmt::Display for Numeral {
    /// Big-endian, most significant place first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().rev().map(ToString::to_string).collect();
        if self.needs_separator() {
            write!(f, "{}", parts.join(","))
        } else {
            write!(f, "{}", parts.concat())
        }
    }
}

pub fn place_value(s: &NumeralSystemSpec, n: usize) -> Result<BigUint, NumsysError> {
    Ok(s.places(n + 1)?.pop().unwrap())
}

/// Greedy division from the largest place value not exceeding `b`. With a
/// `width`, the result is zero-padded to exactly that many places and `b`
/// must be below `a_width`.
pub fn encode(
    s: &NumeralSystemSpec,
    b: &BigUint,
    width: Option<usize>,
) -> Result<Numeral, NumsysError> {
    let places = match width {
        Some(w) => {
            let places = s.places(w + 1)?;
            if b >= &places[w] {
                return Err(NumsysError::TooLarge {
                    value: b.clone(),
                    width: w,
                });
            }
            places
        }
        None => s.places_exceeding(b)?,
    };
    // smallest n with a_n > b
    let n = places.iter().position(|a| a > b).unwrap();
    let len = width.unwrap_or(n.max(1));
    let mut digits = vec![BigUint::zero(); len];
    let mut rest = b.clone();
    for i in (0..n).rev() {
        let (q, r) = rest.div_rem(&places[i]);
        digits[i] = q;
        rest = r;
    }
    Ok(Numeral {
        digits,
        system: s.clone(),
    })
}

/// Every prefix sum `sum_{j <= i} digit_j a_j` is below `a_(i+1)`.
pub fn is_valid(num: &Numeral) -> bool {
    let Ok(places) = num.system.places(num.width() + 1) else {
        return false;
    };
    let mut acc = BigUint::zero();
    for (i, d) in num.digits.iter().enumerate() {
        acc += d * &places[i];
        if acc >= places[i + 1] {
            return false;
        }
    }
    true
}

pub fn decode(num: &Numeral) -> Result<BigUint, NumsysError> {
    if !is_valid(num) {
        return Err(NumsysError::InvalidNumeral(format!(
            "{num} is not a canonical numeral in {}",
            num.system
        )));
    }
    let places = num.system.places(num.width())?;
    Ok(num.digits.iter().zip(&places).map(|(d, a)| d * a).sum())
}

/// Radices `c_0, ..., c_n` when the system is mixed radix over that prefix;
/// `None` otherwise. The Fibonacci system is never mixed radix.
pub fn radices(s: &NumeralSystemSpec, n: usize) -> Result<Option<Vec<BigUint>>, NumsysError> {
    match s.kind() {
        SystemKind::Fibonacci => Ok(None),
        SystemKind::BaseR(r) => Ok(Some(
            std::iter::once(BigUint::one())
                .chain(std::iter::repeat_n(BigUint::from(*r), n))
                .collect(),
        )),
        SystemKind::Factoradic => Ok(Some((1..=n + 1).map(BigUint::from).collect())),
        SystemKind::MixedRadix(c) => {
            if n >= c.len() {
                return Err(NumsysError::PlaceOutOfRange {
                    index: n,
                    available: c.len(),
                });
            }
            Ok(Some(c[..=n].to_vec()))
        }
        SystemKind::ExplicitPlaces(_) => {
            let places = s.places(n + 1)?;
            let mut out = vec![BigUint::one()];
            for w in places.windows(2) {
                let (q, r) = w[1].div_rem(&w[0]);
                if !r.is_zero() {
                    return Ok(None);
                }
                out.push(q);
            }
            Ok(Some(out))
        }
    }
}

/// Convenience for small values.
pub fn encode_u64(
    s: &NumeralSystemSpec,
    b: u64,
    width: Option<usize>,
) -> Result<Numeral, NumsysError> {
    encode(s, &BigUint::from(b), width)
}

/// Digits as machine integers, little-endian; `None` if any digit overflows.
pub fn small_digits(num: &Numeral) -> Option<Vec<u64>> {
    num.digits.iter().map(ToPrimitive::to_u64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn sys(s: &str) -> NumeralSystemSpec {
        s.parse().unwrap()
    }

    #[test]
    fn place_values() {
        assert_eq!(place_value(&sys("base:2"), 6).unwrap(), big(64));
        assert_eq!(place_value(&sys("factoradic"), 3).unwrap(), big(24));
        assert_eq!(place_value(&sys("fib"), 9).unwrap(), big(89));
        assert_eq!(place_value(&sys("mixed:2,4,6"), 3).unwrap(), big(48));
        assert_eq!(place_value(&sys("places:1,3,7"), 2).unwrap(), big(7));
        assert_eq!(
            place_value(&sys("places:1,3,7"), 3),
            Err(NumsysError::PlaceOutOfRange {
                index: 3,
                available: 3
            })
        );
    }

    #[test]
    fn encode_examples() {
        assert_eq!(
            encode_u64(&sys("base:2"), 102, None).unwrap().to_string(),
            "1100110"
        );
        assert_eq!(
            encode_u64(&sys("base:3"), 102, None).unwrap().to_string(),
            "10210"
        );
        assert_eq!(
            encode_u64(&sys("fib"), 102, None).unwrap().to_string(),
            "1000100000"
        );
        assert_eq!(
            encode_u64(&sys("factoradic"), 0, Some(3))
                .unwrap()
                .to_string(),
            "000"
        );
        assert_eq!(
            encode_u64(&sys("base:5"), 0, None).unwrap().to_string(),
            "0"
        );
        assert_eq!(
            encode_u64(&sys("base:2"), 8, Some(3)),
            Err(NumsysError::TooLarge {
                value: big(8),
                width: 3
            })
        );
        assert!(matches!(
            encode_u64(&sys("places:1,3,7"), 7, None),
            Err(NumsysError::Unrepresentable { .. })
        ));
        assert_eq!(
            encode_u64(&sys("places:1,3,7"), 6, None)
                .unwrap()
                .to_string(),
            "20"
        );
    }

    #[test]
    fn decode_examples() {
        let n = Numeral::parse(sys("base:3"), "10210").unwrap();
        assert_eq!(decode(&n).unwrap(), big(102));
        let n = Numeral::parse(sys("fib"), "1000100000").unwrap();
        assert_eq!(decode(&n).unwrap(), big(102));
        for s in ["base:2", "factoradic", "fib", "mixed:3,5", "places:1,2,5"] {
            assert_eq!(
                decode(&Numeral::parse(sys(s), "0").unwrap()).unwrap(),
                big(0)
            );
        }
        assert!(decode(&Numeral::parse(sys("fib"), "11").unwrap()).is_err());
    }

    #[test]
    fn validity() {
        assert!(is_valid(&Numeral::parse(sys("base:2"), "11").unwrap()));
        assert!(!is_valid(&Numeral::parse(sys("base:2"), "2").unwrap()));
        assert!(!is_valid(&Numeral::parse(sys("fib"), "11").unwrap()));
        assert!(is_valid(&Numeral::parse(sys("fib"), "100").unwrap()));
        // width beyond the defined places cannot be certified
        assert!(!is_valid(&Numeral::parse(sys("places:1,2"), "00").unwrap()));
    }

    #[test]
    fn radix_sequences() {
        assert_eq!(
            radices(&sys("base:2"), 4).unwrap(),
            Some(vec![big(1), big(2), big(2), big(2), big(2)])
        );
        assert_eq!(
            radices(&sys("factoradic"), 3).unwrap(),
            Some(vec![big(1), big(2), big(3), big(4)])
        );
        assert_eq!(radices(&sys("fib"), 4).unwrap(), None);
        assert_eq!(
            radices(&sys("places:1,2,6,12"), 3).unwrap(),
            Some(vec![big(1), big(2), big(3), big(2)])
        );
        assert_eq!(radices(&sys("places:1,2,3"), 2).unwrap(), None);
        assert!(radices(&sys("mixed:2,3"), 3).is_err());
    }

    #[test]
    fn parse_and_display_systems() {
        for s in [
            "base:7",
            "factoradic",
            "fib",
            "mixed:2,4,6",
            "places:1,2,5,9",
        ] {
            assert_eq!(sys(s).to_string(), s);
        }
        assert!("base:1".parse::<NumeralSystemSpec>().is_err());
        assert!("mixed:2,1".parse::<NumeralSystemSpec>().is_err());
        assert!("places:2,3".parse::<NumeralSystemSpec>().is_err());
        assert!("places:1,3,3".parse::<NumeralSystemSpec>().is_err());
        assert!("octal".parse::<NumeralSystemSpec>().is_err());
    }

    #[test]
    fn wide_digits_render_with_commas() {
        let n = encode_u64(&sys("base:16"), 0x1c, None).unwrap();
        assert_eq!(n.to_string(), "1,12");
        assert_eq!(
            decode(&Numeral::parse(sys("base:16"), "1,12").unwrap()).unwrap(),
            big(28)
        );
        // base 11 digits stay below 11 but 10 is possible, so separate
        assert_eq!(
            encode_u64(&sys("base:11"), 12, None).unwrap().to_string(),
            "1,1"
        );
    }
}
