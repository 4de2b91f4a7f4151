//! Exact rationals extended by a single projective infinity, vertex
//! classification, and rational enclosures of real numbers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("0/0 is not a rational number")]
    ZeroOverZero,
    #[error("infinity is not ordered against the real line")]
    InfinityNotOrdered,
    #[error("expected a finite value")]
    NotFinite,
    #[error("negative radius")]
    NegativeRadius,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A reduced fraction `numer/denom` with `denom >= 0`; infinity is `1/0`.
///
/// The sign always lives in the numerator, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtRational {
    numer: BigInt,
    denom: BigInt,
}

/// The two kinds of vertex of the Farey graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// Numerator and denominator differ in parity (or the value is infinity).
    /// These are the vertices of the Farey tree.
    InfinityRational,
    /// Numerator and denominator both odd.
    OneRational,
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexClass::InfinityRational => f.write_str("InfinityRational"),
            VertexClass::OneRational => f.write_str("OneRational"),
        }
    }
}

impl ExtRational {
    /// Reduces `n/d`, moving the sign into the numerator. Any `n/0` with
    /// `n != 0` is infinity.
    pub fn new(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self, ExactError> {
        let (n, d) = (n.into(), d.into());
        if n.is_zero() && d.is_zero() {
            return Err(ExactError::ZeroOverZero);
        }
        Ok(Self::reduce(n, d))
    }

    fn reduce(mut n: BigInt, mut d: BigInt) -> Self {
        if d.is_zero() {
            return Self::infinity();
        }
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        ExtRational { numer: n, denom: d }
    }

    pub fn infinity() -> Self {
        ExtRational {
            numer: BigInt::one(),
            denom: BigInt::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ExtRational {
            numer: n.into(),
            denom: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_infinite(&self) -> bool {
        self.denom.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn classify(&self) -> VertexClass {
        if self.numer.is_odd() && self.denom.is_odd() {
            VertexClass::OneRational
        } else {
            VertexClass::InfinityRational
        }
    }

    pub fn is_infinity_rational(&self) -> bool {
        self.classify() == VertexClass::InfinityRational
    }

    /// Real-line order by cross multiplication.
    pub fn compare(&self, other: &Self) -> Result<Ordering, ExactError> {
        if self.is_infinite() || other.is_infinite() {
            return Err(ExactError::InfinityNotOrdered);
        }
        Ok((&self.numer * &other.denom).cmp(&(&other.numer * &self.denom)))
    }

    /// `|a d - b c|` with infinity read as `1/0`.
    pub fn cross_determinant(&self, other: &Self) -> BigInt {
        (&self.numer * &other.denom - &other.numer * &self.denom).abs()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_infinite() {
            None
        } else {
            Some(BigRational::new_raw(self.numer.clone(), self.denom.clone()))
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self.to_rational() {
            Some(q) => rational_to_f64(&q),
            None => f64::INFINITY,
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_infinite() {
            self.clone()
        } else {
            ExtRational {
                numer: -&self.numer,
                denom: self.denom.clone(),
            }
        }
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        let (n, d) = q.into_raw();
        ExtRational::reduce(n, d)
    }
}

impl From<&BigRational> for ExtRational {
    fn from(q: &BigRational) -> Self {
        ExtRational::reduce(q.numer().clone(), q.denom().clone())
    }
}

impl From<i64> for ExtRational {
    fn from(n: i64) -> Self {
        ExtRational::integer(n)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl FromStr for ExtRational {
    type Err = ExactError;

    /// Accepts `a/b`, `n`, and `inf` (also `∞`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Self::infinity());
        }
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_negative() {
            return Err(bad());
        }
        ExtRational::new(n, d)
    }
}

/// Lossy conversion for rendering and diagnostics only.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Floor of a rational as an integer.
pub fn floor(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// The even integer nearest to `q`, or `None` on a tie (odd integer `q`).
pub fn nearest_even(q: &BigRational) -> Option<BigInt> {
    // e = 2 * round(q / 2); a tie means q/2 has fractional part exactly 1/2.
    let half = q / BigInt::from(2);
    let fl = floor(&half);
    let frac = &half - BigRational::from_integer(fl.clone());
    let one_half = BigRational::new(BigInt::one(), BigInt::from(2));
    match frac.cmp(&one_half) {
        Ordering::Less => Some(fl * 2),
        Ordering::Greater => Some((fl + 1) * 2),
        Ordering::Equal => None,
    }
}

/// A real number known to lie in the closed interval `[mid - rad, mid + rad]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxReal {
    mid: BigRational,
    rad: BigRational,
}

impl ApproxReal {
    pub fn new(mid: BigRational, rad: BigRational) -> Result<Self, ExactError> {
        if rad.is_negative() {
            return Err(ExactError::NegativeRadius);
        }
        Ok(ApproxReal { mid, rad })
    }

    pub fn exact(q: BigRational) -> Self {
        ApproxReal {
            mid: q,
            rad: BigRational::zero(),
        }
    }

    /// Build from a finite `ExtRational` midpoint and radius.
    pub fn from_ext(mid: &ExtRational, rad: &ExtRational) -> Result<Self, ExactError> {
        let mid = mid.to_rational().ok_or(ExactError::NotFinite)?;
        let rad = rad.to_rational().ok_or(ExactError::NotFinite)?;
        Self::new(mid, rad)
    }

    /// The smallest midpoint/radius pair covering `[lo, hi]`.
    pub fn from_bounds(lo: BigRational, hi: BigRational) -> Self {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let two = BigRational::from_integer(BigInt::from(2));
        ApproxReal {
            mid: (&lo + &hi) / &two,
            rad: (hi - lo) / two,
        }
    }

    /// `sqrt(n)` to `digits` decimal places: the interval `[s, s + 1] / 10^digits`
    /// where `s = isqrt(n * 10^(2 digits))`.
    pub fn sqrt_of_integer(n: &BigInt, digits: u32) -> Result<Self, ExactError> {
        if n.is_negative() {
            return Err(ExactError::Parse(format!("sqrt({n})")));
        }
        let scale = BigInt::from(10).pow(digits);
        let s = (n * &scale * &scale).sqrt();
        if &s * &s == n * &scale * &scale {
            return Ok(Self::exact(BigRational::new(s, scale)));
        }
        Ok(Self::from_bounds(
            BigRational::new(s.clone(), scale.clone()),
            BigRational::new(s + 1, scale),
        ))
    }

    /// Parse a decimal such as `-1.4142`. The shown digits are taken as the
    /// midpoint. The radius is `10^-d / 2` with `d` the number of fractional
    /// digits, or `digits` when given.
    pub fn parse_decimal(s: &str, digits: Option<u32>) -> Result<Self, ExactError> {
        let t = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let all = format!("{int_part}{frac_part}");
        let mut n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().map_err(|_| bad())? };
        if neg {
            n = -n;
        }
        let shown = frac_part.len() as u32;
        let mid = BigRational::new(n, BigInt::from(10).pow(shown));
        let d = digits.unwrap_or(shown);
        let rad = BigRational::new(BigInt::one(), BigInt::from(10).pow(d) * 2);
        Ok(ApproxReal { mid, rad })
    }

    pub fn mid(&self) -> &BigRational {
        &self.mid
    }

    pub fn rad(&self) -> &BigRational {
        &self.rad
    }

    pub fn mid_ext(&self) -> ExtRational {
        ExtRational::from(&self.mid)
    }

    pub fn rad_ext(&self) -> ExtRational {
        ExtRational::from(&self.rad)
    }

    pub fn lo(&self) -> BigRational {
        &self.mid - &self.rad
    }

    pub fn hi(&self) -> BigRational {
        &self.mid + &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo() <= *q && *q <= self.hi()
    }

    /// `Some(ordering)` when every point of the interval compares the same way
    /// against `q` (`Equal` only for the exact point `q`).
    pub fn compare_to(&self, q: &BigRational) -> Option<Ordering> {
        if self.lo() > *q {
            Some(Ordering::Greater)
        } else if self.hi() < *q {
            Some(Ordering::Less)
        } else if self.is_exact() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        ApproxReal {
            mid: -&self.mid,
            rad: self.rad.clone(),
        }
    }
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", ExtRational::from(&self.mid), ExtRational::from(&self.rad))
    }
}
