//! The Farey graph, the Farey tree, and Farey intervals.
//!
//! Two vertices `a/b`, `c/d` of the Farey graph are adjacent when
//! `|ad - bc| = 1` (∞ is `1/0`). The Farey tree keeps only the ∞-rationals;
//! the neighbours of ∞ in it are the even integers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::eicf::expand_rational;
use crate::exact::{floor, ApproxReal, ExtRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FareyError {
    #[error("a vertex is not adjacent to itself")]
    SameVertex,
    #[error("{0} is not an ∞-rational")]
    NotInfinityRational(ExtRational),
    #[error("{0} is not a Farey interval")]
    NotFareyInterval(String),
    #[error("{0} are not Farey neighbours")]
    NotAnEdge(String),
    #[error("window bounds must be finite with lo < hi")]
    BadWindow,
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("input is exactly the vertex {0}")]
    RationalHit(ExtRational),
}

pub fn adjacent_in_g(u: &ExtRational, v: &ExtRational) -> Result<bool, FareyError> {
    if u == v {
        return Err(FareyError::SameVertex);
    }
    Ok(u.cross_determinant(v).is_one())
}

pub fn adjacent_in_f(u: &ExtRational, v: &ExtRational) -> Result<bool, FareyError> {
    let g = adjacent_in_g(u, v)?;
    Ok(g && u.is_infinity_rational() && v.is_infinity_rational())
}

/// An edge of the Farey graph, endpoints in real-line order with ∞ last.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FareyEdge {
    u: ExtRational,
    v: ExtRational,
}

impl FareyEdge {
    pub fn new(u: ExtRational, v: ExtRational) -> Result<Self, FareyError> {
        if !adjacent_in_g(&u, &v)? {
            return Err(FareyError::NotAnEdge(format!("{u} and {v}")));
        }
        let swap = v.is_infinite() || (!u.is_infinite() && u.compare(&v) == Ok(Ordering::Greater));
        let (u, v) = if u.is_infinite() || !swap { (u, v) } else { (v, u) };
        let (u, v) = if u.is_infinite() { (v, u) } else { (u, v) };
        Ok(FareyEdge { u, v })
    }

    pub fn endpoints(&self) -> (&ExtRational, &ExtRational) {
        (&self.u, &self.v)
    }

    pub fn in_tree(&self) -> bool {
        self.u.is_infinity_rational() && self.v.is_infinity_rational()
    }
}

/// A real interval whose endpoints are Farey neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FareyInterval {
    lo: ExtRational,
    hi: ExtRational,
}

impl FareyInterval {
    pub fn new(lo: ExtRational, hi: ExtRational) -> Result<Self, FareyError> {
        let ok = !lo.is_infinite()
            && !hi.is_infinite()
            && lo.compare(&hi) == Ok(Ordering::Less)
            && lo.cross_determinant(&hi).is_one();
        if !ok {
            return Err(FareyError::NotFareyInterval(format!("[{lo}, {hi}]")));
        }
        Ok(FareyInterval { lo, hi })
    }

    /// `[m, m + 1]`
    pub fn unit(m: BigInt) -> Self {
        FareyInterval {
            lo: ExtRational::integer(m.clone()),
            hi: ExtRational::integer(m + 1),
        }
    }

    pub fn lo(&self) -> &ExtRational {
        &self.lo
    }

    pub fn hi(&self) -> &ExtRational {
        &self.hi
    }

    /// `1 / (b d)` for endpoints `a/b`, `c/d`.
    pub fn width(&self) -> BigRational {
        BigRational::new(BigInt::one(), self.lo.denom() * self.hi.denom())
    }

    pub fn mediant(&self) -> ExtRational {
        // Neighbours have a reduced mediant.
        ExtRational::new(self.lo.numer() + self.hi.numer(), self.lo.denom() + self.hi.denom())
            .expect("positive denominator")
    }

    /// The two Farey subintervals split at the mediant.
    pub fn subdivide(&self) -> (FareyInterval, FareyInterval) {
        let m = self.mediant();
        (
            FareyInterval { lo: self.lo.clone(), hi: m.clone() },
            FareyInterval { lo: m, hi: self.hi.clone() },
        )
    }

    pub fn contains(&self, x: &ExtRational) -> bool {
        !x.is_infinite()
            && self.lo.compare(x) != Ok(Ordering::Greater)
            && x.compare(&self.hi) != Ok(Ordering::Greater)
    }

    pub fn contains_interval(&self, x: &ApproxReal) -> bool {
        let lo = self.lo.to_rational().expect("finite");
        let hi = self.hi.to_rational().expect("finite");
        lo <= x.lo() && x.hi() <= hi
    }

    pub fn as_approx(&self) -> ApproxReal {
        ApproxReal::from_bounds(
            self.lo.to_rational().expect("finite"),
            self.hi.to_rational().expect("finite"),
        )
    }
}

/// Farey-tree neighbours of `v` inside `[lo, hi]` with denominator at most
/// `ceil(2 / (hi - lo))`. The full neighbour set is infinite and accumulates
/// at `v`; [`neighbors_in_f_bounded`] takes an explicit cutoff instead.
pub fn neighbors_in_f(
    v: &ExtRational,
    lo: &ExtRational,
    hi: &ExtRational,
) -> Result<Vec<ExtRational>, FareyError> {
    let (l, h) = window(lo, hi)?;
    let cutoff = (BigRational::from_integer(2.into()) / (h - l)).ceil().to_integer();
    neighbors_in_f_bounded(v, lo, hi, &cutoff.max(BigInt::one()))
}

/// All Farey-tree neighbours of `v` in `[lo, hi]` with denominator `<= max_den`,
/// in increasing order.
///
/// They are the images of the even integers under a map sending ∞ to `v`.
pub fn neighbors_in_f_bounded(
    v: &ExtRational,
    lo: &ExtRational,
    hi: &ExtRational,
    max_den: &BigInt,
) -> Result<Vec<ExtRational>, FareyError> {
    let (l, h) = window(lo, hi)?;
    if !v.is_infinity_rational() {
        return Err(FareyError::NotInfinityRational(v.clone()));
    }
    let to_v = expand_rational(v).transformation();
    let [a, b, c, d] = to_v.entries();
    let (e_min, e_max) = if c.is_zero() {
        // v = ∞: the even integers themselves.
        (l.ceil().to_integer(), h.floor().to_integer())
    } else {
        // |c e + d| <= max_den
        let r1 = BigRational::new(-max_den - d, c.clone());
        let r2 = BigRational::new(max_den - d, c.clone());
        let (r1, r2) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        (r1.ceil().to_integer(), r2.floor().to_integer())
    };
    let mut e = if e_min.is_even() { e_min } else { e_min + 1 };
    let mut out = Vec::new();
    while e <= e_max {
        let image = ExtRational::new(a * &e + b, c * &e + d).expect("unimodular");
        if let Some(x) = image.to_rational() {
            if l <= x && x <= h && image.denom() <= max_den {
                out.push(image);
            }
        }
        e += 2;
    }
    out.sort_by(|x, y| x.compare(y).expect("finite"));
    Ok(out)
}

fn window(lo: &ExtRational, hi: &ExtRational) -> Result<(BigRational, BigRational), FareyError> {
    match (lo.to_rational(), hi.to_rational()) {
        (Some(l), Some(h)) if l < h => Ok((l, h)),
        _ => Err(FareyError::BadWindow),
    }
}

/// The unique Farey-tree path from ∞ to `u`: ∞ followed by the convergents of `u`.
pub fn path_to(u: &ExtRational) -> Result<Vec<ExtRational>, FareyError> {
    if !u.is_infinity_rational() {
        return Err(FareyError::NotInfinityRational(u.clone()));
    }
    let mut path = vec![ExtRational::infinity()];
    path.extend(expand_rational(u).convergent_pairs().map(|p| p.value()));
    Ok(path)
}

/// ∞-rationals `c/d` with `1 <= d <= max_den` and `lo <= c/d <= hi`, by
/// increasing denominator and then numerator.
pub fn inf_rationals_by_denominator(
    max_den: u64,
    lo: BigRational,
    hi: BigRational,
) -> impl Iterator<Item = ExtRational> {
    (1..=max_den).flat_map(move |d| {
        let den = BigInt::from(d);
        let first = (&lo * &den).ceil().to_integer();
        let last = (&hi * &den).floor().to_integer();
        num_iter_range(first, last).filter_map(move |c| {
            let keep = (&c + &den).is_odd() && c.gcd(&den).is_one();
            keep.then(|| ExtRational::new(c, den.clone()).expect("d >= 1"))
        })
    })
}

fn num_iter_range(first: BigInt, last: BigInt) -> impl Iterator<Item = BigInt> {
    let mut next = first;
    std::iter::from_fn(move || {
        if next > last {
            return None;
        }
        let out = next.clone();
        next += 1;
        Some(out)
    })
}

/// All ∞-rationals in `[lo, hi]` with denominator `<= max_den`, sorted.
pub fn enumerate_inf_rationals(
    max_den: u64,
    lo: &ExtRational,
    hi: &ExtRational,
) -> Result<Vec<ExtRational>, FareyError> {
    let (l, h) = match (lo.to_rational(), hi.to_rational()) {
        (Some(l), Some(h)) if l <= h => (l, h),
        _ => return Err(FareyError::BadWindow),
    };
    let mut out: Vec<ExtRational> = inf_rationals_by_denominator(max_den, l, h).collect();
    out.sort_by(|x, y| x.compare(y).expect("finite"));
    Ok(out)
}

/// The nested chain of Farey intervals containing `x`, starting from the
/// unit interval around it. Each step keeps the subinterval that contains
/// all of `x`.
///
/// The chain ends with [`FareyError::PrecisionExhausted`] when `x` straddles
/// a mediant and [`FareyError::RationalHit`] when `x` is exactly a vertex.
pub fn locate(x: &ApproxReal) -> Locate {
    Locate {
        x: x.clone(),
        state: LocateState::Start,
    }
}

pub struct Locate {
    x: ApproxReal,
    state: LocateState,
}

enum LocateState {
    Start,
    At(FareyInterval),
    Done,
}

impl Locate {
    fn first(&self) -> Result<FareyInterval, FareyError> {
        let m = floor(&self.x.lo());
        let lo = BigRational::from_integer(m.clone());
        let hi = BigRational::from_integer(&m + 1);
        if self.x.lo() > lo && self.x.hi() < hi {
            Ok(FareyInterval::unit(m))
        } else if self.x.is_exact() && self.x.mid().is_integer() {
            Err(FareyError::RationalHit(self.x.mid_ext()))
        } else {
            Err(FareyError::PrecisionExhausted)
        }
    }

    fn child(&self, parent: &FareyInterval) -> Result<FareyInterval, FareyError> {
        let m = parent.mediant();
        let (left, right) = parent.subdivide();
        match self.x.compare_to(&m.to_rational().expect("finite")) {
            Some(Ordering::Less) => Ok(left),
            Some(Ordering::Greater) => Ok(right),
            Some(Ordering::Equal) => Err(FareyError::RationalHit(m)),
            None => Err(FareyError::PrecisionExhausted),
        }
    }
}

impl Iterator for Locate {
    type Item = Result<FareyInterval, FareyError>;

    fn next(&mut self) -> Option<Self::Item> {
        let step = match &self.state {
            LocateState::Done => return None,
            LocateState::Start => self.first(),
            LocateState::At(parent) => self.child(parent),
        };
        self.state = match &step {
            Ok(i) => LocateState::At(i.clone()),
            Err(_) => LocateState::Done,
        };
        Some(step)
    }
}

/// Denominator as `u64`, for callers that bound it.
pub fn small_denominator(q: &ExtRational) -> Option<u64> {
    if q.denom().is_negative() {
        return None;
    }
    q.denom().to_u64()
}
