//! Ford circles, horocycle radii and the two characterisations of convergents:
//! by a 1-rational Farey neighbour on the far side of `x`, and as strong
//! ∞-approximants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{ApproxReal, ExtRational};
use crate::farey::adjacent_in_g;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("circles share the base point {0}")]
    SameBase(ExtRational),
    #[error("{0} is not a finite ∞-rational")]
    NotFiniteInfinityRational(ExtRational),
    #[error("expected a finite rational, got ∞")]
    Infinite,
    #[error("undecidable at this precision: {0}")]
    Undecidable(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FordCircle {
    /// Tangent to the real line at `base`, radius `1 / (2 b^2)`.
    Finite { base: ExtRational, radius: BigRational },
    /// The line `y = 1`, based at ∞.
    LineAtInfinity,
}

impl FordCircle {
    pub fn base(&self) -> ExtRational {
        match self {
            FordCircle::Finite { base, .. } => base.clone(),
            FordCircle::LineAtInfinity => ExtRational::infinity(),
        }
    }

    pub fn radius(&self) -> Option<&BigRational> {
        match self {
            FordCircle::Finite { radius, .. } => Some(radius),
            FordCircle::LineAtInfinity => None,
        }
    }
}

pub fn ford_circle(q: &ExtRational) -> FordCircle {
    if q.is_infinite() {
        return FordCircle::LineAtInfinity;
    }
    let b = q.denom();
    FordCircle::Finite {
        base: q.clone(),
        radius: BigRational::new(BigInt::one(), b * b * 2),
    }
}

/// Whether two Ford circles touch, decided by unimodularity of the bases.
pub fn tangent(c1: &FordCircle, c2: &FordCircle) -> Result<bool, ApproxError> {
    let (u, v) = (c1.base(), c2.base());
    adjacent_in_g(&u, &v).map_err(|_| ApproxError::SameBase(u))
}

/// Tangency from the circle geometry alone.
///
/// Circles at `x1`, `x2` on the real line with radii `r1`, `r2` touch iff
/// `(x1 - x2)^2 = 4 r1 r2`; the line `y = 1` touches a circle iff `2r = 1`.
pub fn tangent_geometric(c1: &FordCircle, c2: &FordCircle) -> Result<bool, ApproxError> {
    if c1.base() == c2.base() {
        return Err(ApproxError::SameBase(c1.base()));
    }
    match (c1, c2) {
        (FordCircle::Finite { base: b1, radius: r1 }, FordCircle::Finite { base: b2, radius: r2 }) => {
            let dx = b1.to_rational().expect("finite") - b2.to_rational().expect("finite");
            Ok(&dx * &dx == r1 * r2 * BigRational::from_integer(4.into()))
        }
        (FordCircle::Finite { radius, .. }, FordCircle::LineAtInfinity)
        | (FordCircle::LineAtInfinity, FordCircle::Finite { radius, .. }) => {
            Ok(radius * BigRational::from_integer(2.into()) == BigRational::one())
        }
        (FordCircle::LineAtInfinity, FordCircle::LineAtInfinity) => unreachable!(),
    }
}

/// `R_u(x) = |b x - a|^2 / 2` for `u = a/b`.
pub fn horo_radius(u: &ExtRational, x: &ExtRational) -> Result<BigRational, ApproxError> {
    let x = x.to_rational().ok_or(ApproxError::Infinite)?;
    let (a, b) = finite_parts(u)?;
    let e = distance(&a, &b, &x);
    Ok(&e * &e / BigRational::from_integer(2.into()))
}

/// The range of `R_u` over the interval `x`.
pub fn horo_radius_approx(u: &ExtRational, x: &ApproxReal) -> Result<ApproxReal, ApproxError> {
    let (a, b) = finite_parts(u)?;
    let (lo, hi) = distance_range(&a, &b, x);
    let half = |e: BigRational| &e * &e / BigRational::from_integer(2.into());
    Ok(ApproxReal::from_bounds(half(lo), half(hi)))
}

fn finite_parts(u: &ExtRational) -> Result<(BigInt, BigInt), ApproxError> {
    if u.is_infinite() {
        return Err(ApproxError::Infinite);
    }
    Ok((u.numer().clone(), u.denom().clone()))
}

fn infinity_rational_parts(u: &ExtRational) -> Result<(BigInt, BigInt), ApproxError> {
    if u.is_infinite() || !u.is_infinity_rational() {
        return Err(ApproxError::NotFiniteInfinityRational(u.clone()));
    }
    Ok((u.numer().clone(), u.denom().clone()))
}

/// `|b x - a|`
fn distance(a: &BigInt, b: &BigInt, x: &BigRational) -> BigRational {
    (x * BigRational::from_integer(b.clone()) - BigRational::from_integer(a.clone())).abs()
}

/// Minimum and maximum of `|b x - a|` over the interval.
fn distance_range(a: &BigInt, b: &BigInt, x: &ApproxReal) -> (BigRational, BigRational) {
    let (lo, hi) = (x.lo(), x.hi());
    let at_lo = distance(a, b, &lo);
    let at_hi = distance(a, b, &hi);
    let root = BigRational::new(a.clone(), b.clone());
    let min = if lo <= root && root <= hi {
        BigRational::zero()
    } else {
        at_lo.clone().min(at_hi.clone())
    };
    (min, at_lo.max(at_hi))
}

enum Verdict {
    UWins,
    CompetitorWins,
    Unknown,
}

/// Sign of `|b x - a| - |d x - c|` over the interval. The difference is
/// piecewise linear with kinks at `a/b` and `c/d`, so its extremes are
/// attained at the endpoints or at a kink.
fn compare_on(u: (&BigInt, &BigInt), comp: (&BigInt, &BigInt), x: &ApproxReal) -> Verdict {
    let (lo, hi) = (x.lo(), x.hi());
    let mut points = vec![lo.clone(), hi.clone()];
    for (n, d) in [u, comp] {
        let k = BigRational::new(n.clone(), d.clone());
        if lo < k && k < hi {
            points.push(k);
        }
    }
    let g = |t: &BigRational| distance(u.0, u.1, t) - distance(comp.0, comp.1, t);
    let values: Vec<BigRational> = points.iter().map(g).collect();
    let max = values.iter().max().expect("nonempty");
    let min = values.iter().min().expect("nonempty");
    if max.is_negative() {
        Verdict::UWins
    } else if !min.is_negative() {
        Verdict::CompetitorWins
    } else {
        Verdict::Unknown
    }
}

/// Whether `u = a/b` is a strong ∞-approximant of `x`: `|b x - a| < |d x - c|`
/// for every other ∞-rational `c/d` with `d <= b`.
///
/// Competitors are enumerated by brute force. With `M = max |b x - a|` over
/// the interval, any `c/d` farther than `M / d` from the interval satisfies
/// `|d x - c| > M`, so only numerators in `[d lo - M, d hi + M]` are checked.
/// When `min |b x - a| > 1` the nearest even integer already beats `u`.
pub fn is_strong_approximant(u: &ExtRational, x: &ApproxReal) -> Result<bool, ApproxError> {
    let (a, b) = infinity_rational_parts(u)?;
    let (dmin, dmax) = distance_range(&a, &b, x);
    if dmin > BigRational::one() {
        return Ok(false);
    }
    let two = BigRational::from_integer(2.into());
    if dmax >= two {
        return Err(ApproxError::Undecidable(format!(
            "|bx - a| ranges over [{dmin}, {dmax}] for u = {u}"
        )));
    }
    let (lo, hi) = (x.lo(), x.hi());
    let mut undecided: Option<ExtRational> = None;
    let mut d = BigInt::one();
    while d <= b {
        let dq = BigRational::from_integer(d.clone());
        let first = (&lo * &dq - &dmax).ceil().to_integer();
        let last = (&hi * &dq + &dmax).floor().to_integer();
        let mut c = first;
        while c <= last {
            let candidate = (&c + &d).is_odd() && c.gcd(&d).is_one() && !(c == a && d == b);
            if candidate {
                debug_assert!((BigRational::new(c.clone(), d.clone()) - x.mid()).abs() <= &two + x.rad());
                match compare_on((&a, &b), (&c, &d), x) {
                    Verdict::UWins => {}
                    Verdict::CompetitorWins => return Ok(false),
                    Verdict::Unknown => {
                        undecided.get_or_insert_with(|| ExtRational::new(c.clone(), d.clone()).expect("d > 0"));
                    }
                }
            }
            c += 1;
        }
        d += 1;
    }
    match undecided {
        None => Ok(true),
        Some(c) => Err(ApproxError::Undecidable(format!("cannot separate {u} from competitor {c}"))),
    }
}

/// A 1-rational Farey neighbour `v` of `u` such that the whole interval `x`
/// lies strictly between `u` and `v`, if one exists. Such a `v` exists
/// exactly when `u` is a convergent of `x`. Exact (rational) `x` is reported
/// as undecidable.
///
/// The Farey neighbours of `u = a/b` on one side are `a/b ± 1/(b d)` with `d`
/// running through a residue class mod `b`, and their class alternates as
/// `d` grows by `b`. The farthest 1-rational one is found in closed form.
pub fn convergent_certificate(u: &ExtRational, x: &ApproxReal) -> Result<Option<ExtRational>, ApproxError> {
    let (a, b) = infinity_rational_parts(u)?;
    if x.is_exact() {
        return Err(ApproxError::Undecidable(format!("x = {x} is rational")));
    }
    let uq = BigRational::new(a.clone(), b.clone());
    let (lo, hi) = (x.lo(), x.hi());
    if lo <= uq && uq <= hi {
        return Err(ApproxError::Undecidable(format!("{u} lies in the interval {x}")));
    }
    // Neighbours c/d with side * (b c - a d) = 1.
    let side: i32 = if lo > uq { 1 } else { -1 };
    let v = farthest_one_rational_neighbour(&a, &b, side);
    let vq = v.to_rational().expect("finite");
    if lo <= vq && vq <= hi {
        return Err(ApproxError::Undecidable(format!("candidate {v} lies in the interval {x}")));
    }
    let beyond = if side > 0 { vq > hi } else { vq < lo };
    Ok(beyond.then_some(v))
}

fn farthest_one_rational_neighbour(a: &BigInt, b: &BigInt, side: i32) -> ExtRational {
    // b c - a d = side  =>  d ≡ -side * a^{-1} (mod b)
    let inv = a.extended_gcd(b).x.mod_floor(b);
    let mut d = (-BigInt::from(side) * inv).mod_floor(b);
    if d.is_zero() {
        d = b.clone();
    }
    loop {
        let c = (BigInt::from(side) + a * &d).div_floor(b);
        debug_assert_eq!(b * &c - a * &d, BigInt::from(side));
        let v = ExtRational::new(c, d.clone()).expect("d > 0");
        if !v.is_infinity_rational() {
            return v;
        }
        d += b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::enumerate_inf_rationals;

    fn q(n: i64, d: i64) -> ExtRational {
        ExtRational::new(n, d).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt2() -> ApproxReal {
        let tiny = BigRational::new(1.into(), BigInt::from(10).pow(20));
        let s = ApproxReal::sqrt_of_integer(&BigInt::from(2), 40).unwrap();
        ApproxReal::new(s.mid().clone(), tiny).unwrap()
    }

    #[test]
    fn ford_circle_examples() {
        assert_eq!(ford_circle(&q(1, 2)).radius(), Some(&rat(1, 8)));
        assert_eq!(ford_circle(&q(0, 1)).radius(), Some(&rat(1, 2)));
        assert_eq!(ford_circle(&ExtRational::infinity()), FordCircle::LineAtInfinity);
    }

    #[test]
    fn tangent_examples() {
        let c = |n, d| ford_circle(&q(n, d));
        assert_eq!(tangent(&c(0, 1), &c(1, 2)), Ok(true));
        assert_eq!(tangent(&c(1, 2), &c(3, 4)), Ok(false));
        assert!(matches!(tangent(&c(1, 2), &c(1, 2)), Err(ApproxError::SameBase(_))));
        let line = FordCircle::LineAtInfinity;
        assert_eq!(tangent(&line, &c(3, 1)), Ok(true));
        assert_eq!(tangent(&line, &c(3, 2)), Ok(false));
        assert_eq!(tangent_geometric(&line, &c(3, 1)), Ok(true));
        assert_eq!(tangent_geometric(&line, &c(3, 2)), Ok(false));
    }

    #[test]
    fn tangency_matches_geometry() {
        let mut bases = vec![];
        for d in 1..=12i64 {
            for n in -d..=2 * d {
                if n.gcd(&d) == 1 {
                    bases.push(q(n, d));
                }
            }
        }
        for (i, u) in bases.iter().enumerate() {
            for v in &bases[i + 1..] {
                let (cu, cv) = (ford_circle(u), ford_circle(v));
                assert_eq!(tangent(&cu, &cv), tangent_geometric(&cu, &cv), "{u} {v}");
            }
        }
    }

    #[test]
    fn horo_radius_examples() {
        assert_eq!(horo_radius(&q(0, 1), &q(1, 2)), Ok(rat(1, 8)));
        assert_eq!(horo_radius(&q(5, 7), &q(5, 7)), Ok(rat(0, 1)));
        let r = horo_radius_approx(&q(2, 1), &sqrt2()).unwrap();
        let want = 0.171_572_875_253_809_9;
        assert!((crate::exact::rational_to_f64(r.mid()) - want).abs() < 1e-15);
        assert!(r.rad() < &rat(1, 1_000_000_000));
        // Tangent to C_v exactly when u, v are neighbours.
        let (u, v) = (q(2, 3), q(3, 4));
        assert_eq!(horo_radius(&u, &v).unwrap(), *ford_circle(&v).radius().unwrap());
    }

    #[test]
    fn strong_approximant_examples() {
        let x = sqrt2();
        assert_eq!(is_strong_approximant(&q(3, 2), &x), Ok(true));
        assert_eq!(is_strong_approximant(&q(2, 1), &x), Ok(true));
        assert_eq!(is_strong_approximant(&q(4, 1), &x), Ok(false));
        assert_eq!(is_strong_approximant(&q(0, 1), &x), Ok(false));
        assert!(is_strong_approximant(&q(1, 1), &x).is_err());
        assert!(is_strong_approximant(&ExtRational::infinity(), &x).is_err());
    }

    #[test]
    fn certificate_examples() {
        let eps = BigRational::new(1.into(), BigInt::from(10).pow(20));
        let near = ApproxReal::new(rat(8, 3) - &eps, eps.clone() / BigRational::from_integer(2.into())).unwrap();
        assert_eq!(convergent_certificate(&q(2, 1), &near), Ok(Some(q(3, 1))));
        let x = sqrt2();
        assert_eq!(convergent_certificate(&q(3, 2), &x), Ok(Some(q(1, 1))));
        assert_eq!(convergent_certificate(&q(0, 1), &x), Ok(None));
        assert!(convergent_certificate(&q(3, 5), &x).is_err());
        let wide = ApproxReal::new(rat(1, 1), rat(1, 10)).unwrap();
        assert!(matches!(convergent_certificate(&q(2, 1), &wide), Err(ApproxError::Undecidable(_))));
    }

    #[test]
    fn both_characterisations_agree_on_sqrt2() {
        let x = sqrt2();
        let convergents = crate::eicf::expand_approx(&x, 12).unwrap().convergents(12).unwrap();
        for u in enumerate_inf_rationals(20, &q(-1, 1), &q(3, 1)).unwrap() {
            let is_conv = convergents.contains(&u);
            assert_eq!(is_strong_approximant(&u, &x), Ok(is_conv), "{u}");
            assert_eq!(convergent_certificate(&u, &x).unwrap().is_some(), is_conv, "{u}");
        }
    }
}
