use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{steps, EicfError, EicfSeq, Tail};
use crate::exact::{nearest_even, ApproxReal, ExtRational};
use crate::farey::{locate, FareyError};
use crate::mobius::IntMobius;

/// The expansion of a rational by the nearest-even-integer algorithm.
///
/// ∞-rationals get their unique finite expansion. 1-rationals run into an
/// odd integer `m` after finitely many steps; that step is written as
/// `m - 1` followed by the tail `2, -2, 2, ...`. [`alternate_expansion`]
/// gives the other expansion.
pub fn expand_rational(q: &ExtRational) -> EicfSeq {
    if q.is_infinite() {
        return EicfSeq::empty();
    }
    let (mut a, mut b) = (q.numer().clone(), q.denom().clone());
    let mut terms = Vec::new();
    loop {
        if b == BigInt::from(1) && a.is_odd() {
            terms.push(a - 1);
            return EicfSeq::from_parts_unchecked(terms, Tail::AltPlus);
        }
        // 2 * floor((a + b) / 2b); never a tie here since a/b is not an odd integer.
        let e = (&a + &b).div_floor(&(&b * 2)) * 2;
        let rem = &a - &e * &b;
        terms.push(e);
        if rem.is_zero() {
            return EicfSeq::from_parts_unchecked(terms, Tail::None);
        }
        assert!(rem.abs() < b, "denominators must strictly decrease");
        // next value b / rem
        if rem.is_negative() {
            (a, b) = (-b, -rem);
        } else {
            (a, b) = (b, rem);
        }
    }
}

/// The other expansion of the 1-rational represented by a tailed sequence:
/// `[.., b_n, 2, -2, ..]` and `[.., b_n + 2, -2, 2, ..]` have the same value.
pub fn alternate_expansion(s: &EicfSeq) -> Result<EicfSeq, EicfError> {
    let c = s.canonical();
    if c.tail == Tail::None {
        return Err(EicfError::NoTail);
    }
    let c = if c.terms.is_empty() { c.unroll_one() } else { c };
    let mut terms = c.terms;
    let last = terms.last_mut().expect("nonempty after unrolling");
    let tail = match c.tail {
        Tail::AltPlus => {
            *last += 2;
            Tail::AltMinus
        }
        Tail::AltMinus => {
            *last -= 2;
            Tail::AltPlus
        }
        Tail::None => unreachable!(),
    };
    Ok(EicfSeq::from_parts_unchecked(terms, tail))
}

/// First `n` terms shared by every real in `x`, by the nearest-even algorithm
/// run on intervals.
///
/// An exact rational input is expanded with [`expand_rational`]; the result
/// then has fewer than `n` terms if the expansion is shorter.
pub fn expand_approx(x: &ApproxReal, n: usize) -> Result<EicfSeq, EicfError> {
    if x.is_exact() {
        return Ok(expand_rational(&x.mid_ext()).prefix(n));
    }
    let mut cur = x.clone();
    let mut terms: Vec<BigInt> = Vec::with_capacity(n);
    let exhausted = |terms: &Vec<BigInt>| EicfError::PrecisionExhausted {
        produced: EicfSeq::from_parts_unchecked(terms.clone(), Tail::None),
    };
    while terms.len() < n {
        let e = match (nearest_even(&cur.lo()), nearest_even(&cur.hi())) {
            (Some(l), Some(h)) if l == h => l,
            _ => return Err(exhausted(&terms)),
        };
        debug_assert!(terms.is_empty() || !e.is_zero());
        if terms.len() + 1 == n {
            terms.push(e);
            break;
        }
        // z ↦ 1 / (z - e); its pole e must not be in the interval.
        cur = match IntMobius::step_inv(&e).apply_approx(&cur) {
            Ok(next) => next,
            Err(_) => return Err(exhausted(&terms)),
        };
        terms.push(e);
    }
    Ok(EicfSeq::from_parts_unchecked(terms, Tail::None))
}

/// First `n` terms of the expansion of `x`, computed from the nested chain of
/// Farey intervals around `x` rather than by division.
///
/// Every interval in the chain with one 1-rational endpoint has an
/// ∞-rational endpoint that is a convergent of `x`. Consecutive distinct
/// such endpoints are the convergents in order; each term is recovered as
/// `T_{k-1}^{-1}(w_k)`.
pub fn expand_via_intervals(x: &ApproxReal, n: usize) -> Result<EicfSeq, EicfError> {
    let mut terms: Vec<BigInt> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(EicfSeq::empty());
    }
    let mut to_here = IntMobius::identity();
    let mut last: Option<ExtRational> = None;
    for step in locate(x) {
        let produced = || EicfSeq::from_parts_unchecked(terms.clone(), Tail::None);
        let interval = match step {
            Ok(i) => i,
            Err(FareyError::RationalHit(value)) => {
                return Err(EicfError::RationalHit { value, produced: produced() })
            }
            Err(_) => return Err(EicfError::PrecisionExhausted { produced: produced() }),
        };
        let (lo, hi) = (interval.lo(), interval.hi());
        let u = match (lo.is_infinity_rational(), hi.is_infinity_rational()) {
            (true, false) => lo.clone(),
            (false, true) => hi.clone(),
            _ => continue,
        };
        if last.as_ref() == Some(&u) {
            continue;
        }
        let b = to_here.inverse().apply(&u);
        assert!(
            b.is_integer() && b.numer().is_even(),
            "recorded endpoint {u} is not the next convergent"
        );
        let b = b.numer().clone();
        to_here = to_here.compose(&IntMobius::step(&b));
        debug_assert_eq!(to_here, steps(terms.iter().chain([&b])));
        terms.push(b);
        last = Some(u);
        if terms.len() == n {
            return Ok(EicfSeq::from_parts_unchecked(terms, Tail::None));
        }
    }
    unreachable!("locate only stops with an error")
}
