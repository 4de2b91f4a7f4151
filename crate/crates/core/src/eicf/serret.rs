//! Sequence-level action of the extended theta group and detection of
//! equivalent tails.
//!
//! Two reals that are not ∞-rationals are equivalent under Θ̃ exactly when
//! their expansions eventually agree, possibly after negating one of them.
//! For truncated expansions only finite evidence is available, so a match is
//! reported together with the number of terms it rests on.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{steps, EicfError, EicfSeq, Tail};
use crate::mobius::{Generator, IntMobius};

/// `[b1, b2, ...]` ↦ `[-b1, -b2, ...]`, an expansion of the negated value.
pub fn negate(s: &EicfSeq) -> EicfSeq {
    EicfSeq {
        terms: s.terms.iter().map(|t| -t).collect(),
        tail: s.tail.negate(),
    }
}

/// Apply a generator of Θ̃ to the value of `s` by editing the sequence.
///
/// `H`/`H-` shift the first term by ±2, `R` negates, `T` prepends a zero or
/// removes a leading zero, and `S = R ∘ T`.
pub fn apply_generator_seq(s: &EicfSeq, gen: Generator) -> Result<EicfSeq, EicfError> {
    let s = if s.terms.is_empty() { s.unroll_one() } else { s.clone() };
    match gen {
        Generator::R => Ok(negate(&s)),
        Generator::S => Ok(negate(&apply_generator_seq(&s, Generator::T)?)),
        Generator::H | Generator::HInv => {
            let mut s = s;
            if let Some(first) = s.terms.first_mut() {
                *first += if gen == Generator::H { 2 } else { -2 };
            }
            Ok(s)
        }
        Generator::T => {
            let mut s = s;
            match s.terms.first() {
                None => Err(EicfError::EmptySequence),
                Some(b) if b.is_zero() => {
                    s.terms.remove(0);
                    Ok(s)
                }
                Some(_) => {
                    s.terms.insert(0, BigInt::zero());
                    Ok(s)
                }
            }
        }
    }
}

/// How many terms a tail match rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overlap {
    /// The suffixes agree on this many terms, after which one sequence ends.
    Terms(usize),
    /// Both suffixes end in the same alternating tail: they agree forever.
    Exact,
}

impl Overlap {
    fn at_least(self, min: usize) -> bool {
        match self {
            Overlap::Exact => true,
            Overlap::Terms(k) => k >= min,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMatch {
    /// `a[m + i] == b[n + i]` for all compared `i`.
    Direct { m: usize, n: usize, overlap: Overlap },
    /// `a[m + i] == -b[n + i]` for all compared `i`.
    Negated { m: usize, n: usize, overlap: Overlap },
    NoMatchWithinBounds,
}

/// Offsets worth trying: inside the explicit terms, plus two more steps into
/// an alternating tail so both of its phases are reachable.
fn offset_bound(s: &EicfSeq) -> usize {
    match s.tail {
        Tail::None => s.terms.len(),
        _ => s.terms.len() + 2,
    }
}

fn compare_suffixes(a: &EicfSeq, m: usize, b: &EicfSeq, n: usize, negated: bool) -> Option<Overlap> {
    let sign = |t: BigInt| if negated { -t } else { t };
    let (len_a, len_b) = (a.terms.len(), b.terms.len());
    let (count, overlap) = match (a.available(), b.available()) {
        (None, None) => {
            // Past both explicit parts, one more term in each tail fixes the phase.
            let k = len_a.saturating_sub(m).max(len_b.saturating_sub(n)) + 1;
            (k, Overlap::Exact)
        }
        (Some(la), Some(lb)) => {
            let k = la.saturating_sub(m).min(lb.saturating_sub(n));
            (k, Overlap::Terms(k))
        }
        (Some(la), None) => {
            let k = la.saturating_sub(m);
            (k, Overlap::Terms(k))
        }
        (None, Some(lb)) => {
            let k = lb.saturating_sub(n);
            (k, Overlap::Terms(k))
        }
    };
    let agree = a
        .iter_terms()
        .skip(m)
        .zip(b.iter_terms().skip(n).map(sign))
        .take(count)
        .all(|(x, y)| x == y);
    agree.then_some(overlap)
}

/// Search for offsets `m`, `n` at which the suffixes of `a` and `b` agree
/// directly or up to sign, on at least `min_overlap` terms or exactly.
///
/// Offsets are scanned by increasing `m + n`, then increasing `m`; at equal
/// offsets a direct match wins over a negated one.
pub fn tails_equivalent(a: &EicfSeq, b: &EicfSeq, min_overlap: usize) -> TailMatch {
    let min_overlap = min_overlap.max(1);
    let (bound_a, bound_b) = (offset_bound(a), offset_bound(b));
    for total in 0..(bound_a + bound_b).saturating_sub(1) {
        for m in 0..=total.min(bound_a.saturating_sub(1)) {
            let n = total - m;
            if n >= bound_b {
                continue;
            }
            if let Some(overlap) = compare_suffixes(a, m, b, n, false) {
                if overlap.at_least(min_overlap) {
                    return TailMatch::Direct { m, n, overlap };
                }
            }
            if let Some(overlap) = compare_suffixes(a, m, b, n, true) {
                if overlap.at_least(min_overlap) {
                    return TailMatch::Negated { m, n, overlap };
                }
            }
        }
    }
    TailMatch::NoMatchWithinBounds
}

/// The element `g` of Θ̃ carrying the value of `a` to the value of `b`, given
/// matching offsets: `g = t_{b1} ⋯ t_{bn} t_{am}^{-1} ⋯ t_{a1}^{-1}`, preceded
/// by `r(z) = -z` when the tails match up to sign.
pub fn witness_transformation(
    a: &EicfSeq,
    b: &EicfSeq,
    m: usize,
    n: usize,
    negated: bool,
) -> Result<IntMobius, EicfError> {
    let fits = |s: &EicfSeq, k: usize| s.available().is_none_or(|len| k <= len);
    if !fits(a, m) || !fits(b, n) {
        return Err(EicfError::InvalidOffsets { m, n });
    }
    let a = if negated { negate(a) } else { a.clone() };
    let from_a = steps(a.iter_terms().take(m).collect::<Vec<_>>().iter());
    let to_b = steps(b.iter_terms().take(n).collect::<Vec<_>>().iter());
    let g = to_b.compose(&from_a.inverse());
    Ok(if negated { g.compose(&IntMobius::r()) } else { g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExtRational;

    fn seq(t: &[i64], tail: Tail) -> EicfSeq {
        EicfSeq::from_i64(t, tail).unwrap()
    }

    fn fin(t: &[i64]) -> EicfSeq {
        seq(t, Tail::None)
    }

    fn q(n: i64, d: i64) -> ExtRational {
        ExtRational::new(n, d).unwrap()
    }

    #[test]
    fn negate_examples() {
        let s = negate(&fin(&[2, 2, -2]));
        assert_eq!(s, fin(&[-2, -2, 2]));
        assert_eq!(s.eval_finite().unwrap(), q(-8, 3));
        assert_eq!(negate(&fin(&[])), fin(&[]));
        let one = negate(&seq(&[0], Tail::AltPlus));
        assert_eq!(one, seq(&[0], Tail::AltMinus));
        assert_eq!(one.value(), q(-1, 1));
    }

    #[test]
    fn generator_examples() {
        let s = fin(&[2, 2, -2]);
        let h = apply_generator_seq(&s, Generator::H).unwrap();
        assert_eq!(h, fin(&[4, 2, -2]));
        assert_eq!(h.eval_finite().unwrap(), q(14, 3));
        let t = apply_generator_seq(&s, Generator::T).unwrap();
        assert_eq!(t, fin(&[0, 2, 2, -2]));
        assert_eq!(t.eval_finite().unwrap(), q(3, 8));
        assert_eq!(apply_generator_seq(&t, Generator::T).unwrap(), s);
        assert_eq!(apply_generator_seq(&fin(&[]), Generator::T), Err(EicfError::EmptySequence));
        assert_eq!(apply_generator_seq(&fin(&[]), Generator::H).unwrap(), fin(&[]));
        let tailed = seq(&[], Tail::AltPlus);
        assert_eq!(apply_generator_seq(&tailed, Generator::H).unwrap(), seq(&[4], Tail::AltMinus));
    }

    #[test]
    fn tails_equivalent_examples() {
        let a = fin(&[2, 2, -2, 4, 6]);
        let b = fin(&[-8, -2, 4, 6]);
        assert_eq!(
            tails_equivalent(&a, &b, 2),
            TailMatch::Direct { m: 2, n: 1, overlap: Overlap::Terms(3) }
        );
        assert_eq!(
            tails_equivalent(&a, &b, 3),
            TailMatch::Direct { m: 2, n: 1, overlap: Overlap::Terms(3) }
        );
        assert_eq!(tails_equivalent(&a, &b, 4), TailMatch::NoMatchWithinBounds);
        assert_eq!(
            tails_equivalent(&a, &a, 1),
            TailMatch::Direct { m: 0, n: 0, overlap: Overlap::Terms(5) }
        );
        let x = seq(&[2], Tail::AltMinus);
        let y = seq(&[0], Tail::AltPlus);
        assert!(matches!(
            tails_equivalent(&x, &y, 10),
            TailMatch::Direct { overlap: Overlap::Exact, .. }
        ));
        assert_eq!(
            tails_equivalent(&a, &negate(&a), 5),
            TailMatch::Negated { m: 0, n: 0, overlap: Overlap::Terms(5) }
        );
    }

    #[test]
    fn witness_examples() {
        let s = fin(&[4, -2, 6]);
        assert_eq!(witness_transformation(&s, &s, 0, 0, false).unwrap(), IntMobius::identity());

        let a = fin(&[2, 2, -2]);
        let b = fin(&[2, -2]);
        let g = witness_transformation(&a, &b, 3, 2, false).unwrap();
        assert!(g.in_extended_theta());
        assert_eq!(g.apply(&q(8, 3)), q(3, 2));

        let g = witness_transformation(&fin(&[2]), &fin(&[-2]), 0, 0, true).unwrap();
        assert_eq!(g, IntMobius::r());
        assert_eq!(g.apply(&q(2, 1)), q(-2, 1));

        assert_eq!(
            witness_transformation(&a, &b, 4, 0, false),
            Err(EicfError::InvalidOffsets { m: 4, n: 0 })
        );
    }

    #[test]
    fn witness_maps_symbolic_values() {
        let x = seq(&[4, 6], Tail::AltPlus);
        let y = seq(&[-2, 6, 4], Tail::AltMinus);
        let y = apply_generator_seq(&y, Generator::T).unwrap();
        match tails_equivalent(&x, &y, 1) {
            TailMatch::Direct { m, n, .. } => {
                let g = witness_transformation(&x, &y, m, n, false).unwrap();
                assert_eq!(g.apply(&x.value()), y.value());
            }
            TailMatch::Negated { m, n, .. } => {
                let g = witness_transformation(&x, &y, m, n, true).unwrap();
                assert_eq!(g.apply(&x.value()), y.value());
            }
            TailMatch::NoMatchWithinBounds => panic!("both values are 1-rationals"),
        }
    }
}
