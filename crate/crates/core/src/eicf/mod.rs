//! Even-integer continued fractions.
//!
//! An EICF `[b1, b2, ...]` is a sequence of even integers, all nonzero except
//! possibly `b1`, with value `b1 + 1/(b2 + 1/(b3 + ...))`. Its convergents
//! are the vertices of a path in the Farey tree starting at ∞. Infinite
//! expansions that end in the alternating pattern `2, -2, 2, ...` converge to
//! 1-rationals and are stored symbolically with a [`Tail`].

mod enclosure;
mod expand;
mod serret;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::ExtRational;
use crate::mobius::IntMobius;

pub use enclosure::enclosure;
pub use expand::{alternate_expansion, expand_approx, expand_rational, expand_via_intervals};
pub use serret::{
    apply_generator_seq, negate, tails_equivalent, witness_transformation, Overlap, TailMatch,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EicfError {
    #[error("term {index} ({value}) is invalid: {reason}")]
    InvalidTerm {
        index: usize,
        value: BigInt,
        reason: &'static str,
    },
    #[error("sequence has an infinite tail")]
    HasInfiniteTail,
    #[error("sequence has no alternating tail")]
    NoTail,
    #[error("need {needed} terms, only {available} available")]
    InsufficientTerms { needed: usize, available: usize },
    #[error("precision exhausted after {}", .produced)]
    PrecisionExhausted { produced: EicfSeq },
    #[error("input is exactly the vertex {value} (after {})", .produced)]
    RationalHit { value: ExtRational, produced: EicfSeq },
    #[error("empty sequence")]
    EmptySequence,
    #[error("offsets ({m}, {n}) are out of range")]
    InvalidOffsets { m: usize, n: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Symbolic periodic continuation of an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    None,
    /// `2, -2, 2, -2, ...` (value 1 on its own)
    AltPlus,
    /// `-2, 2, -2, 2, ...` (value -1 on its own)
    AltMinus,
}

impl Tail {
    pub fn negate(self) -> Tail {
        match self {
            Tail::None => Tail::None,
            Tail::AltPlus => Tail::AltMinus,
            Tail::AltMinus => Tail::AltPlus,
        }
    }

    fn first(self) -> Option<i64> {
        match self {
            Tail::None => None,
            Tail::AltPlus => Some(2),
            Tail::AltMinus => Some(-2),
        }
    }

    /// Value of the bare tail as a continued fraction.
    fn value(self) -> Option<ExtRational> {
        self.first().map(|f| ExtRational::integer(f / 2))
    }
}

/// An even-integer continued fraction: explicit terms plus an optional
/// alternating tail.
///
/// Equality is up to the tail absorbing matching trailing terms, so
/// `[2, (-2, 2)*]` equals `[(2, -2)*]`.
#[derive(Debug, Clone)]
pub struct EicfSeq {
    terms: Vec<BigInt>,
    tail: Tail,
}

impl EicfSeq {
    pub fn new(terms: Vec<BigInt>, tail: Tail) -> Result<Self, EicfError> {
        for (index, value) in terms.iter().enumerate() {
            if value.is_odd() {
                return Err(EicfError::InvalidTerm {
                    index,
                    value: value.clone(),
                    reason: "terms must be even",
                });
            }
            if index > 0 && value.is_zero() {
                return Err(EicfError::InvalidTerm {
                    index,
                    value: value.clone(),
                    reason: "only the first term may be zero",
                });
            }
        }
        Ok(EicfSeq { terms, tail })
    }

    pub fn finite(terms: Vec<BigInt>) -> Result<Self, EicfError> {
        Self::new(terms, Tail::None)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(terms: &[i64], tail: Tail) -> Result<Self, EicfError> {
        Self::new(terms.iter().map(|&t| BigInt::from(t)).collect(), tail)
    }

    pub fn empty() -> Self {
        EicfSeq { terms: Vec::new(), tail: Tail::None }
    }

    pub(crate) fn from_parts_unchecked(terms: Vec<BigInt>, tail: Tail) -> Self {
        debug_assert!(Self::new(terms.clone(), tail).is_ok());
        EicfSeq { terms, tail }
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn is_finite(&self) -> bool {
        self.tail == Tail::None
    }

    /// Number of explicit terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.tail == Tail::None
    }

    /// Number of terms available, `None` meaning unbounded.
    pub fn available(&self) -> Option<usize> {
        match self.tail {
            Tail::None => Some(self.terms.len()),
            _ => None,
        }
    }

    /// All terms, the tail materialized lazily.
    pub fn iter_terms(&self) -> Box<dyn Iterator<Item = BigInt> + '_> {
        let head = self.terms.iter().cloned();
        match self.tail.first() {
            None => Box::new(head),
            Some(f) => Box::new(
                head.chain([f, -f].into_iter().cycle().map(BigInt::from)),
            ),
        }
    }

    /// The `i`-th term (0-based) if available.
    pub fn term(&self, i: usize) -> Option<BigInt> {
        if let Some(t) = self.terms.get(i) {
            return Some(t.clone());
        }
        let f = self.tail.first()?;
        let j = i - self.terms.len();
        Some(BigInt::from(if j.is_multiple_of(2) { f } else { -f }))
    }

    /// The first `n` terms (fewer if the sequence is shorter) as a finite sequence.
    pub fn prefix(&self, n: usize) -> EicfSeq {
        EicfSeq {
            terms: self.iter_terms().take(n).collect(),
            tail: Tail::None,
        }
    }

    /// Equal sequence with trailing terms absorbed into the tail.
    pub fn canonical(&self) -> EicfSeq {
        let mut terms = self.terms.clone();
        let mut tail = self.tail;
        loop {
            let absorb = match (terms.last(), tail) {
                (Some(t), Tail::AltMinus) if *t == BigInt::from(2) => Tail::AltPlus,
                (Some(t), Tail::AltPlus) if *t == BigInt::from(-2) => Tail::AltMinus,
                _ => break,
            };
            terms.pop();
            tail = absorb;
        }
        EicfSeq { terms, tail }
    }

    /// Move one term out of the tail into the explicit terms.
    pub(crate) fn unroll_one(&self) -> EicfSeq {
        match self.tail.first() {
            None => self.clone(),
            Some(f) => {
                let mut terms = self.terms.clone();
                terms.push(BigInt::from(f));
                EicfSeq { terms, tail: self.tail.negate() }
            }
        }
    }

    /// Recurrence pairs `(p_n, q_n)` for `n = 1, 2, ...`.
    pub fn convergent_pairs(&self) -> impl Iterator<Item = ConvergentPair> + '_ {
        let seed = (
            ConvergentPair { p: BigInt::zero(), q: BigInt::one() },
            ConvergentPair { p: BigInt::one(), q: BigInt::zero() },
        );
        self.iter_terms().scan(seed, |(prev, cur), b| {
            let next = ConvergentPair {
                p: &b * &cur.p + &prev.p,
                q: &b * &cur.q + &prev.q,
            };
            *prev = std::mem::replace(cur, next.clone());
            Some(next)
        })
    }

    /// `t_{b1} ∘ ⋯ ∘ t_{bk}` over the explicit terms, where `t_b(z) = b + 1/z`.
    pub fn transformation(&self) -> IntMobius {
        steps(self.terms.iter())
    }

    /// Value of a finite sequence.
    pub fn eval_finite(&self) -> Result<ExtRational, EicfError> {
        if self.tail != Tail::None {
            return Err(EicfError::HasInfiniteTail);
        }
        Ok(match self.convergent_pairs().last() {
            None => ExtRational::infinity(),
            Some(pair) => pair.value(),
        })
    }

    /// Value of the sequence; for alternating tails this is the 1-rational limit.
    pub fn value(&self) -> ExtRational {
        match self.tail.value() {
            None => self.eval_finite().expect("finite"),
            Some(v) => self.transformation().apply(&v),
        }
    }

    /// The first `n` convergents.
    pub fn convergents(&self, n: usize) -> Result<Vec<ExtRational>, EicfError> {
        if let Some(available) = self.available() {
            if n > available {
                return Err(EicfError::InsufficientTerms { needed: n, available });
            }
        }
        Ok(self.convergent_pairs().take(n).map(|p| p.value()).collect())
    }
}

pub(crate) fn steps<'a>(terms: impl Iterator<Item = &'a BigInt>) -> IntMobius {
    terms.fold(IntMobius::identity(), |acc, b| acc.compose(&IntMobius::step(b)))
}

impl PartialEq for EicfSeq {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.terms == b.terms && a.tail == b.tail
    }
}

impl Eq for EicfSeq {}

impl fmt::Display for EicfSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        match self.tail {
            Tail::None => {}
            Tail::AltPlus => parts.push("(2,-2)*".to_string()),
            Tail::AltMinus => parts.push("(-2,2)*".to_string()),
        }
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for EicfSeq {
    type Err = EicfError;

    /// `[b1,...,bk]`, optionally ending in `(2,-2)*` or `(-2,2)*`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EicfError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (body, tail) = if let Some(b) = inner.strip_suffix("(2,-2)*") {
            (b, Tail::AltPlus)
        } else if let Some(b) = inner.strip_suffix("(-2,2)*") {
            (b, Tail::AltMinus)
        } else {
            (inner, Tail::None)
        };
        let body = match tail {
            Tail::None => body,
            _ if body.is_empty() => body,
            _ => body.strip_suffix(',').ok_or_else(bad)?,
        };
        let terms = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| t.parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        };
        EicfSeq::new(terms, tail)
    }
}

/// Unreduced convergent numerator and denominator from the recurrence
/// `p_n = b_n p_{n-1} + p_{n-2}`, `q_n = b_n q_{n-1} + q_{n-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentPair {
    pub p: BigInt,
    pub q: BigInt,
}

impl ConvergentPair {
    pub fn value(&self) -> ExtRational {
        ExtRational::new(self.p.clone(), self.q.clone()).expect("convergents are never 0/0")
    }

    /// `p_n q_{n-1} - p_{n-1} q_n`
    pub fn cross(&self, prev: &ConvergentPair) -> BigInt {
        &self.p * &prev.q - &prev.p * &self.q
    }
}
