//! Integer Möbius transformations, the theta group and its extension by the
//! reflection `z ↦ -z`.
//!
//! The theta group Θ is generated by `s(z) = -1/z` and `h(z) = z + 2`. It is
//! the set of determinant-one integer matrices congruent mod 2 to the identity
//! or to the antidiagonal matrix. Θ has index 3 in the modular group. The
//! extended group Θ̃ adds `r(z) = -z`, so `Θ̃ = Θ ∪ rΘ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::eicf::{expand_rational, Tail};
use crate::exact::{ApproxReal, ExtRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MobiusError {
    #[error("determinant must be +1 or -1, got {0}")]
    NotUnimodular(BigInt),
    #[error("transformation is not in the theta group")]
    NotInTheta,
    #[error("interval contains the pole of the transformation")]
    PoleInInterval,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// `z ↦ (a z + b) / (c z + d)` with `ad - bc = ±1`, stored up to the sign of
/// the whole matrix: the first nonzero entry among `c, d, a, b` is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMobius {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl IntMobius {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, MobiusError> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        let det = &a * &d - &b * &c;
        if det.abs() != BigInt::one() {
            return Err(MobiusError::NotUnimodular(det));
        }
        Ok(Self::canonical(a, b, c, d))
    }

    fn canonical(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let lead = [&c, &d, &a, &b]
            .into_iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_negative())
            .unwrap_or(false);
        if lead {
            IntMobius { a: -a, b: -b, c: -c, d: -d }
        } else {
            IntMobius { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        Self::canonical(1.into(), 0.into(), 0.into(), 1.into())
    }

    /// `z ↦ -1/z`
    pub fn s() -> Self {
        Self::canonical(0.into(), (-1).into(), 1.into(), 0.into())
    }

    /// `z ↦ z + 2`
    pub fn h() -> Self {
        Self::canonical(1.into(), 2.into(), 0.into(), 1.into())
    }

    /// `z ↦ z - 2`
    pub fn h_inv() -> Self {
        Self::canonical(1.into(), (-2).into(), 0.into(), 1.into())
    }

    /// `z ↦ -z`
    pub fn r() -> Self {
        Self::canonical((-1).into(), 0.into(), 0.into(), 1.into())
    }

    /// `z ↦ 1/z`
    pub fn t() -> Self {
        Self::canonical(0.into(), 1.into(), 1.into(), 0.into())
    }

    /// `z ↦ z + k`
    pub fn translation(k: impl Into<BigInt>) -> Self {
        Self::canonical(1.into(), k.into(), 0.into(), 1.into())
    }

    /// `z ↦ b + 1/z`, one step of a continued fraction.
    pub fn step(b: &BigInt) -> Self {
        Self::canonical(b.clone(), 1.into(), 1.into(), 0.into())
    }

    /// Inverse of [`IntMobius::step`]: `z ↦ 1/(z - b)`.
    pub fn step_inv(b: &BigInt) -> Self {
        Self::canonical(0.into(), 1.into(), 1.into(), -b)
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Matrix product `self · other`, i.e. `self ∘ other` as maps.
    pub fn compose(&self, other: &Self) -> Self {
        Self::canonical(
            &self.a * &other.a + &self.b * &other.c,
            &self.a * &other.b + &self.b * &other.d,
            &self.c * &other.a + &self.d * &other.c,
            &self.c * &other.b + &self.d * &other.d,
        )
    }

    pub fn inverse(&self) -> Self {
        // adj(M) / det(M); det = ±1 and the overall sign is irrelevant.
        Self::canonical(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn apply(&self, q: &ExtRational) -> ExtRational {
        let (n, d) = (q.numer(), q.denom());
        let num = &self.a * n + &self.b * d;
        let den = &self.c * n + &self.d * d;
        // Unimodular maps send reduced pairs to reduced pairs, never to (0, 0).
        ExtRational::new(num, den).expect("unimodular image of a reduced pair")
    }

    fn apply_finite(&self, x: &BigRational) -> Option<BigRational> {
        let den = x * BigRational::from_integer(self.c.clone()) + BigRational::from_integer(self.d.clone());
        if den.is_zero() {
            return None;
        }
        Some((x * BigRational::from_integer(self.a.clone()) + BigRational::from_integer(self.b.clone())) / den)
    }

    /// Image of an interval. The pole `-d/c` must lie outside it.
    pub fn apply_approx(&self, x: &ApproxReal) -> Result<ApproxReal, MobiusError> {
        if !self.c.is_zero() {
            let pole = BigRational::new(-&self.d, self.c.clone());
            if x.contains(&pole) {
                return Err(MobiusError::PoleInInterval);
            }
        }
        let lo = self.apply_finite(&x.lo()).ok_or(MobiusError::PoleInInterval)?;
        let hi = self.apply_finite(&x.hi()).ok_or(MobiusError::PoleInInterval)?;
        Ok(ApproxReal::from_bounds(lo, hi))
    }

    /// The pole `-d/c`, or infinity when `c = 0`.
    pub fn pole(&self) -> ExtRational {
        ExtRational::new(-&self.d, self.c.clone()).expect("unimodular matrix has a nonzero column")
    }

    pub fn in_theta(&self) -> bool {
        if self.det() != BigInt::one() {
            return false;
        }
        let [a, b, c, d] = self.entries().map(|x| x.is_odd());
        (a && !b && !c && d) || (!a && b && c && !d)
    }

    pub fn in_extended_theta(&self) -> bool {
        self.in_theta() || self.twist().in_theta()
    }

    /// `r ∘ self`: the top row negated.
    fn twist(&self) -> Self {
        Self::canonical(-&self.a, -&self.b, self.c.clone(), self.d.clone())
    }

    /// A word in `S`, `H`, `H-` whose value is `self`.
    ///
    /// With `u_b(z) = b - 1/z = h^{b/2} s(z)`, a finite expansion
    /// `[b1, ..., bk]` of `self(∞)` gives `u_{b1} u_{-b2} u_{b3} ⋯ (∞) = self(∞)`.
    /// What is left fixes ∞ inside Θ and is therefore a power of `h`.
    pub fn decompose(&self) -> Result<GeneratorWord, MobiusError> {
        if !self.in_theta() {
            return Err(MobiusError::NotInTheta);
        }
        let target = self.apply(&ExtRational::infinity());
        let seq = expand_rational(&target);
        debug_assert_eq!(seq.tail(), Tail::None);
        let mut word = Vec::new();
        for (i, b) in seq.terms().iter().enumerate() {
            let b = if i % 2 == 0 { b.clone() } else { -b };
            push_translation(&mut word, &(b / 2));
            word.push(Generator::S);
        }
        let prefix = GeneratorWord(word.clone()).eval();
        let rest = prefix.inverse().compose(self);
        // rest = ±[[1, 2k], [0, 1]]
        debug_assert!(rest.c.is_zero() && rest.a == rest.d);
        let shift = &rest.b * &rest.a;
        debug_assert!(shift.is_even());
        push_translation(&mut word, &(shift / 2));
        Ok(GeneratorWord(word))
    }
}

fn push_translation(word: &mut Vec<Generator>, k: &BigInt) {
    let g = if k.is_negative() { Generator::HInv } else { Generator::H };
    let mut n = k.abs();
    while n.is_positive() {
        word.push(g);
        n -= 1;
    }
}

impl fmt::Display for IntMobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for IntMobius {
    type Err = MobiusError;

    /// Row-major `"a b c d"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<BigInt> = s
            .split_whitespace()
            .map(|p| p.parse::<BigInt>())
            .collect::<Result<_, _>>()
            .map_err(|_| MobiusError::Parse(s.to_string()))?;
        match parts.as_slice() {
            [a, b, c, d] => IntMobius::new(a.clone(), b.clone(), c.clone(), d.clone()),
            _ => Err(MobiusError::Parse(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `z ↦ -1/z`
    S,
    /// `z ↦ z + 2`
    H,
    /// `z ↦ z - 2`
    HInv,
    /// `z ↦ -z`
    R,
    /// `z ↦ 1/z`
    T,
}

impl Generator {
    pub fn matrix(self) -> IntMobius {
        match self {
            Generator::S => IntMobius::s(),
            Generator::H => IntMobius::h(),
            Generator::HInv => IntMobius::h_inv(),
            Generator::R => IntMobius::r(),
            Generator::T => IntMobius::t(),
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Generator::S => "S",
            Generator::H => "H",
            Generator::HInv => "H-",
            Generator::R => "R",
            Generator::T => "T",
        }
    }
}

impl FromStr for Generator {
    type Err = MobiusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" => Ok(Generator::S),
            "H" => Ok(Generator::H),
            "H-" => Ok(Generator::HInv),
            "R" => Ok(Generator::R),
            "T" => Ok(Generator::T),
            _ => Err(MobiusError::Parse(s.to_string())),
        }
    }
}

/// A word over the generators, evaluated left to right as a composition:
/// `[g1, g2]` is `g1 ∘ g2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn eval(&self) -> IntMobius {
        self.0
            .iter()
            .fold(IntMobius::identity(), |acc, g| acc.compose(&g.matrix()))
    }

    pub fn is_theta_word(&self) -> bool {
        self.0
            .iter()
            .all(|g| matches!(g, Generator::S | Generator::H | Generator::HInv))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<&str> = self.0.iter().map(|g| g.token()).collect();
        f.write_str(&tokens.join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = MobiusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(Generator::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(GeneratorWord)
    }
}
