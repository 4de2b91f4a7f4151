use eicf_core::eicf::{apply_generator_seq, negate, tails_equivalent, witness_transformation, TailMatch};
use eicf_core::{
    alternate_expansion, enclosure, expand_approx, expand_rational, expand_via_intervals, ApproxReal, EicfError,
    EicfSeq, ExtRational, Generator, GeneratorWord, Tail, VertexClass,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn first_term() -> impl Strategy<Value = i64> {
    (-5i64..=5).prop_map(|k| 2 * k)
}

fn later_term() -> impl Strategy<Value = i64> {
    prop_oneof![(1i64..=5).prop_map(|k| 2 * k), (1i64..=5).prop_map(|k| -2 * k)]
}

fn finite_seq(max_len: usize) -> impl Strategy<Value = EicfSeq> {
    (first_term(), prop::collection::vec(later_term(), 0..max_len)).prop_map(|(b1, rest)| {
        let terms: Vec<i64> = std::iter::once(b1).chain(rest).collect();
        EicfSeq::from_i64(&terms, Tail::None).unwrap()
    })
}

/// Sequences with no run of alternating ±2 at the end, so they model
/// expansions of irrationals.
fn irrational_like(len: usize) -> impl Strategy<Value = EicfSeq> {
    (first_term(), prop::collection::vec(later_term(), len - 1)).prop_map(|(b1, rest)| {
        let mut terms: Vec<i64> = std::iter::once(b1).chain(rest).collect();
        for t in terms.iter_mut().skip(1).step_by(3) {
            if t.abs() == 2 {
                *t *= 3;
            }
        }
        EicfSeq::from_i64(&terms, Tail::None).unwrap()
    })
}

fn extended_word() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(
        prop_oneof![Just(Generator::S), Just(Generator::H), Just(Generator::HInv), Just(Generator::R), Just(Generator::T)],
        0..=6,
    )
}

fn q(n: i64, d: i64) -> ExtRational {
    ExtRational::new(n, d).unwrap()
}

#[test]
fn rational_roundtrip_exhaustive() {
    for d in 1..=200i64 {
        for n in -200..=200i64 {
            if n.gcd(&d) != 1 || (n + d) % 2 == 0 {
                continue;
            }
            let x = q(n, d);
            let s = expand_rational(&x);
            assert!(s.is_finite());
            assert_eq!(s.eval_finite().unwrap(), x);
            for (i, b) in s.terms().iter().enumerate() {
                assert!(b.is_even());
                assert!(i == 0 || !b.is_zero());
            }
        }
    }
}

#[test]
fn one_rationals_have_exactly_two_expansions() {
    for d in 1..=50i64 {
        for n in -50..=50i64 {
            if n.gcd(&d) != 1 || n % 2 == 0 || d % 2 == 0 {
                continue;
            }
            let x = q(n, d);
            let xq = x.to_rational().unwrap();
            let a = expand_rational(&x);
            let b = alternate_expansion(&a).unwrap();
            assert_ne!(a, b);
            assert_eq!(a.value(), x);
            assert_eq!(b.value(), x);
            assert_eq!(alternate_expansion(&b).unwrap(), a);

            // Convergents close in on x from opposite sides.
            let side = |s: &EicfSeq| {
                let w = s.convergents(s.len() + 30).unwrap();
                let tail: Vec<_> = w[w.len() - 10..].iter().map(|c| c.to_rational().unwrap() - &xq).collect();
                assert!(tail.windows(2).all(|p| p[1].abs() < p[0].abs()));
                let sign = tail[0].signum();
                assert!(tail.iter().all(|t| t.signum() == sign));
                sign
            };
            assert_eq!(side(&a), -side(&b));

            // A tail [b2, b3, ...] has absolute value at least 1, so any
            // first term lies within 1 of x.
            let first = |s: &EicfSeq| s.iter_terms().next().unwrap();
            let bound = 2 * (n.abs() / d + 1);
            for b1 in (-bound..=bound).filter(|t| t % 2 == 0) {
                let rest = xq.clone() - BigRational::from_integer(b1.into());
                let admissible = rest.is_zero() || rest.abs() <= BigRational::one();
                let known = BigInt::from(b1) == first(&a) || BigInt::from(b1) == first(&b);
                assert!(!admissible || known, "{x}: unexpected first term {b1}");
            }
        }
    }
}

#[test]
fn sqrt_agreement_between_algorithms() {
    for n in [2, 3, 5, 6, 7, 10, 11, 13] {
        let x = ApproxReal::sqrt_of_integer(&BigInt::from(n), 40).unwrap();
        let a = expand_approx(&x, 20).unwrap();
        let b = expand_via_intervals(&x, 20).unwrap();
        assert_eq!(a, b, "sqrt({n})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convergents_are_unimodular(s in finite_seq(30)) {
        let pairs: Vec<_> = s.convergent_pairs().collect();
        for w in pairs.windows(2) {
            prop_assert_eq!(w[1].cross(&w[0]).abs(), BigInt::one());
        }
        for p in &pairs {
            prop_assert_eq!(p.value().classify(), VertexClass::InfinityRational);
        }
    }

    #[test]
    fn negation_is_an_involution(s in finite_seq(20)) {
        prop_assert_eq!(negate(&negate(&s)), s.clone());
        prop_assert_eq!(negate(&s).eval_finite().unwrap(), s.eval_finite().unwrap().neg());
    }

    #[test]
    fn generators_act_coherently(s in finite_seq(12), gen in prop_oneof![
        Just(Generator::S), Just(Generator::H), Just(Generator::HInv), Just(Generator::R), Just(Generator::T)
    ]) {
        prop_assume!(!s.is_empty());
        let moved = apply_generator_seq(&s, gen).unwrap();
        let want = GeneratorWord(vec![gen]).eval().apply(&s.eval_finite().unwrap());
        prop_assert_eq!(moved.eval_finite().unwrap(), want);
    }

    #[test]
    fn enclosures_shrink(s in irrational_like(40)) {
        let mut prev: Option<BigRational> = None;
        for n in 1..40 {
            let e = enclosure(&s, n).unwrap();
            if let Some(p) = &prev {
                prop_assert!(e.width() < *p);
            }
            prev = Some(e.width());
        }
        prop_assert!(prev.unwrap() < BigRational::new(1.into(), 1_000_000.into()));
    }

    #[test]
    fn equivalent_tails_are_found(s in irrational_like(30), word in extended_word()) {
        let mut moved = s.clone();
        for g in &word {
            moved = apply_generator_seq(&moved, *g).unwrap();
        }
        let (m, n, negated) = match tails_equivalent(&s, &moved, 10) {
            TailMatch::Direct { m, n, .. } => (m, n, false),
            TailMatch::Negated { m, n, .. } => (m, n, true),
            TailMatch::NoMatchWithinBounds => return Err(TestCaseError::fail("no match")),
        };
        let g = witness_transformation(&s, &moved, m, n, negated).unwrap();
        prop_assert!(g.in_extended_theta());
        prop_assert_eq!(g.apply(&s.eval_finite().unwrap()), moved.eval_finite().unwrap());
    }

    #[test]
    fn interval_algorithms_agree(
        digits in prop::collection::vec(0u8..10, 40),
        int_part in -20i64..=20,
    ) {
        let text: String = digits.iter().map(|d| char::from(b'0' + d)).collect();
        let x = ApproxReal::parse_decimal(&format!("{int_part}.{text}"), Some(40)).unwrap();
        // Either side may stop early on a straddled vertex; shared terms must agree.
        let terms = |r: Result<EicfSeq, EicfError>| match r {
            Ok(s) => s,
            Err(EicfError::PrecisionExhausted { produced }) | Err(EicfError::RationalHit { produced, .. }) => produced,
            Err(e) => panic!("{e}"),
        };
        let a = terms(expand_approx(&x, 20));
        let b = terms(expand_via_intervals(&x, 20));
        let k = a.len().min(b.len());
        prop_assert_eq!(a.prefix(k), b.prefix(k));
    }
}
