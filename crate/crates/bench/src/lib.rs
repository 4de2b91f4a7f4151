//! Inputs shared by the benchmarks.

use eicf_core::{ApproxReal, ExtRational};
use num_bigint::BigInt;

/// `F_{n+1} / F_n`, whose expansion is long for its size.
pub fn fibonacci_ratio(n: usize) -> ExtRational {
    let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
    for _ in 0..n {
        (a, b) = (&a + &b, a);
    }
    ExtRational::new(a, b).expect("positive denominator")
}

pub fn sqrt(n: u32, digits: u32) -> ApproxReal {
    ApproxReal::sqrt_of_integer(&BigInt::from(n), digits).expect("non-negative radicand")
}
