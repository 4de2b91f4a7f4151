use super::{EicfError, EicfSeq};
use crate::exact::ExtRational;
use crate::farey::FareyInterval;

/// Farey interval certain to contain every later convergent and the value
/// of `s`.
///
/// With consecutive convergents `u = w_n` and `w = w_{n+1}`, the two common
/// Farey-graph neighbours of `u` and `w` are `(p_n ± p_{n+1}) / (q_n ± q_{n+1})`.
/// Both are 1-rationals; the one not between `u` and `w` is the far
/// endpoint `v`, and the result is the interval between `u` and `v`.
pub fn enclosure(s: &EicfSeq, n: usize) -> Result<FareyInterval, EicfError> {
    if n == 0 {
        return Err(EicfError::InsufficientTerms { needed: 1, available: 0 });
    }
    let pairs: Vec<_> = s.convergent_pairs().skip(n - 1).take(2).collect();
    let [cur, next] = pairs.as_slice() else {
        return Err(EicfError::InsufficientTerms {
            needed: n + 1,
            available: s.available().unwrap_or(usize::MAX),
        });
    };
    let u = cur.value();
    let w = next.value();
    let plus = ExtRational::new(&cur.p + &next.p, &cur.q + &next.q).expect("odd denominator");
    let minus = ExtRational::new(&cur.p - &next.p, &cur.q - &next.q).expect("odd denominator");
    let strictly_between = |x: &ExtRational| {
        let lo_side = u.compare(x).expect("finite");
        let hi_side = x.compare(&w).expect("finite");
        lo_side == hi_side && lo_side != std::cmp::Ordering::Equal
    };
    let v = if strictly_between(&plus) { minus } else { plus };
    debug_assert!(!v.is_infinity_rational());
    let interval = if u.compare(&v).expect("finite").is_lt() {
        FareyInterval::new(u, v)
    } else {
        FareyInterval::new(v, u)
    };
    Ok(interval.expect("consecutive convergent and common neighbour are Farey neighbours"))
}
