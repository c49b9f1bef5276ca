//! Exact rational scalar used throughout the crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

/// `p / q` as an exact rational. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rint(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// Least common multiple of the denominators of `vals`; 1 for an empty slice.
/// Multiplying every value by the result yields integers.
pub fn denominator_lcm<'a>(vals: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for v in vals {
        let d = v.denom().abs();
        let g = num::integer::gcd(acc.clone(), d.clone());
        acc = acc / g * d;
    }
    acc
}

pub fn to_f64(v: &Rat) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Parse "p/q" or "p".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Render as "p/q", or "p" when the denominator is 1.
pub fn format_rat(v: &Rat) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Exact ceiling of log2 for a positive rational: smallest `k` with `v <= 2^k`.
pub fn ceil_log2(v: &Rat) -> i64 {
    assert!(v.is_positive(), "ceil_log2 needs a positive value");
    let mut k: i64 = 0;
    let two = rint(2);
    if *v <= rone() {
        let mut cur = rone();
        while *v <= &cur / &two {
            cur = &cur / &two;
            k -= 1;
        }
        k
    } else {
        let mut cur = rone();
        while cur < *v {
            cur = &cur * &two;
            k += 1;
        }
        k
    }
}

/// `2^k` as an exact rational (k may be negative).
pub fn pow2(k: i64) -> Rat {
    let two = rint(2);
    let mut acc = rone();
    if k >= 0 {
        for _ in 0..k {
            acc = &acc * &two;
        }
    } else {
        for _ in 0..(-k) {
            acc = &acc / &two;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_of_denominators() {
        let vals = [rat(1, 2), rat(3, 4), rat(5, 6)];
        let l = denominator_lcm(vals.iter());
        assert_eq!(l, BigInt::from(12));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rint(-7));
        assert_eq!(format_rat(&rat(6, 4)), "3/2");
        assert_eq!(format_rat(&rint(5)), "5");
    }

    #[test]
    fn log2_bounds() {
        assert_eq!(ceil_log2(&rint(8)), 3);
        assert_eq!(ceil_log2(&rint(9)), 4);
        assert_eq!(ceil_log2(&rat(1, 3)), -1);
        assert_eq!(ceil_log2(&rone()), 0);
        assert_eq!(pow2(-2), rat(1, 4));
    }
}
