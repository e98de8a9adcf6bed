//! Exact rational scalar type and parsing/printing helpers.
//!
//! Rationals are `num::rational::Ratio<i64>`: always in lowest terms with a
//! positive denominator. Everything this crate computes stays far inside the
//! `i64` range (pairings, norms and quadratic forms are bounded by a few
//! thousand), except K-type dimensions which use a wider accumulator in
//! `root_datum::dim_ktype`.

use num::rational::Ratio;
use num::{One, Signed};

pub type Rat = Ratio<i64>;

/// Shorthand constructor for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

/// Shorthand constructor for an integer rational.
pub fn int(n: i64) -> Rat {
    Ratio::from_integer(n)
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Render a rational as `p` or `p/q` (the wire format used in fixtures and
/// CLI output).
pub fn format_rat(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` (with optional surrounding whitespace).
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<i64>().ok().map(Ratio::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<i64>().ok()?;
            let d = d.trim().parse::<i64>().ok()?;
            if d == 0 {
                None
            } else {
                Some(Ratio::new(n, d))
            }
        }
    }
}

/// Exact integer square-root floor of a nonnegative rational bound: the
/// largest nonnegative integer `m` with `m^2 <= r`.
pub fn isqrt_floor(r: &Rat) -> i64 {
    assert!(!r.is_negative(), "isqrt_floor needs a nonnegative bound");
    let mut m: i64 = 0;
    while Rat::from_integer((m + 1) * (m + 1)) <= *r {
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use num::Zero;
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-4", "1/2", "-7/3", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(parse_rat("2/4"), Some(rat(1, 2)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("x"), None);
    }

    #[test]
    fn integer_sqrt_floor() {
        assert_eq!(isqrt_floor(&int(0)), 0);
        assert_eq!(isqrt_floor(&int(15)), 3);
        assert_eq!(isqrt_floor(&int(16)), 4);
        assert_eq!(isqrt_floor(&rat(312, 2)), 12);
    }

    #[test]
    fn zero_is_zero() {
        assert!(int(0).is_zero());
    }
}
