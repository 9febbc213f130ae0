//! Arbitrary-precision rationals, always in lowest terms with positive
//! denominator (guaranteed by `num_rational::Ratio`).

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The coefficient field of the whole crate.
pub type Rat = BigRational;

/// Shorthand for an integer rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True if `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// `x` as an `i64`, if it is an integer that fits.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    let n = x.numer();
    i64::try_from(n.clone()).ok()
}

/// True if `x` is a non-negative integer or half-integer (`2x` a non-negative
/// integer), the quasi-integrability test for weights.
pub fn is_half_nonneg_integer(x: &Rat) -> bool {
    let two_x = x * rint(2);
    is_integer(&two_x) && !two_x.is_negative()
}

/// Renders `x` as `"num/den"` with the denominator always spelled out.
pub fn to_frac_string(x: &Rat) -> String {
    let mut s = x.numer().to_string();
    s.push('/');
    s.push_str(&x.denom().to_string());
    s
}

/// Parses `"num/den"` or a bare integer string.
pub fn from_frac_str(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.trim().parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

/// Floor of a rational as an `i64`. Panics if out of range.
pub fn floor_i64(x: &Rat) -> i64 {
    to_i64(&x.floor()).expect("floor out of i64 range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_string_round_trip() {
        let x = rat(-4480, 19683);
        assert_eq!(to_frac_string(&x), "-4480/19683");
        assert_eq!(from_frac_str("-4480/19683").unwrap(), x);
        assert_eq!(from_frac_str("7").unwrap(), rint(7));
        assert_eq!(from_frac_str("6/4").unwrap(), rat(3, 2));
        assert!(from_frac_str("1/0").is_none());
    }

    #[test]
    fn half_integer_test() {
        assert!(is_half_nonneg_integer(&rat(3, 2)));
        assert!(is_half_nonneg_integer(&rint(0)));
        assert!(!is_half_nonneg_integer(&rat(-1, 2)));
        assert!(!is_half_nonneg_integer(&rat(1, 3)));
    }
}
