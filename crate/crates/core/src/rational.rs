//! Exact rational scalars.
//!
//! All endpoint arithmetic in this crate runs on arbitrary-precision
//! rationals so that repeated set operations never lose exactness: values
//! are always stored reduced with a positive denominator, and equality is
//! value equality. `BigInt` components keep deep constructions (thousands of
//! arcs with denominators like `lambda^12`) overflow-free.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds `n/d`. Panics on `d == 0`; intended for literals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Fractional part in `[0, 1)`.
pub fn mod_one(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses a rational literal, either `p/q` or a bare integer `p`.
///
/// Float literals are rejected: exact inputs stay exact end to end.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse(0, "empty rational literal"));
    }
    if t.contains('.') {
        return Err(Error::parse(
            s.find('.').unwrap_or(0),
            format!("float literal {t:?} not accepted; write an exact fraction p/q"),
        ));
    }
    t.parse::<Rational>()
        .map_err(|e| Error::parse(0, format!("bad rational {t:?}: {e}")))
}

/// Formats as `p/q` even when the denominator is one, matching the set
/// literal grammar (`0/1+1/2`).
pub fn frac_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Nearest dyadic rational `k / 2^bits` to a positive float. Used where a
/// float-specified grid has to enter the exact pipeline.
pub fn dyadic_from_f64(x: f64, bits: u32) -> Result<Rational> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::range("grid value", format!("{x} is not a positive finite number")));
    }
    let scale = BigInt::one() << bits;
    let scaled = x * 2f64.powi(bits as i32);
    let k = BigInt::from(scaled.round() as i128);
    let k = if k.is_zero() { BigInt::one() } else { k };
    Ok(Rational::new(k, scale))
}

/// True when `x` is an integer power of two (used by raster validation).
pub fn is_power_of_two(n: usize) -> bool {
    n != 0 && (n & (n - 1)) == 0
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        let x = parse_rational("6/8").unwrap();
        assert_eq!(x, rat(3, 4));
        let y = parse_rational("-2/-4").unwrap();
        assert_eq!(y, rat(1, 2));
        assert_eq!(frac_string(&y), "1/2");
    }

    #[test]
    fn parse_rejects_floats_and_garbage() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("one/two").is_err());
    }

    #[test]
    fn mod_one_wraps_negatives() {
        assert_eq!(mod_one(&rat(-1, 4)), rat(3, 4));
        assert_eq!(mod_one(&rat(9, 4)), rat(1, 4));
        assert_eq!(mod_one(&rat_int(3)), rat_int(0));
    }

    #[test]
    fn dyadic_round_trip_is_close() {
        let d = dyadic_from_f64(0.1, 20).unwrap();
        assert!((to_f64(&d) - 0.1).abs() < 1e-5);
    }
}
