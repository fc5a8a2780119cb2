//! Exact scalar, polynomial, and quasi-polynomial arithmetic.
//!
//! Everything downstream (orthogonal polynomial families, differential
//! operators, ladder actions, structure functions) is represented over
//! arbitrary-precision rationals with zero rounding. The three layers are
//!
//! - [`Rational`]: `num_rational::BigRational`, the ground-truth scalar,
//! - [`Poly`]: univariate polynomials with rational coefficients,
//! - [`QuasiPoly`]: `exp(lambda z) * prod_i (s_i (z - a_i))^{e_i} * poly`,
//!   closed under differentiation and under every operator in this crate.

pub mod poly;
pub mod quasi;

pub use poly::Poly;
pub use quasi::{FactorSpec, QuasiPoly, Sign};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision exact rational scalar; gcd-reduced, denominator > 0.
pub type Rational = num_rational::BigRational;

/// Rational from an integer pair; panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical text form: `p` for integers, `p/q` otherwise, with an
/// optional leading minus. Round-trips through [`parse_rational`].
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse an exact rational literal of the form `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse {
        detail: format!("invalid rational literal `{s}`"),
    };
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num_str.trim().parse().map_err(|_| err())?;
    let den: BigInt = den_str.trim().parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// True if `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of `r`, if it is one.
pub fn to_integer(r: &Rational) -> Option<BigInt> {
    is_integer(r).then(|| r.numer().clone())
}

/// Fixed-point decimal rendering with `places` digits after the point,
/// rounded half away from zero. Used by the spectrum table output.
pub fn rat_to_decimal(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = r * Rational::from_integer(scale);
    let num = scaled.numer();
    let den = scaled.denom();
    // round(num/den) half away from zero
    let twice = BigInt::from(2) * num;
    let mut q = num / den;
    let rem_twice = &twice - BigInt::from(2) * &q * den;
    if rem_twice.abs() >= den.abs().clone() {
        if num.is_negative() {
            q -= 1u32;
        } else {
            q += 1u32;
        }
    }
    let neg = q.is_negative();
    let digits = q.abs().to_string();
    let places = places as usize;
    let padded = if digits.len() <= places {
        format!("0{}{}", "0".repeat(places - digits.len()), digits)
    } else {
        digits
    };
    let split = padded.len() - places;
    format!(
        "{}{}.{}",
        if neg { "-" } else { "" },
        &padded[..split],
        &padded[split..]
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "3", "-7/2", "22/7", "-1"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
        // non-canonical input parses to canonical form
        assert_eq!(rat_to_string(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(rat_to_string(&parse_rational("5/-10").unwrap()), "-1/2");
    }

    #[test]
    fn rational_rejects_garbage() {
        for s in ["", "1/0", "a/b", "1.5", "1/2/3"] {
            assert!(parse_rational(s).is_err(), "should reject {s}");
        }
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_to_decimal(&rat(-1, 32), 12), "-0.031250000000");
        assert_eq!(rat_to_decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(rat_to_decimal(&rat(2, 3), 6), "0.666667");
        assert_eq!(rat_to_decimal(&rat_int(5), 2), "5.00");
    }
}
