//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Scalar`], an arbitrary precision
//! rational kept in lowest terms with a positive denominator. Text form is
//! `"p/q"`, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `(-1)^k`
pub fn sign(k: usize) -> Scalar {
    if k.is_multiple_of(2) {
        one()
    } else {
        -one()
    }
}

pub fn parse(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::parse(text, "expected a rational of the form \"p\" or \"p/q\"");
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::parse(text, "zero denominator"));
    }
    Ok(Scalar::new(num, den))
}

pub fn format(value: &Scalar) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub(crate) fn add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += coeff * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse(" 2/-4 ").unwrap(), frac(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("1.5").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format(&frac(-3, 6)), "-1/2");
        assert_eq!(format(&int(5)), "5");
        assert_eq!(format(&zero()), "0");
    }

    #[test]
    fn text_round_trip() {
        for (p, q) in [(0, 1), (1, 3), (-22, 7), (1_000_000_007, 3)] {
            let v = frac(p, q);
            assert_eq!(parse(&format(&v)).unwrap(), v);
        }
    }
}
