//! Helpers around [`BigRational`], the exact scalar used throughout the
//! symbolic layer.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"` exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse {s:?} as a rational"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((int_part, frac)) = t.split_once('.') {
        if t.contains('/') || frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac);
        let mag = BigInt::from_str(&digits).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rat::new(mag, den);
        return Ok(if neg { -r } else { r });
    }
    let r = Rat::from_str(t).map_err(|_| bad())?;
    Ok(r)
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflow f64 on their own
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// `"p/q"` or `"p"` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn pow(r: &Rat, e: u32) -> Rat {
    num_traits::pow(r.clone(), e as usize)
}

/// `r^e` for a possibly negative exponent; panics on `0^e` with `e < 0`.
pub fn powi(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        pow(r, e as u32)
    } else {
        pow(&r.recip(), (-e) as u32)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rat("7/3").unwrap(), rat(7, 3));
        assert_eq!(parse_rat("-4").unwrap(), int(-4));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rat(" 6/4 ").unwrap(), rat(3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(fmt_rat(&rat(4, 6)), "2/3");
        assert_eq!(fmt_rat(&rat(-8, 4)), "-2");
        assert_eq!(fmt_rat(&powi(&rat(2, 3), -2)), "9/4");
    }
}
