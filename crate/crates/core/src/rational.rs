//! Exact rational arithmetic: the scalar type used for demands, positions,
//! thresholds and every oracle value.
//!
//! All comparisons in this crate are exact; decimal literals in input files
//! (`2.49`, `0.3`) are parsed as exact fractions, never as floats.

use num::bigint::BigInt;
use num::One;

use crate::error::Error;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator (guaranteed by `num::BigRational`).
pub type Rat = num::BigRational;

/// Shorthand for building a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rat {
    assert!(denom != 0, "zero denominator");
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational with value `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical `p/q` rendering; integers render without the denominator.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, plain integers, and decimal literals (`-3`, `7/2`, `2.49`)
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let err = |msg: &str| Error::Parse {
        line: 0,
        message: format!("{msg}: {s:?}"),
    };
    if s.is_empty() {
        return Err(err("empty rational"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if den <= BigInt::from(0) {
            return Err(err("denominator must be positive"));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.starts_with('-');
        let int_digits = int_part
            .trim_start_matches(['-', '+'])
            .parse::<BigInt>()
            .map_err(|_| err("bad integer part"))?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad fractional part"));
        }
        let frac_digits: BigInt = frac_part.parse().map_err(|_| err("bad fractional part"))?;
        let scale = BigInt::from(10).pow(frac_part.len() as u32);
        let magnitude = int_digits * &scale + frac_digits;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rat::new(signed, scale));
    }
    let n: BigInt = s.parse().map_err(|_| err("bad integer"))?;
    Ok(Rat::from_integer(n))
}

/// Serde adapter rendering rationals as exact `p/q` strings.
pub mod rat_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rat};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rational("2.49").unwrap(), rat(249, 100));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat_int(7));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("2.").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_in_lowest_terms() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&rat(6, 3)), "2");
        assert_eq!(format_rational(&rat(-4, 8)), "-1/2");
        assert_eq!(format_rational(&rat(0, 5)), "0");
    }
}
