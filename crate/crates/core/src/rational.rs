//! Exact rationals and their textual form.
//!
//! Every distance and constant is a [`BigRational`]. The accepted literal
//! forms are integers (`8`, `-3`), fractions (`2/3`) and terminating decimals
//! (`0.5`, `-1.25`); decimals are converted exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("repeating decimal `{0}` cannot be represented exactly; write it as a fraction")]
    Repeating(String),
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Shorthand for small literals in tests and generators.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    if s.contains("...") || s.contains('(') || s.contains('\u{2026}') {
        return Err(RationalParseError::Repeating(s.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num).ok_or_else(|| RationalParseError::Invalid(s.to_string()))?;
        let den = parse_unsigned(den).ok_or_else(|| RationalParseError::Invalid(s.to_string()))?;
        if den.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = whole.trim_start_matches(['-', '+']);
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Invalid(s.to_string()));
        }
        let whole_part = if digits.is_empty() {
            BigInt::zero()
        } else {
            parse_unsigned(digits).ok_or_else(|| RationalParseError::Invalid(s.to_string()))?
        };
        let frac_part =
            parse_unsigned(frac).ok_or_else(|| RationalParseError::Invalid(s.to_string()))?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let magnitude = Rational::new(whole_part * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    parse_integer(s)
        .map(Rational::from_integer)
        .ok_or_else(|| RationalParseError::Invalid(s.to_string()))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let value = parse_unsigned(digits)?;
    Some(if negative { -value } else { value })
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text: `p/q` in lowest terms, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn two() -> Rational {
    Rational::one() + Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("8").unwrap(), int(8));
        assert_eq!(parse_rational("2/3").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("-2/3").unwrap(), ratio(-2, 3));
    }

    #[test]
    fn rejects_repeating_and_garbage() {
        assert!(matches!(
            parse_rational("0.333..."),
            Err(RationalParseError::Repeating(_))
        ));
        assert!(matches!(
            parse_rational("0.(3)"),
            Err(RationalParseError::Repeating(_))
        ));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("2/-3").is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        for text in ["0", "7", "-7", "2/3", "-1/3", "11/12"] {
            let value = parse_rational(text).unwrap();
            assert_eq!(format_rational(&value), text);
        }
    }
}
