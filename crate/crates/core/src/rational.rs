//! Exact rationals backed by `num_rational::BigRational`.
//!
//! Text form is `num/den` (or a bare integer). Decimal notation is rejected
//! on purpose: every probability handled by this crate is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_u128(value: u128) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn half() -> Rational {
    rational(1, 2)
}

/// Parses `"num/den"` or `"num"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::parse(1, "empty rational"));
    }
    if text.contains(['.', 'e', 'E']) {
        return Err(Error::parse(
            1,
            format!("`{text}` looks like a decimal; give the value as num/den"),
        ));
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(1, format!("bad numerator `{num}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(num_pos(text), format!("bad denominator `{den}`")))?;
    if den.is_zero() {
        return Err(Error::parse(num_pos(text), "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn num_pos(text: &str) -> usize {
    text.find('/').map_or(1, |i| i + 2)
}

/// Always `num/den`, even for integers, so the output is uniform.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational value of a finite double.
pub fn from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

pub fn is_strict_probability(value: &Rational) -> bool {
    value.is_positive() && value < &Rational::one()
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&format_rational(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|t| parse_rational(t).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&format_rational(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| parse_rational(&t).map_err(D::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/5").unwrap(), rational(3, 5));
        assert_eq!(parse_rational(" 6/10 ").unwrap(), rational(3, 5));
        assert_eq!(parse_rational("2").unwrap(), rational(2, 1));
        assert_eq!(parse_rational("-1/3").unwrap(), rational(-1, 3));
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        assert!(parse_rational("0.6").is_err());
        assert!(parse_rational("1e-3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_as_fraction() {
        assert_eq!(format_rational(&rational(4, 6)), "2/3");
        assert_eq!(format_rational(&rational(1, 1)), "1/1");
    }

    #[test]
    fn float_conversion_is_exact() {
        assert_eq!(from_f64(0.375).unwrap(), rational(3, 8));
    }
}
