//! Exact rational numbers.
//!
//! Every valued quantity (budgets, prices, weights, bundle values) is a
//! [`Rational`]. Values always cross file boundaries as strings of the form
//! `"3/2"` or `"3"`, never as binary floats.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    assert!(denom != 0, "zero denominator");
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"a/b"` or `"a"` exactly. Surrounding whitespace is ignored.
pub fn parse(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let bad = || Error::Rational(text.to_string());
    let (numer, denom) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let numer: BigInt = numer.parse().map_err(|_| bad())?;
    let denom: BigInt = denom.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::Rational(format!("{text} (zero denominator)")));
    }
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise, lowest terms.
pub fn format(value: &Rational) -> String {
    value.to_string()
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

/// Serde adapter for a single rational stored as a string.
pub mod as_string {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(D::Error::custom)
    }
}

/// Serde adapter for a vector of rationals stored as strings.
pub mod vec_as_string {
    use super::Rational;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for value in values {
            seq.serialize_element(&super::format(value))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| super::parse(t).map_err(D::Error::custom))
            .collect()
    }
}
