//! Exact truncated-power-series and polynomial arithmetic.
//!
//! Serialization schema: series are JSON objects
//! `{"ring": ..., "trunc": D, "coeffs": [...]}` with coefficients in
//! degree order from 0. Rationals encode as `[num, den]`, prime-field
//! residues as plain integers, and character-ring elements `a + bχ` as
//! `[a_enc, b_enc]`. Integers that do not fit in an `i64` encode as
//! decimal strings; both forms parse.

mod poly;
mod ring;
mod truncated;

pub use poly::PoincarePolynomial;
pub use ring::{Coeff, CoefficientRing};
pub use truncated::{
    char_invariant_part, integer_coefficients, series_from_product, TruncatedSeries,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} too large for exact modular arithmetic")]
    ModulusTooLarge(u64),
    #[error("coefficient rings differ: {left:?} vs {right:?}")]
    RingMismatch {
        left: CoefficientRing,
        right: CoefficientRing,
    },
    #[error("series has non-invertible constant term")]
    NonInvertibleConstant,
    #[error("element is not invertible in its ring")]
    NonInvertible,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("operation requires the character ring, found {found:?}")]
    CharacterRingExpected { found: CoefficientRing },
    #[error("operation requires rational coefficients, found {found:?}")]
    RationalsExpected { found: CoefficientRing },
    #[error("coefficient is not an integer")]
    NonIntegerCoefficient,
    #[error("malformed input: {0}")]
    Malformed(&'static str),
}

/// JSON encoding of a ring tag, shared by every serialized object.
pub fn ring_json(ring: CoefficientRing) -> Value {
    ring_to_json(ring)
}

pub(crate) fn ring_to_json(ring: CoefficientRing) -> Value {
    match ring {
        CoefficientRing::Rationals => json!("rationals"),
        CoefficientRing::PrimeField(p) => json!({ "prime_field": p }),
        CoefficientRing::CharacterRing => json!("character_ring"),
    }
}

pub(crate) fn ring_from_json(v: &Value) -> Result<CoefficientRing, SeriesError> {
    match v {
        Value::String(s) if s == "rationals" => Ok(CoefficientRing::Rationals),
        Value::String(s) if s == "character_ring" => Ok(CoefficientRing::CharacterRing),
        Value::Object(m) => {
            let p = m
                .get("prime_field")
                .and_then(Value::as_u64)
                .ok_or(SeriesError::Malformed("ring"))?;
            CoefficientRing::prime_field(p)
        }
        _ => Err(SeriesError::Malformed("ring")),
    }
}

fn bigint_to_json(n: &BigInt) -> Value {
    match i64::try_from(n.clone()) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Result<BigInt, SeriesError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or(SeriesError::Malformed("integer coefficient")),
        Value::String(s) => BigInt::from_str(s).map_err(|_| SeriesError::Malformed("integer string")),
        _ => Err(SeriesError::Malformed("integer coefficient")),
    }
}

fn rational_to_json(r: &BigRational) -> Value {
    Value::Array(vec![bigint_to_json(r.numer()), bigint_to_json(r.denom())])
}

fn rational_from_json(v: &Value) -> Result<BigRational, SeriesError> {
    let arr = v
        .as_array()
        .ok_or(SeriesError::Malformed("rational coefficient"))?;
    if arr.len() != 2 {
        return Err(SeriesError::Malformed("rational coefficient"));
    }
    let num = bigint_from_json(&arr[0])?;
    let den = bigint_from_json(&arr[1])?;
    if den == BigInt::from(0) {
        return Err(SeriesError::Malformed("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

pub(crate) fn coeff_to_json(c: &Coeff) -> Value {
    match c {
        Coeff::Rat(r) => {
            if r.denom().is_one() {
                bigint_to_json(r.numer())
            } else {
                rational_to_json(r)
            }
        }
        Coeff::Mod(x) => json!(x),
        Coeff::Char(a, b) => Value::Array(vec![rational_to_json(a), rational_to_json(b)]),
    }
}

pub(crate) fn coeff_from_json(ring: CoefficientRing, v: &Value) -> Result<Coeff, SeriesError> {
    match ring {
        CoefficientRing::Rationals => match v {
            Value::Array(_) => Ok(Coeff::Rat(rational_from_json(v)?)),
            _ => Ok(Coeff::Rat(BigRational::from_integer(bigint_from_json(v)?))),
        },
        CoefficientRing::PrimeField(_) => Ok(ring.from_bigint(&bigint_from_json(v)?)),
        CoefficientRing::CharacterRing => {
            let arr = v
                .as_array()
                .ok_or(SeriesError::Malformed("character coefficient"))?;
            if arr.len() != 2 {
                return Err(SeriesError::Malformed("character coefficient"));
            }
            Ok(Coeff::Char(
                rational_from_json(&arr[0])?,
                rational_from_json(&arr[1])?,
            ))
        }
    }
}
