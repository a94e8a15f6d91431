//! Output rendering: exact fractions, rounded decimals, JSON and CSV records.

use std::str::FromStr;

use gregory_core::ExactRational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Frac,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Stirling1,
    Bernoulli2,
    Harmonic,
    ANk,
    DerivCoeffs,
    Crosscheck,
    Probe,
    Bench,
}

/// One emitted value. `value` is always the exact fraction (`p/q`, or `p`
/// when the denominator is 1); `decimal` is for humans only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputRecord {
    pub kind: Kind,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub method: Option<String>,
    pub value: String,
    pub decimal: Option<String>,
}

impl OutputRecord {
    pub fn new(kind: Kind, n: usize, k: Option<usize>, value: &ExactRational) -> Self {
        OutputRecord {
            kind,
            n: Some(n),
            k,
            method: None,
            value: fraction(value),
            decimal: None,
        }
    }

    pub fn with_method(mut self, method: impl Into<String>) -> Self {
        self.method = Some(method.into());
        self
    }

    pub fn with_digits(mut self, value: &ExactRational, digits: Option<usize>) -> Self {
        self.decimal = digits.map(|d| decimal(value, d));
        self
    }
}

pub fn fraction(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a fraction: `{0}`")]
pub struct ParseFractionError(pub String);

/// Parses `p` or `p/q` (with `q != 0`) into a normalized rational.
pub fn parse_fraction(s: &str) -> Result<ExactRational, ParseFractionError> {
    let err = || ParseFractionError(s.to_string());
    let (num, den) = match s.trim().split_once('/') {
        Some((a, b)) => (a, b),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(ExactRational::new(num, den))
}

/// `q` rounded half-to-even at `digits` places after the point.
pub fn decimal(q: &ExactRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let (mut quo, rem) = (q.numer().abs() * scale).div_rem(q.denom());
    let twice = rem * 2;
    if twice > *q.denom() || (twice == *q.denom() && quo.is_odd()) {
        quo += 1;
    }
    let sign = if q.is_negative() && !quo.is_zero() { "-" } else { "" };
    let mut body = quo.to_string();
    if digits == 0 {
        return format!("{sign}{body}");
    }
    if body.len() <= digits {
        body = format!("{}{body}", "0".repeat(digits + 1 - body.len()));
    }
    let (int, frac) = body.split_at(body.len() - digits);
    format!("{sign}{int}.{frac}")
}

/// A single record becomes an object, several become an array.
pub fn to_json<T: Serialize>(records: &[T]) -> String {
    let v = match records {
        [one] => serde_json::to_value(one),
        many => serde_json::to_value(many),
    }
    .expect("records serialize");
    serde_json::to_string_pretty(&v).unwrap()
}

pub fn to_csv<T: Serialize>(records: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r).expect("records serialize");
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
