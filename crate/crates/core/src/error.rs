use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {what} (n = {n}, k = {k})")]
    OutOfRange { what: &'static str, n: usize, k: usize },

    #[error("{formula} is only stated for n >= {min}, got n = {n}")]
    Domain {
        formula: &'static str,
        min: usize,
        n: usize,
    },

    #[error("table holds rows up to {have}, row {need} is required")]
    TableTooSmall { have: usize, need: usize },

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("division by the zero series")]
    ZeroSeries,

    #[error("no power-series quotient: numerator valuation {num} is below denominator valuation {den}")]
    Valuation { num: usize, den: usize },

    #[error("invalid evaluation point: {0}")]
    Point(String),
}
