//! Arbitrary-precision integers and normalized rationals, factorials and
//! harmonic numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ExactInteger = BigInt;

/// Always stored in lowest terms with a positive denominator; zero is `0/1`.
pub type ExactRational = BigRational;

/// `n!`.
pub fn factorial(n: usize) -> ExactInteger {
    (2..=n).fold(ExactInteger::one(), |acc, i| acc * i)
}

/// Factorials `0!, 1!, ..., n!`.
pub fn factorials(n: usize) -> Vec<ExactInteger> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ExactInteger::one();
    out.push(acc.clone());
    for i in 1..=n {
        acc *= i;
        out.push(acc.clone());
    }
    out
}

/// `H(n) = 1 + 1/2 + ... + 1/n`, summed directly with reduction after each
/// term. `H(0) = 0`.
pub fn harmonic(n: usize) -> ExactRational {
    let mut acc = ExactRational::zero();
    for k in 1..=n {
        acc += ratio(1, k);
    }
    debug_assert!(is_normalized(&acc));
    acc
}

/// Builds `num / den` in lowest terms. Panics if `den == 0`.
pub fn ratio(num: impl Into<ExactInteger>, den: impl Into<ExactInteger>) -> ExactRational {
    let q = ExactRational::new(num.into(), den.into());
    debug_assert!(is_normalized(&q));
    q
}

pub fn integer(v: impl Into<ExactInteger>) -> ExactRational {
    ExactRational::from_integer(v.into())
}

/// `(-1)^e` as an exact integer.
pub fn sign_pow(e: usize) -> ExactInteger {
    if e % 2 == 0 {
        ExactInteger::one()
    } else {
        -ExactInteger::one()
    }
}

pub fn is_normalized(q: &ExactRational) -> bool {
    let (n, d) = (q.numer(), q.denom());
    d.is_positive() && n.gcd(d).is_one()
}

/// Returns the integer value of `q`, or `None` if its denominator is not 1.
pub fn to_integer(q: &ExactRational) -> Option<ExactInteger> {
    q.is_integer().then(|| q.numer().clone())
}
