//! Truncated formal power series with exact rational coefficients.
//!
//! A [`TruncatedSeries`] of order `N` carries the coefficients of
//! `x^0, ..., x^N`; everything above `x^N` is unknown and discarded. Ring
//! operations require equal orders and never extend the order. Division may
//! shrink it: cancelling a common factor `x^v` leaves only `N - v` known terms.

use num_traits::{One, Zero};

use crate::numeric::{factorial, integer, ratio, ExactRational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactRational>,
}

impl TruncatedSeries {
    /// Wraps coefficient list `coeffs` (index `j` is the coefficient of `x^j`).
    ///
    /// Panics on an empty list: the smallest series has order 0.
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| integer(c)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![ExactRational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = ExactRational::one();
        s
    }

    /// `x^j` at the given order (the zero series if `j > order`).
    pub fn monomial(order: usize, j: usize) -> Self {
        let mut s = Self::zero(order);
        if j <= order {
            s.coeffs[j] = ExactRational::one();
        }
        s
    }

    /// Mercator series of `ln(1 + x)`: coefficient of `x^j` is `(-1)^(j+1) / j`.
    pub fn log1p(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|j| match j {
                0 => ExactRational::zero(),
                _ if j % 2 == 1 => ratio(1, j),
                _ => ratio(-1, j),
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRational> {
        self.coeffs
    }

    /// Coefficient of `x^j`. Panics if `j > order`.
    pub fn coeff(&self, j: usize) -> &ExactRational {
        &self.coeffs[j]
    }

    /// Index of the lowest nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self::new(cauchy(&self.coeffs, &other.coeffs)))
    }

    /// `self^k` by repeated truncated multiplication; `k = 0` gives `1`.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = Self::new(cauchy(&acc.coeffs, &self.coeffs));
        }
        acc
    }

    /// Power-series quotient `self / den`.
    ///
    /// A common factor `x^v` (with `v` the valuation of `den`) is cancelled
    /// first, so the result has order `order - v`.
    pub fn div(&self, den: &Self) -> Result<Self> {
        self.check_order(den)?;
        let v_den = den.valuation().ok_or(Error::ZeroSeries)?;
        let order = self.order() - v_den;
        match self.valuation() {
            None => return Ok(Self::zero(order)),
            Some(v_num) if v_num < v_den => {
                return Err(Error::Valuation {
                    num: v_num,
                    den: v_den,
                })
            }
            Some(_) => {}
        }
        let num = &self.coeffs[v_den..];
        let den = &den.coeffs[v_den..];
        let lead = &den[0];
        let mut out: Vec<ExactRational> = Vec::with_capacity(order + 1);
        for j in 0..=order {
            let mut acc = num[j].clone();
            for i in 1..=j {
                if !den[i].is_zero() {
                    acc -= &den[i] * &out[j - i];
                }
            }
            out.push(acc / lead);
        }
        Ok(Self::new(out))
    }
}

fn cauchy(a: &[ExactRational], b: &[ExactRational]) -> Vec<ExactRational> {
    (0..a.len())
        .map(|j| {
            let mut acc = ExactRational::zero();
            for i in 0..=j {
                if !a[i].is_zero() && !b[j - i].is_zero() {
                    acc += &a[i] * &b[j - i];
                }
            }
            acc
        })
        .collect()
}

fn check_stirling_indices(n: usize, k: usize, order: usize) -> Result<()> {
    if k < 1 || k > n || n > order {
        return Err(Error::OutOfRange {
            what: "generating function needs 1 <= k <= n <= order",
            n,
            k,
        });
    }
    Ok(())
}

/// `s(n, k)` read off the generating function:
/// `n! * [x^n] (ln(1+x))^k / k!`, with the series expanded to `order`.
pub fn stirling_gf_coeff(n: usize, k: usize, order: usize) -> Result<ExactRational> {
    check_stirling_indices(n, k, order)?;
    let power = TruncatedSeries::log1p(order).pow(k);
    Ok(power.coeff(n) * integer(factorial(n)) / integer(factorial(k)))
}

/// All of `s(n, k)` for `1 <= k <= n <= max_n` from the generating function,
/// computing the powers of `ln(1+x)` incrementally.
///
/// `table[n][k]` holds `s(n, k)`; entries with `k = 0` or `k > n` are zero.
pub fn stirling_gf_table(max_n: usize) -> Vec<Vec<ExactRational>> {
    let log = TruncatedSeries::log1p(max_n);
    let mut table = vec![vec![ExactRational::zero(); max_n + 1]; max_n + 1];
    if max_n == 0 {
        table[0][0] = ExactRational::one();
        return table;
    }
    table[0][0] = ExactRational::one();
    let mut power = TruncatedSeries::one(max_n);
    let mut k_fact = ExactRational::one();
    let mut n_fact = vec![ExactRational::one(); max_n + 1];
    for n in 1..=max_n {
        n_fact[n] = &n_fact[n - 1] * integer(n);
    }
    for k in 1..=max_n {
        power = power.mul(&log).expect("equal orders");
        k_fact *= integer(k);
        for n in k..=max_n {
            table[n][k] = power.coeff(n) * &n_fact[n] / &k_fact;
        }
    }
    table
}

/// `b_0, ..., b_max_n` as the coefficients of `x / ln(1+x)`.
pub fn bernoulli2_series(max_n: usize) -> Vec<ExactRational> {
    // x cancels against ln(1+x), costing one order.
    let order = max_n + 1;
    let x = TruncatedSeries::monomial(order, 1);
    let q = x
        .div(&TruncatedSeries::log1p(order))
        .expect("ln(1+x) has valuation 1");
    debug_assert_eq!(q.order(), max_n);
    q.into_coeffs()
}
