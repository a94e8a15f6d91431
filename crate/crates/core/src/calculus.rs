//! Closed-form n-th derivative of `1 / ln x`:
//!
//! `(1/ln x)^(n) = x^(-n) sum_{k=1}^{n} c_k (1/ln x)^(k+1)`, `c_k = (-1)^k k! s(n, k)`,
//!
//! with a central finite-difference check that shares no code with the
//! Stirling machinery.

use num_traits::{One, ToPrimitive, Zero};

use crate::numeric::{factorial, integer, sign_pow, ExactInteger, ExactRational};
use crate::stirling::StirlingTriangle;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeExpansion {
    pub n: usize,
    /// `(k, c_k)` for `k = 1..=n`.
    pub coeffs: Vec<(usize, ExactInteger)>,
}

pub fn reciprocal_log_derivative_coeffs(n: usize, triangle: &StirlingTriangle) -> Result<DerivativeExpansion> {
    if n < 1 {
        return Err(Error::Domain {
            formula: "derivative expansion of 1/ln x",
            min: 1,
            n,
        });
    }
    triangle.require(n)?;
    let coeffs = (1..=n)
        .map(|k| {
            let s = triangle.value(n, k).expect("row present");
            (k, sign_pow(k) * factorial(k) * s)
        })
        .collect();
    Ok(DerivativeExpansion { n, coeffs })
}

fn check_point(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Point(format!("x = {x} is outside the domain x > 0")));
    }
    if x == 1.0 {
        return Err(Error::Point("x = 1 is a pole of 1/ln x".into()));
    }
    Ok(())
}

/// Evaluates the expansion in double precision.
pub fn evaluate_expansion(e: &DerivativeExpansion, x: f64) -> Result<f64> {
    check_point(x)?;
    let inv_log = 1.0 / x.ln();
    let sum: f64 = e
        .coeffs
        .iter()
        .map(|(k, c)| c.to_f64().unwrap() * inv_log.powi(*k as i32 + 1))
        .sum();
    Ok(sum / x.powi(e.n as i32))
}

/// Offsets and weights of the second-order central stencil for the n-th
/// derivative on `2 * ceil(n/2) + 1` points.
///
/// Weights solve `sum_j w_j j^m = n! [m = n]` for `m = 0..=2p` exactly over
/// the rationals; divide by `h^n` when applying.
pub fn central_stencil(n: usize) -> Vec<(i64, f64)> {
    let p = n.div_ceil(2) as i64;
    let offsets: Vec<i64> = (-p..=p).collect();
    let size = offsets.len();
    // augmented Vandermonde system, rows m = 0..size
    let mut m: Vec<Vec<ExactRational>> = (0..size)
        .map(|row| {
            let mut r: Vec<ExactRational> = offsets
                .iter()
                .map(|&j| integer(ExactInteger::from(j).pow(row as u32)))
                .collect();
            r.push(if row == n { integer(factorial(n)) } else { ExactRational::zero() });
            r
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !m[r][col].is_zero()).expect("Vandermonde is nonsingular");
        m.swap(col, pivot);
        let lead = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &lead;
        }
        for r in 0..size {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=size {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    debug_assert!(m.iter().enumerate().all(|(i, r)| r[i].is_one()));
    offsets
        .into_iter()
        .zip(m)
        .map(|(j, row)| (j, row[size].to_f64().unwrap()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteDifferenceCheck {
    pub pass: bool,
    /// `|numeric - closed_form| / |closed_form|`.
    pub residual: f64,
    pub numeric: f64,
    pub closed_form: f64,
}

/// Compares the closed form at `x` with a central finite-difference estimate
/// of the n-th derivative of `1 / ln t`, for `1 <= n <= 6`.
pub fn finite_difference_check(n: usize, x: f64, h: f64, tol: f64) -> Result<FiniteDifferenceCheck> {
    if !(1..=6).contains(&n) {
        return Err(Error::OutOfRange {
            what: "finite-difference check supports 1 <= n <= 6",
            n,
            k: 0,
        });
    }
    if h <= 0.0 || !h.is_finite() {
        return Err(Error::Point(format!("step h = {h} must be positive")));
    }
    check_point(x)?;
    let stencil = central_stencil(n);
    let reach = stencil.last().unwrap().0 as f64 * h;
    let (lo, hi) = (x - reach, x + reach);
    if lo <= 0.0 || (lo <= 1.0 && 1.0 <= hi) {
        return Err(Error::Point(format!(
            "stencil [{lo}, {hi}] around x = {x} reaches t <= 0 or the pole at t = 1"
        )));
    }
    let f = |t: f64| 1.0 / t.ln();
    let numeric = stencil
        .iter()
        .map(|&(j, w)| w * f(x + j as f64 * h))
        .sum::<f64>()
        / h.powi(n as i32);
    let expansion = reciprocal_log_derivative_coeffs(n, &StirlingTriangle::new(n))?;
    let closed_form = evaluate_expansion(&expansion, x)?;
    let residual = ((numeric - closed_form) / closed_form).abs();
    Ok(FiniteDifferenceCheck {
        pass: residual <= tol,
        residual,
        numeric,
        closed_form,
    })
}
