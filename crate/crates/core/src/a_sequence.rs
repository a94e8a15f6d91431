//! The auxiliary sequence `a(n, k)` for `n >= 1`, `2 <= k <= n + 1`.
//!
//! Two routes: the chained reciprocal sum
//! `a(n, k) = (k-1)! (n-1)! S_(k-2)(n-1)` (reference, small `n`) and the
//! Stirling relation `a(n, k) = (-1)^(n+k-1) (k-1)! s(n, k-1)` (production).
//! [`probe_row`] checks the shape of a row: peak positions, unimodality in
//! `k` and growth in `n`.

use serde::Serialize;

use crate::numeric::{factorial, integer, sign_pow, to_integer, ExactInteger};
use crate::stirling::{NestedSums, StirlingTriangle};
use crate::{Error, Execution, Result};

fn check_index(n: usize, k: usize) -> Result<()> {
    if n < 1 || k < 2 || k > n + 1 {
        return Err(Error::OutOfRange {
            what: "a(n, k) needs n >= 1 and 2 <= k <= n + 1",
            n,
            k,
        });
    }
    Ok(())
}

/// Rows `1..=max_n` of `a(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASequence {
    // rows[n - 1][k - 2]
    rows: Vec<Vec<ExactInteger>>,
}

impl ASequence {
    /// Builds the table from the Stirling relation. Rows are independent and
    /// computed according to `exec`.
    pub fn from_triangle(triangle: &StirlingTriangle, max_n: usize, exec: Execution) -> Result<Self> {
        triangle.require(max_n)?;
        let rows = exec.map_range(1, max_n, |n| {
            (2..=n + 1)
                .map(|k| a_from_stirling(n, k, triangle).expect("indices in range"))
                .collect()
        });
        Ok(ASequence { rows })
    }

    /// Builds the table from the chained reciprocal sums.
    pub fn from_nested_sums(max_n: usize) -> Self {
        let sums = NestedSums::new(max_n.saturating_sub(1), max_n.saturating_sub(1));
        let rows = (1..=max_n)
            .map(|n| (2..=n + 1).map(|k| a_from_chain(n, k, &sums)).collect())
            .collect();
        ASequence { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, n: usize, k: usize) -> Option<&ExactInteger> {
        if n == 0 || k < 2 {
            return None;
        }
        self.rows.get(n - 1).and_then(|row| row.get(k - 2))
    }

    /// Row `n` as `[a(n, 2), ..., a(n, n+1)]`.
    pub fn row(&self, n: usize) -> Option<&[ExactInteger]> {
        if n == 0 {
            return None;
        }
        self.rows.get(n - 1).map(Vec::as_slice)
    }

    pub(crate) fn require(&self, n: usize) -> Result<()> {
        if n > self.max_n() {
            return Err(Error::TableTooSmall {
                have: self.max_n(),
                need: n,
            });
        }
        Ok(())
    }
}

fn a_from_chain(n: usize, k: usize, sums: &NestedSums) -> ExactInteger {
    let v = integer(factorial(k - 1) * factorial(n - 1)) * sums.get(n - 1, k - 2);
    to_integer(&v).expect("a(n, k) is an integer")
}

/// `a(n, k) = (k-1)! (n-1)! S_(k-2)(n-1)`; for `k = 2` this is `(n-1)!`.
pub fn a_nested_sum(n: usize, k: usize) -> Result<ExactInteger> {
    check_index(n, k)?;
    let sums = NestedSums::new(n - 1, k - 2);
    Ok(a_from_chain(n, k, &sums))
}

/// `a(n, k) = (-1)^(n+k-1) (k-1)! s(n, k-1)`.
pub fn a_from_stirling(n: usize, k: usize, triangle: &StirlingTriangle) -> Result<ExactInteger> {
    check_index(n, k)?;
    let s = triangle.value(n, k - 1)?;
    Ok(sign_pow(n + k - 1) * factorial(k - 1) * s)
}

/// Checks `a(n,k) - n a(n-1,k) = (-1)^(n+k-1) (k-1)! [s(n-1,k-1) + s(n-1,k-2)]`
/// exactly, with `s(m, 0) = 0` for `m >= 1`.
pub fn a_difference_identity_check(n: usize, k: usize, triangle: &StirlingTriangle) -> Result<bool> {
    if n < 2 || k < 2 || k > n {
        return Err(Error::OutOfRange {
            what: "difference identity needs 2 <= k <= n",
            n,
            k,
        });
    }
    triangle.require(n)?;
    let lhs = a_from_stirling(n, k, triangle)? - a_from_stirling(n - 1, k, triangle)? * n;
    let bracket = triangle.value(n - 1, k - 1)? + triangle.value(n - 1, k - 2)?;
    let rhs = sign_pow(n + k - 1) * factorial(k - 1) * bracket;
    Ok(lhs == rhs)
}

/// Shape summary of one row of `a(n, ·)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    /// `a(n, 2), ..., a(n, n+1)`.
    #[serde(serialize_with = "ser_ints")]
    pub row: Vec<ExactInteger>,
    /// Values of `k` where the row attains its maximum.
    pub peak_indices: Vec<usize>,
    pub is_unimodal: bool,
    /// `a(n, k) >= a(n-1, k)` for every `k` shared with the previous row.
    pub increasing_in_n_ok: bool,
}

fn ser_ints<S: serde::Serializer>(v: &[ExactInteger], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Weakly rising up to one contiguous maximal plateau, weakly falling after it.
pub fn is_unimodal<T: Ord>(row: &[T]) -> bool {
    let Some(max) = row.iter().max() else {
        return true;
    };
    let first = row.iter().position(|v| v == max).unwrap();
    let last = row.iter().rposition(|v| v == max).unwrap();
    row[..=first].windows(2).all(|w| w[0] <= w[1])
        && row[first..=last].iter().all(|v| v == max)
        && row[last..].windows(2).all(|w| w[0] >= w[1])
}

/// Probes row `n`. The growth check compares against `previous` when given
/// and otherwise against row `n - 1` of `a`.
pub fn probe_row(n: usize, a: &ASequence, previous: Option<&ProbeReport>) -> Result<ProbeReport> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "probe needs n >= 1",
            n,
            k: 0,
        });
    }
    a.require(n)?;
    let row = a.row(n).unwrap().to_vec();
    let max = row.iter().max().unwrap();
    let peak_indices = row
        .iter()
        .enumerate()
        .filter(|(_, v)| *v == max)
        .map(|(i, _)| i + 2)
        .collect();
    let prev_row = match previous {
        Some(p) if p.n + 1 == n => Some(p.row.as_slice()),
        Some(p) => {
            return Err(Error::OutOfRange {
                what: "previous probe must be for row n - 1",
                n,
                k: p.n,
            })
        }
        None => a.row(n - 1),
    };
    let increasing_in_n_ok = prev_row.is_none_or(|prev| prev.iter().zip(&row).all(|(p, c)| c >= p));
    Ok(ProbeReport {
        n,
        is_unimodal: is_unimodal(&row),
        row,
        peak_indices,
        increasing_in_n_ok,
    })
}

/// Probes rows `1..=max_n`.
pub fn probe_all(a: &ASequence, max_n: usize, exec: Execution) -> Result<Vec<ProbeReport>> {
    a.require(max_n)?;
    Ok(exec.map_range(1, max_n, |n| probe_row(n, a, None).expect("row present")))
}
