//! Signed Stirling numbers of the first kind.
//!
//! [`StirlingTriangle`] built by `s(n+1, k) = s(n, k-1) - n s(n, k)` is the
//! canonical source. The nested harmonic sum, the column recurrence and the
//! closed forms are independent routes used to cross-check it.

use num_traits::{One, Signed, Zero};

use crate::numeric::{factorial, harmonic, integer, ratio, sign_pow, to_integer, ExactInteger, ExactRational};
use crate::{Error, Result};

/// Rows `0..=max_n` of the signed Stirling triangle; `rows[n][k] = s(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTriangle {
    rows: Vec<Vec<ExactInteger>>,
}

impl StirlingTriangle {
    pub fn new(max_n: usize) -> Self {
        let mut t = StirlingTriangle {
            rows: vec![vec![ExactInteger::one()]],
        };
        t.extend_to(max_n);
        t
    }

    /// Appends rows until `max_n` is present. Existing rows are untouched.
    pub fn extend_to(&mut self, max_n: usize) {
        while self.max_n() < max_n {
            let n = self.max_n();
            let prev = &self.rows[n];
            let mut next = Vec::with_capacity(n + 2);
            next.push(ExactInteger::zero());
            for k in 1..=n + 1 {
                let mut v = prev[k - 1].clone();
                if k <= n {
                    v -= &prev[k] * n;
                }
                next.push(v);
            }
            self.rows.push(next);
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n, k)`, or `None` unless `k <= n <= max_n`.
    pub fn get(&self, n: usize, k: usize) -> Option<&ExactInteger> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    pub fn row(&self, n: usize) -> Option<&[ExactInteger]> {
        self.rows.get(n).map(Vec::as_slice)
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

    /// `s(n, k)` with zero outside `0 <= k <= n`; errors only if row `n` is missing.
    pub(crate) fn value(&self, n: usize, k: usize) -> Result<ExactInteger> {
        self.require(n)?;
        Ok(self.get(n, k).cloned().unwrap_or_default())
    }
}

/// Memoized chained reciprocal sums
///
/// `S_d(u) = sum_{l1=1}^{u} 1/l1 sum_{l2=1}^{l1-1} 1/l2 ... sum_{ld=1}^{l(d-1)-1} 1/ld`
///
/// with `S_0(u) = 1` (no sums at all) and `S_d(u) = 0` when `d > u`.
/// Filled with `S_d(u) = S_d(u-1) + S_(d-1)(u-1) / u`.
#[derive(Debug, Clone)]
pub struct NestedSums {
    // table[d][u]
    table: Vec<Vec<ExactRational>>,
}

impl NestedSums {
    pub fn new(max_upper: usize, max_depth: usize) -> Self {
        let mut table = vec![vec![ExactRational::one(); max_upper + 1]];
        for d in 1..=max_depth {
            let mut row = vec![ExactRational::zero(); max_upper + 1];
            for u in 1..=max_upper {
                let step = &table[d - 1][u - 1] / integer(u);
                row[u] = &row[u - 1] + step;
            }
            table.push(row);
        }
        NestedSums { table }
    }

    pub fn get(&self, upper: usize, depth: usize) -> &ExactRational {
        &self.table[depth][upper]
    }
}

/// The same chained sum by literal enumeration of every strictly decreasing
/// chain `upper >= l1 > l2 > ... > ld >= 1`. Exponential; reference only.
pub fn nested_sum_direct(upper: usize, depth: usize) -> ExactRational {
    fn walk(limit: usize, depth: usize, acc: &ExactRational, total: &mut ExactRational) {
        if depth == 0 {
            *total += acc;
            return;
        }
        for l in 1..=limit {
            walk(l - 1, depth - 1, &(acc / integer(l)), total);
        }
    }
    let mut total = ExactRational::zero();
    walk(upper, depth, &ExactRational::one(), &mut total);
    total
}

fn check_nested(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange {
            what: "nested sum needs 1 <= k <= n",
            n,
            k,
        });
    }
    Ok(())
}

fn stirling_from_chain_sum(n: usize, k: usize, sum: &ExactRational) -> ExactInteger {
    let v = integer(sign_pow(n + k) * factorial(n - 1)) * sum;
    to_integer(&v).expect("chain sum times (n-1)! is an integer")
}

/// `s(n, k) = (-1)^(n+k) (n-1)! S_(k-1)(n-1)`, with the chained sum memoized.
pub fn stirling_nested_sum(n: usize, k: usize) -> Result<ExactInteger> {
    check_nested(n, k)?;
    let sums = NestedSums::new(n - 1, k - 1);
    Ok(stirling_from_chain_sum(n, k, sums.get(n - 1, k - 1)))
}

/// [`stirling_nested_sum`] evaluated by direct chain enumeration.
pub fn stirling_nested_sum_direct(n: usize, k: usize) -> Result<ExactInteger> {
    check_nested(n, k)?;
    Ok(stirling_from_chain_sum(n, k, &nested_sum_direct(n - 1, k - 1)))
}

/// `s(n, k)` from column `k - 1`:
///
/// `(-1)^(n-k) s(n,k)/(n-1)! = sum_{m=k-1}^{n-1} (1/m) (-1)^(m-k+1) s(m,k-1)/(m-1)!`
pub fn stirling_column_recurrence(n: usize, k: usize, triangle: &StirlingTriangle) -> Result<ExactInteger> {
    if k < 2 || k > n {
        return Err(Error::OutOfRange {
            what: "column recurrence needs 2 <= k <= n",
            n,
            k,
        });
    }
    triangle.require(n - 1)?;
    let mut sum = ExactRational::zero();
    let mut m_minus_1_fact = factorial(k - 2);
    for m in (k - 1)..n {
        if m > k - 1 {
            m_minus_1_fact *= m - 1;
        }
        let s = triangle.value(m, k - 1)?;
        let term = integer(sign_pow(m + 1 - k) * s) / integer(&m_minus_1_fact * m);
        sum += term;
    }
    let v = integer(sign_pow(n - k) * factorial(n - 1)) * sum;
    Ok(to_integer(&v).expect("column recurrence yields an integer"))
}

/// Which closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `s(n, 1) = (-1)^(n+1) (n-1)!`
    First,
    /// `s(n, 2) = (-1)^n (n-1)! H(n-1)`
    Second,
    /// `s(n, n-1) = -n(n-1)/2`
    SubDiagonal,
    /// `s(n, n) = 1`
    Diagonal,
}

impl ClosedForm {
    /// Picks the closed form covering column `k` of row `n`.
    pub fn for_column(n: usize, k: usize) -> Result<Self> {
        match k {
            _ if n >= 1 && k == n => Ok(ClosedForm::Diagonal),
            _ if n >= 1 && k + 1 == n => Ok(ClosedForm::SubDiagonal),
            1 if n >= 1 => Ok(ClosedForm::First),
            2 if n >= 2 => Ok(ClosedForm::Second),
            _ => Err(Error::OutOfRange {
                what: "no closed form for this column",
                n,
                k,
            }),
        }
    }

    pub fn column(self, n: usize) -> usize {
        match self {
            ClosedForm::First => 1,
            ClosedForm::Second => 2,
            ClosedForm::SubDiagonal => n - 1,
            ClosedForm::Diagonal => n,
        }
    }
}

pub fn stirling_closed_form(n: usize, form: ClosedForm) -> Result<ExactInteger> {
    if n == 0 {
        return Err(Error::Domain {
            formula: "closed forms for s(n, k)",
            min: 1,
            n,
        });
    }
    Ok(match form {
        ClosedForm::First => sign_pow(n + 1) * factorial(n - 1),
        ClosedForm::Second => {
            let v = integer(sign_pow(n) * factorial(n - 1)) * harmonic(n - 1);
            to_integer(&v).expect("(n-1)! H(n-1) is an integer")
        }
        ClosedForm::SubDiagonal => -ExactInteger::from(n * (n - 1) / 2),
        ClosedForm::Diagonal => ExactInteger::one(),
    })
}

/// `H(n) = (-1)^(n+1) s(n+1, 2) / n!`.
pub fn harmonic_from_stirling(n: usize, triangle: &StirlingTriangle) -> Result<ExactRational> {
    if n == 0 {
        return Err(Error::Domain {
            formula: "harmonic number from s(n+1, 2)",
            min: 1,
            n,
        });
    }
    let s = triangle.value(n + 1, 2)?;
    Ok(ratio(sign_pow(n + 1) * s, factorial(n)))
}

/// `true` if `(-1)^(n+k) s(n, k) >= 0` for every entry of the triangle.
pub fn sign_pattern_holds(triangle: &StirlingTriangle) -> bool {
    (0..=triangle.max_n()).all(|n| {
        triangle.row(n).unwrap().iter().enumerate().all(|(k, s)| {
            let v = sign_pow(n + k) * s;
            !v.is_negative()
        })
    })
}
