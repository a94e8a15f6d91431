//! Bernoulli numbers of the second kind `b_n`, defined by
//! `x / ln(1+x) = sum b_n x^n`, by four independent routes, and the
//! cross-method agreement report.

use num_traits::Zero;
use serde::Serialize;

use crate::a_sequence::ASequence;
use crate::numeric::{factorial, integer, ratio, sign_pow, ExactRational};
use crate::series::bernoulli2_series;
use crate::stirling::StirlingTriangle;
use crate::{Error, Execution, Result};

/// The four ways of computing `b_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Coefficients of `x / ln(1+x)` by series long division.
    Series,
    /// `b_n = (1/n!) sum_{k=0}^{n} s(n,k) / (k+1)`.
    Nemes,
    /// `b_n = (1/n!) sum_{k=1}^{n-1} (-1)^k s(n-1,k) / ((k+1)(k+2))`.
    Theorem,
    /// Through the auxiliary sequence `a(n, k)`.
    Ank,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Series, Method::Nemes, Method::Theorem, Method::Ank];

    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Nemes => "nemes",
            Method::Theorem => "theorem",
            Method::Ank => "ank",
        }
    }

    /// Smallest `n` the formula is stated for.
    pub fn min_n(self) -> usize {
        match self {
            Method::Series | Method::Nemes => 0,
            Method::Theorem | Method::Ank => 2,
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}`"))
    }
}

fn require_n(n: usize, formula: &'static str, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Domain { formula, min, n });
    }
    Ok(())
}

/// `b_n = (1/n!) sum_{k=1}^{n-1} (-1)^k s(n-1, k) / ((k+1)(k+2))`, `n >= 2`.
pub fn bernoulli2_theorem(n: usize, triangle: &StirlingTriangle) -> Result<ExactRational> {
    require_n(n, "the Stirling-number formula for b_n", 2)?;
    triangle.require(n - 1)?;
    let mut sum = ExactRational::zero();
    for k in 1..n {
        let s = triangle.value(n - 1, k)?;
        sum += ratio(sign_pow(k) * s, (k + 1) * (k + 2));
    }
    Ok(sum / integer(factorial(n)))
}

/// `b_n = (1/n!) sum_{k=0}^{n} s(n, k) / (k+1)`.
pub fn bernoulli2_nemes(n: usize, triangle: &StirlingTriangle) -> Result<ExactRational> {
    triangle.require(n)?;
    let mut sum = ExactRational::zero();
    for k in 0..=n {
        sum += ratio(triangle.value(n, k)?, k + 1);
    }
    Ok(sum / integer(factorial(n)))
}

/// `b_n = (-1)^n (1/n!) (1/(n+1) + sum_{k=2}^{n} (a(n,k) - n a(n-1,k)) / k!)`, `n >= 2`.
pub fn bernoulli2_ank(n: usize, a: &ASequence) -> Result<ExactRational> {
    require_n(n, "the a(n, k) formula for b_n", 2)?;
    a.require(n)?;
    let mut sum = ratio(1, n + 1);
    let mut k_fact = factorial(1);
    for k in 2..=n {
        k_fact *= k;
        let diff = a.get(n, k).unwrap() - a.get(n - 1, k).unwrap() * n;
        sum += ratio(diff, k_fact.clone());
    }
    Ok(integer(sign_pow(n)) * sum / integer(factorial(n)))
}

/// `b_n` under every method for one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodReport {
    pub n: usize,
    pub by_series: ExactRational,
    pub by_nemes: ExactRational,
    pub by_theorem: ExactRational,
    pub by_ank: ExactRational,
    pub agree: bool,
}

impl MethodReport {
    pub fn new(
        n: usize,
        by_series: ExactRational,
        by_nemes: ExactRational,
        by_theorem: ExactRational,
        by_ank: ExactRational,
    ) -> Self {
        let agree = by_series == by_nemes && by_nemes == by_theorem && by_theorem == by_ank;
        MethodReport {
            n,
            by_series,
            by_nemes,
            by_theorem,
            by_ank,
            agree,
        }
    }

    pub fn value(&self, method: Method) -> &ExactRational {
        match method {
            Method::Series => &self.by_series,
            Method::Nemes => &self.by_nemes,
            Method::Theorem => &self.by_theorem,
            Method::Ank => &self.by_ank,
        }
    }

    /// Replaces one column and recomputes the agreement flag.
    pub fn with_value(self, method: Method, v: ExactRational) -> Self {
        let mut vals = Method::ALL.map(|m| self.value(m).clone());
        vals[Method::ALL.iter().position(|&m| m == method).unwrap()] = v;
        let [s, ne, t, a] = vals;
        MethodReport::new(self.n, s, ne, t, a)
    }
}

/// Cross-method report for `2 <= n <= max_n`, in increasing `n`.
///
/// One triangle and one `a(n, k)` table are shared by all methods; the per-`n`
/// evaluations are scheduled by `exec`.
pub fn bernoulli2_report_with(max_n: usize, exec: Execution) -> Result<Vec<MethodReport>> {
    require_n(max_n, "the cross-method report", 2)?;
    let series = bernoulli2_series(max_n);
    let triangle = StirlingTriangle::new(max_n);
    let a = ASequence::from_triangle(&triangle, max_n, exec)?;
    exec.map_range(2, max_n, |n| {
        Ok(MethodReport::new(
            n,
            series[n].clone(),
            bernoulli2_nemes(n, &triangle)?,
            bernoulli2_theorem(n, &triangle)?,
            bernoulli2_ank(n, &a)?,
        ))
    })
    .into_iter()
    .collect()
}

pub fn bernoulli2_report(max_n: usize) -> Result<Vec<MethodReport>> {
    bernoulli2_report_with(max_n, Execution::default())
}

/// `b_2, ..., b_max_n` by a single method, building whatever tables that
/// method needs from scratch. Used to time the methods end to end.
pub fn bernoulli2_by_method(method: Method, max_n: usize, exec: Execution) -> Result<Vec<ExactRational>> {
    require_n(max_n, "per-method evaluation", 2)?;
    match method {
        Method::Series => Ok(bernoulli2_series(max_n).split_off(2)),
        Method::Nemes => {
            let t = StirlingTriangle::new(max_n);
            exec.map_range(2, max_n, |n| bernoulli2_nemes(n, &t)).into_iter().collect()
        }
        Method::Theorem => {
            let t = StirlingTriangle::new(max_n - 1);
            exec.map_range(2, max_n, |n| bernoulli2_theorem(n, &t)).into_iter().collect()
        }
        Method::Ank => {
            let t = StirlingTriangle::new(max_n);
            let a = ASequence::from_triangle(&t, max_n, exec)?;
            exec.map_range(2, max_n, |n| bernoulli2_ank(n, &a)).into_iter().collect()
        }
    }
}

/// `b_n` by one method, for a single `n`.
pub fn bernoulli2(method: Method, n: usize) -> Result<ExactRational> {
    require_n(n, method_formula(method), method.min_n())?;
    match method {
        Method::Series => Ok(bernoulli2_series(n).pop().unwrap()),
        Method::Nemes => bernoulli2_nemes(n, &StirlingTriangle::new(n)),
        Method::Theorem => bernoulli2_theorem(n, &StirlingTriangle::new(n - 1)),
        Method::Ank => {
            let t = StirlingTriangle::new(n);
            bernoulli2_ank(n, &ASequence::from_triangle(&t, n, Execution::Sequential)?)
        }
    }
}

fn method_formula(method: Method) -> &'static str {
    match method {
        Method::Theorem => "the Stirling-number formula for b_n",
        Method::Ank => "the a(n, k) formula for b_n",
        _ => "b_n",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Vec<ExactRational> {
        vec![ratio(1, 1), ratio(1, 2), ratio(-1, 12), ratio(1, 24), ratio(-19, 720), ratio(3, 160)]
    }

    #[test]
    fn theorem_values() {
        let t = StirlingTriangle::new(5);
        assert_eq!(bernoulli2_theorem(2, &t).unwrap(), ratio(-1, 12));
        assert_eq!(bernoulli2_theorem(3, &t).unwrap(), ratio(1, 24));
        assert_eq!(bernoulli2_theorem(4, &t).unwrap(), ratio(-19, 720));
        assert!(matches!(bernoulli2_theorem(1, &t), Err(Error::Domain { min: 2, .. })));
        assert!(matches!(bernoulli2_theorem(7, &t), Err(Error::TableTooSmall { .. })));
    }

    #[test]
    fn nemes_values() {
        let t = StirlingTriangle::new(5);
        assert_eq!(bernoulli2_nemes(0, &t).unwrap(), ratio(1, 1));
        assert_eq!(bernoulli2_nemes(1, &t).unwrap(), ratio(1, 2));
        assert_eq!(bernoulli2_nemes(2, &t).unwrap(), ratio(-1, 12));
    }

    #[test]
    fn ank_values() {
        let t = StirlingTriangle::new(5);
        let a = ASequence::from_triangle(&t, 5, Execution::Sequential).unwrap();
        assert_eq!(bernoulli2_ank(2, &a).unwrap(), ratio(-1, 12));
        assert_eq!(bernoulli2_ank(3, &a).unwrap(), ratio(1, 24));
        assert_eq!(bernoulli2_ank(5, &a).unwrap(), ratio(3, 160));
        assert!(bernoulli2_ank(1, &a).is_err());
        assert!(bernoulli2_ank(6, &a).is_err());
    }

    #[test]
    fn every_method_matches_golden_values() {
        let g = golden();
        for m in Method::ALL {
            for n in m.min_n()..g.len() {
                assert_eq!(bernoulli2(m, n).unwrap(), g[n], "{m} n={n}");
            }
        }
        assert!(bernoulli2(Method::Theorem, 1).is_err());
        assert!(bernoulli2(Method::Ank, 0).is_err());
    }

    #[test]
    fn small_reports() {
        let r = bernoulli2_report(2).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].agree);
        assert_eq!(r[0].by_theorem, ratio(-1, 12));
        let r = bernoulli2_report_with(5, Execution::Sequential).unwrap();
        assert_eq!(r.last().unwrap().by_ank, ratio(3, 160));
        assert!(r.iter().all(|x| x.agree));
        assert!(bernoulli2_report(1).is_err());
    }

    #[test]
    fn fault_flips_agreement() {
        let r = bernoulli2_report(3).unwrap().pop().unwrap();
        let bad = r.clone().with_value(Method::Ank, ratio(0, 1));
        assert!(!bad.agree);
        assert_eq!(bad.by_series, r.by_series);
        assert!(bad.with_value(Method::Ank, ratio(1, 24)).agree);
    }

    #[test]
    fn per_method_runs_agree() {
        let want: Vec<_> = golden()[2..].to_vec();
        for m in Method::ALL {
            assert_eq!(bernoulli2_by_method(m, 5, Execution::Parallel).unwrap(), want);
        }
        assert!(bernoulli2_by_method(Method::Series, 1, Execution::Sequential).is_err());
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("euler".parse::<Method>().is_err());
    }
}
