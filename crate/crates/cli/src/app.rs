use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gregory_core::a_sequence::{a_from_stirling, probe_all, ASequence};
use gregory_core::bernoulli::{bernoulli2, bernoulli2_by_method, bernoulli2_report, Method, MethodReport};
use gregory_core::calculus::{evaluate_expansion, finite_difference_check, reciprocal_log_derivative_coeffs};
use gregory_core::numeric::{harmonic, integer, ratio};
use gregory_core::stirling::StirlingTriangle;
use gregory_core::{Execution, ExactRational};
use serde::Serialize;

use crate::render::{decimal, fraction, to_csv, to_json, Format, Kind, OutputRecord};
use crate::{EXIT_DOMAIN, EXIT_OK, EXIT_VERIFY};

#[derive(Debug, Parser)]
#[command(name = "gregory", version, about = "Exact Stirling numbers of the first kind and Bernoulli numbers of the second kind")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Frac)]
    pub format: Format,

    /// Also render values as decimals rounded half-to-even to D places.
    #[arg(long, global = true, value_name = "D")]
    pub digits: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Series,
    Nemes,
    Theorem,
    Ank,
    All,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::Series => Some(Method::Series),
            MethodArg::Nemes => Some(Method::Nemes),
            MethodArg::Theorem => Some(Method::Theorem),
            MethodArg::Ank => Some(Method::Ank),
            MethodArg::All => None,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Signed Stirling number s(n, k), or all of row n.
    Stirling1 { n: usize, k: Option<usize> },
    /// Bernoulli number of the second kind b_n.
    Bernoulli2 {
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Series)]
        method: MethodArg,
    },
    /// Harmonic number H(n).
    Harmonic { n: usize },
    /// Auxiliary sequence a(n, k), or all of row n (k = 2..n+1).
    Ank { n: usize, k: Option<usize> },
    /// Compare all b_n methods for 2 <= n <= N.
    Crosscheck {
        #[arg(long = "max-n", value_name = "N")]
        max_n: usize,
        /// Corrupt the theorem column at this n (exercises the failure path).
        #[arg(long, hide = true)]
        inject_fault: Option<usize>,
    },
    /// Report peak positions, unimodality and growth of a(n, k) rows.
    Probe {
        #[arg(long = "max-n", value_name = "N")]
        max_n: usize,
        /// Exit with a verification failure if some row with n >= 4 is not unimodal.
        #[arg(long)]
        strict: bool,
    },
    /// Time each b_n method end to end over b_2..b_N.
    Bench {
        #[arg(long = "max-n", value_name = "N")]
        max_n: usize,
        #[arg(long, value_name = "R", default_value_t = 3)]
        repeat: usize,
    },
    /// Coefficients of the n-th derivative of 1/ln x, optionally evaluated at x.
    Deriv {
        n: usize,
        x: Option<f64>,
        /// Compare against a central finite difference with step H at relative tolerance TOL.
        #[arg(long, num_args = 2, value_names = ["H", "TOL"], requires = "x", allow_negative_numbers = true)]
        check: Option<Vec<f64>>,
    },
}

enum Failure {
    Domain(String),
    Verify(String),
}

impl From<gregory_core::Error> for Failure {
    fn from(e: gregory_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_DOMAIN,
            };
            let _ = if code == EXIT_OK {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        digits: cli.digits,
        out,
        err,
    };
    let result = match cli.command {
        Command::Stirling1 { n, k } => ctx.stirling1(n, k),
        Command::Bernoulli2 { n, method } => ctx.bernoulli2(n, method),
        Command::Harmonic { n } => ctx.harmonic(n),
        Command::Ank { n, k } => ctx.ank(n, k),
        Command::Crosscheck { max_n, inject_fault } => ctx.crosscheck(max_n, inject_fault),
        Command::Probe { max_n, strict } => ctx.probe(max_n, strict),
        Command::Bench { max_n, repeat } => ctx.bench(max_n, repeat),
        Command::Deriv { n, x, check } => ctx.deriv(n, x, check.map(|c| (c[0], c[1]))),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(ctx.err, "verification failed: {msg}");
            EXIT_VERIFY
        }
    }
}

struct Ctx<'a> {
    format: Format,
    digits: Option<usize>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    /// Summary lines go to stdout in text mode and to stderr next to machine output.
    fn summary(&mut self, s: impl AsRef<str>) {
        let _ = match self.format {
            Format::Frac => writeln!(self.out, "{}", s.as_ref()),
            _ => writeln!(self.err, "{}", s.as_ref()),
        };
    }

    fn machine<T: Serialize>(&mut self, records: &[T]) {
        let text = match self.format {
            Format::Json => to_json(records) + "\n",
            Format::Csv => to_csv(records),
            Format::Frac => unreachable!("text output is rendered by each command"),
        };
        let _ = write!(self.out, "{text}");
    }

    fn text_value(&self, q: &ExactRational) -> String {
        match self.digits {
            Some(d) => format!("{}\t{}", fraction(q), decimal(q, d)),
            None => fraction(q),
        }
    }

    /// Emits values that are either a single number or a row.
    fn emit_values(&mut self, records: Vec<(OutputRecord, ExactRational)>) {
        match self.format {
            Format::Frac => {
                let parts: Vec<String> = records.iter().map(|(_, q)| self.text_value(q)).collect();
                let sep = if self.digits.is_some() { "\n" } else { " " };
                self.line(parts.join(sep));
            }
            _ => {
                let digits = self.digits;
                let recs: Vec<_> = records.into_iter().map(|(r, q)| r.with_digits(&q, digits)).collect();
                self.machine(&recs);
            }
        }
    }

    fn stirling1(&mut self, n: usize, k: Option<usize>) -> CmdResult {
        if let Some(k) = k {
            if k > n {
                return Err(Failure::Domain(format!("s(n, k) needs k <= n, got n = {n}, k = {k}")));
            }
        }
        let t = StirlingTriangle::new(n);
        let ks: Vec<usize> = match k {
            Some(k) => vec![k],
            None => (0..=n).collect(),
        };
        let recs = ks
            .into_iter()
            .map(|k| {
                let q = integer(t.get(n, k).unwrap().clone());
                (OutputRecord::new(Kind::Stirling1, n, Some(k), &q), q)
            })
            .collect();
        self.emit_values(recs);
        Ok(EXIT_OK)
    }

    fn bernoulli2(&mut self, n: usize, method: MethodArg) -> CmdResult {
        let Some(m) = method.method() else {
            if n < 2 {
                return Err(Failure::Domain(format!(
                    "--method all includes formulas stated only for n >= 2, got n = {n}"
                )));
            }
            let report = bernoulli2_report(n)?.pop().unwrap();
            self.emit_report(&[report]);
            return Ok(EXIT_OK);
        };
        let q = bernoulli2(m, n)?;
        let rec = OutputRecord::new(Kind::Bernoulli2, n, None, &q).with_method(m.name());
        self.emit_values(vec![(rec, q)]);
        Ok(EXIT_OK)
    }

    fn harmonic(&mut self, n: usize) -> CmdResult {
        let q = harmonic(n);
        self.emit_values(vec![(OutputRecord::new(Kind::Harmonic, n, None, &q), q)]);
        Ok(EXIT_OK)
    }

    fn ank(&mut self, n: usize, k: Option<usize>) -> CmdResult {
        let t = StirlingTriangle::new(n);
        let ks: Vec<usize> = match k {
            Some(k) => vec![k],
            None => (2..=n + 1).collect(),
        };
        let mut recs = Vec::new();
        for k in ks {
            let q = integer(a_from_stirling(n, k, &t)?);
            recs.push((OutputRecord::new(Kind::ANk, n, Some(k), &q), q));
        }
        self.emit_values(recs);
        Ok(EXIT_OK)
    }

    fn report_records(&self, r: &MethodReport) -> Vec<OutputRecord> {
        Method::ALL
            .iter()
            .map(|&m| {
                OutputRecord::new(Kind::Crosscheck, r.n, None, r.value(m))
                    .with_method(m.name())
                    .with_digits(r.value(m), self.digits)
            })
            .collect()
    }

    fn report_line(&self, r: &MethodReport) -> String {
        let cols: Vec<String> = Method::ALL
            .iter()
            .map(|&m| format!("{}={}", m.name(), fraction(r.value(m))))
            .collect();
        let mut s = format!("n={} {} agree={}", r.n, cols.join(" "), r.agree);
        if let Some(d) = self.digits {
            s += &format!(" decimal={}", decimal(&r.by_series, d));
        }
        s
    }

    fn emit_report(&mut self, reports: &[MethodReport]) {
        match self.format {
            Format::Frac => {
                for r in reports {
                    let l = self.report_line(r);
                    self.line(l);
                }
            }
            _ => {
                let recs: Vec<_> = reports.iter().flat_map(|r| self.report_records(r)).collect();
                self.machine(&recs);
            }
        }
    }

    fn crosscheck(&mut self, max_n: usize, inject_fault: Option<usize>) -> CmdResult {
        let mut reports = bernoulli2_report(max_n)?;
        if let Some(bad) = inject_fault {
            if let Some(r) = reports.iter_mut().find(|r| r.n == bad) {
                let wrong = r.by_theorem.clone() + ratio(1, 1);
                *r = r.clone().with_value(Method::Theorem, wrong);
            }
        }
        let first_bad = reports.iter().position(|r| !r.agree);
        let shown = first_bad.map_or(reports.len(), |i| i + 1);
        self.emit_report(&reports[..shown]);
        match first_bad {
            None => {
                self.summary(format!("ALL AGREE [2..{max_n}]"));
                Ok(EXIT_OK)
            }
            Some(i) => Err(Failure::Verify(format!("methods disagree at n = {}", reports[i].n))),
        }
    }

    fn probe(&mut self, max_n: usize, strict: bool) -> CmdResult {
        if max_n < 2 {
            return Err(Failure::Domain(format!("probe needs --max-n >= 2, got {max_n}")));
        }
        let exec = Execution::default();
        let t = StirlingTriangle::new(max_n);
        let a = ASequence::from_triangle(&t, max_n, exec)?;
        let probes = probe_all(&a, max_n, exec)?;
        match self.format {
            Format::Frac => {
                for p in &probes {
                    let row: Vec<String> = p.row.iter().map(|v| v.to_string()).collect();
                    self.line(format!(
                        "n={} row=[{}] peak_k={:?} unimodal={} increasing_in_n={}",
                        p.n,
                        row.join(", "),
                        p.peak_indices,
                        p.is_unimodal,
                        p.increasing_in_n_ok
                    ));
                }
            }
            Format::Json => self.machine(&probes),
            Format::Csv => {
                #[derive(Serialize)]
                struct ProbeRow {
                    n: usize,
                    row: String,
                    peak_k: String,
                    is_unimodal: bool,
                    increasing_in_n_ok: bool,
                }
                let rows: Vec<ProbeRow> = probes
                    .iter()
                    .map(|p| ProbeRow {
                        n: p.n,
                        row: p.row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
                        peak_k: p.peak_indices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
                        is_unimodal: p.is_unimodal,
                        increasing_in_n_ok: p.increasing_in_n_ok,
                    })
                    .collect();
                self.machine(&rows);
            }
        }
        let considered: Vec<_> = probes.iter().filter(|p| p.n >= 4).collect();
        let unimodal = considered.iter().filter(|p| p.is_unimodal).count();
        if considered.is_empty() {
            self.summary("unimodal rows (n >= 4): none in range");
        } else {
            self.summary(format!("unimodal rows (n >= 4): {unimodal}/{}", considered.len()));
        }
        match probes.iter().find(|p| !p.increasing_in_n_ok) {
            None => self.summary("increasing_in_n: OK"),
            Some(p) => self.summary(format!("increasing_in_n: FAIL at n={}", p.n)),
        }
        if strict && unimodal < considered.len() {
            let first = considered.iter().find(|p| !p.is_unimodal).unwrap();
            return Err(Failure::Verify(format!("row n = {} is not unimodal", first.n)));
        }
        Ok(EXIT_OK)
    }

    fn bench(&mut self, max_n: usize, repeat: usize) -> CmdResult {
        if max_n < 2 {
            return Err(Failure::Domain(format!("bench needs --max-n >= 2, got {max_n}")));
        }
        if repeat < 1 {
            return Err(Failure::Domain("bench needs --repeat >= 1".into()));
        }
        #[derive(Serialize)]
        struct BenchRow {
            kind: Kind,
            method: &'static str,
            max_n: usize,
            repeat: usize,
            median_ms: f64,
        }
        let mut rows = Vec::new();
        let mut results = Vec::new();
        for m in Method::ALL {
            let mut times = Vec::with_capacity(repeat);
            let mut values = Vec::new();
            for _ in 0..repeat {
                let start = Instant::now();
                values = bernoulli2_by_method(m, max_n, Execution::default())?;
                times.push(start.elapsed().as_secs_f64() * 1e3);
            }
            times.sort_by(f64::total_cmp);
            let median = if repeat % 2 == 1 {
                times[repeat / 2]
            } else {
                (times[repeat / 2 - 1] + times[repeat / 2]) / 2.0
            };
            rows.push(BenchRow {
                kind: Kind::Bench,
                method: m.name(),
                max_n,
                repeat,
                median_ms: median,
            });
            results.push(values);
        }
        match self.format {
            Format::Frac => {
                self.line(format!("{:<8} {:>6} {:>6} {:>12}", "method", "max_n", "repeat", "median_ms"));
                for r in &rows {
                    self.line(format!("{:<8} {:>6} {:>6} {:>12.3}", r.method, r.max_n, r.repeat, r.median_ms));
                }
            }
            _ => self.machine(&rows),
        }
        if results.windows(2).all(|w| w[0] == w[1]) {
            self.summary(format!("ALL AGREE [2..{max_n}]"));
            Ok(EXIT_OK)
        } else {
            Err(Failure::Verify("benchmarked methods produced different values".into()))
        }
    }

    fn deriv(&mut self, n: usize, x: Option<f64>, check: Option<(f64, f64)>) -> CmdResult {
        let t = StirlingTriangle::new(n);
        let e = reciprocal_log_derivative_coeffs(n, &t)?;
        let value = x.map(|x| evaluate_expansion(&e, x)).transpose()?;
        match self.format {
            Format::Frac => {
                let parts: Vec<String> = e.coeffs.iter().map(|(k, c)| format!("k={k}: {c}")).collect();
                self.line(parts.join(", "));
                if let (Some(x), Some(v)) = (x, value) {
                    self.line(format!("value at x={x}: {v:.12e}"));
                }
            }
            _ => {
                let recs: Vec<_> = e
                    .coeffs
                    .iter()
                    .map(|(k, c)| OutputRecord::new(Kind::DerivCoeffs, n, Some(*k), &integer(c.clone())))
                    .collect();
                self.machine(&recs);
                if let (Some(x), Some(v)) = (x, value) {
                    self.summary(format!("value at x={x}: {v:.12e}"));
                }
            }
        }
        let (Some(x), Some((h, tol))) = (x, check) else {
            return Ok(EXIT_OK);
        };
        let c = finite_difference_check(n, x, h, tol)?;
        let verdict = if c.pass { "pass" } else { "FAIL" };
        self.summary(format!(
            "check n={n} x={x} h={h:e} tol={tol:e}: numeric={:.12e} closed_form={:.12e} residual={:.3e} {verdict}",
            c.numeric, c.closed_form, c.residual
        ));
        if c.pass {
            Ok(EXIT_OK)
        } else {
            Err(Failure::Verify(format!("residual {:.3e} exceeds tolerance {tol:e}", c.residual)))
        }
    }
}
