//! Each command turns validated arguments into a [`Table`] and a verdict.

use std::fmt;
use std::thread;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use fracpart_core::asymptotics::{
    ansatz_fit, estimate_c_from, integrate_f, EXP_NEG_GAMMA, MIN_QUADRATURE_POINTS,
};
use fracpart_core::frac_dp::{
    b_series_exact_capped, b_series_float_with, bnk_exact_capped, bnk_float, sample_f,
    FloatOptions, Resolution, DEFAULT_EXACT_CAP,
};
use fracpart_core::gf::{
    bell_series, bell_triangle, cycle_identity_series, euler_product_b, gf_bnk, sawin_coeffs,
    sawin_partial_sums_capped,
};
use fracpart_core::mertens::mertens;
use fracpart_core::partition::{
    brute_force_sum_capped, enumerate_partitions, DEFAULT_ENUMERATION_CAP,
};
use fracpart_core::{Error, WeightScheme};

use crate::output::Table;

/// A precondition or flag violation; maps to exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

/// Rendered result plus whether every verification in it passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub passed: bool,
}

impl Outcome {
    fn data(table: Table) -> Self {
        Outcome {
            table,
            passed: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// Budget and arithmetic knobs shared by several commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Knobs {
    pub exact_cap: usize,
    pub enumeration_cap: usize,
    pub compensated: bool,
    pub parallel: bool,
}

impl Default for Knobs {
    fn default() -> Self {
        Knobs {
            exact_cap: DEFAULT_EXACT_CAP,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            compensated: false,
            parallel: false,
        }
    }
}

fn float_opts(knobs: &Knobs) -> FloatOptions {
    FloatOptions {
        compensated: knobs.compensated,
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Rows `(n, k, b(n,k))` for `from <= n <= to`, `k_min <= k <= min(n, k_max)`.
pub fn bnk(
    from: usize,
    to: usize,
    k_min: usize,
    k_max: Option<usize>,
    mode: Mode,
    knobs: &Knobs,
) -> Result<Outcome, UsageError> {
    if from == 0 || from > to {
        return Err(UsageError(format!(
            "need 1 <= from <= n, got from = {from}, n = {to}"
        )));
    }
    let k_min = k_min.max(1);
    let mut table = Table::new("bnk", &["n", "k", "b"]);
    let k_hi = |n: usize| k_max.map_or(n, |k| k.min(n));
    match mode {
        Mode::Exact => {
            let t = bnk_exact_capped(to, knobs.exact_cap)?;
            for n in from..=to {
                for k in k_min..=k_hi(n) {
                    table.push(vec![n.into(), k.into(), t.get(n, k).into()]);
                }
            }
        }
        Mode::Float => {
            let t = bnk_float(to)?;
            for n in from..=to {
                for k in k_min..=k_hi(n) {
                    table.push(vec![n.into(), k.into(), t.get(n, k).into()]);
                }
            }
        }
    }
    Ok(Outcome::data(table))
}

/// Rows `(n, b(n))` for `0 <= n <= to`.
pub fn bseries(to: usize, mode: Mode, knobs: &Knobs) -> Result<Outcome, UsageError> {
    if to == 0 {
        return Err(UsageError("--to must be at least 1".into()));
    }
    let mut table = Table::new("bseries", &["n", "b"]).sequence(0, 1);
    match mode {
        Mode::Exact => {
            let b = b_series_exact_capped(to, knobs.exact_cap)?;
            for (n, v) in b.values().iter().enumerate() {
                table.push(vec![n.into(), v.clone().into()]);
            }
        }
        Mode::Float => {
            let b = b_series_float_with(to, float_opts(knobs));
            for (n, v) in b.values().iter().enumerate() {
                table.push(vec![n.into(), (*v).into()]);
            }
        }
    }
    Ok(Outcome::data(table))
}

/// Rows `(n, b(n)/n)` for the last `window` indices up to `to` (all when `None`).
pub fn ratio(
    to: usize,
    window: Option<usize>,
    mode: Mode,
    knobs: &Knobs,
) -> Result<Outcome, UsageError> {
    if to == 0 {
        return Err(UsageError("--to must be at least 1".into()));
    }
    let start = match window {
        Some(0) => return Err(UsageError("--window must be at least 1".into())),
        Some(w) => to.saturating_sub(w - 1).max(1),
        None => 1,
    };
    let mut table = Table::new("ratio", &["n", "ratio"]).sequence(0, 1);
    match mode {
        Mode::Exact => {
            let b = b_series_exact_capped(to, knobs.exact_cap)?;
            for (n, v) in b.ratios().into_iter().filter(|(n, _)| *n >= start) {
                table.push(vec![n.into(), v.into()]);
            }
        }
        Mode::Float => {
            let b = b_series_float_with(to, float_opts(knobs));
            for (n, v) in b.ratios().into_iter().filter(|(n, _)| *n >= start) {
                table.push(vec![n.into(), v.into()]);
            }
        }
    }
    Ok(Outcome::data(table))
}

/// Two-point `c0 + c1/n` fit. Defaults to `(N-1, N)`.
pub fn fit(
    to: usize,
    points: Option<(usize, usize)>,
    knobs: &Knobs,
) -> Result<Outcome, UsageError> {
    if to < 2 {
        return Err(UsageError("--to must be at least 2".into()));
    }
    let b = b_series_float_with(to, float_opts(knobs));
    let est = estimate_c_from(&b)?;
    let fit = match points {
        None => est.fit,
        Some((n1, n2)) => {
            if n1 > to || n2 > to || n1 == 0 || n2 == 0 {
                return Err(UsageError(format!("fit indices must lie in 1..={to}")));
            }
            let r = |n: usize| b.get(n) / n as f64;
            ansatz_fit((n1, r(n1)), (n2, r(n2)))?
        }
    };
    let mut table = Table::new(
        "fit",
        &[
            "n",
            "ratio",
            "n1",
            "n2",
            "c0",
            "c1",
            "raw_gap",
            "ansatz_gap",
        ],
    );
    table.push(vec![
        to.into(),
        est.ratio.into(),
        fit.n1.into(),
        fit.n2.into(),
        fit.c0.into(),
        fit.c1.into(),
        est.raw_gap.into(),
        (fit.c0 - EXP_NEG_GAMMA).abs().into(),
    ]);
    Ok(Outcome::data(table))
}

/// Parses `0.01`, `1/100`, or `1` into a unit-fraction resolution.
pub fn parse_resolution(s: &str) -> Result<Resolution, UsageError> {
    let bad = || UsageError(format!("resolution `{s}` is not of the form 1/m"));
    let (num, den) = if let Some((a, b)) = s.split_once('/') {
        (
            a.trim().parse::<u64>().map_err(|_| bad())?,
            b.trim().parse::<u64>().map_err(|_| bad())?,
        )
    } else {
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let num = digits.trim_start_matches('0');
        let num = if num.is_empty() {
            0
        } else {
            num.parse::<u64>().map_err(|_| bad())?
        };
        let den = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        (num, den)
    };
    Resolution::from_ratio(num, den).map_err(|_| bad())
}

/// Grid samples `(j, x, k, b(n,k))`; the trapezoid estimate goes in the summary.
pub fn fx(n: usize, resolution: Resolution) -> Result<Outcome, UsageError> {
    let sample = sample_f(n, resolution)?;
    let mut table = Table::new("fx", &["j", "x", "k", "value"]).sequence(0, 3);
    for p in &sample.points {
        table.push(vec![p.j.into(), p.x.into(), p.k.into(), p.value.into()]);
    }
    table.summarize("n", n);
    table.summarize("steps", resolution.steps());
    if sample.points.len() >= MIN_QUADRATURE_POINTS {
        table.summarize("integral", integrate_f(&sample)?);
    }
    table.summarize("increases", sample.monotonicity_violations().len());
    Ok(Outcome::data(table))
}

/// Rows `(n, mu(n), M(n))`.
pub fn mertens_table(to: usize) -> Result<Outcome, UsageError> {
    let t = mertens(to)?;
    let mut table = Table::new("mertens", &["n", "mu", "M"]).sequence(0, 2);
    for n in 1..=to {
        table.push(vec![n.into(), i64::from(t.mu(n)).into(), t.m(n).into()]);
    }
    Ok(Outcome::data(table))
}

type CheckFn = Box<dyn FnOnce() -> Result<String, String> + Send>;

struct Check {
    name: String,
    run: CheckFn,
}

fn check(
    name: impl Into<String>,
    run: impl FnOnce() -> Result<String, String> + Send + 'static,
) -> Check {
    Check {
        name: name.into(),
        run: Box::new(run),
    }
}

fn run_checks(command: &str, checks: Vec<Check>, parallel: bool) -> Outcome {
    let results: Vec<(String, Result<String, String>)> = if parallel {
        thread::scope(|s| {
            let handles: Vec<_> = checks
                .into_iter()
                .map(|c| (c.name, s.spawn(c.run)))
                .collect();
            handles
                .into_iter()
                .map(|(name, h)| {
                    let res = h.join().unwrap_or_else(|_| Err("check panicked".into()));
                    (name, res)
                })
                .collect()
        })
    } else {
        checks.into_iter().map(|c| (c.name, (c.run)())).collect()
    };
    let mut table = Table::new(command, &["status", "check", "detail"]);
    let mut passed = true;
    for (name, res) in results {
        let (status, detail) = match res {
            Ok(d) => ("PASS", d),
            Err(d) => {
                passed = false;
                ("FAIL", d)
            }
        };
        table.push(vec![status.into(), name.into(), detail.into()]);
    }
    Outcome { table, passed }
}

fn first_mismatch(bad: &[usize], what: &str) -> Result<String, String> {
    match bad.first() {
        None => Ok(String::from("exact")),
        Some(n) => Err(format!("{} mismatches, first at {what} = {n}", bad.len())),
    }
}

/// Generating-function cross-checks at order `n`.
pub fn series_verify(n: usize, knobs: &Knobs) -> Result<Outcome, UsageError> {
    if n < 2 {
        return Err(UsageError("--n must be at least 2".into()));
    }
    if n > knobs.exact_cap {
        return Err(Error::ExactCap {
            n,
            cap: knobs.exact_cap,
        }
        .into());
    }
    let cap = knobs.exact_cap;
    let checks = vec![
        check(
            format!("euler product = b(n) recurrence for n ≤ {n}"),
            move || {
                let b = b_series_exact_capped(n, cap).map_err(|e| e.to_string())?;
                let gf = euler_product_b::<BigRational>(n).map_err(|e| e.to_string())?;
                let bad: Vec<usize> = (0..=n).filter(|&i| gf.coeff(i) != b.get(i)).collect();
                first_mismatch(&bad, "n")
            },
        ),
        check(
            format!("column generating functions = b(n,k) for k ≤ {n}"),
            move || {
                let t = bnk_exact_capped(n, cap).map_err(|e| e.to_string())?;
                let bad: Vec<usize> = (1..=n)
                    .filter(|&k| {
                        gf_bnk::<BigRational>(n, k).map(|s| s.into_coeffs()) != Ok(t.column(k))
                    })
                    .collect();
                first_mismatch(&bad, "k")
            },
        ),
        check(
            format!("(1-q)^2 product = second differences of b for n ≤ {n}"),
            move || {
                let c = sawin_coeffs::<BigRational>(n).map_err(|e| e.to_string())?;
                let b = b_series_exact_capped(n, cap).map_err(|e| e.to_string())?;
                let at = |i: usize, back: usize| {
                    if i >= back {
                        b.get(i - back).clone()
                    } else {
                        BigRational::from_integer(0.into())
                    }
                };
                let two = BigRational::from_integer(2.into());
                let bad: Vec<usize> = (0..=n)
                    .filter(|&i| *c.coeff(i) != at(i, 0) - at(i, 1) * two.clone() + at(i, 2))
                    .collect();
                first_mismatch(&bad, "n")
            },
        ),
        check(
            format!("partial sums = b(m) - b(m-1) for m ≤ {n}"),
            move || {
                let tails = sawin_partial_sums_capped(n, cap).map_err(|e| e.to_string())?;
                let last = tails.last().expect("nonempty");
                let bound = BigRational::new(41488.into(), 10000.into());
                let abs =
                    num_traits::ToPrimitive::to_f64(&last.abs_partial_sum).unwrap_or(f64::NAN);
                if tails.iter().all(|t| t.abs_partial_sum <= bound) {
                    Ok(format!("sum |c_S| = {abs:.10} ≤ 4.1488"))
                } else {
                    Err(format!("sum |c_S| = {abs:.10} exceeds 4.1488"))
                }
            },
        ),
    ];
    Ok(run_checks("series-verify", checks, knobs.parallel))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityScheme {
    Cycle,
    Bell,
    All,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |a, i| a * BigUint::from(i))
}

/// Closed-form identities for the cycle-index and factorial-cycle weights.
pub fn identities(scheme: IdentityScheme, to: usize, knobs: &Knobs) -> Result<Outcome, UsageError> {
    if to == 0 {
        return Err(UsageError("--to must be at least 1".into()));
    }
    let enum_to = to.min(knobs.enumeration_cap);
    let ecap = knobs.enumeration_cap;
    let mut checks = Vec::new();
    if matches!(scheme, IdentityScheme::Cycle | IdentityScheme::All) {
        checks.push(check(format!("c(n)=1 for n ≤ {enum_to}"), move || {
            let mut bad = Vec::new();
            for n in 1..=enum_to {
                let v = brute_force_sum_capped(n, WeightScheme::CycleIndex, ecap)
                    .map_err(|e| e.to_string())?;
                if v != BigRational::from_integer(1.into()) {
                    bad.push(n);
                }
            }
            first_mismatch(&bad, "n").map(|_| "enumeration".into())
        }));
        checks.push(check(
            format!("exp(sum q^i/i) = 1/(1-q) to order {to}"),
            move || {
                let s = cycle_identity_series(to).map_err(|e| e.to_string())?;
                let one = BigRational::from_integer(1.into());
                let bad: Vec<usize> = (0..=to).filter(|&i| *s.coeff(i) != one).collect();
                first_mismatch(&bad, "n")
            },
        ));
    }
    if matches!(scheme, IdentityScheme::Bell | IdentityScheme::All) {
        checks.push(check(
            format!("n! d(n) = Bell(n) for n ≤ {enum_to}"),
            move || {
                let bells = bell_triangle(enum_to);
                let mut bad = Vec::new();
                for (n, bell) in bells.iter().enumerate().skip(1) {
                    let d = brute_force_sum_capped(n, WeightScheme::FactorialCycle, ecap)
                        .map_err(|e| e.to_string())?;
                    let scaled = d * BigRational::from_integer(BigInt::from(factorial(n)));
                    if scaled != BigRational::from_integer(BigInt::from(bell.clone())) {
                        bad.push(n);
                    }
                }
                first_mismatch(&bad, "n").map(|_| "enumeration vs Bell triangle".into())
            },
        ));
        checks.push(check(
            format!("exp(exp(q)-1) = sum Bell(n) q^n/n! to order {to}"),
            move || {
                let s = bell_series(to).map_err(|e| e.to_string())?;
                let bells = bell_triangle(to);
                let bad: Vec<usize> = (0..=to)
                    .filter(|&n| {
                        s.coeff(n).clone() * BigRational::from_integer(BigInt::from(factorial(n)))
                            != BigRational::from_integer(BigInt::from(bells[n].clone()))
                    })
                    .collect();
                let sum = num_traits::ToPrimitive::to_f64(&s.coefficient_sum()).unwrap_or(f64::NAN);
                first_mismatch(&bad, "n").map(|_| format!("partial sum {sum:.16}"))
            },
        ));
    }
    Ok(run_checks("identities", checks, knobs.parallel))
}

/// Brute-force enumeration versus the recurrence and the product, `n <= to`.
pub fn oracle(to: usize, mode: Mode, knobs: &Knobs) -> Result<Outcome, UsageError> {
    if to > knobs.enumeration_cap {
        return Err(Error::EnumerationCap {
            n: to,
            cap: knobs.enumeration_cap,
        }
        .into());
    }
    let ecap = knobs.enumeration_cap;
    let xcap = knobs.exact_cap;
    let mut checks = vec![check(
        format!("enumeration = recurrence for n ≤ {to}"),
        move || {
            let brute: Vec<BigRational> = (0..=to)
                .map(|n| brute_force_sum_capped(n, WeightScheme::ReciprocalProduct, ecap))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            if to == 0 {
                let partitions = enumerate_partitions(0).count();
                return if partitions == 1 && brute[0] == BigRational::from_integer(1.into()) {
                    Ok("b(0) = 1 = weight of the empty partition".into())
                } else {
                    Err("b(0) != 1".into())
                };
            }
            let bad: Vec<usize> = match mode {
                Mode::Exact => {
                    let b = b_series_exact_capped(to, xcap).map_err(|e| e.to_string())?;
                    (0..=to).filter(|&n| *b.get(n) != brute[n]).collect()
                }
                Mode::Float => {
                    let b = b_series_float_with(to, FloatOptions::default());
                    (0..=to)
                        .filter(|&n| {
                            let e = num_traits::ToPrimitive::to_f64(&brute[n]).unwrap_or(f64::NAN);
                            rel_err(*b.get(n), e) > 1e-12
                        })
                        .collect()
                }
            };
            first_mismatch(&bad, "n")
        },
    )];
    if to >= 1 {
        checks.push(check(
            format!("enumeration = euler product for n ≤ {to}"),
            move || {
                let gf = euler_product_b::<BigRational>(to).map_err(|e| e.to_string())?;
                let mut bad = Vec::new();
                for n in 0..=to {
                    let v = brute_force_sum_capped(n, WeightScheme::ReciprocalProduct, ecap)
                        .map_err(|e| e.to_string())?;
                    if *gf.coeff(n) != v {
                        bad.push(n);
                    }
                }
                first_mismatch(&bad, "n")
            },
        ));
    }
    Ok(run_checks("oracle", checks, knobs.parallel))
}

/// Cross-mode comparison used by `bnk --compare`: float vs exact triangle.
pub fn bnk_compare(to: usize, knobs: &Knobs) -> Result<Outcome, UsageError> {
    let exact = bnk_exact_capped(to, knobs.exact_cap)?;
    let float = bnk_float(to)?;
    let checks = vec![check(
        format!("float b(n,k) within 1e-12 of exact for n ≤ {to}"),
        move || {
            let mut worst = 0.0f64;
            for n in 1..=to {
                for k in 1..=n {
                    let e = num_traits::ToPrimitive::to_f64(&exact.get(n, k)).unwrap_or(f64::NAN);
                    worst = worst.max(rel_err(float.get(n, k), e));
                }
            }
            if worst <= 1e-12 {
                Ok(format!("max relative error {worst:.3e}"))
            } else {
                Err(format!("max relative error {worst:.3e}"))
            }
        },
    )];
    Ok(run_checks("bnk-compare", checks, false))
}
