//! Tests, P-values, confidence intervals and sample sizes over set-valued statistics.

use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::setval::SetValue;

const Z_CRITICAL_CSV: &str = include_str!("../tables/z_critical.csv");
const T_CRITICAL_CSV: &str = include_str!("../tables/t_critical.csv");

/// Standard normal CDF (Hart's rational approximation, double precision).
pub fn phi(z: f64) -> f64 {
    let x = z.abs();
    let c = if x > 37.0 {
        0.0
    } else {
        let e = (-x * x / 2.0).exp();
        if x < 7.07106781186547 {
            let mut n = 3.52624965998911e-02 * x + 0.700383064443688;
            n = n * x + 6.37396220353165;
            n = n * x + 33.912866078383;
            n = n * x + 112.079291497871;
            n = n * x + 221.213596169931;
            n = n * x + 220.206867912376;
            let mut d = 8.83883476483184e-02 * x + 1.75566716318264;
            d = d * x + 16.064177579207;
            d = d * x + 86.7807322029461;
            d = d * x + 296.564248779674;
            d = d * x + 637.333633378831;
            d = d * x + 793.826512519948;
            d = d * x + 440.413735824752;
            e * n / d
        } else {
            let b = x + 1.0 / (x + 2.0 / (x + 3.0 / (x + 4.0 / (x + 0.65))));
            e / b / 2.506628274631
        }
    };
    if z > 0.0 {
        1.0 - c
    } else {
        c
    }
}

/// Confidence or tail area used for critical-value lookups.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Level {
    /// Central area between `-z` and `z`, e.g. `0.95`.
    Central(f64),
    /// Area in one tail, e.g. `0.05`.
    OneTail(f64),
}

impl Level {
    /// Cumulative probability at the upper critical point.
    pub fn cumulative(self) -> f64 {
        match self {
            Level::Central(c) => (1.0 + c) / 2.0,
            Level::OneTail(a) => 1.0 - a,
        }
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Level::Central(c) => write!(f, "central {c}"),
            Level::OneTail(a) => write!(f, "one-tail {a}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZRow {
    pub z: f64,
    pub right_tail: f64,
    pub central: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TRowKey {
    Df(u32),
    /// Limiting normal row.
    Z,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalTable {
    pub z_rows: Vec<ZRow>,
    /// Cumulative probabilities heading the t columns.
    pub t_levels: Vec<f64>,
    pub t_rows: Vec<(TRowKey, Vec<f64>)>,
}

const LEVEL_TOL: f64 = 1e-9;

fn csv_records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .skip(1)
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l.split(',').map(str::trim).collect()))
}

fn num(field: &str, line: usize) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| Error::InvalidParameter(format!("table line {line}: bad number {field:?}")))
}

impl CriticalTable {
    /// Parse the z layout `z,right_tail,central` and the t layout
    /// `df,<cum prob>...` where the last row may be keyed `z`.
    pub fn from_csv(z_csv: &str, t_csv: &str) -> Result<CriticalTable> {
        let mut z_rows = Vec::new();
        for (line, rec) in csv_records(z_csv) {
            if rec.len() != 3 {
                return Err(Error::InvalidParameter(format!(
                    "z table line {line}: expected 3 fields"
                )));
            }
            z_rows.push(ZRow {
                z: num(rec[0], line)?,
                right_tail: num(rec[1], line)?,
                central: num(rec[2], line)?,
            });
        }
        let header = t_csv.lines().next().unwrap_or_default();
        let t_levels = header
            .split(',')
            .skip(1)
            .map(|h| num(h.trim(), 1))
            .collect::<Result<Vec<f64>>>()?;
        let mut t_rows = Vec::new();
        for (line, rec) in csv_records(t_csv) {
            if rec.len() != t_levels.len() + 1 {
                return Err(Error::InvalidParameter(format!(
                    "t table line {line}: wrong field count"
                )));
            }
            let key = if rec[0].eq_ignore_ascii_case("z") {
                TRowKey::Z
            } else {
                TRowKey::Df(
                    rec[0]
                        .parse()
                        .map_err(|_| Error::InvalidParameter(format!("t table line {line}: bad df")))?,
                )
            };
            let vals = rec[1..].iter().map(|f| num(f, line)).collect::<Result<Vec<f64>>>()?;
            t_rows.push((key, vals));
        }
        if z_rows.is_empty() || t_rows.is_empty() {
            return Err(Error::EmptyTable);
        }
        Ok(CriticalTable {
            z_rows,
            t_levels,
            t_rows,
        })
    }

    /// Reads `z_critical.csv` and `t_critical.csv` from `dir`.
    pub fn from_dir(dir: &Path) -> Result<CriticalTable> {
        let read = |name: &str| std::fs::read_to_string(dir.join(name)).map_err(|e| Error::Io(format!("{name}: {e}")));
        CriticalTable::from_csv(&read("z_critical.csv")?, &read("t_critical.csv")?)
    }

    pub fn embedded() -> &'static CriticalTable {
        static TABLE: OnceLock<CriticalTable> = OnceLock::new();
        TABLE.get_or_init(|| CriticalTable::from_csv(Z_CRITICAL_CSV, T_CRITICAL_CSV).expect("embedded tables parse"))
    }

    pub fn z_crit(&self, level: Level) -> Result<f64> {
        self.z_rows
            .iter()
            .find(|r| match level {
                Level::Central(c) => (r.central - c).abs() < LEVEL_TOL,
                Level::OneTail(a) => (r.right_tail - a).abs() < LEVEL_TOL,
            })
            .map(|r| r.z)
            .ok_or_else(|| Error::UnknownLevel(level.to_string()))
    }

    /// Exact df row when present; the z row above df 120; otherwise the
    /// next smaller df row.
    pub fn t_crit(&self, df: u32, level: Level) -> Result<f64> {
        let cum = level.cumulative();
        let col = self
            .t_levels
            .iter()
            .position(|&p| (p - cum).abs() < LEVEL_TOL)
            .ok_or_else(|| Error::UnknownLevel(level.to_string()))?;
        let exact = self.t_rows.iter().find(|(k, _)| *k == TRowKey::Df(df));
        let row = match exact {
            Some(r) => Some(r),
            None if df > 120 => self.t_rows.iter().find(|(k, _)| *k == TRowKey::Z),
            None => self
                .t_rows
                .iter()
                .filter_map(|r| match r.0 {
                    TRowKey::Df(d) if d < df => Some((d, r)),
                    _ => None,
                })
                .max_by_key(|(d, _)| *d)
                .map(|(_, r)| r),
        };
        row.map(|(_, v)| v[col]).ok_or(Error::DfOutOfTable(df))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    /// Upper-tailed.
    GreaterThanSup,
    /// Lower-tailed.
    LessThanInf,
    /// Two-tailed.
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub null_set: SetValue,
    pub alternative: Alternative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Reject,
    FailToReject,
    Indeterminate,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Reject => "Reject",
            Verdict::FailToReject => "FailToReject",
            Verdict::Indeterminate => "Indeterminate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    pub verdict: Verdict,
    pub reject_chance: f64,
    pub fail_chance: f64,
}

impl Decision {
    fn with_chance(verdict: Verdict, reject_chance: f64) -> Decision {
        let r = reject_chance.clamp(0.0, 1.0);
        Decision {
            verdict,
            reject_chance: r,
            fail_chance: 1.0 - r,
        }
    }
    fn reject() -> Decision {
        Decision::with_chance(Verdict::Reject, 1.0)
    }
    fn fail() -> Decision {
        Decision::with_chance(Verdict::FailToReject, 0.0)
    }
}

fn min_n(n: &SetValue) -> f64 {
    n.infimum()
}

fn root_n(n: &SetValue) -> Result<SetValue> {
    if n.infimum() <= 0.0 {
        return Err(Error::BadN(n.to_string()));
    }
    n.sqrt()
}

/// `(x̄ − null) / (s / √n)`.
pub fn z_test_stat(xbar: &SetValue, null_set: &SetValue, s: &SetValue, n: &SetValue) -> Result<SetValue> {
    if min_n(n) <= 30.0 {
        return Err(Error::SmallSample(min_n(n)));
    }
    if s.infimum() <= 0.0 {
        return Err(Error::BadSpread(s.infimum()));
    }
    let se = s.div(&root_n(n)?)?;
    xbar.sub(null_set).div(&se)
}

/// Length of `[lo, hi]` overlapping `[a, b]`.
fn overlap(lo: f64, hi: f64, a: f64, b: f64) -> f64 {
    (hi.min(b) - lo.max(a)).max(0.0)
}

pub fn z_decision(z: &SetValue, alternative: Alternative, crit: f64) -> Decision {
    let (lo, hi) = (z.infimum(), z.supremum());
    let (reject, fail) = match alternative {
        Alternative::GreaterThanSup => (lo > crit, hi <= crit),
        Alternative::LessThanInf => (hi < -crit, lo >= -crit),
        Alternative::Outside => (lo > crit || hi < -crit, lo >= -crit && hi <= crit),
    };
    if reject {
        return Decision::reject();
    }
    if fail {
        return Decision::fail();
    }
    let inside = match alternative {
        Alternative::GreaterThanSup => overlap(lo, hi, crit, f64::INFINITY),
        Alternative::LessThanInf => overlap(lo, hi, f64::NEG_INFINITY, -crit),
        Alternative::Outside => overlap(lo, hi, crit, f64::INFINITY) + overlap(lo, hi, f64::NEG_INFINITY, -crit),
    };
    let w = hi - lo;
    let chance = if w > 0.0 { inside / w } else { 0.5 };
    Decision::with_chance(Verdict::Indeterminate, chance)
}

fn span(lo: f64, hi: f64) -> SetValue {
    SetValue::interval(lo.min(hi), lo.max(hi)).expect("finite endpoints")
}

pub fn p_value(z: &SetValue, alternative: Alternative) -> SetValue {
    let (lo, hi) = (z.infimum(), z.supremum());
    match alternative {
        Alternative::GreaterThanSup => span(1.0 - phi(hi), 1.0 - phi(lo)),
        Alternative::LessThanInf => span(phi(lo), phi(hi)),
        Alternative::Outside => {
            let tail = |a: f64| (2.0 * (1.0 - phi(a))).min(1.0);
            let (alo, ahi) = (lo.abs(), hi.abs());
            if lo <= 0.0 && hi >= 0.0 {
                span(tail(alo.max(ahi)), 1.0)
            } else {
                span(tail(alo.max(ahi)), tail(alo.min(ahi)))
            }
        }
    }
}

/// `∫_{-∞}^{t} P(p′ ≤ s) ds` for `p′` uniform on `[p1, p2]`.
fn cdf_integral(t: f64, p1: f64, p2: f64) -> f64 {
    let w = p2 - p1;
    if t <= p1 {
        0.0
    } else if t >= p2 {
        w / 2.0 + (t - p2)
    } else {
        (t - p1) * (t - p1) / (2.0 * w)
    }
}

/// Chance that a uniform draw from `pval` is at most a uniform draw from `alpha`.
fn reject_probability(p1: f64, p2: f64, a1: f64, a2: f64) -> f64 {
    if a2 > a1 {
        (cdf_integral(a2, p1, p2) - cdf_integral(a1, p1, p2)) / (a2 - a1)
    } else if p2 > p1 {
        ((a1 - p1) / (p2 - p1)).clamp(0.0, 1.0)
    } else if p1 <= a1 {
        1.0
    } else {
        0.0
    }
}

pub fn p_decision(pval: &SetValue, alpha: &SetValue) -> Decision {
    let (p1, p2) = (pval.infimum(), pval.supremum());
    let (a1, a2) = (alpha.infimum(), alpha.supremum());
    if p2 <= a1 {
        Decision::reject()
    } else if p1 > a2 {
        Decision::fail()
    } else {
        Decision::with_chance(Verdict::Indeterminate, reject_probability(p1, p2, a1, a2))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Spread {
    /// Known population standard deviation.
    Sigma(SetValue),
    /// Sample standard deviation; needs `min n > 30`.
    SampleSd(SetValue),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceInterval {
    pub interval: SetValue,
    pub margin: SetValue,
    pub critical: f64,
}

/// `[inf x̄ − sup m, sup x̄ + sup m]`.
fn combine(xbar: &SetValue, margin: SetValue, critical: f64) -> ConfidenceInterval {
    let m = margin.supremum();
    ConfidenceInterval {
        interval: span(xbar.infimum() - m, xbar.supremum() + m),
        margin,
        critical,
    }
}

pub fn ci_mean_z(
    xbar: &SetValue,
    spread: &Spread,
    n: &SetValue,
    level: Level,
    table: &CriticalTable,
) -> Result<ConfidenceInterval> {
    let s = match spread {
        Spread::Sigma(s) => s,
        Spread::SampleSd(s) => {
            if min_n(n) <= 30.0 {
                return Err(Error::SmallSample(min_n(n)));
            }
            s
        }
    };
    if s.infimum() <= 0.0 {
        return Err(Error::BadSpread(s.infimum()));
    }
    let z = table.z_crit(level)?;
    let margin = s.scale(z).div(&root_n(n)?)?;
    Ok(combine(xbar, margin, z))
}

/// t interval with `min{n} − 1` degrees of freedom.
pub fn ci_mean_t(
    xbar: &SetValue,
    s: &SetValue,
    n: &SetValue,
    level: Level,
    table: &CriticalTable,
) -> Result<ConfidenceInterval> {
    let nmin = min_n(n);
    if nmin < 2.0 || nmin.fract() != 0.0 {
        return Err(Error::BadN(n.to_string()));
    }
    if s.infimum() <= 0.0 {
        return Err(Error::BadSpread(s.infimum()));
    }
    let t = table.t_crit(nmin as u32 - 1, level)?;
    let margin = s.scale(t).div(&root_n(n)?)?;
    Ok(combine(xbar, margin, t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Precondition {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProportionInterval {
    pub ci: ConfidenceInterval,
    pub preconditions: Vec<Precondition>,
}

/// `p ± z·√(p(1−p)/n)`; requires `min{np} ≥ 5` and `min{n(1−p)} ≥ 5`.
pub fn ci_proportion(p: &SetValue, n: &SetValue, level: Level, table: &CriticalTable) -> Result<ProportionInterval> {
    if p.infimum() < 0.0 || p.supremum() > 1.0 {
        return Err(Error::InvalidParameter(format!("proportion {p} outside [0,1]")));
    }
    let q = SetValue::crisp(1.0).sub(p);
    let preconditions = vec![("min{np}", p.mul(n).infimum()), ("min{n(1-p)}", n.mul(&q).infimum())]
        .into_iter()
        .map(|(name, value)| Precondition {
            name,
            value,
            threshold: 5.0,
            ok: value >= 5.0,
        })
        .collect::<Vec<_>>();
    if let Some(bad) = preconditions.iter().find(|c| !c.ok) {
        return Err(Error::PreconditionFailed(format!("{} = {} < 5", bad.name, bad.value)));
    }
    let z = table.z_crit(level)?;
    let var = p.mul(&q).div(n)?;
    let margin = var.sqrt()?.scale(z);
    Ok(ProportionInterval {
        ci: combine(p, margin, z),
        preconditions,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSize {
    pub n_set: SetValue,
    pub n_final: u64,
    /// `n_set` collapsed to 0.
    pub degenerate: bool,
}

fn ceil_sup(n_set: SetValue) -> SampleSize {
    let x = n_set.supremum();
    // absorb rounding noise such as 96.04000000000001
    let n_final = (x - 1e-9 * x.abs().max(1.0)).ceil().max(0.0) as u64;
    SampleSize {
        degenerate: x <= 0.0,
        n_set,
        n_final,
    }
}

/// `n = (z·σ/B)²`, final size `⌈sup n⌉`.
pub fn sample_size_mean(sigma: &SetValue, bound: f64, level: Level, table: &CriticalTable) -> Result<SampleSize> {
    if bound.is_nan() || bound <= 0.0 {
        return Err(Error::BadBound(bound));
    }
    let z = table.z_crit(level)?;
    Ok(ceil_sup(sigma.scale(z / bound).pow(2)?))
}

/// `(high − low) / 4`.
pub fn range_sigma_estimate(high: &SetValue, low: &SetValue) -> SetValue {
    high.sub(low).scale(0.25)
}

/// Image of `t(1−t)` over the set.
fn bernoulli_variance(pi: &SetValue) -> SetValue {
    let f = |t: f64| t * (1.0 - t);
    match pi {
        SetValue::Crisp(t) => SetValue::crisp(f(*t)),
        SetValue::Finite(v) => SetValue::finite(v.iter().map(|&t| f(t))).expect("nonempty"),
        _ => {
            let (lo, hi) = (pi.infimum(), pi.supremum());
            let top = if lo <= 0.5 && hi >= 0.5 { 0.25 } else { f(lo).max(f(hi)) };
            span(f(lo).min(f(hi)), top)
        }
    }
}

/// `n = π(1−π)·(z/B)²` with `π` defaulting to 0.5.
pub fn sample_size_proportion(
    pi: Option<&SetValue>,
    bound: f64,
    level: Level,
    table: &CriticalTable,
) -> Result<SampleSize> {
    if bound.is_nan() || bound <= 0.0 {
        return Err(Error::BadBound(bound));
    }
    let half = SetValue::crisp(0.5);
    let pi = pi.unwrap_or(&half);
    if pi.infimum() < 0.0 || pi.supremum() > 1.0 {
        return Err(Error::InvalidParameter(format!("proportion {pi} outside [0,1]")));
    }
    let z = table.z_crit(level)?;
    Ok(ceil_sup(bernoulli_variance(pi).scale((z / bound).powi(2))))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CltParams {
    pub mu_xbar: SetValue,
    pub sigma_xbar: SetValue,
    /// `min{n} > 30`.
    pub applicable: bool,
}

pub fn clt_params(mu: &SetValue, sigma: &SetValue, n: &SetValue) -> Result<CltParams> {
    Ok(CltParams {
        mu_xbar: mu.clone(),
        sigma_xbar: sigma.div(&root_n(n)?)?,
        applicable: min_n(n) > 30.0,
    })
}
