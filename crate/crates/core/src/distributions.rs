//! Binomial and multinomial distributions with an indeterminacy threshold,
//! and the normal distribution with set-valued parameters.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::setval::SetValue;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialSpec {
    pub n: u32,
    pub th: u32,
    pub ps: f64,
    pub pi: f64,
    pub pf: f64,
}

/// Chances of truth, indeterminacy and falsehood.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NeutroTriplet {
    pub t: f64,
    pub i: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultinomialSpec {
    pub n: u32,
    pub th: u32,
    pub probs: Vec<f64>,
    pub indet: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalSpec {
    mu: SetValue,
    sigma: SetValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbabilityMode {
    Complete,
    Incomplete,
    Paraconsistent,
}

impl ProbabilityMode {
    pub fn name(&self) -> &'static str {
        match self {
            ProbabilityMode::Complete => "Complete",
            ProbabilityMode::Incomplete => "Incomplete",
            ProbabilityMode::Paraconsistent => "Paraconsistent",
        }
    }
}

fn check_chance(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{name} = {p} is outside [0, 1]")))
    }
}

impl BinomialSpec {
    pub fn new(n: u32, th: u32, ps: f64, pi: f64, pf: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if th > n {
            return Err(Error::InvalidParameter(format!("threshold {th} exceeds n = {n}")));
        }
        check_chance("pS", ps)?;
        check_chance("pI", pi)?;
        check_chance("pF", pf)?;
        Ok(BinomialSpec { n, th, ps, pi, pf })
    }

    pub fn total(&self) -> f64 {
        self.ps + self.pi + self.pf
    }
}

impl NeutroTriplet {
    pub fn sum(&self) -> f64 {
        self.t + self.i + self.f
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

fn choose(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn powu(x: f64, k: u32) -> f64 {
    x.powi(k as i32)
}

/// Chance of exactly `x` successes with at most `th` indeterminate trials.
fn truth(spec: &BinomialSpec, x: u32) -> f64 {
    let n = spec.n;
    let rest = n - x;
    let inner: f64 = (0..=spec.th.min(rest))
        .map(|k| powu(spec.pi, k) * powu(spec.pf, rest - k) / (factorial(k) * factorial(rest - k)))
        .sum();
    factorial(n) / factorial(x) * powu(spec.ps, x) * inner
}

/// Chance of more than `th` indeterminate trials (independent of `x`).
fn indeterminacy(spec: &BinomialSpec) -> f64 {
    let n = spec.n;
    (spec.th + 1..=n)
        .map(|z| {
            let rest = n - z;
            let inner: f64 = (0..=rest)
                .map(|k| powu(spec.ps, k) * powu(spec.pf, rest - k) / (factorial(k) * factorial(rest - k)))
                .sum();
            factorial(n) / factorial(z) * powu(spec.pi, z) * inner
        })
        .sum()
}

pub fn nbinomial_pmf(spec: &BinomialSpec, x: u32) -> Result<NeutroTriplet> {
    if x > spec.n {
        return Err(Error::XOutOfRange { x, n: spec.n });
    }
    let f = (0..=spec.n).filter(|&y| y != x).map(|y| truth(spec, y)).sum();
    Ok(NeutroTriplet {
        t: truth(spec, x),
        i: indeterminacy(spec),
        f,
    })
}

/// `F = (pS + pI + pF)^n − T − I`.
pub fn falsehood_shortcut(spec: &BinomialSpec, t: &NeutroTriplet) -> f64 {
    powu(spec.total(), spec.n) - t.t - t.i
}

/// Every component divided by the sum.
pub fn normalize_triplet(t: &NeutroTriplet) -> Result<NeutroTriplet> {
    let s = t.sum();
    if s == 0.0 || !s.is_finite() {
        return Err(Error::ZeroTotal);
    }
    Ok(NeutroTriplet {
        t: t.t / s,
        i: t.i / s,
        f: t.f / s,
    })
}

/// Complete when the chances sum to 1 (within 1e-9), incomplete below, paraconsistent above.
pub fn classify_mode(ps: f64, pi: f64, pf: f64) -> Result<ProbabilityMode> {
    let s = ps + pi + pf;
    if !(0.0..=3.0).contains(&s) {
        return Err(Error::OutOfRange(format!("chances sum to {s}, outside [0, 3]")));
    }
    Ok(if (s - 1.0).abs() <= 1e-9 {
        ProbabilityMode::Complete
    } else if s < 1.0 {
        ProbabilityMode::Incomplete
    } else {
        ProbabilityMode::Paraconsistent
    })
}

/// `n!/(α!β!γ!) · p1^α · i^β · p2^γ`.
pub fn trinomial_a(n: u32, alpha: u32, beta: u32, gamma: u32, p1: f64, i: f64, p2: f64) -> Result<f64> {
    if alpha as u64 + beta as u64 + gamma as u64 != n as u64 {
        return Err(Error::BadComposition { alpha, beta, gamma, n });
    }
    Ok(factorial(n) / (factorial(alpha) * factorial(beta) * factorial(gamma))
        * powu(p1, alpha)
        * powu(i, beta)
        * powu(p2, gamma))
}

/// The same triplet assembled from sums of trinomial terms.
pub fn nbinomial_via_trinomial(spec: &BinomialSpec, x: u32) -> Result<NeutroTriplet> {
    let n = spec.n;
    if x > n {
        return Err(Error::XOutOfRange { x, n });
    }
    let a = |alpha: u32, beta: u32| trinomial_a(n, alpha, beta, n - alpha - beta, spec.ps, spec.pi, spec.pf);
    let truth_of = |alpha: u32| -> Result<f64> {
        let mut s = 0.0;
        for beta in 0..=spec.th.min(n - alpha) {
            s += a(alpha, beta)?;
        }
        Ok(s)
    };
    let t = truth_of(x)?;
    let mut i = 0.0;
    for beta in spec.th + 1..=n {
        for alpha in 0..=n - beta {
            i += a(alpha, beta)?;
        }
    }
    let mut f = 0.0;
    for alpha in (0..=n).filter(|&y| y != x) {
        f += truth_of(alpha)?;
    }
    Ok(NeutroTriplet { t, i, f })
}

impl MultinomialSpec {
    pub fn new(n: u32, th: u32, probs: Vec<f64>, indet: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if th > n {
            return Err(Error::InvalidParameter(format!("threshold {th} exceeds n = {n}")));
        }
        if probs.len() < 2 {
            return Err(Error::InvalidParameter("need at least 2 event chances".into()));
        }
        for (j, &p) in probs.iter().enumerate() {
            check_chance(&format!("P{}", j + 1), p)?;
        }
        check_chance("i", indet)?;
        Ok(MultinomialSpec { n, th, probs, indet })
    }
}

/// Triplet for the count vector `x`; the remaining `n − Σx` trials are indeterminate.
pub fn nmultinomial_pmf(spec: &MultinomialSpec, x: &[u32]) -> Result<NeutroTriplet> {
    if x.len() != spec.probs.len() {
        return Err(Error::BadCounts(format!(
            "{} counts for {} events",
            x.len(),
            spec.probs.len()
        )));
    }
    let used: u64 = x.iter().map(|&c| c as u64).sum();
    if used > spec.n as u64 {
        return Err(Error::BadCounts(format!("counts sum to {used} > n = {}", spec.n)));
    }
    let n = spec.n;
    let beta = n - used as u32;
    let t = if beta <= spec.th {
        let denom: f64 = x.iter().map(|&c| factorial(c)).product::<f64>() * factorial(beta);
        let chances: f64 = x.iter().zip(&spec.probs).map(|(&c, &p)| powu(p, c)).product::<f64>();
        factorial(n) / denom * chances * powu(spec.indet, beta)
    } else {
        0.0
    };
    // group outcomes by the number β of indeterminate trials
    let total_p: f64 = spec.probs.iter().sum();
    let layer = |b: u32| choose(n, b) * powu(spec.indet, b) * powu(total_p, n - b);
    let i: f64 = (spec.th + 1..=n).map(layer).sum();
    let determinate: f64 = (0..=spec.th).map(layer).sum();
    Ok(NeutroTriplet {
        t,
        i,
        f: (determinate - t).max(0.0),
    })
}

impl NormalSpec {
    pub fn new(mu: SetValue, sigma: SetValue) -> Result<Self> {
        if sigma.infimum().is_nan() || sigma.infimum() <= 0.0 {
            return Err(Error::BadSpread(sigma.infimum()));
        }
        Ok(NormalSpec { mu, sigma })
    }

    pub fn mu(&self) -> &SetValue {
        &self.mu
    }

    pub fn sigma(&self) -> &SetValue {
        &self.sigma
    }
}

fn gauss(d: f64, sigma: f64) -> f64 {
    (-d * d / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt())
}

/// Range of the normal density at `x` over every `(μ, σ)` in the parameter hulls.
pub fn nnormal_pdf(spec: &NormalSpec, x: f64) -> SetValue {
    let (m1, m2) = (spec.mu.infimum(), spec.mu.supremum());
    let (s1, s2) = (spec.sigma.infimum(), spec.sigma.supremum());
    let dmin = if (m1..=m2).contains(&x) {
        0.0
    } else {
        (x - m1).abs().min((x - m2).abs())
    };
    let dmax = (x - m1).abs().max((x - m2).abs());
    // for fixed d the density peaks at σ = d
    let sigma_star = dmin.clamp(s1, s2);
    let hi = gauss(dmin, sigma_star);
    let lo = gauss(dmax, s1).min(gauss(dmax, s2));
    SetValue::interval(lo, hi.max(lo)).expect("ordered")
}

/// `[inf μ − k·sup σ, sup μ + k·sup σ]`.
pub fn nnormal_sigma_band(spec: &NormalSpec, k: u32) -> SetValue {
    let spread = k as f64 * spec.sigma.supremum();
    SetValue::interval(spec.mu.infimum() - spread, spec.mu.supremum() + spread).expect("ordered")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn watch() -> BinomialSpec {
        BinomialSpec::new(5, 2, 0.1, 0.2, 0.8).unwrap()
    }

    #[test]
    fn watch_example() {
        let t = nbinomial_pmf(&watch(), 2).unwrap();
        assert!((t.t - 0.0992).abs() < 1e-12);
        assert!((t.i - 0.07232).abs() < 1e-12);
        assert!((t.f - 1.43899).abs() < 1e-5);
        assert!((falsehood_shortcut(&watch(), &t) - t.f).abs() < 1e-12);
        let via = nbinomial_via_trinomial(&watch(), 2).unwrap();
        assert!((via.t - t.t).abs() < 1e-12 && (via.i - t.i).abs() < 1e-12 && (via.f - t.f).abs() < 1e-12);
        assert_eq!(nbinomial_pmf(&watch(), 6), Err(Error::XOutOfRange { x: 6, n: 5 }));
    }

    #[test]
    fn threshold_n_has_no_indeterminacy() {
        let spec = BinomialSpec::new(4, 4, 0.3, 0.3, 0.3).unwrap();
        for x in 0..=4 {
            assert_eq!(nbinomial_pmf(&spec, x).unwrap().i, 0.0);
        }
    }

    #[test]
    fn classical_binomial_embedding() {
        let spec = BinomialSpec::new(6, 0, 0.3, 0.0, 0.7).unwrap();
        for x in 0..=6 {
            let t = nbinomial_pmf(&spec, x).unwrap();
            let classical = choose(6, x) * 0.3f64.powi(x as i32) * 0.7f64.powi(6 - x as i32);
            assert!((t.t - classical).abs() < 1e-12);
            assert_eq!(t.i, 0.0);
            assert!((t.f - (1.0 - classical)).abs() < 1e-12);
        }
    }

    #[test]
    fn normalization() {
        let t = NeutroTriplet {
            t: 0.0992,
            i: 0.07232,
            f: 1.43899,
        };
        let n = normalize_triplet(&t).unwrap();
        assert!((n.t - 0.061595).abs() < 1e-6 && (n.i - 0.044905).abs() < 1e-6 && (n.f - 0.893500).abs() < 1e-6);
        let one = NeutroTriplet { t: 1.0, i: 0.0, f: 0.0 };
        assert_eq!(normalize_triplet(&one).unwrap(), one);
        let q = normalize_triplet(&NeutroTriplet { t: 2.0, i: 2.0, f: 4.0 }).unwrap();
        assert_eq!(
            q,
            NeutroTriplet {
                t: 0.25,
                i: 0.25,
                f: 0.5
            }
        );
        assert_eq!(normalize_triplet(&NeutroTriplet::default()), Err(Error::ZeroTotal));
    }

    #[test]
    fn modes() {
        assert_eq!(classify_mode(0.1, 0.2, 0.8).unwrap(), ProbabilityMode::Paraconsistent);
        assert_eq!(classify_mode(0.5, 0.2, 0.3).unwrap(), ProbabilityMode::Complete);
        assert_eq!(classify_mode(0.1, 0.1, 0.1).unwrap(), ProbabilityMode::Incomplete);
        assert!(classify_mode(2.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn trinomial_terms() {
        assert!((trinomial_a(5, 2, 0, 3, 0.1, 0.2, 0.8).unwrap() - 0.0512).abs() < 1e-15);
        assert!((trinomial_a(4, 4, 0, 0, 0.3, 0.2, 0.5).unwrap() - 0.0081).abs() < 1e-15);
        assert_eq!(
            trinomial_a(5, 2, 2, 2, 0.1, 0.2, 0.8),
            Err(Error::BadComposition {
                alpha: 2,
                beta: 2,
                gamma: 2,
                n: 5
            })
        );
    }

    #[test]
    fn multinomial_reduces_to_binomial() {
        // two events: success and failure; the failure count is whatever is left
        let spec = MultinomialSpec::new(5, 2, vec![0.1, 0.8], 0.2).unwrap();
        let mut t = 0.0;
        for x2 in 0..=3u32 {
            t += nmultinomial_pmf(&spec, &[2, x2]).unwrap().t;
        }
        assert!((t - 0.0992).abs() < 1e-12);
        let one = MultinomialSpec::new(1, 0, vec![0.25, 0.75], 0.0).unwrap();
        assert!((nmultinomial_pmf(&one, &[1, 0]).unwrap().t - 0.25).abs() < 1e-15);
        assert!(nmultinomial_pmf(&spec, &[3, 3]).is_err());
        assert!(nmultinomial_pmf(&spec, &[1]).is_err());
        let full = MultinomialSpec::new(3, 3, vec![0.2, 0.3], 0.5).unwrap();
        assert_eq!(nmultinomial_pmf(&full, &[1, 1]).unwrap().i, 0.0);
    }

    #[test]
    fn normal_pdf_envelope() {
        let std = NormalSpec::new(SetValue::crisp(0.0), SetValue::crisp(1.0)).unwrap();
        let p = nnormal_pdf(&std, 0.0);
        assert!((p.as_crisp().unwrap() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);

        let s = NormalSpec::new(SetValue::crisp(15.0), SetValue::interval(2.0, 3.0).unwrap()).unwrap();
        let p = nnormal_pdf(&s, 15.0);
        let root = (2.0 * PI).sqrt();
        assert!((p.infimum() - 1.0 / (3.0 * root)).abs() < 1e-15);
        assert!((p.supremum() - 1.0 / (2.0 * root)).abs() < 1e-15);

        let m = NormalSpec::new(SetValue::interval(15.0, 17.0).unwrap(), SetValue::crisp(2.0)).unwrap();
        let p = nnormal_pdf(&m, 16.0);
        assert!((p.infimum() - gauss(1.0, 2.0)).abs() < 1e-15);
        assert!((p.supremum() - 1.0 / (2.0 * root)).abs() < 1e-15);

        assert!(NormalSpec::new(SetValue::crisp(0.0), SetValue::interval(0.0, 1.0).unwrap()).is_err());
    }

    #[test]
    fn sigma_bands() {
        let sv = |s: &str| s.parse::<SetValue>().unwrap();
        let cases = [
            ("15", "[2,3]", ["[12,18]", "[9,21]", "[6,24]"]),
            ("[15,17]", "2", ["[13,19]", "[11,21]", "[9,23]"]),
            ("[15,17]", "[2,3]", ["[12,20]", "[9,23]", "[6,26]"]),
        ];
        for (mu, sigma, bands) in cases {
            let spec = NormalSpec::new(sv(mu), sv(sigma)).unwrap();
            for (k, want) in (1..=3).zip(bands) {
                assert_eq!(nnormal_sigma_band(&spec, k), sv(want));
            }
        }
    }
}
