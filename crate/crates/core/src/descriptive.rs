//! Descriptive statistics over set-valued and `a + bI`-valued samples.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::neutro_num::NeutroNumber;
use crate::setval::{self, SetValue};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    observations: Vec<SetValue>,
    pub label: String,
}

impl Dataset {
    pub fn new(observations: Vec<SetValue>, label: impl Into<String>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::TooFewObservations { needed: 1, got: 0 });
        }
        Ok(Dataset {
            observations,
            label: label.into(),
        })
    }

    pub fn observations(&self) -> &[SetValue] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Observations sorted by the midpoint order (stable).
    pub fn sorted(&self) -> Vec<SetValue> {
        let mut v = self.observations.clone();
        v.sort_by(|p, q| p.order_cmp(q).into());
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NNDataset {
    observations: Vec<NeutroNumber>,
}

impl NNDataset {
    pub fn new(observations: Vec<NeutroNumber>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::TooFewObservations { needed: 1, got: 0 });
        }
        Ok(NNDataset { observations })
    }

    pub fn observations(&self) -> &[NeutroNumber] {
        &self.observations
    }
}

fn halve(s: &SetValue) -> SetValue {
    s.div(&SetValue::crisp(2.0)).expect("2 is nonzero")
}

pub fn mean_set(d: &Dataset) -> SetValue {
    setval::sum(d.observations())
        .div(&SetValue::crisp(d.len() as f64))
        .expect("n is positive")
}

/// Middle element under the midpoint order; for even `n` the two middles are added and halved.
pub fn median_set(d: &Dataset) -> SetValue {
    let s = d.sorted();
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2].clone()
    } else {
        halve(&s[n / 2 - 1].add(&s[n / 2]))
    }
}

/// How a fractional quartile rank is resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuartileRule {
    /// Average the two observations the rank falls between.
    #[default]
    Average,
    /// Take the observation at the integer part of the rank.
    Floor,
}

/// Quartiles at ranks `i(n+1)/4`, `i = 1, 2, 3`.
pub fn quartiles(d: &Dataset, rule: QuartileRule) -> Result<[SetValue; 3]> {
    let n = d.len();
    if n < 3 {
        return Err(Error::TooFewObservations { needed: 3, got: n });
    }
    let s = d.sorted();
    let at = |rank: usize| &s[rank.clamp(1, n) - 1];
    let q = |i: usize| {
        let num = i * (n + 1);
        let lo = num / 4;
        if num.is_multiple_of(4) || rule == QuartileRule::Floor {
            at(lo).clone()
        } else {
            halve(&at(lo).add(at(lo + 1)))
        }
    };
    Ok([q(1), q(2), q(3)])
}

/// Population standard deviation: `sqrt(Σ (x_i − mean)² / n)`.
pub fn stddev_set(d: &Dataset) -> SetValue {
    let mean = mean_set(d);
    let squares: Vec<SetValue> = d
        .observations()
        .iter()
        .map(|x| x.sub(&mean).pow(2).expect("power 2"))
        .collect();
    let var = setval::sum(&squares)
        .div(&SetValue::crisp(d.len() as f64))
        .expect("n is positive");
    var.sqrt().expect("sum of squares is nonnegative")
}

pub fn mean_nn(d: &NNDataset) -> NeutroNumber {
    let n = d.observations.len() as f64;
    let (sa, sb) = d.observations.iter().fold((0.0, 0.0), |(a, b), v| (a + v.a, b + v.b));
    NeutroNumber::new(sa / n, sb / n)
}

/// Sorted by determinate part, then by the coefficient of `I`.
pub fn median_nn(d: &NNDataset) -> NeutroNumber {
    let mut s = d.observations.clone();
    s.sort_by(|p, q| p.a.total_cmp(&q.a).then(p.b.total_cmp(&q.b)));
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        let (u, v) = (s[n / 2 - 1], s[n / 2]);
        NeutroNumber::new((u.a + v.a) / 2.0, (u.b + v.b) / 2.0)
    }
}

/// Principal square root of the mean squared deviation.
pub fn stddev_nn(d: &NNDataset) -> Result<NeutroNumber> {
    mean_squared_deviation_nn(d).sqrt_principal()
}

pub fn mean_squared_deviation_nn(d: &NNDataset) -> NeutroNumber {
    let mean = mean_nn(d);
    let n = d.observations.len() as f64;
    let total = d
        .observations
        .iter()
        .map(|&x| {
            let dev = x - mean;
            dev * dev
        })
        .fold(NeutroNumber::default(), |acc, v| acc + v);
    NeutroNumber::new(total.a / n, total.b / n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreqRow {
    pub category: String,
    pub frequency: SetValue,
    pub rel_freq: SetValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreqTable {
    pub rows: Vec<FreqRow>,
    pub total_frequency: SetValue,
    pub total_rel_freq: SetValue,
}

impl FreqTable {
    /// `f_i / [Σ inf, Σ sup]`, for comparison with the constrained bounds.
    pub fn naive_rel_freq(&self, row: usize) -> SetValue {
        self.rows[row]
            .frequency
            .hull()
            .div(&self.total_frequency.hull())
            .expect("positive total")
    }
}

/// Relative frequencies as the min and max over every admissible assignment:
/// a row is smallest when it takes its minimum and every other row its maximum.
pub fn freq_table(rows: &[(String, SetValue)]) -> Result<FreqTable> {
    for (cat, f) in rows {
        if f.infimum() < 0.0 {
            return Err(Error::NegativeFrequency { row: cat.clone() });
        }
    }
    if rows.iter().all(|(_, f)| f.supremum() <= 0.0) {
        return Err(Error::EmptyTable);
    }
    let sum_inf: f64 = rows.iter().map(|(_, f)| f.infimum()).sum();
    let sum_sup: f64 = rows.iter().map(|(_, f)| f.supremum()).sum();
    let ratio = |x: f64, denom: f64| if denom > 0.0 { x / denom } else { 0.0 };

    let out: Vec<FreqRow> = rows
        .iter()
        .map(|(cat, f)| {
            let (lo, hi) = (f.infimum(), f.supremum());
            let r_lo = ratio(lo, lo + (sum_sup - hi));
            let r_hi = ratio(hi, hi + (sum_inf - lo));
            FreqRow {
                category: cat.clone(),
                frequency: f.clone(),
                rel_freq: SetValue::interval(r_lo, r_hi.max(r_lo)).expect("ordered"),
            }
        })
        .collect();
    let total_rel_freq = setval::sum(out.iter().map(|r| &r.rel_freq));
    Ok(FreqTable {
        rows: out,
        total_frequency: SetValue::interval(sum_inf, sum_sup)?,
        total_rel_freq,
    })
}

/// One line per stem, stems ascending, leaves in input order: `6 ‖ (0,0.2) [0,1]`.
pub fn stem_and_leaf(pairs: &[(i64, SetValue)]) -> String {
    let mut rows: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    for (stem, leaf) in pairs {
        rows.entry(*stem).or_default().push(leaf.to_string());
    }
    rows.into_iter()
        .map(|(stem, leaves)| format!("{stem} ‖ {}", leaves.join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

/// `Σ w_i a_i / Σ w_i`.
pub fn weighted_average(values: &[f64], weights: &[f64]) -> Result<f64> {
    if values.len() != weights.len() {
        return Err(Error::BadWeights(format!(
            "{} weights for {} values",
            weights.len(),
            values.len()
        )));
    }
    if values.is_empty() {
        return Err(Error::BadWeights("no values".into()));
    }
    let wsum: f64 = weights.iter().sum();
    if wsum <= 0.0 {
        return Err(Error::BadWeights("weights must have a positive sum".into()));
    }
    Ok(values.iter().zip(weights).map(|(a, w)| a * w).sum::<f64>() / wsum)
}

/// Statistics of one candidate subsample.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsampleRow {
    pub wrong: Vec<f64>,
    pub correct: Vec<f64>,
    pub median: f64,
    pub mean: f64,
    pub deviations: Vec<f64>,
    pub squared_deviations: Vec<f64>,
    pub stddev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalStyle {
    pub median: SetValue,
    pub mean: SetValue,
    pub stddev: SetValue,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointStyle {
    pub median: f64,
    pub mean: f64,
    pub stddev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombinedStats {
    pub interval_style: IntervalStyle,
    pub average_style: PointStyle,
    pub weighted_style: Option<PointStyle>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WrongObsReport {
    pub samples: Vec<SubsampleRow>,
    pub combined: CombinedStats,
}

fn classical_median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Lexicographic `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Number of ways to discard `k` of `n` observations.
pub fn subsample_count(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Every subsample left after discarding `k` of the (ascending-sorted)
/// observations, in lexicographic order of the discarded positions, plus the
/// combined interval, average and optional weighted summaries.
pub fn wrong_obs_enumerate(observations: &[f64], k: usize, weights: Option<&[f64]>) -> Result<WrongObsReport> {
    let n = observations.len();
    if n < 2 || k < 1 || k > n - 1 {
        return Err(Error::BadK { k, n });
    }
    let mut sorted = observations.to_vec();
    sorted.sort_by(f64::total_cmp);

    let samples: Vec<SubsampleRow> = combinations(n, k)
        .into_iter()
        .map(|discard| {
            let wrong: Vec<f64> = discard.iter().map(|&i| sorted[i]).collect();
            let correct: Vec<f64> = (0..n).filter(|i| !discard.contains(i)).map(|i| sorted[i]).collect();
            let m = correct.len() as f64;
            let mean = correct.iter().sum::<f64>() / m;
            let deviations: Vec<f64> = correct.iter().map(|x| x - mean).collect();
            let squared_deviations: Vec<f64> = deviations.iter().map(|d| d * d).collect();
            let stddev = (squared_deviations.iter().sum::<f64>() / m).sqrt();
            SubsampleRow {
                median: classical_median(&correct),
                wrong,
                correct,
                mean,
                deviations,
                squared_deviations,
                stddev,
            }
        })
        .collect();

    if let Some(w) = weights {
        if w.len() != samples.len() {
            return Err(Error::BadWeights(format!(
                "expected {} weights (one per subsample), got {}",
                samples.len(),
                w.len()
            )));
        }
        if w.iter().any(|&x| x.is_nan() || x <= 0.0) {
            return Err(Error::BadWeights("weights must be positive".into()));
        }
    }

    let column = |f: fn(&SubsampleRow) -> f64| samples.iter().map(f).collect::<Vec<f64>>();
    let (medians, means, sds) = (column(|r| r.median), column(|r| r.mean), column(|r| r.stddev));
    let span = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        SetValue::interval(lo, hi).expect("ordered")
    };
    let avg = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;

    let weighted_style = match weights {
        Some(w) => Some(PointStyle {
            median: weighted_average(&medians, w)?,
            mean: weighted_average(&means, w)?,
            stddev: weighted_average(&sds, w)?,
        }),
        None => None,
    };
    let combined = CombinedStats {
        interval_style: IntervalStyle {
            median: span(&medians),
            mean: span(&means),
            stddev: span(&sds),
        },
        average_style: PointStyle {
            median: avg(&medians),
            mean: avg(&means),
            stddev: avg(&sds),
        },
        weighted_style,
    };
    Ok(WrongObsReport { samples, combined })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(items: &[&str]) -> Dataset {
        Dataset::new(items.iter().map(|s| s.parse().unwrap()).collect(), "t").unwrap()
    }

    fn sv(s: &str) -> SetValue {
        s.parse().unwrap()
    }

    fn nn(a: f64, b: f64) -> NeutroNumber {
        NeutroNumber::new(a, b)
    }

    #[test]
    fn mean_median_examples() {
        let d = ds(&["[6,6]", "[2,5]", "[30,30]", "[18,24]"]);
        assert_eq!(mean_set(&d), sv("[14,16.25]"));
        // sorted middle pair is 6 and [18,24]
        assert_eq!(median_set(&d), sv("[6,6]").add(&sv("[18,24]")).scale(0.5));
        assert_eq!(median_set(&d), sv("[12,15]"));
        assert_eq!(mean_set(&ds(&["1", "2", "3"])), sv("2"));
        assert_eq!(mean_set(&ds(&["[0,2]", "[2,4]"])), sv("[1,3]"));
        assert_eq!(median_set(&ds(&["1", "2", "3"])), sv("2"));
        assert_eq!(median_set(&ds(&["1", "[2,3]"])), sv("[1.5,2]"));
    }

    #[test]
    fn quartile_examples() {
        let d = ds(&[
            "1",
            "(2,3)",
            "{4,6}",
            "5",
            "[7,10]",
            "[7,11]",
            "9",
            "12",
            "14",
            "[14,15]",
            "20",
            "{21}U(22,25]",
        ]);
        let [q1, q2, q3] = quartiles(&d, QuartileRule::Average).unwrap();
        assert_eq!(q1, sv("{4.5,5.5}"));
        assert_eq!(q2, sv("[8,10]"));
        assert_eq!(q3, sv("[14,14.5]"));
        let [f1, f2, f3] = quartiles(&d, QuartileRule::Floor).unwrap();
        assert_eq!((f1, f2, f3), (sv("{4,6}"), sv("[7,11]"), sv("14")));

        let crisp = ds(&["1", "2", "3", "4", "5", "6", "7"]);
        assert_eq!(
            quartiles(&crisp, QuartileRule::Average).unwrap(),
            [sv("2"), sv("4"), sv("6")]
        );
        assert_eq!(
            quartiles(&ds(&["1", "2"]), QuartileRule::Average),
            Err(Error::TooFewObservations { needed: 3, got: 2 })
        );
    }

    #[test]
    fn stddev_examples() {
        let s = stddev_set(&ds(&["[6,6]", "[2,5]", "[30,30]", "[18,24]"]));
        assert!((s.infimum() - 84.28125f64.sqrt()).abs() < 1e-9, "{s}");
        assert!((s.supremum() - 166.03125f64.sqrt()).abs() < 1e-9, "{s}");
        assert_eq!(stddev_set(&ds(&["4", "4", "4"])), sv("0"));
        assert_eq!(stddev_set(&ds(&["0", "0", "2", "2"])), sv("1"));
    }

    #[test]
    fn neutro_number_stats() {
        let d = NNDataset::new(vec![nn(-2.0, -4.0), nn(-1.0, 0.0), nn(3.0, 5.0), nn(6.0, 7.0)]).unwrap();
        assert_eq!(mean_nn(&d), nn(1.5, 2.0));
        assert_eq!(median_nn(&d), nn(1.0, 2.5));
        assert_eq!(mean_squared_deviation_nn(&d), nn(10.25, 45.0));
        let s = stddev_nn(&d).unwrap();
        assert!(s.powi(2).approx_eq(&nn(10.25, 45.0), 1e-12));
        assert!((s.a - 3.2016).abs() < 1e-4);
    }

    #[test]
    fn accident_table() {
        let rows: Vec<(String, SetValue)> = [("0", "50"), ("1", "[60,80]"), ("2", "[70,90]"), ("3", "[40,50]")]
            .iter()
            .map(|(c, f)| (c.to_string(), sv(f)))
            .collect();
        let t = freq_table(&rows).unwrap();
        let want = [
            (50.0 / 270.0, 50.0 / 220.0),
            (0.24, 80.0 / 240.0),
            (0.28, 0.375),
            (40.0 / 260.0, 50.0 / 230.0),
        ];
        for (row, (lo, hi)) in t.rows.iter().zip(want) {
            assert!((row.rel_freq.infimum() - lo).abs() < 1e-12 && (row.rel_freq.supremum() - hi).abs() < 1e-12);
        }
        assert_eq!(t.total_frequency, sv("[220,270]"));
        assert!(t.rows[2].rel_freq.is_subset_of(&t.naive_rel_freq(2)));
        assert_ne!(t.rows[2].rel_freq, t.naive_rel_freq(2));

        assert_eq!(
            freq_table(&[("x".into(), sv("[-1,2]"))]),
            Err(Error::NegativeFrequency { row: "x".into() })
        );
        assert_eq!(freq_table(&[("x".into(), sv("0"))]), Err(Error::EmptyTable));
        assert_eq!(freq_table(&[]), Err(Error::EmptyTable));
    }

    #[test]
    fn stems() {
        let pairs = vec![
            (6, sv("(0,0.2)")),
            (7, sv("[2,3]")),
            (6, sv("[0,1]")),
            (9, sv("[1.1,1.5)")),
            (9, sv("(0,0.2)")),
        ];
        assert_eq!(
            stem_and_leaf(&pairs),
            "6 ‖ (0,0.2) [0,1]\n7 ‖ [2,3]\n9 ‖ [1.1,1.5) (0,0.2)"
        );
        assert_eq!(stem_and_leaf(&[(4, sv("2"))]), "4 ‖ 2");
    }

    #[test]
    fn wrong_observation_example() {
        let w = [0.4, 0.1, 0.3, 0.2, 0.7];
        let r = wrong_obs_enumerate(&[17.0, 12.0, 5.0, 8.0, 9.0], 1, Some(&w)).unwrap();
        let wrong: Vec<f64> = r.samples.iter().map(|s| s.wrong[0]).collect();
        assert_eq!(wrong, vec![5.0, 8.0, 9.0, 12.0, 17.0]);
        let c = &r.combined;
        assert_eq!(c.interval_style.median, sv("[8.5,10.5]"));
        assert_eq!(c.interval_style.mean, sv("[8.5,11.5]"));
        assert!((c.average_style.median - 9.6).abs() < 1e-12);
        assert!((c.average_style.mean - 10.2).abs() < 1e-12);
        let ws = c.weighted_style.unwrap();
        assert!((ws.median - 9.35294).abs() < 1e-5);

        assert_eq!(
            wrong_obs_enumerate(&[1.0, 2.0], 2, None).unwrap_err(),
            Error::BadK { k: 2, n: 2 }
        );
        assert!(matches!(
            wrong_obs_enumerate(&[1.0, 2.0, 3.0], 1, Some(&[1.0, 1.0])),
            Err(Error::BadWeights(_))
        ));
        assert!(matches!(
            wrong_obs_enumerate(&[1.0, 2.0, 3.0], 1, Some(&[1.0, 0.0, 1.0])),
            Err(Error::BadWeights(_))
        ));
        let two = wrong_obs_enumerate(&[1.0, 2.0, 3.0, 4.0], 2, None).unwrap();
        assert_eq!(two.samples.len(), 6);
        assert_eq!(subsample_count(4, 2), 6);
    }

    #[test]
    fn weighted_average_cases() {
        assert!((weighted_average(&[1.0, 2.0, 3.0], &[1.0, 1.0, 1.0]).unwrap() - 2.0).abs() < 1e-15);
        assert!((weighted_average(&[7.0], &[0.3]).unwrap() - 7.0).abs() < 1e-12);
        assert!(weighted_average(&[1.0], &[1.0, 2.0]).is_err());
        assert!(weighted_average(&[1.0], &[0.0]).is_err());
    }
}
