//! Random sequences mixing numbers with indeterminacies.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`, so a seed gives the same stream on every
//! platform.

use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::setval::{format_number, SetValue};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NeutroSymbol {
    Value(f64),
    /// Tag 0 is the untagged `I`.
    Indet(u32),
}

impl fmt::Display for NeutroSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeutroSymbol::Value(v) => f.write_str(&format_number(*v, None)),
            NeutroSymbol::Indet(0) => f.write_str("I"),
            NeutroSymbol::Indet(t) => write!(f, "I{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAlphabet {
    pub values: Vec<(f64, f64)>,
    pub indets: Vec<(u32, f64)>,
}

impl WeightedAlphabet {
    /// Checks that every weight is positive and that they sum to 1.
    pub fn new(values: Vec<(f64, f64)>, indets: Vec<(u32, f64)>) -> Result<Self> {
        let weights = values.iter().map(|v| v.1).chain(indets.iter().map(|i| i.1));
        let mut total = 0.0;
        let mut count = 0;
        for w in weights {
            if w <= 0.0 || !w.is_finite() {
                return Err(Error::BadWeights(format!("weight {w} is not positive")));
            }
            total += w;
            count += 1;
        }
        if count == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::BadWeights(format!("weights sum to {total}, not 1")));
        }
        Ok(WeightedAlphabet { values, indets })
    }

    fn symbols(&self) -> (Vec<NeutroSymbol>, Vec<f64>) {
        self.values
            .iter()
            .map(|&(v, w)| (NeutroSymbol::Value(v), w))
            .chain(self.indets.iter().map(|&(t, w)| (NeutroSymbol::Indet(t), w)))
            .unzip()
    }
}

pub struct NeutroRng {
    rng: ChaCha8Rng,
}

impl NeutroRng {
    pub fn seed(seed: u64) -> Self {
        NeutroRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// `values` plus `indet_count` indeterminacies, all equally likely.
    /// A single indeterminacy is untagged; several are tagged `1..=count`.
    pub fn uniform_sequence(&mut self, values: &[f64], indet_count: u32, len: usize) -> Result<Vec<NeutroSymbol>> {
        let mut alphabet: Vec<NeutroSymbol> = values.iter().map(|&v| NeutroSymbol::Value(v)).collect();
        match indet_count {
            0 => {}
            1 => alphabet.push(NeutroSymbol::Indet(0)),
            k => alphabet.extend((1..=k).map(NeutroSymbol::Indet)),
        }
        if alphabet.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok((0..len)
            .map(|_| alphabet[self.rng.random_range(0..alphabet.len())])
            .collect())
    }

    pub fn weighted_sequence(&mut self, alphabet: &WeightedAlphabet, len: usize) -> Result<Vec<NeutroSymbol>> {
        let (symbols, weights) = alphabet.symbols();
        let dist = WeightedIndex::new(&weights).map_err(|e| Error::BadWeights(e.to_string()))?;
        Ok((0..len).map(|_| symbols[dist.sample(&mut self.rng)]).collect())
    }

    /// Draws with replacement from balls labelled `[a, b]`, `lo ≤ a ≤ b ≤ hi`.
    pub fn interval_ball_draw(&mut self, lo: i64, hi: i64, count: usize) -> Result<Vec<SetValue>> {
        if lo > hi {
            return Err(Error::BadRange { lo, hi });
        }
        let m = (hi - lo + 1) as u64;
        let balls = m * (m + 1) / 2;
        Ok((0..count)
            .map(|_| {
                let (a, b) = ball(self.rng.random_range(0..balls), m);
                let (a, b) = ((lo + a as i64) as f64, (lo + b as i64) as f64);
                if a == b {
                    SetValue::crisp(a)
                } else {
                    SetValue::interval(a, b).expect("a < b")
                }
            })
            .collect())
    }
}

/// The `k`-th pair `(a, b)` with `0 ≤ a ≤ b < m`, ordered by `a` then `b`.
fn ball(mut k: u64, m: u64) -> (u64, u64) {
    for a in 0..m {
        let row = m - a;
        if k < row {
            return (a, a + k);
        }
        k -= row;
    }
    unreachable!("ball index out of range")
}

pub fn uniform_sequence(values: &[f64], indet_count: u32, len: usize, seed: u64) -> Result<Vec<NeutroSymbol>> {
    NeutroRng::seed(seed).uniform_sequence(values, indet_count, len)
}

pub fn weighted_sequence(alphabet: &WeightedAlphabet, len: usize, seed: u64) -> Result<Vec<NeutroSymbol>> {
    NeutroRng::seed(seed).weighted_sequence(alphabet, len)
}

pub fn interval_ball_draw(lo: i64, hi: i64, count: usize, seed: u64) -> Result<Vec<SetValue>> {
    NeutroRng::seed(seed).interval_ball_draw(lo, hi, count)
}
