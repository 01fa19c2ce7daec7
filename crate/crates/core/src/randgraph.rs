//! Erdős–Rényi digraphs `D(n, q)` and empirical reduced Betti distributions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::digraph::Digraph;
use crate::homology::{betti_curve, HomologyError};

/// Trials per independently seeded sub-stream.
pub const CHUNK: usize = 256;

#[derive(Debug, Error)]
pub enum RandGraphError {
    #[error("arc probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Samples `D(n, q)`: each ordered pair `(i, j)`, `i ≠ j`, is an arc with
/// probability `q`, independently. Pairs are visited row-major.
pub fn er_digraph<R: Rng + ?Sized>(n: usize, q: f64, rng: &mut R) -> Digraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(q.clamp(0.0, 1.0)) {
                arcs.push((i, j));
            }
        }
    }
    Digraph::new(n, arcs).expect("arcs in range")
}

pub fn er_digraph_seeded(n: usize, q: f64, seed: u64) -> Digraph {
    er_digraph(n, q, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ERSpec {
    pub n: usize,
    pub q: f64,
    pub trials: usize,
    pub seed: u64,
    pub max_dim: usize,
}

impl ERSpec {
    pub fn validate(&self) -> Result<(), RandGraphError> {
        if !(0.0..=1.0).contains(&self.q) {
            return Err(RandGraphError::Probability(self.q));
        }
        if self.trials == 0 {
            return Err(RandGraphError::NoTrials);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BettiDistribution {
    pub spec: ERSpec,
    /// `counts[p][value]` is the number of trials with `β̃_p = value`.
    pub counts: Vec<BTreeMap<usize, u64>>,
}

impl BettiDistribution {
    pub fn trials(&self) -> u64 {
        self.spec.trials as u64
    }

    pub fn frequency(&self, p: usize, value: usize) -> Ratio<u64> {
        let c = self.counts.get(p).and_then(|m| m.get(&value)).copied().unwrap_or(0);
        Ratio::new(c, self.trials())
    }

    pub fn frequencies(&self, p: usize) -> Vec<(usize, Ratio<u64>)> {
        self.counts[p]
            .iter()
            .map(|(&v, &c)| (v, Ratio::new(c, self.trials())))
            .collect()
    }

    pub fn mean(&self, p: usize) -> f64 {
        let total: u64 = self.counts[p].iter().map(|(&v, &c)| v as u64 * c).sum();
        total as f64 / self.trials() as f64
    }

    /// `dimension,betti_value,frequency` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dimension,betti_value,frequency\n");
        for (p, m) in self.counts.iter().enumerate() {
            for (&v, &c) in m {
                let f = c as f64 / self.trials() as f64;
                writeln!(out, "{p},{v},{f}").unwrap();
            }
        }
        out
    }
}

fn tally(counts: &mut [BTreeMap<usize, u64>], betti: &[usize]) {
    for (p, &b) in betti.iter().enumerate() {
        *counts[p].entry(b).or_insert(0) += 1;
    }
}

/// Runs `spec.trials` independent samples. Trials are split into chunks of
/// [`CHUNK`], chunk `k` drawing from a generator seeded with `seed + k`, so
/// the result depends only on the `ERSpec` and not on the thread count.
pub fn sample_er(spec: &ERSpec) -> Result<BettiDistribution, RandGraphError> {
    spec.validate()?;
    let chunks = spec.trials.div_ceil(CHUNK);
    let dims = spec.max_dim + 1;
    let partial: Vec<Vec<BTreeMap<usize, u64>>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(k as u64));
            let len = CHUNK.min(spec.trials - k * CHUNK);
            let mut counts = vec![BTreeMap::new(); dims];
            for _ in 0..len {
                let d = er_digraph(spec.n, spec.q, &mut rng);
                tally(&mut counts, &betti_curve(&d, spec.max_dim)?);
            }
            Ok(counts)
        })
        .collect::<Result<_, HomologyError>>()?;
    let mut counts = vec![BTreeMap::new(); dims];
    for part in partial {
        for (p, m) in part.into_iter().enumerate() {
            for (v, c) in m {
                *counts[p].entry(v).or_insert(0) += c;
            }
        }
    }
    Ok(BettiDistribution {
        spec: spec.clone(),
        counts,
    })
}

/// The exact distribution of `β̃` under `D(n, 1/2)`, where every labeled
/// digraph is equally likely. Feasible for `n ≤ 4`.
pub fn exact_half_distribution(n: usize, max_dim: usize) -> Result<Vec<BTreeMap<usize, u64>>, HomologyError> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    assert!(pairs.len() < 24, "exhaustive enumeration is limited to n ≤ 4");
    let partial: Vec<Vec<usize>> = (0u32..1 << pairs.len())
        .into_par_iter()
        .map(|mask| {
            let arcs = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &a)| a);
            betti_curve(&Digraph::new(n, arcs).expect("in range"), max_dim)
        })
        .collect::<Result<_, _>>()?;
    let mut counts = vec![BTreeMap::new(); max_dim + 1];
    for b in &partial {
        tally(&mut counts, b);
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(q: f64, trials: usize, seed: u64) -> ERSpec {
        ERSpec {
            n: 4,
            q,
            trials,
            seed,
            max_dim: 3,
        }
    }

    #[test]
    fn empty_model() {
        let dist = sample_er(&spec(0.0, 50, 3)).unwrap();
        assert_eq!(dist.frequency(0, 3), Ratio::from_integer(1));
        for p in 1..=3 {
            assert_eq!(dist.frequency(p, 0), Ratio::from_integer(1));
        }
    }

    #[test]
    fn complete_model_is_constant() {
        let dist = sample_er(&spec(1.0, 40, 9)).unwrap();
        let complete = Digraph::new(4, (0..4).flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))).unwrap();
        let b = betti_curve(&complete, 3).unwrap();
        for (p, &v) in b.iter().enumerate() {
            assert_eq!(dist.frequency(p, v), Ratio::from_integer(1));
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = sample_er(&spec(0.3, 600, 17)).unwrap();
        let b = sample_er(&spec(0.3, 600, 17)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn frequencies_sum_to_one() {
        let dist = sample_er(&spec(0.4, 300, 1)).unwrap();
        for p in 0..=3 {
            let s: Ratio<u64> = dist.frequencies(p).into_iter().map(|(_, f)| f).sum();
            assert_eq!(s, Ratio::from_integer(1));
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(sample_er(&spec(1.5, 10, 0)), Err(RandGraphError::Probability(_))));
        assert!(matches!(sample_er(&spec(0.5, 0, 0)), Err(RandGraphError::NoTrials)));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let dist = sample_er(&spec(0.0, 5, 0)).unwrap();
        let csv = dist.to_csv();
        assert!(csv.starts_with("dimension,betti_value,frequency\n"));
        assert!(csv.contains("0,3,1\n"));
    }
}
