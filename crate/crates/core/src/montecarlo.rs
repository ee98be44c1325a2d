//! Monte Carlo estimates of pattern densities in uniform inflations.
//!
//! Each sample draws a uniform `λ ∈ S_j`, builds `inflate(τ, λ)` and measures
//! the density of the pattern in it, either exactly or from uniformly sampled
//! index subsets. Sample `i` uses its own ChaCha8 stream, so results do not
//! depend on how samples are scheduled across threads.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::counting::{count_length3_all, count_occurrences};
use crate::error::{Error, Result};
use crate::perm::{inflate, Permutation};
use crate::rational::binomial;

/// Recorded with every estimate so it can be reproduced.
pub const RNG_ALGORITHM: &str = "chacha8:seed_from_u64(seed),stream(sample)";

/// Longest pattern the estimator accepts.
pub const MAX_PATTERN_LEN: usize = 4;
/// Largest inflated length for exact counting of patterns of length at most 3.
pub const EXACT_CAP_SHORT: usize = 500;
/// Largest inflated length for exact counting of length-4 patterns.
pub const EXACT_CAP_LEN4: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    /// Sample standard deviation over the `samples` draws, divided by `sqrt(samples)`.
    pub stderr: f64,
    pub samples: usize,
    pub subset_samples: usize,
    pub j: usize,
    pub seed: u64,
}

impl Estimate {
    /// `(mean - expected) / stderr`; infinite when the spread is zero and the mean is off.
    pub fn z_score(&self, expected: f64) -> f64 {
        let diff = self.mean - expected;
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// Uniform random permutation of length `j` (Fisher-Yates).
pub fn random_permutation<R: rand::Rng + ?Sized>(j: usize, rng: &mut R) -> Permutation {
    let mut values: Vec<u32> = (1..=j as u32).collect();
    values.shuffle(rng);
    Permutation::from_vec_unchecked(values)
}

pub fn sample_rng(seed: u64, sample: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    rng
}

/// Estimates the limit density of `pi` in the uniform inflation of `tau`
/// using inflations by random permutations of length `j`.
///
/// `subset_samples = 0` requests exact counting in every sample.
pub fn estimate_limit_density(
    tau: &Permutation,
    pi: &Permutation,
    j: usize,
    samples: usize,
    subset_samples: usize,
    seed: u64,
) -> Result<Estimate> {
    let k = pi.len();
    if k > MAX_PATTERN_LEN {
        return Err(Error::TooLong { len: k, cap: MAX_PATTERN_LEN });
    }
    if j < k {
        return Err(Error::InvalidArgument(format!("j = {j} is shorter than the pattern ({k})")));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let size = tau.len() * j;
    if subset_samples == 0 {
        let cap = if k <= 3 { EXACT_CAP_SHORT } else { EXACT_CAP_LEN4 };
        if size > cap {
            return Err(Error::TooLong { len: size, cap });
        }
    }

    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, i);
            let lambda = random_permutation(j, &mut rng);
            let big = inflate(tau, &lambda);
            if subset_samples == 0 {
                exact_density(pi, &big)
            } else {
                sampled_density(pi, &big, subset_samples, &mut rng)
            }
        })
        .collect();

    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let stderr = if values.len() > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(Estimate { mean, stderr, samples, subset_samples, j, seed })
}

fn exact_density(pi: &Permutation, text: &Permutation) -> f64 {
    let k = pi.len();
    let count = match k {
        1 => text.len() as u64,
        2 | 3 if text.len() >= 3 => {
            count_length3_all(text).ok().and_then(|c| c.get(pi)).expect("length 2 or 3 pattern")
        }
        _ => count_occurrences(pi, text),
    };
    count as f64 / binomial(text.len() as u64, k as u64) as f64
}

fn sampled_density(pi: &Permutation, text: &Permutation, draws: usize, rng: &mut ChaCha8Rng) -> f64 {
    let k = pi.len();
    let mut hits = 0usize;
    let mut picked = Vec::with_capacity(k);
    for _ in 0..draws {
        picked.clear();
        picked.extend(index::sample(rng, text.len(), k));
        picked.sort_unstable();
        if text.restrict(&picked) == *pi {
            hits += 1;
        }
    }
    hits as f64 / draws as f64
}
