//! Exact limit densities of patterns in inflations.
//!
//! For a convergent sequence `{γ_j}` whose pattern densities are given by a
//! [`DensityProfile`], the limit density of `π` in `inflate(τ, γ_j)` is
//!
//! ```text
//! |π|! / |τ|^|π| · Σ_{(b, σ) ∈ B(π)} C(|τ|, |σ|) t(σ, τ) · Π_{α ∈ b} t(α) / |α|!
//! ```
//!
//! and `C(|τ|, |σ|) t(σ, τ)` is just the occurrence count of `σ` in `τ`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::counting::count_occurrences;
use crate::error::{Error, Result};
use crate::partitions::block_partitions;
use crate::perm::{all_permutations, Permutation};
use crate::rational::{binomial, factorial, format_rational, ratio, Rational};

/// Longest pattern accepted by the limit-density formula.
pub const MAX_PATTERN_LEN: usize = 6;

/// Limit densities of patterns in a convergent sequence, complete per length class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityProfile {
    entries: BTreeMap<Permutation, Rational>,
}

impl DensityProfile {
    /// Validates that each length class present is complete, lies in `[0, 1]`
    /// and sums to 1. The length-1 entry is added as `1` when absent.
    pub fn new(mut entries: BTreeMap<Permutation, Rational>) -> Result<Self> {
        let one = Permutation::identity(1);
        entries.entry(one).or_insert_with(Rational::one);
        let mut by_len: BTreeMap<usize, (usize, Rational)> = BTreeMap::new();
        for (pattern, value) in &entries {
            if value < &Rational::zero() || value > &Rational::one() {
                return Err(Error::InvalidProfile(format!(
                    "density {} of {} lies outside [0, 1]",
                    format_rational(value),
                    pattern
                )));
            }
            let slot = by_len.entry(pattern.len()).or_insert((0, Rational::zero()));
            slot.0 += 1;
            slot.1 += value;
        }
        for (len, (count, sum)) in by_len {
            if len > MAX_PATTERN_LEN {
                return Err(Error::TooLong { len, cap: MAX_PATTERN_LEN });
            }
            let expected = (1..=len).product::<usize>();
            if count != expected {
                return Err(Error::InvalidProfile(format!("length {len} has {count} of {expected} patterns")));
            }
            if !sum.is_one() {
                return Err(Error::InvalidProfile(format!("length {len} densities sum to {}", format_rational(&sum))));
            }
        }
        Ok(DensityProfile { entries })
    }

    pub fn get(&self, pattern: &Permutation) -> Option<&Rational> {
        self.entries.get(pattern)
    }

    pub fn entries(&self) -> &BTreeMap<Permutation, Rational> {
        &self.entries
    }

    /// Longest `k` such that every length `1..=k` is present.
    pub fn max_len(&self) -> usize {
        (1..=MAX_PATTERN_LEN).take_while(|&k| self.entries.contains_key(&Permutation::identity(k))).last().unwrap_or(0)
    }
}

/// Every pattern of length `k <= max_len` mapped to `1/k!`.
pub fn uniform_profile(max_len: usize) -> Result<DensityProfile> {
    if max_len == 0 {
        return Err(Error::TooShort { len: 0, min: 1 });
    }
    if max_len > MAX_PATTERN_LEN {
        return Err(Error::TooLong { len: max_len, cap: MAX_PATTERN_LEN });
    }
    let mut entries = BTreeMap::new();
    for k in 1..=max_len {
        let weight = Rational::new(BigInt::one(), factorial(k as u64));
        for pattern in all_permutations(k) {
            entries.insert(pattern, weight.clone());
        }
    }
    DensityProfile::new(entries)
}

fn check_pattern_len(pi: &Permutation) -> Result<()> {
    if pi.len() > MAX_PATTERN_LEN {
        return Err(Error::TooLong { len: pi.len(), cap: MAX_PATTERN_LEN });
    }
    Ok(())
}

/// `|π|! / |τ|^|π|` as an exact rational.
fn leading_factor(pi: &Permutation, tau: &Permutation) -> Rational {
    let k = pi.len() as u32;
    Rational::new(factorial(pi.len() as u64), BigInt::from(tau.len()).pow(k))
}

/// Limit density of `pi` in `inflate(tau, γ_j)` where `{γ_j}` has the given profile.
pub fn limit_density_inflation(pi: &Permutation, tau: &Permutation, profile: &DensityProfile) -> Result<Rational> {
    check_pattern_len(pi)?;
    for k in 1..=pi.len() {
        let id = Permutation::identity(k);
        if profile.get(&id).is_none() {
            return Err(Error::MissingProfileEntry(id.to_string()));
        }
    }
    let mut occurrences: HashMap<Permutation, u64> = HashMap::new();
    let mut sum = Rational::zero();
    for part in block_partitions(pi)? {
        let count = *occurrences.entry(part.outer.clone()).or_insert_with(|| count_occurrences(&part.outer, tau));
        if count == 0 {
            continue;
        }
        let mut term = Rational::from_integer(BigInt::from(count));
        for alpha in &part.inner {
            let t = profile.get(alpha).ok_or_else(|| Error::MissingProfileEntry(alpha.to_string()))?;
            term *= t / Rational::from_integer(factorial(alpha.len() as u64));
        }
        sum += term;
    }
    Ok(leading_factor(pi, tau) * sum)
}

/// Limit density of `pi` in the uniform inflation of `tau`: every inner
/// block contributes `1/|α|!²`.
pub fn limit_density_uniform(pi: &Permutation, tau: &Permutation) -> Result<Rational> {
    check_pattern_len(pi)?;
    let mut sum = Rational::zero();
    for part in block_partitions(pi)? {
        let count = count_occurrences(&part.outer, tau);
        if count == 0 {
            continue;
        }
        let denom: BigInt = part
            .sizes
            .iter()
            .map(|&s| {
                let f = factorial(s as u64);
                &f * &f
            })
            .product();
        sum += Rational::new(BigInt::from(count), denom);
    }
    Ok(leading_factor(pi, tau) * sum)
}

/// Coefficients of the length-3 linear forms over a permutation of length `n`:
/// `a = 3!/n³·C(n,3)`, `b = 3!/n³·C(n,2)/4`, `c = 3!/n³·n/36`.
pub fn abc_coefficients(n: u64) -> Result<(Rational, Rational, Rational)> {
    if n < 3 {
        return Err(Error::TooShort { len: n as usize, min: 3 });
    }
    let cube = n * n * n;
    let a = ratio(6 * binomial(n, 3), cube);
    let b = ratio(6 * binomial(n, 2), 4 * cube);
    let c = ratio(6 * n, 36 * cube);
    Ok((a, b, c))
}
