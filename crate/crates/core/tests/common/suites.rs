//! Property sub-suites shared by the property target and the acceptance target.

use std::collections::BTreeSet;

use inflatable::counting::{count_length3_all, count_occurrences, density};
use inflatable::limits::{abc_coefficients, limit_density_uniform};
use inflatable::partitions::block_partitions;
use inflatable::perm::{all_permutations, generalized_inflate, inflate, pattern_of, Permutation};
use inflatable::rational::{from_int, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::{p, perm_strategy};

type Case = std::result::Result<(), TestCaseError>;

/// Runs `cases` deterministic cases; returns the failure message, if any.
pub fn run_cases<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Case,
) -> std::result::Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

/// (i) Fenwick counts equal brute-force enumeration.
pub fn fast_counts_match_brute_force(tau: Permutation) -> Case {
    let fast = count_length3_all(&tau).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for (pattern, count) in fast.entries() {
        prop_assert_eq!(count, count_occurrences(&pattern, &tau), "{} in {}", pattern, tau);
    }
    Ok(())
}

/// (ii) Limit densities of the six length-3 patterns sum to 1.
pub fn uniform_limits_sum_to_one(tau: Permutation) -> Case {
    let mut total = from_int(0);
    for pi in all_permutations(3) {
        total += limit_density_uniform(&pi, &tau).unwrap();
    }
    prop_assert_eq!(total, from_int(1), "tau = {}", tau);
    Ok(())
}

/// (iii) `t(π, inflate(τ)) = a·t(π, τ) + m·b·t(ρ, τ) + c` for every length-3 `π`.
///
/// `ρ` is the outer pattern of the two-block partitions of `π` and `m` is
/// their number.
pub fn linear_forms_hold(tau: Permutation) -> Case {
    let n = tau.len() as u64;
    let (a, b, c) = abc_coefficients(n).unwrap();
    let forms =
        [("132", "12", 1), ("213", "12", 1), ("312", "21", 1), ("231", "21", 1), ("123", "12", 2), ("321", "21", 2)];
    for (pi, rho, m) in forms {
        let pi = p(pi);
        let lhs = limit_density_uniform(&pi, &tau).unwrap();
        let rhs = a.clone() * density(&pi, &tau).unwrap()
            + from_int(m) * b.clone() * density(&p(rho), &tau).unwrap()
            + c.clone();
        prop_assert_eq!(lhs, rhs, "{} over {}", pi, tau);
    }
    Ok(())
}

/// (iv) `t(π, γ) = t(R(π), R(γ))`.
pub fn rotation_preserves_density((pi, gamma): (Permutation, Permutation)) -> Case {
    let before: Rational = density(&pi, &gamma).unwrap();
    let after = density(&pi.rotate(), &gamma.rotate()).unwrap();
    prop_assert_eq!(before, after, "pi = {}, gamma = {}", pi, gamma);
    Ok(())
}

/// Brute-force block partitions: every composition whose segments hold
/// contiguous values, as (sizes, outer, inner).
pub fn brute_force_partitions(pi: &Permutation) -> BTreeSet<(Vec<usize>, Permutation, Vec<Permutation>)> {
    let n = pi.len();
    let vals = pi.values();
    let mut out = BTreeSet::new();
    for cuts in 0u32..(1 << (n - 1)) {
        let mut segments = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || cuts >> (i - 1) & 1 == 1 {
                segments.push(&vals[start..i]);
                start = i;
            }
        }
        let contiguous = segments.iter().all(|s| {
            let lo = *s.iter().min().unwrap();
            let hi = *s.iter().max().unwrap();
            (hi - lo) as usize + 1 == s.len()
        });
        if !contiguous {
            continue;
        }
        let sizes = segments.iter().map(|s| s.len()).collect();
        let outer = pattern_of(&segments.iter().map(|s| s[0]).collect::<Vec<_>>()).unwrap();
        let inner = segments.iter().map(|s| pattern_of(s).unwrap()).collect();
        out.insert((sizes, outer, inner));
    }
    out
}

/// (v) Every listed partition rebuilds `π`, the list is ordered by sizes and
/// it matches the brute-force set.
pub fn partitions_reconstruct(pi: &Permutation) -> Case {
    let parts = block_partitions(pi).unwrap();
    for part in &parts {
        prop_assert_eq!(generalized_inflate(&part.outer, &part.inner).unwrap(), pi.clone(), "{}", part.describe());
        let sizes: Vec<usize> = part.inner.iter().map(Permutation::len).collect();
        prop_assert_eq!(&sizes, &part.sizes);
    }
    prop_assert!(parts.windows(2).all(|w| w[0].sizes < w[1].sizes), "order for {}", pi);
    let listed: BTreeSet<_> = parts.into_iter().map(|b| (b.sizes, b.outer, b.inner)).collect();
    prop_assert_eq!(listed, brute_force_partitions(pi), "pi = {}", pi);
    Ok(())
}

/// (vi) `inflate(inflate(a, b), c) = inflate(a, inflate(b, c))`.
pub fn inflation_associative((a, b, c): (Permutation, Permutation, Permutation)) -> Case {
    prop_assert_eq!(inflate(&inflate(&a, &b), &c), inflate(&a, &inflate(&b, &c)));
    Ok(())
}

pub fn pattern_and_text() -> impl Strategy<Value = (Permutation, Permutation)> {
    (1usize..=5).prop_flat_map(|k| (perm_strategy(k..=k), perm_strategy(k..=12)))
}

pub fn triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (perm_strategy(1..=5), perm_strategy(1..=5), perm_strategy(1..=5))
}

/// All permutations of every length from 1 to `max`.
pub fn all_up_to(max: usize) -> impl Iterator<Item = Permutation> {
    (1..=max).flat_map(all_permutations)
}
