//! Test-only oracles, independent of the library code paths they check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use inflatable::perm::{all_permutations, pattern_of, Permutation};
use inflatable::rational::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

pub mod suites;

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Uniformly shuffled permutation of length in `lens`.
pub fn perm_strategy(lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Permutation> {
    lens.prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<u32>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

/// Centrally symmetric permutation with `n` in `lens`.
pub fn central_strategy(lens: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Permutation> {
    lens.prop_flat_map(|n| {
        let half = n / 2;
        (
            Just(n),
            Just((1..=n as u32).collect::<Vec<u32>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), half),
        )
    })
    .prop_map(|(n, order, flips)| {
        // pick representatives of the complementary pairs in shuffled order
        let n32 = n as u32;
        let mut vals = vec![0u32; n];
        let mut used = vec![false; n + 1];
        if n % 2 == 1 {
            vals[n / 2] = n32 / 2 + 1;
            used[n / 2 + 1] = true;
        }
        let mut pos = 0;
        for v in order {
            if used[v as usize] {
                continue;
            }
            let w = n32 + 1 - v;
            let (a, b) = if flips[pos] { (w, v) } else { (v, w) };
            vals[pos] = a;
            vals[n - 1 - pos] = b;
            used[v as usize] = true;
            used[w as usize] = true;
            pos += 1;
        }
        Permutation::new(vals).unwrap()
    })
}

/// Occurrences by testing every `k`-subset of positions with an explicit
/// bitmask loop (different enumeration from the library's combination walk).
pub fn count_by_bitmask(pattern: &Permutation, text: &Permutation) -> u64 {
    let n = text.len();
    let k = pattern.len();
    assert!(n <= 20);
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let picked: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| text.values()[i]).collect();
        if pattern_of(&picked).unwrap() == *pattern {
            count += 1;
        }
    }
    count
}

/// Limit distribution of `k`-point patterns in `inflate(tau, γ_j)` by direct
/// enumeration of block assignments.
///
/// In the limit, `k` random points fall into blocks independently and
/// uniformly. Points sharing a block are ordered by position, and their
/// relative value order is distributed as `inner(size)`. Points in different
/// blocks are ordered by block position and by `tau`.
pub fn limit_oracle(
    tau: &Permutation,
    k: usize,
    inner: &dyn Fn(&Permutation) -> Rational,
) -> BTreeMap<Permutation, Rational> {
    let n = tau.len();
    let mut out: BTreeMap<Permutation, Rational> = BTreeMap::new();
    let weight = Rational::new(BigInt::from(1), BigInt::from(n).pow(k as u32));
    let mut blocks = vec![0usize; k];
    loop {
        let mut sorted = blocks.clone();
        sorted.sort();
        // group sizes in block order
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &b in &sorted {
            match groups.last_mut() {
                Some((blk, size)) if *blk == b => *size += 1,
                _ => groups.push((b, 1)),
            }
        }
        let choices: Vec<Vec<Permutation>> = groups.iter().map(|&(_, s)| all_permutations(s)).collect();
        let mut idx = vec![0usize; groups.len()];
        loop {
            let mut keys: Vec<(u32, u32)> = Vec::with_capacity(k);
            let mut prob = weight.clone();
            for (g, &(blk, _)) in groups.iter().enumerate() {
                let inner_pat = &choices[g][idx[g]];
                prob *= inner(inner_pat);
                for &v in inner_pat.values() {
                    keys.push((tau.values()[blk], v));
                }
            }
            let pat = pattern_of(&keys).unwrap();
            *out.entry(pat).or_insert_with(|| Rational::from_integer(0.into())) += prob;
            let radices: Vec<usize> = choices.iter().map(Vec::len).collect();
            if !odometer(&mut idx, &radices) {
                break;
            }
        }
        if !odometer(&mut blocks, &vec![n; k]) {
            return out;
        }
    }
}

/// Advances a mixed-radix counter; false once it wraps to all zeros.
pub fn odometer(digits: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

pub fn uniform_inner(p: &Permutation) -> Rational {
    let f: u64 = (1..=p.len() as u64).product();
    Rational::new(BigInt::from(1), BigInt::from(f))
}

pub fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
