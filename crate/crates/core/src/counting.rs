//! Pattern occurrence counting and exact densities.
//!
//! [`count_occurrences`] enumerates index subsets directly and is the reference
//! oracle. [`count_length3_all`] computes all length-2 and length-3 counts at
//! once in `O(n log n)` with two Fenwick sweeps.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rational::{binomial, ratio, Rational};

/// Occurrences of `pattern` in `text`, by enumerating every `|pattern|`-subset
/// of positions.
///
/// Returns 0 when the pattern is longer than the text.
pub fn count_occurrences(pattern: &Permutation, text: &Permutation) -> u64 {
    let k = pattern.len();
    let n = text.len();
    if k > n {
        return 0;
    }
    let pat = pattern.values();
    let vals = text.values();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut count = 0;
    loop {
        if matches_pattern(pat, vals, &idx) {
            count += 1;
        }
        // next k-combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return count;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn matches_pattern(pat: &[u32], vals: &[u32], idx: &[usize]) -> bool {
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if (vals[idx[a]] < vals[idx[b]]) != (pat[a] < pat[b]) {
                return false;
            }
        }
    }
    true
}

/// `t(pattern, text)`: occurrences over `C(|text|, |pattern|)`.
pub fn density(pattern: &Permutation, text: &Permutation) -> Result<Rational> {
    if pattern.len() > text.len() {
        return Err(Error::PatternTooLong { pattern: pattern.len(), text: text.len() });
    }
    let total = binomial(text.len() as u64, pattern.len() as u64);
    Ok(ratio(count_occurrences(pattern, text), total))
}

/// Counts of every length-3 pattern plus both length-2 patterns.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PatternCounts3 {
    pub c123: u64,
    pub c132: u64,
    pub c213: u64,
    pub c231: u64,
    pub c312: u64,
    pub c321: u64,
    /// Occurrences of `12` (non-inversions).
    pub inv12: u64,
    /// Occurrences of `21` (inversions).
    pub inv21: u64,
}

/// The six length-3 patterns in lexicographic order.
pub const LENGTH3: [&str; 6] = ["123", "132", "213", "231", "312", "321"];

impl PatternCounts3 {
    /// Count for a pattern of length 2 or 3, `None` for anything else.
    pub fn get(&self, pattern: &Permutation) -> Option<u64> {
        Some(match pattern.values() {
            [1, 2] => self.inv12,
            [2, 1] => self.inv21,
            [1, 2, 3] => self.c123,
            [1, 3, 2] => self.c132,
            [2, 1, 3] => self.c213,
            [2, 3, 1] => self.c231,
            [3, 1, 2] => self.c312,
            [3, 2, 1] => self.c321,
            _ => return None,
        })
    }

    /// Length-3 counts in [`LENGTH3`] order.
    pub fn length3(&self) -> [u64; 6] {
        [self.c123, self.c132, self.c213, self.c231, self.c312, self.c321]
    }

    pub fn total3(&self) -> u64 {
        self.length3().iter().sum()
    }

    /// `(pattern, count)` pairs: `12`, `21`, then the six length-3 patterns.
    pub fn entries(&self) -> Vec<(Permutation, u64)> {
        let mut out = vec![
            (Permutation::from_vec_unchecked(vec![1, 2]), self.inv12),
            (Permutation::from_vec_unchecked(vec![2, 1]), self.inv21),
        ];
        for (name, count) in LENGTH3.iter().zip(self.length3()) {
            out.push((name.parse().unwrap(), count));
        }
        out
    }
}

/// Fenwick tree over `1..=n` holding counts.
struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    fn add(&mut self, mut i: usize) {
        while i < self.tree.len() {
            self.tree[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of inserted values `<= i`.
    fn prefix(&self, mut i: usize) -> u64 {
        let mut s = 0u64;
        while i > 0 {
            s += self.tree[i] as u64;
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// All length-2 and length-3 pattern counts.
///
/// For each position `j` let `ls`/`lg` be the number of earlier values smaller /
/// greater than `p_j`, and `rs`/`rg` the same for later values. Then
/// `123 = Σ ls·rg`, `321 = Σ lg·rs`, `132 + 231 = Σ ls·rs`,
/// `213 + 312 = Σ lg·rg`, `123 + 132 = Σ C(rg, 2)` and `123 + 213 = Σ C(ls, 2)`.
pub fn count_length3_all(text: &Permutation) -> Result<PatternCounts3> {
    let n = text.len();
    if n < 3 {
        return Err(Error::TooShort { len: n, min: 3 });
    }
    let vals = text.values();
    let mut left_smaller = vec![0u64; n];
    let mut fw = Fenwick::new(n);
    for (j, &v) in vals.iter().enumerate() {
        left_smaller[j] = fw.prefix(v as usize);
        fw.add(v as usize);
    }

    let (mut s123, mut s321, mut peak, mut valley, mut first_low, mut last_high) = (0, 0, 0, 0, 0, 0);
    let mut inv12 = 0;
    for (j, &v) in vals.iter().enumerate() {
        let v = v as u64;
        let ls = left_smaller[j];
        let lg = j as u64 - ls;
        // values below v number v-1; those not to the left are to the right
        let rs = v - 1 - ls;
        let rg = (n as u64 - 1 - j as u64) - rs;
        s123 += ls * rg;
        s321 += lg * rs;
        peak += ls * rs;
        valley += lg * rg;
        first_low += rg * rg.saturating_sub(1) / 2;
        last_high += ls * ls.saturating_sub(1) / 2;
        inv12 += ls;
    }
    let c132 = first_low - s123;
    let c213 = last_high - s123;
    let counts = PatternCounts3 {
        c123: s123,
        c132,
        c213,
        c231: peak - c132,
        c312: valley - c213,
        c321: s321,
        inv12,
        inv21: binomial(n as u64, 2) - inv12,
    };
    Ok(counts)
}

/// Non-inversion count (occurrences of `12`) in `O(n log n)`; valid for any length.
pub fn count_12(text: &Permutation) -> u64 {
    let mut fw = Fenwick::new(text.len());
    let mut total = 0;
    for &v in text.values() {
        total += fw.prefix(v as usize);
        fw.add(v as usize);
    }
    total
}
