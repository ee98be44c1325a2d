//! Block-partitions: every way of writing a permutation as a generalized inflation.

use crate::error::{Error, Result};
use crate::perm::{pattern_of, Permutation};

/// Longest permutation accepted by [`block_partitions`].
pub const MAX_PARTITION_LEN: usize = 10;

/// `pi = generalized_inflate(outer, inner)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub outer: Permutation,
    pub inner: Vec<Permutation>,
    pub sizes: Vec<usize>,
}

impl BlockPartition {
    /// `σ=<outer> b=<inner>,<inner>,...`
    pub fn describe(&self) -> String {
        let inner: Vec<String> = self.inner.iter().map(|b| b.to_string()).collect();
        format!("σ={} b={}", self.outer, inner.join(","))
    }
}

/// All block-partitions of `pi`, ordered lexicographically by block sizes.
///
/// Each composition of `|pi|` into consecutive segments is accepted when every
/// segment's values form a contiguous interval.
pub fn block_partitions(pi: &Permutation) -> Result<Vec<BlockPartition>> {
    let n = pi.len();
    if n > MAX_PARTITION_LEN {
        return Err(Error::TooLong { len: n, cap: MAX_PARTITION_LEN });
    }
    let vals = pi.values();
    // contiguous[i][j]: values at positions i..=j form an interval
    let mut contiguous = vec![vec![false; n]; n];
    for (i, row) in contiguous.iter_mut().enumerate() {
        let (mut lo, mut hi) = (u32::MAX, 0);
        for (j, &v) in vals.iter().enumerate().skip(i) {
            lo = lo.min(v);
            hi = hi.max(v);
            row[j] = (hi - lo) as usize == j - i;
        }
    }

    let mut compositions = Vec::new();
    let mut current = Vec::new();
    compose_from(0, n, &contiguous, &mut current, &mut compositions);

    Ok(compositions
        .into_iter()
        .map(|sizes| {
            let mut start = 0;
            let mut mins = Vec::with_capacity(sizes.len());
            let mut inner = Vec::with_capacity(sizes.len());
            for &s in &sizes {
                let segment = &vals[start..start + s];
                mins.push(*segment.iter().min().unwrap());
                inner.push(pattern_of(segment).unwrap());
                start += s;
            }
            BlockPartition { outer: pattern_of(&mins).unwrap(), inner, sizes }
        })
        .collect())
}

/// Depth-first over first-segment sizes `1, 2, ...`, which yields
/// compositions in lexicographic order.
fn compose_from(start: usize, n: usize, contiguous: &[Vec<bool>], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if start == n {
        out.push(current.clone());
        return;
    }
    for end in start..n {
        if contiguous[start][end] {
            current.push(end - start + 1);
            compose_from(end + 1, n, contiguous, current, out);
            current.pop();
        }
    }
}
