//! Permutations, their two string notations, and the inflation constructions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest length expressible in compact notation (digits 1-9, then A-Z for 10-35).
pub const COMPACT_MAX_LEN: usize = 35;

/// A permutation of `1..=n`, stored as its one-line notation.
///
/// The derived ordering is lexicographic on the value sequence, which is the
/// canonical order used for sorting search results.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

/// The two string notations accepted by [`parse_permutation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    /// `E534BGA9HC2D1687F`
    Compact,
    /// `14,5,3,4,11`
    Comma,
}

impl Permutation {
    /// Validates that `values` is a bijection on `1..=n` with `n >= 1`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::OutOfRange { value: v as u64, len: n });
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::Duplicate(v as u64));
            }
        }
        Ok(Permutation { values })
    }

    /// Caller guarantees the bijection invariant.
    pub(crate) fn from_vec_unchecked(values: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "empty permutation");
        Permutation { values: (1..=n as u32).collect() }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Permutation { values: inv }
    }

    /// 180 degree rotation of the plot: `R(p)_i = n + 1 - p_{n+1-i}`.
    pub fn rotate(&self) -> Permutation {
        let n = self.len() as u32;
        Permutation { values: self.values.iter().rev().map(|&v| n + 1 - v).collect() }
    }

    /// `p_i + p_{n+1-i} = n + 1` for every `i`.
    pub fn is_centrally_symmetric(&self) -> bool {
        let n = self.len() as u32;
        self.values.iter().zip(self.values.iter().rev()).all(|(&a, &b)| a + b == n + 1)
    }

    /// Pattern induced by the given (increasing or arbitrary) positions.
    pub fn restrict(&self, positions: &[usize]) -> Permutation {
        let picked: Vec<u32> = positions.iter().map(|&i| self.values[i]).collect();
        pattern_of(&picked).expect("positions select distinct values")
    }

    pub fn format(&self, style: Style) -> Result<String> {
        format_permutation(self, style)
    }
}

impl fmt::Display for Permutation {
    /// Compact notation when it fits, comma notation otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let style = if self.len() <= COMPACT_MAX_LEN { Style::Compact } else { Style::Comma };
        f.write_str(&format_permutation(self, style).expect("style chosen to fit"))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s)
    }
}

fn compact_digit(c: char) -> Result<u32> {
    match c {
        '1'..='9' => Ok(c as u32 - '0' as u32),
        'A'..='Z' => Ok(c as u32 - 'A' as u32 + 10),
        _ => Err(Error::InvalidChar(c)),
    }
}

fn compact_char(v: u32) -> char {
    match v {
        1..=9 => char::from_digit(v, 10).unwrap(),
        _ => (b'A' + (v - 10) as u8) as char,
    }
}

/// Parses compact (`312`, `E534BGA9HC2D1687F`) or comma (`3,1,2`) notation.
/// Input containing a comma is read as comma notation.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Empty);
    }
    let values = if text.contains(',') {
        let mut values = Vec::new();
        for token in text.split(',') {
            let token = token.trim();
            if token.is_empty() {
                return Err(Error::InvalidToken(token.to_string()));
            }
            if token.chars().any(|c| c.is_ascii_alphabetic()) {
                return Err(Error::MixedStyle(text.to_string()));
            }
            let v: u64 = token.parse().map_err(|_| Error::InvalidToken(token.to_string()))?;
            let v = u32::try_from(v).map_err(|_| Error::OutOfRange { value: v, len: 0 })?;
            values.push(v);
        }
        values
    } else {
        text.chars().map(compact_digit).collect::<Result<Vec<u32>>>()?
    };
    let n = values.len();
    Permutation::new(values).map_err(|e| match e {
        Error::OutOfRange { value, .. } => Error::OutOfRange { value, len: n },
        other => other,
    })
}

pub fn format_permutation(p: &Permutation, style: Style) -> Result<String> {
    match style {
        Style::Compact => {
            if p.len() > COMPACT_MAX_LEN {
                return Err(Error::CompactTooLong(p.len()));
            }
            Ok(p.values.iter().map(|&v| compact_char(v)).collect())
        }
        Style::Comma => Ok(p.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")),
    }
}

/// The permutation order-isomorphic to `values`.
pub fn pattern_of<T: Ord + Copy>(values: &[T]) -> Result<Permutation> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    let mut ranks = vec![0u32; values.len()];
    for (rank, &i) in order.iter().enumerate() {
        if rank > 0 && values[order[rank - 1]] == values[i] {
            return Err(Error::Duplicate(rank as u64));
        }
        ranks[i] = rank as u32 + 1;
    }
    Ok(Permutation { values: ranks })
}

/// Every permutation of length `k`, in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    assert!(k >= 1, "empty permutation");
    let mut out = Vec::new();
    let mut vals: Vec<u32> = (1..=k as u32).collect();
    loop {
        out.push(Permutation { values: vals.clone() });
        let Some(i) = (1..k).rev().find(|&i| vals[i - 1] < vals[i]) else { return out };
        let j = (i..k).rev().find(|&j| vals[j] > vals[i - 1]).unwrap();
        vals.swap(i - 1, j);
        vals[i..].reverse();
    }
}

/// `inflate(tau, gamma)`: position `(i-1)m + j` holds `m(tau_i - 1) + gamma_j`.
pub fn inflate(tau: &Permutation, gamma: &Permutation) -> Permutation {
    let m = gamma.len() as u32;
    let values = tau.values.iter().flat_map(|&t| gamma.values.iter().map(move |&g| m * (t - 1) + g)).collect();
    Permutation { values }
}

/// Generalized inflation: block `i` is order-isomorphic to `blocks[i]` and
/// blocks are ordered by value according to `tau`.
pub fn generalized_inflate(tau: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    if blocks.len() != tau.len() {
        return Err(Error::BlockCountMismatch { outer: tau.len(), blocks: blocks.len() });
    }
    // offset[v] = total size of the blocks whose tau-value is below v
    let mut size_by_value = vec![0u32; tau.len()];
    for (&t, b) in tau.values.iter().zip(blocks) {
        size_by_value[t as usize - 1] = b.len() as u32;
    }
    let mut offset = vec![0u32; tau.len()];
    for v in 1..tau.len() {
        offset[v] = offset[v - 1] + size_by_value[v - 1];
    }
    let values = tau
        .values
        .iter()
        .zip(blocks)
        .flat_map(|(&t, b)| {
            let base = offset[t as usize - 1];
            b.values.iter().map(move |&g| base + g)
        })
        .collect();
    Ok(Permutation { values })
}
