//! 2- and 3-inflatability: target densities and counts, admissible lengths
//! modulo 144, and composition of inflatable permutations.

use std::collections::BTreeMap;

use crate::counting::{count_12, count_length3_all, PatternCounts3};
use crate::error::{Error, Result};
use crate::perm::{inflate, Permutation};
use crate::rational::{binomial, from_int, ratio, Rational};

/// Period of the admissibility conditions.
pub const ADMISSIBLE_MODULUS: u64 = 144;

fn perm(s: &str) -> Permutation {
    s.parse().expect("static pattern")
}

/// Required densities of `12` and every length-3 pattern in a 3-inflatable
/// permutation of length `n`.
pub fn target_densities_3(n: u64) -> Result<BTreeMap<Permutation, Rational>> {
    if n < 3 {
        return Err(Error::TooShort { len: n as usize, min: 3 });
    }
    let n = n as i64;
    let monotone = Rational::new((2 * n - 7).into(), (12 * (n - 2)).into());
    let other = Rational::new((4 * n - 5).into(), (24 * (n - 2)).into());
    let mut out = BTreeMap::new();
    out.insert(perm("12"), ratio(1, 2));
    for p in ["123", "321"] {
        out.insert(perm(p), monotone.clone());
    }
    for p in ["132", "213", "231", "312"] {
        out.insert(perm(p), other.clone());
    }
    Ok(out)
}

/// Required occurrence counts for length `n`, or `None` when some target is
/// not an integer (the length is inadmissible).
pub fn target_counts_3(n: u64) -> Result<Option<PatternCounts3>> {
    if n < 3 {
        return Err(Error::TooShort { len: n as usize, min: 3 });
    }
    if 2 * n < 7 {
        // negative monotone target
        return Ok(None);
    }
    let pairs = binomial(n, 2);
    let triples = binomial(n, 3);
    // C(n,3)(2n-7)/(12(n-2)) = n(n-1)(2n-7)/72, and likewise /144 for the rest
    let monotone = n * (n - 1) * (2 * n - 7);
    let other = n * (n - 1) * (4 * n - 5);
    if !pairs.is_multiple_of(2) || !monotone.is_multiple_of(72) || !other.is_multiple_of(144) {
        return Ok(None);
    }
    let (m, o) = (monotone / 72, other / 144);
    let counts =
        PatternCounts3 { c123: m, c132: o, c213: o, c231: o, c312: o, c321: m, inv12: pairs / 2, inv21: pairs / 2 };
    debug_assert_eq!(counts.total3(), triples);
    Ok(Some(counts))
}

pub fn is_admissible_length(n: u64) -> bool {
    match n {
        0 => false,
        1 => true,
        2 => false,
        _ => target_counts_3(n).expect("n >= 3").is_some(),
    }
}

/// `t(12, tau) = 1/2`; a single point is trivially 2-inflatable.
pub fn is_2_inflatable(tau: &Permutation) -> bool {
    let n = tau.len() as u64;
    n == 1 || 2 * count_12(tau) == binomial(n, 2)
}

/// Observed versus required densities for a candidate 3-inflatable permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflatabilityReport {
    pub length: usize,
    pub admissible_length: bool,
    pub required: BTreeMap<Permutation, Rational>,
    pub observed: BTreeMap<Permutation, Rational>,
    pub observed_counts: BTreeMap<Permutation, u64>,
    pub verdict: bool,
}

/// Decides 3-inflatability from the exact length-2 and length-3 densities.
///
/// Length 1 is trivially inflatable; length 2 never is, since a single pair
/// cannot have `12`-density 1/2.
pub fn check_3_inflatable(tau: &Permutation) -> InflatabilityReport {
    let n = tau.len();
    let mut report = InflatabilityReport {
        length: n,
        admissible_length: is_admissible_length(n as u64),
        required: BTreeMap::new(),
        observed: BTreeMap::new(),
        observed_counts: BTreeMap::new(),
        verdict: n == 1,
    };
    match n {
        1 => {}
        2 => {
            let c = count_12(tau);
            report.observed_counts.insert(perm("12"), c);
            report.observed.insert(perm("12"), from_int(c));
        }
        _ => {
            let counts = count_length3_all(tau).expect("n >= 3");
            let pairs = binomial(n as u64, 2);
            let triples = binomial(n as u64, 3);
            report.required = target_densities_3(n as u64).expect("n >= 3");
            for (pattern, count) in counts.entries() {
                let total = if pattern.len() == 2 { pairs } else { triples };
                report.observed.insert(pattern.clone(), ratio(count, total));
                report.observed_counts.insert(pattern, count);
            }
            report.verdict =
                report.admissible_length && report.required.iter().all(|(p, t)| report.observed.get(p) == Some(t));
        }
    }
    report
}

/// Residues `r` modulo `modulus` such that every `n ≡ r` satisfies
/// `144 | n(n-1)(4n-5)`, `72 | n(n-1)(2n-7)` and `C(n,2)` even.
pub fn admissible_residues(modulus: u64) -> Result<Vec<u64>> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be at least 1".into()));
    }
    let period = num_integer::lcm(modulus, ADMISSIBLE_MODULUS);
    let mut ok = vec![true; modulus as usize];
    for n in 0..period {
        if !residue_conditions(n) {
            ok[(n % modulus) as usize] = false;
        }
    }
    Ok((0..modulus).filter(|&r| ok[r as usize]).collect())
}

fn residue_conditions(n: u64) -> bool {
    let n = n as i128;
    let base = n * (n - 1);
    (base * (4 * n - 5)).rem_euclid(144) == 0 && (base * (2 * n - 7)).rem_euclid(72) == 0 && base.rem_euclid(4) == 0
}

/// Products of admissible residues modulo 144.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueTable {
    pub residues: Vec<u64>,
    pub products: Vec<Vec<u64>>,
}

impl ResidueTable {
    pub fn is_closed(&self) -> bool {
        self.products.iter().flatten().all(|r| self.residues.contains(r))
    }
}

pub fn residue_multiplication_table() -> ResidueTable {
    let residues = admissible_residues(ADMISSIBLE_MODULUS).expect("nonzero modulus");
    let products = residues.iter().map(|r| residues.iter().map(|s| r * s % ADMISSIBLE_MODULUS).collect()).collect();
    ResidueTable { residues, products }
}

/// `inflate(tau1, tau2)` after checking both inputs are 3-inflatable.
pub fn compose_inflatables(tau1: &Permutation, tau2: &Permutation) -> Result<Permutation> {
    for (which, tau) in [("first", tau1), ("second", tau2)] {
        if !check_3_inflatable(tau).verdict {
            return Err(Error::NotInflatable { which, perm: tau.to_string() });
        }
    }
    Ok(inflate(tau1, tau2))
}
