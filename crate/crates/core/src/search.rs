//! Exhaustive search for permutations with prescribed length-3 pattern counts.
//!
//! Candidates are built from the outside in. In the centrally symmetric space
//! each step fixes the leftmost open position together with its mirror; in the
//! full space each step fixes the leftmost open position only. At every node
//! the placed positions form a left block and a right block around an open
//! middle whose *set* of values is known. Every triple with at most one
//! position in the middle therefore already has a fixed pattern, so those
//! counts are exact; triples with two middle positions can take one of two
//! patterns and triples inside the middle can take any. A branch is cut when
//! some pattern's exact count overshoots its target or its optimistic count
//! falls short.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::counting::{count_length3_all, PatternCounts3};
use crate::criteria::target_counts_3;
use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation};

/// Candidate space for a search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// Permutations fixed by the 180 degree rotation.
    Central,
    /// All of `S_n`.
    Full,
}

impl Space {
    pub fn name(self) -> &'static str {
        match self {
            Space::Central => "central",
            Space::Full => "full",
        }
    }

    /// Number of candidates with `open` unplaced middle positions, saturating.
    pub fn completions(self, open: usize) -> u128 {
        match self {
            Space::Central => {
                let pairs = open / 2;
                (1..=pairs as u128).fold(1u128, |acc, k| acc.saturating_mul(2 * k))
            }
            Space::Full => (1..=open as u128).fold(1u128, |acc, k| acc.saturating_mul(k)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub n: usize,
    pub central_only: bool,
    /// Stop after this many hits (applied per subtree, then to the merged list).
    pub limit: Option<usize>,
    pub threads: usize,
    /// Report hits through the callback as soon as they are found.
    pub emit_all: bool,
    pub timeout: Option<Duration>,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig { n, central_only: true, limit: None, threads: 1, emit_all: false, timeout: None }
    }

    pub fn space(&self) -> Space {
        if self.central_only {
            Space::Central
        } else {
            Space::Full
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::TooShort { len: self.n, min: 3 });
        }
        if self.threads == 0 {
            return Err(Error::InvalidArgument("threads must be at least 1".into()));
        }
        if self.n > MAX_SEARCH_LEN {
            return Err(Error::TooLong { len: self.n, cap: MAX_SEARCH_LEN });
        }
        Ok(())
    }
}

/// Longest permutation the search engine accepts.
pub const MAX_SEARCH_LEN: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub n: usize,
    pub space: Space,
    /// Sorted, deduplicated.
    pub hits: Vec<Permutation>,
    /// Candidates accounted for, including those eliminated by pruning.
    pub scanned: u128,
    pub found: usize,
    /// Set when the target counts are not integers; nothing was scanned.
    pub inadmissible: bool,
    pub timed_out: bool,
}

/// Searches for 3-inflatable permutations of length `config.n`.
pub fn search_3_inflatable(config: &SearchConfig) -> Result<SearchOutcome> {
    search_3_inflatable_with(config, &|_, _| {})
}

/// As [`search_3_inflatable`], calling `on_hit(subtree, hit)` for every hit
/// when `config.emit_all` is set. Calls arrive in scheduling order.
pub fn search_3_inflatable_with(
    config: &SearchConfig,
    on_hit: &(dyn Fn(usize, &Permutation) + Sync),
) -> Result<SearchOutcome> {
    config.validate()?;
    let Some(target) = target_counts_3(config.n as u64)? else {
        return Ok(SearchOutcome {
            n: config.n,
            space: config.space(),
            hits: Vec::new(),
            scanned: 0,
            found: 0,
            inadmissible: true,
            timed_out: false,
        });
    };
    search_counts_with(config, &target, on_hit)
}

/// Searches for permutations whose length-2 and length-3 counts equal `target`.
pub fn search_counts(config: &SearchConfig, target: &PatternCounts3) -> Result<SearchOutcome> {
    search_counts_with(config, target, &|_, _| {})
}

pub fn search_counts_with(
    config: &SearchConfig,
    target: &PatternCounts3,
    on_hit: &(dyn Fn(usize, &Permutation) + Sync),
) -> Result<SearchOutcome> {
    config.validate()?;
    let n = config.n;
    let space = config.space();
    let deadline = config.timeout.map(|t| Instant::now() + t);
    let stop = AtomicBool::new(false);
    let emit = |id: usize, p: &Permutation| {
        if config.emit_all {
            on_hit(id, p)
        }
    };

    // first step: value placed at position 1
    let first_values: Vec<u32> =
        (1..=n as u32).filter(|&v| !(space == Space::Central && n % 2 == 1 && v as usize == n / 2 + 1)).collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let results: Vec<Subtree> = pool.install(|| {
        first_values
            .par_iter()
            .enumerate()
            .map(|(id, &v)| {
                let mut walker = Walker::new(n, space, target, config.limit, deadline, &stop);
                walker.run_subtree(v, &|p| emit(id, p));
                walker.finish()
            })
            .collect()
    });

    let mut hits: Vec<Permutation> = Vec::new();
    let mut scanned = 0u128;
    for r in results {
        hits.extend(r.hits);
        scanned = scanned.saturating_add(r.scanned);
    }
    hits.sort();
    hits.dedup();
    if let Some(limit) = config.limit {
        hits.truncate(limit);
    }
    Ok(SearchOutcome {
        n,
        space,
        found: hits.len(),
        hits,
        scanned,
        inadmissible: false,
        timed_out: stop.load(Ordering::Relaxed),
    })
}

/// Unpruned reference: enumerates the whole space and tests every candidate
/// with [`count_length3_all`]. Only practical for small `n`.
pub fn reference_search(n: usize, space: Space, target: &PatternCounts3) -> Vec<Permutation> {
    let candidates: Box<dyn Iterator<Item = Permutation>> = match space {
        Space::Central => Box::new(enumerate_centrally_symmetric(n)),
        Space::Full => Box::new(all_permutations(n).into_iter()),
    };
    candidates.filter(|p| count_length3_all(p).map(|c| &c == target).unwrap_or(false)).collect()
}

struct Subtree {
    hits: Vec<Permutation>,
    scanned: u128,
}

/// Index into `LENGTH3` order of the pattern formed by three distinct values.
#[inline]
fn pattern3(a: u32, b: u32, c: u32) -> usize {
    match (a < b, b < c, a < c) {
        (true, true, _) => 0,      // 123
        (true, false, true) => 1,  // 132
        (false, true, true) => 2,  // 213
        (true, false, false) => 3, // 231
        (false, true, false) => 4, // 312
        (false, false, _) => 5,    // 321
    }
}

/// Counts over triples and pairs whose patterns are already decided.
#[derive(Clone, Copy, Default)]
struct Tally {
    triples: [u64; 6],
    asc: u64,
    desc: u64,
}

struct Walker<'a> {
    n: usize,
    space: Space,
    target: [u64; 6],
    target_asc: u64,
    target_desc: u64,
    limit: Option<usize>,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    /// Values of the left block in position order.
    left: Vec<u32>,
    /// Values of the right block in position order, built right to left.
    right_rev: Vec<u32>,
    used: Vec<bool>,
    /// `below[v]` = number of open values `< v`, refreshed per node.
    below: Vec<u32>,
    hits: Vec<Permutation>,
    scanned: u128,
    ticks: u64,
}

impl<'a> Walker<'a> {
    fn new(
        n: usize,
        space: Space,
        target: &PatternCounts3,
        limit: Option<usize>,
        deadline: Option<Instant>,
        stop: &'a AtomicBool,
    ) -> Self {
        Walker {
            n,
            space,
            target: target.length3(),
            target_asc: target.inv12,
            target_desc: target.inv21,
            limit,
            deadline,
            stop,
            left: Vec::with_capacity(n),
            right_rev: Vec::with_capacity(n),
            used: vec![false; n + 2],
            below: vec![0; n + 2],
            hits: Vec::new(),
            scanned: 0,
            ticks: 0,
        }
    }

    fn finish(self) -> Subtree {
        Subtree { hits: self.hits, scanned: self.scanned }
    }

    fn open(&self) -> usize {
        self.n - self.left.len() - self.right_rev.len()
    }

    fn halted(&mut self) -> bool {
        if let Some(limit) = self.limit {
            if self.hits.len() >= limit {
                return true;
            }
        }
        self.ticks += 1;
        if self.ticks.is_multiple_of(4096) {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        self.stop.load(Ordering::Relaxed)
    }

    fn run_subtree(&mut self, first: u32, emit: &dyn Fn(&Permutation)) {
        let tally = Tally::default();
        self.descend(first, tally, emit);
    }

    /// Places `v` at the next left position (and its mirror in the central
    /// space), then recurses.
    fn descend(&mut self, v: u32, mut tally: Tally, emit: &dyn Fn(&Permutation)) {
        if self.halted() {
            return;
        }
        let n = self.n as u32;
        self.add_left(v, &mut tally);
        let mirrored = self.space == Space::Central && self.open() > 0;
        if mirrored {
            self.add_right(n + 1 - v, &mut tally);
        }
        // central space with odd n: the centre is forced
        let centred = self.space == Space::Central && self.open() == 1;
        if centred {
            self.add_left(n / 2 + 1, &mut tally);
        }

        if self.open() == 0 {
            self.scanned += 1;
            if tally.triples == self.target && tally.asc == self.target_asc && tally.desc == self.target_desc {
                let mut values = self.left.clone();
                values.extend(self.right_rev.iter().rev());
                let hit = Permutation::from_vec_unchecked(values);
                emit(&hit);
                self.hits.push(hit);
            }
        } else if self.feasible(&tally) {
            let central = self.space == Space::Central;
            for next in 1..=n {
                // a value equal to its own complement can only sit at the centre
                if !self.used[next as usize] && !(central && 2 * next == n + 1) {
                    self.descend(next, tally, emit);
                }
            }
        } else {
            self.scanned = self.scanned.saturating_add(self.space.completions(self.open()));
        }

        if centred {
            self.remove_left();
        }
        if mirrored {
            self.remove_right();
        }
        self.remove_left();
    }

    /// Counts every pair and triple completed by a value placed between the
    /// left and right blocks.
    fn tally_new(&self, v: u32, tally: &mut Tally) {
        let (left, right) = (&self.left, &self.right_rev);
        for (i, &a) in left.iter().enumerate() {
            for &b in &left[i + 1..] {
                tally.triples[pattern3(a, b, v)] += 1;
            }
            for &c in right.iter() {
                tally.triples[pattern3(a, v, c)] += 1;
            }
        }
        for (i, &c) in right.iter().enumerate() {
            // right_rev[j] sits before right_rev[i] when j > i
            for &b in &right[i + 1..] {
                tally.triples[pattern3(v, b, c)] += 1;
            }
        }
        for &a in left.iter() {
            if a < v {
                tally.asc += 1
            } else {
                tally.desc += 1
            }
        }
        for &c in right.iter() {
            if v < c {
                tally.asc += 1
            } else {
                tally.desc += 1
            }
        }
    }

    fn add_left(&mut self, v: u32, tally: &mut Tally) {
        self.tally_new(v, tally);
        self.left.push(v);
        self.used[v as usize] = true;
    }

    /// The new value becomes the first entry of the right block.
    fn add_right(&mut self, v: u32, tally: &mut Tally) {
        self.tally_new(v, tally);
        self.right_rev.push(v);
        self.used[v as usize] = true;
    }

    fn remove_left(&mut self) {
        let v = self.left.pop().expect("placed");
        self.used[v as usize] = false;
    }

    fn remove_right(&mut self) {
        let v = self.right_rev.pop().expect("placed");
        self.used[v as usize] = false;
    }

    /// Bounds every pattern count over all completions of the open middle.
    fn feasible(&mut self, outer: &Tally) -> bool {
        let n = self.n;
        let open = self.open() as u64;
        let mut acc = 0u32;
        for v in 1..=n + 1 {
            self.below[v] = acc;
            if v <= n && !self.used[v] {
                acc += 1;
            }
        }
        let below = &self.below;
        let open_below = |v: u32| below[v as usize] as u64;
        let open_above = |v: u32| open - below[v as usize] as u64;
        // open values strictly between lo and hi (both placed)
        let between = |lo: u32, hi: u32| (below[hi as usize] - below[lo as usize]) as u64;

        let mut exact = outer.triples;
        let mut optimistic = [0u64; 6];
        let mut asc = outer.asc;
        let mut desc = outer.desc;
        let left = &self.left;
        let right_rev = &self.right_rev;

        // two placed values and one open value
        for (i, &a) in left.iter().enumerate() {
            for &b in &left[i + 1..] {
                let (lo, hi) = (a.min(b), a.max(b));
                exact[pattern3(2 * a, 2 * b, 2 * lo - 1)] += open_below(lo);
                exact[pattern3(2 * a, 2 * b, lo + hi)] += between(lo, hi);
                exact[pattern3(2 * a, 2 * b, 2 * hi + 1)] += open_above(hi);
            }
            for &c in right_rev {
                let (lo, hi) = (a.min(c), a.max(c));
                exact[pattern3(2 * a, 2 * lo - 1, 2 * c)] += open_below(lo);
                exact[pattern3(2 * a, lo + hi, 2 * c)] += between(lo, hi);
                exact[pattern3(2 * a, 2 * hi + 1, 2 * c)] += open_above(hi);
            }
        }
        for (j, &c) in right_rev.iter().enumerate() {
            for &b in &right_rev[j + 1..] {
                let (lo, hi) = (b.min(c), b.max(c));
                exact[pattern3(2 * lo - 1, 2 * b, 2 * c)] += open_below(lo);
                exact[pattern3(lo + hi, 2 * b, 2 * c)] += between(lo, hi);
                exact[pattern3(2 * hi + 1, 2 * b, 2 * c)] += open_above(hi);
            }
        }

        // one placed value and two open values: either relative order
        let pairs = |k: u64| k * k.saturating_sub(1) / 2;
        for &a in left {
            asc += open_above(a);
            desc += open_below(a);
            let (lo, hi) = (open_below(a), open_above(a));
            let a2 = 2 * a;
            for (count, x, y) in [(pairs(hi), a2 + 1, a2 + 2), (lo * hi, a2 - 1, a2 + 1), (pairs(lo), a2 - 2, a2 - 1)] {
                if count > 0 {
                    optimistic[pattern3(a2, x, y)] += count;
                    optimistic[pattern3(a2, y, x)] += count;
                }
            }
        }
        for &c in right_rev {
            asc += open_below(c);
            desc += open_above(c);
            let (lo, hi) = (open_below(c), open_above(c));
            let c2 = 2 * c;
            for (count, x, y) in [(pairs(hi), c2 + 1, c2 + 2), (lo * hi, c2 - 1, c2 + 1), (pairs(lo), c2 - 2, c2 - 1)] {
                if count > 0 {
                    optimistic[pattern3(x, y, c2)] += count;
                    optimistic[pattern3(y, x, c2)] += count;
                }
            }
        }

        let inner_triples = open * open.saturating_sub(1) * open.saturating_sub(2) / 6;
        let inner_pairs = pairs(open);
        if asc > self.target_asc || desc > self.target_desc {
            return false;
        }
        if asc + inner_pairs < self.target_asc || desc + inner_pairs < self.target_desc {
            return false;
        }
        (0..6).all(|k| exact[k] <= self.target[k] && exact[k] + optimistic[k] + inner_triples >= self.target[k])
    }
}

/// Every centrally symmetric permutation of length `n`, in lexicographic order.
pub fn enumerate_centrally_symmetric(n: usize) -> CentralSymmetric {
    CentralSymmetric::new(n)
}

/// Iterator behind [`enumerate_centrally_symmetric`].
///
/// Position `i` (for `i <= n/2`) takes the smallest unused value not yet
/// tried; position `n+1-i` receives the complement `n+1-v`.
pub struct CentralSymmetric {
    n: usize,
    values: Vec<u32>,
    used: Vec<bool>,
    /// Number of fixed left positions.
    depth: usize,
    started: bool,
    done: bool,
}

impl CentralSymmetric {
    fn new(n: usize) -> Self {
        let mut it = CentralSymmetric {
            n,
            values: vec![0; n],
            used: vec![false; n + 2],
            depth: 0,
            started: false,
            done: n == 0,
        };
        if n % 2 == 1 {
            let c = n / 2 + 1;
            it.values[n / 2] = c as u32;
            it.used[c] = true;
        }
        it
    }

    fn half(&self) -> usize {
        self.n / 2
    }

    fn set(&mut self, pos: usize, v: u32) {
        let n = self.n as u32;
        self.values[pos] = v;
        self.values[self.n - 1 - pos] = n + 1 - v;
        self.used[v as usize] = true;
        self.used[(n + 1 - v) as usize] = true;
    }

    fn clear(&mut self, pos: usize) {
        let n = self.n as u32;
        let v = self.values[pos];
        self.used[v as usize] = false;
        self.used[(n + 1 - v) as usize] = false;
    }

    /// Smallest unused value greater than `after` for the next left position.
    fn next_free(&self, after: u32) -> Option<u32> {
        (after + 1..=self.n as u32).find(|&v| !self.used[v as usize])
    }

    /// Fills positions `depth..half` with the smallest choices.
    fn fill(&mut self) {
        while self.depth < self.half() {
            let v = self.next_free(0).expect("values remain");
            self.set(self.depth, v);
            self.depth += 1;
        }
    }
}

impl Iterator for CentralSymmetric {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill();
            return Some(Permutation::from_vec_unchecked(self.values.clone()));
        }
        // advance the deepest position that has another choice
        loop {
            if self.depth == 0 {
                self.done = true;
                return None;
            }
            self.depth -= 1;
            let pos = self.depth;
            let current = self.values[pos];
            self.clear(pos);
            if let Some(v) = self.next_free(current) {
                self.set(pos, v);
                self.depth += 1;
                self.fill();
                return Some(Permutation::from_vec_unchecked(self.values.clone()));
            }
        }
    }
}
