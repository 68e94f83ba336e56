//! Bounded exhaustive enumerators behind every brute-force oracle.

use crate::error::{Error, Result};
use crate::goodset::{GoodSet, MAX_GOODS};

/// Default cap on `n^m` assignments for partition enumeration.
pub const DEFAULT_WORK_BOUND: u128 = 100_000_000;

pub fn check_goods(m: usize) -> Result<()> {
    if m > MAX_GOODS {
        return Err(Error::Bound {
            what: "good count",
            value: m as u128,
            limit: MAX_GOODS as u128,
        });
    }
    Ok(())
}

/// All `2^m` subsets of `{0..m}`, ascending by bitmask.
pub fn subsets(m: usize) -> Result<impl Iterator<Item = GoodSet>> {
    check_goods(m)?;
    Ok((0..1u32 << m).map(GoodSet::from_bits))
}

/// All subsets of `set`, ascending by bitmask.
pub fn submasks(set: GoodSet) -> impl Iterator<Item = GoodSet> {
    let full = set.bits();
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == full {
            None
        } else {
            // smallest submask strictly greater than `current`
            Some(((current | !full).wrapping_add(1)) & full)
        };
        Some(GoodSet::from_bits(current))
    })
}

/// `n^m`, saturating.
pub fn assignment_count(m: usize, n: usize) -> u128 {
    (0..m).fold(1u128, |acc, _| acc.saturating_mul(n as u128))
}

/// Whether labelled parts are all distinguished, or enumerated only up to relabelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionMode {
    /// Every assignment of goods to `n` labelled parts, exactly once.
    Ordered,
    /// One representative per unordered partition (restricted growth strings).
    /// Valid whenever bundles are evaluated by a single valuation.
    Canonical,
}

/// Streams partitions of `{0..m}` into `n` parts (empty parts allowed).
///
/// Order is lexicographic in the assignment vector `(a_0, .., a_{m-1})`,
/// where `a_g` is the part of good `g`; good `m-1` varies fastest.
pub struct Partitions {
    n: usize,
    mode: PartitionMode,
    assignment: Vec<usize>,
    done: bool,
}

impl Partitions {
    pub fn new(m: usize, n: usize, mode: PartitionMode, work_bound: u128) -> Result<Self> {
        check_goods(m)?;
        if n == 0 {
            return Err(Error::Argument("partition needs at least one part".into()));
        }
        let assignments = assignment_count(m, n);
        if assignments > work_bound {
            return Err(Error::WorkBound {
                assignments,
                bound: work_bound,
            });
        }
        Ok(Partitions {
            n,
            mode,
            assignment: vec![0; m],
            done: false,
        })
    }

    fn bundles(&self) -> Vec<GoodSet> {
        let mut parts = vec![GoodSet::EMPTY; self.n];
        for (g, &k) in self.assignment.iter().enumerate() {
            parts[k] = parts[k].with(g);
        }
        parts
    }

    fn advance(&mut self) -> bool {
        let m = self.assignment.len();
        for j in (0..m).rev() {
            let limit = match self.mode {
                PartitionMode::Ordered => self.n - 1,
                PartitionMode::Canonical => {
                    let prefix_max = self.assignment[..j].iter().copied().max();
                    match prefix_max {
                        None => 0,
                        Some(p) => (p + 1).min(self.n - 1),
                    }
                }
            };
            if self.assignment[j] < limit {
                self.assignment[j] += 1;
                for a in &mut self.assignment[j + 1..] {
                    *a = 0;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = Vec<GoodSet>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.bundles();
        self.done = !self.advance();
        Some(out)
    }
}
