//! Integer partitions with parts written in increasing order, and the
//! neighborly partitions λ = (μ1, μ2) built on top of them.
//!
//! A neighborly partition has every multiplicity at most 2 and every part
//! has another part (counted with multiplicity) at distance at most 1. It is
//! stored as the distinct support `mu1` together with the doubled parts
//! `mu2 ⊆ mu1`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of partitions a single enumeration may yield.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 5_000_000;

/// A partition with weakly increasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
    weight: u64,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        validate_weakly_increasing(&parts)?;
        let weight = parts.iter().map(|&p| u64::from(p)).sum();
        Ok(Self { parts, weight })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

fn validate_weakly_increasing(parts: &[u32]) -> Result<()> {
    if let Some(pos) = parts.iter().position(|&p| p == 0) {
        return Err(Error::InvalidPartition(format!(
            "part at position {pos} is not positive"
        )));
    }
    if let Some(w) = parts.windows(2).find(|w| w[0] > w[1]) {
        return Err(Error::InvalidPartition(format!(
            "parts must be weakly increasing, found {} before {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn validate_strictly_increasing(parts: &[u32], name: &str) -> Result<()> {
    if parts.contains(&0) {
        return Err(Error::InvalidPartition(format!("{name} has a non-positive part")));
    }
    if let Some(w) = parts.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPartition(format!(
            "{name} must be strictly increasing, found {} before {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Maximal block of consecutive integers `start..=end` inside `mu1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Run {
    pub start: u32,
    pub end: u32,
}

impl Run {
    pub fn len(&self) -> usize {
        (self.end - self.start + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: u32) -> bool {
        self.start <= x && x <= self.end
    }
}

/// A neighborly partition as the pair (μ1, μ2).
///
/// The derived ordering compares `mu1` lexicographically, then `mu2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NeighborlyPartition {
    mu1: Vec<u32>,
    mu2: Vec<u32>,
}

impl NeighborlyPartition {
    /// Validates both lists, the inclusion `mu2 ⊆ mu1`, and the singleton rule.
    pub fn new(mu1: Vec<u32>, mu2: Vec<u32>) -> Result<Self> {
        validate_strictly_increasing(&mu1, "mu1")?;
        validate_strictly_increasing(&mu2, "mu2")?;
        if let Some(x) = mu2.iter().find(|x| mu1.binary_search(x).is_err()) {
            return Err(Error::InvalidPartition(format!(
                "mu2 part {x} does not occur in mu1"
            )));
        }
        let np = Self { mu1, mu2 };
        if let Some(x) = np.isolated_parts().find(|x| !np.is_doubled(*x)) {
            return Err(Error::NotNeighborly(format!("{np} (isolated part {x})")));
        }
        Ok(np)
    }

    pub(crate) fn new_unchecked(mu1: Vec<u32>, mu2: Vec<u32>) -> Self {
        Self { mu1, mu2 }
    }

    pub fn empty() -> Self {
        Self {
            mu1: Vec::new(),
            mu2: Vec::new(),
        }
    }

    pub fn mu1(&self) -> &[u32] {
        &self.mu1
    }

    pub fn mu2(&self) -> &[u32] {
        &self.mu2
    }

    pub fn is_empty(&self) -> bool {
        self.mu1.is_empty()
    }

    pub fn is_doubled(&self, x: u32) -> bool {
        self.mu2.binary_search(&x).is_ok()
    }

    /// |λ| = |μ1| + |μ2|.
    pub fn weight(&self) -> u64 {
        self.mu1.iter().chain(&self.mu2).map(|&p| u64::from(p)).sum()
    }

    /// Number of parts of λ counted with multiplicity.
    pub fn part_count(&self) -> usize {
        self.mu1.len() + self.mu2.len()
    }

    pub fn smallest_part(&self) -> Option<u32> {
        self.mu1.first().copied()
    }

    /// Combined multiset μ1 ⊎ μ2 in increasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut parts = Vec::with_capacity(self.part_count());
        for &x in &self.mu1 {
            parts.push(x);
            if self.is_doubled(x) {
                parts.push(x);
            }
        }
        parts
    }

    pub fn to_partition(&self) -> Partition {
        let parts = self.parts();
        let weight = self.weight();
        Partition { parts, weight }
    }

    /// Parts of μ1 with no μ1-neighbor at distance 1.
    pub fn isolated_parts(&self) -> impl Iterator<Item = u32> + '_ {
        isolated_in(&self.mu1)
    }

    /// Maximal runs of μ1 in increasing order.
    pub fn runs(&self) -> Vec<Run> {
        runs_of(&self.mu1)
    }

    /// Parses either `mu1/mu2` (comma-separated lists) or a weakly increasing
    /// multiset such as `1,2,3,3`.
    pub fn parse(input: &str) -> Result<Self> {
        let input = input.trim();
        match input.split_once('/') {
            Some((a, b)) => Self::new(parse_list(a)?, parse_list(b)?),
            None => decompose(&parse_list(input)?),
        }
    }
}

impl fmt::Display for NeighborlyPartition {
    /// `mu1/mu2`, e.g. `1,2,3/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", join(&self.mu1), join(&self.mu2))
    }
}

fn join(parts: &[u32]) -> String {
    parts
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::InvalidPartition(format!("cannot parse part '{t}'")))
        })
        .collect()
}

fn isolated_in(distinct: &[u32]) -> impl Iterator<Item = u32> + '_ {
    distinct.iter().enumerate().filter_map(move |(i, &x)| {
        let left = i > 0 && distinct[i - 1] + 1 == x;
        let right = i + 1 < distinct.len() && distinct[i + 1] == x + 1;
        (!left && !right).then_some(x)
    })
}

fn runs_of(distinct: &[u32]) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    for &x in distinct {
        match runs.last_mut() {
            Some(run) if run.end + 1 == x => run.end = x,
            _ => runs.push(Run { start: x, end: x }),
        }
    }
    runs
}

/// Whether a weakly increasing list of positive parts is neighborly.
///
/// The empty partition is neighborly.
pub fn is_neighborly(parts: &[u32]) -> Result<bool> {
    validate_weakly_increasing(parts)?;
    let n = parts.len();
    for i in 0..n {
        let x = parts[i];
        let mult = parts.iter().filter(|&&p| p == x).count();
        if mult > 2 {
            return Ok(false);
        }
        let has_neighbor = (0..n).any(|j| j != i && parts[j].abs_diff(x) <= 1);
        if !has_neighbor {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a neighborly multiset into (distinct support, doubled parts).
pub fn decompose(parts: &[u32]) -> Result<NeighborlyPartition> {
    if !is_neighborly(parts)? {
        return Err(Error::NotNeighborly(join(parts)));
    }
    let mut mu1: Vec<u32> = parts.to_vec();
    mu1.dedup();
    let mu2: Vec<u32> = parts
        .windows(2)
        .filter(|w| w[0] == w[1])
        .map(|w| w[0])
        .collect();
    Ok(NeighborlyPartition::new_unchecked(mu1, mu2))
}

/// All neighborly partitions of exactly `weight`, sorted by (mu1, mu2).
pub fn neighborly_of_weight(weight: u32) -> Vec<NeighborlyPartition> {
    let mut out = Vec::new();
    let mut mu1 = Vec::new();
    distinct_parts(weight, 1, &mut mu1, &mut |mu1: &[u32]| {
        let used: u32 = mu1.iter().sum();
        let remaining = weight - used;
        let required: Vec<u32> = isolated_in(mu1).collect();
        let required_sum: u32 = required.iter().sum();
        if required_sum > remaining {
            return;
        }
        let optional: Vec<u32> = mu1
            .iter()
            .copied()
            .filter(|x| required.binary_search(x).is_err())
            .collect();
        let mut chosen = Vec::new();
        subsets_with_sum(&optional, 0, remaining - required_sum, &mut chosen, &mut |extra| {
            let mut mu2: Vec<u32> = required.iter().chain(extra).copied().collect();
            mu2.sort_unstable();
            out.push(NeighborlyPartition::new_unchecked(mu1.to_vec(), mu2));
        });
    });
    out.sort();
    out
}

/// Visits every strictly increasing list with parts `>= min_part` and sum `<= budget`.
fn distinct_parts(budget: u32, min_part: u32, current: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    visit(current);
    let mut part = min_part;
    while part <= budget {
        current.push(part);
        distinct_parts(budget - part, part + 1, current, visit);
        current.pop();
        part += 1;
    }
}

fn subsets_with_sum(
    pool: &[u32],
    from: usize,
    target: u32,
    chosen: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if target == 0 {
        visit(chosen);
        return;
    }
    for i in from..pool.len() {
        let x = pool[i];
        if x > target {
            break;
        }
        chosen.push(x);
        subsets_with_sum(pool, i + 1, target - x, chosen, visit);
        chosen.pop();
    }
}

/// Streams every neighborly partition of weight `<= max_weight` exactly once.
///
/// Order is by weight, then `mu1` lexicographically, then `mu2`. The empty
/// partition comes first.
pub fn enumerate_neighborly(max_weight: u32) -> Enumeration {
    Enumeration::new(max_weight)
}

/// Iterator returned by [`enumerate_neighborly`].
///
/// Yields a single [`Error::BudgetExceeded`] and stops once more than
/// `budget` partitions would be produced.
#[derive(Debug)]
pub struct Enumeration {
    max_weight: u32,
    next_weight: u32,
    buffer: VecDeque<NeighborlyPartition>,
    yielded: usize,
    budget: usize,
    done: bool,
}

impl Enumeration {
    pub fn new(max_weight: u32) -> Self {
        Self {
            max_weight,
            next_weight: 0,
            buffer: VecDeque::new(),
            yielded: 0,
            budget: DEFAULT_ENUMERATION_BUDGET,
            done: false,
        }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }
}

impl Iterator for Enumeration {
    type Item = Result<NeighborlyPartition>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        while self.buffer.is_empty() {
            if self.next_weight > self.max_weight {
                self.done = true;
                return None;
            }
            self.buffer.extend(neighborly_of_weight(self.next_weight));
            self.next_weight += 1;
        }
        if self.yielded == self.budget {
            self.done = true;
            return Some(Err(Error::BudgetExceeded { limit: self.budget }));
        }
        self.yielded += 1;
        self.buffer.pop_front().map(Ok)
    }
}
