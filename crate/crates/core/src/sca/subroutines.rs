//! Per-family choices of the block size `k` for the next resource.
//!
//! All subroutines work on the not-yet-assigned suffix of the sorted weight
//! vector ([`Remaining`]) and return the number of players to place on the
//! next resource, or `None` when no admissible block exists.

use crate::instance::Weight;

/// Admissible loads for the next block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Unbounded,
    /// load <= b
    AtMost(Weight),
    /// load < b
    Below(Weight),
}

impl Bound {
    pub fn from_threshold(t: Option<Weight>) -> Self {
        t.map_or(Bound::Unbounded, Bound::AtMost)
    }

    pub fn admits(self, load: i128) -> bool {
        match self {
            Bound::Unbounded => true,
            Bound::AtMost(b) => load <= b as i128,
            Bound::Below(b) => load < b as i128,
        }
    }

    /// Largest `k` with `k * w` admitted, capped at `cap`.
    pub fn max_count(self, w: Weight, cap: usize) -> usize {
        let limit = match self {
            Bound::Unbounded => return cap,
            Bound::AtMost(b) => b,
            Bound::Below(b) => b - 1,
        };
        if limit < 0 {
            0
        } else {
            usize::try_from(limit / w).unwrap_or(usize::MAX).min(cap)
        }
    }
}

/// The suffix of the sorted weights still waiting for a resource.
///
/// `prefix` holds the global prefix sums starting at this suffix, so
/// `prefix.len() == weights.len() + 1` and `prefix[0]` is the weight already
/// placed. `run_end` gives, for each position, the (suffix-relative) end of
/// its run of equal weights.
#[derive(Debug, Clone, Copy)]
pub struct Remaining<'a> {
    weights: &'a [Weight],
    prefix: &'a [Weight],
    run_end: &'a [usize],
    offset: usize,
}

impl<'a> Remaining<'a> {
    fn new(weights: &'a [Weight], prefix: &'a [Weight], run_end: &'a [usize], offset: usize) -> Self {
        Remaining {
            weights: &weights[offset..],
            prefix: &prefix[offset..],
            run_end: &run_end[offset..],
            offset,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn first(&self) -> Weight {
        self.weights[0]
    }

    /// Sum of the first `k` remaining weights.
    pub fn sum(&self, k: usize) -> Weight {
        self.prefix[k] - self.prefix[0]
    }

    pub fn total(&self) -> Weight {
        self.sum(self.len())
    }

    /// Number of remaining players sharing the leading weight.
    pub fn lead_count(&self) -> usize {
        self.run_end[0] - self.offset
    }

    fn all_equal(&self) -> bool {
        self.lead_count() == self.len()
    }

    /// Largest `i` with `sum(i) <= b` (zero when even one player exceeds `b`).
    fn longest_prefix_within(&self, b: Weight) -> usize {
        let base = self.prefix[0];
        self.prefix.partition_point(|&p| p - base <= b) - 1
    }

    /// Largest `i <= limit` at which a run of equal weights ends, if any.
    fn last_run_boundary(&self, limit: usize) -> Option<usize> {
        if limit == 0 {
            return None;
        }
        let end = self.run_end[limit - 1] - self.offset;
        if end == limit {
            return Some(limit);
        }
        // Start of the run containing position limit - 1.
        let lead = self.lead_count();
        if limit <= lead {
            return None;
        }
        let before = self.weights[..limit - 1].partition_point(|&w| w > self.weights[limit - 1]);
        (before > 0).then_some(before)
    }
}

/// Weights sorted non-increasingly with their prefix sums and run ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedWeights {
    weights: Vec<Weight>,
    prefix: Vec<Weight>,
    run_end: Vec<usize>,
}

impl SortedWeights {
    pub fn new(mut weights: Vec<Weight>) -> Self {
        weights.sort_unstable_by(|a, b| b.cmp(a));
        let mut prefix = Vec::with_capacity(weights.len() + 1);
        prefix.push(0);
        for &w in &weights {
            prefix.push(prefix[prefix.len() - 1] + w);
        }
        let run_end = run_ends(&weights);
        SortedWeights { weights, prefix, run_end }
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Sum of the weights at sorted positions `start..end`.
    pub fn sum(&self, start: usize, end: usize) -> Weight {
        self.prefix[end] - self.prefix[start]
    }

    /// The players from sorted position `offset` on.
    pub fn remaining(&self, offset: usize) -> Remaining<'_> {
        Remaining::new(&self.weights, &self.prefix, &self.run_end, offset)
    }
}

fn run_ends(sorted: &[Weight]) -> Vec<usize> {
    let mut ends = vec![sorted.len(); sorted.len()];
    for i in (0..sorted.len().saturating_sub(1)).rev() {
        ends[i] = if sorted[i] == sorted[i + 1] { ends[i + 1] } else { i + 1 };
    }
    ends
}

fn divisors(c: usize) -> impl Iterator<Item = usize> {
    (1..).take_while(move |d| d * d <= c).filter(move |d| c % d == 0).flat_map(move |d| [d, c / d])
}

/// Largest divisor `d` of `c` with `d * w` admitted by `bound`.
fn max_divisor_within(c: usize, w: Weight, bound: Bound) -> Option<usize> {
    let cap = bound.max_count(w, c);
    divisors(c).filter(|&d| d <= cap).max()
}

/// Largest divisor `d` of `c` with `(d - 1) * w <= b`.
fn max_divisor_with_slack(c: usize, w: Weight, b: Weight) -> Option<usize> {
    if b < 0 {
        return None;
    }
    let cap = usize::try_from(b / w).unwrap_or(usize::MAX).saturating_add(1);
    divisors(c).filter(|&d| d <= cap).max()
}

/// WOE, first resource: the longest prefix whose load fits under `t`.
pub fn first_k_woe(t: Option<Weight>, rem: &Remaining) -> Option<usize> {
    let k = match t {
        None => rem.len(),
        Some(t) => rem.longest_prefix_within(t),
    };
    (k > 0).then_some(k)
}

/// WOE, later resources: one more than the longest prefix summing to at most
/// `t - z`, where `t` is the previous load and `z` the previous heaviest
/// weight. The last player of the block may then not envy the previous one.
pub fn subsequent_k_woe(t: Weight, z: Weight, rem: &Remaining) -> usize {
    let longest = if t - z < 0 { 0 } else { rem.longest_prefix_within(t - z) };
    (longest + 1).min(rem.len())
}

/// WOE+Eq, first resource: the longest prefix under `t` that ends a run of
/// equal weights; failing that, the largest divisor of the leading run count
/// that fits.
pub fn first_k_woe_eq(t: Option<Weight>, rem: &Remaining) -> Option<usize> {
    let limit = match t {
        None => rem.len(),
        Some(t) => rem.longest_prefix_within(t),
    };
    rem.last_run_boundary(limit)
        .or_else(|| max_divisor_within(rem.lead_count(), rem.first(), Bound::from_threshold(t)))
}

/// WOE+Eq, later resources. `prev` describes the block just placed.
///
/// When the leading weight continues the previous block's last weight, the
/// previous block size repeats. Otherwise the block is the longest one ending
/// a run whose load minus its lightest player stays within `t - z`, or an even
/// split of the leading run.
pub fn subsequent_k_woe_eq(prev: &Block, rem: &Remaining) -> Option<usize> {
    if rem.first() == prev.last {
        return Some(prev.len.min(rem.len()));
    }
    let slack = prev.load - prev.first;
    let limit = if slack < 0 { 0 } else { (rem.longest_prefix_within(slack) + 1).min(rem.len()) };
    rem.last_run_boundary(limit)
        .or_else(|| max_divisor_with_slack(rem.lead_count(), rem.first(), slack))
}

/// The unique `k <= cap` with
/// `W[1:k-1] <= (W - W[1:k]) / (m - 1) <= W[1:k]` and `W[1:k]` admitted by
/// `bound`, if any. Comparisons are cross-multiplied in exact integers.
///
/// The right inequality holds on a suffix of `k` values and the left one on a
/// prefix, so the smallest `k` meeting the right inequality is the only
/// candidate.
pub fn k_search_eq1(rem: &Remaining, m: usize, bound: Bound, cap: usize) -> Option<usize> {
    if m < 2 || rem.is_empty() {
        return None;
    }
    let others = (m - 1) as i128;
    let total = rem.total() as i128;
    let n = rem.len();
    let upper_fails = |k: usize| total - (rem.sum(k) as i128) > others * rem.sum(k) as i128;
    let (mut lo, mut hi) = (1, n + 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if upper_fails(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let k = lo;
    if k > n {
        return None;
    }
    let ok = others * (rem.sum(k - 1) as i128) <= total - rem.sum(k) as i128
        && bound.admits(rem.sum(k) as i128)
        && k <= cap;
    ok.then_some(k)
}

/// SM+Cr specialisation of [`k_search_eq1`]: blocks hold only the leading
/// weight, so the single candidate is `ceil(W / (m * w))`, valid only if it
/// does not exceed the leading run.
pub fn sm_cr_candidate(rem: &Remaining, m: usize, bound: Bound) -> Option<usize> {
    if m < 2 || rem.is_empty() {
        return None;
    }
    let w = rem.first() as i128;
    let total = rem.total() as i128;
    let others = (m - 1) as i128;
    let denom = m as i128 * w;
    let k = (total + denom - 1) / denom;
    let ok = k >= 1
        && k <= rem.lead_count() as i128
        && others * (k - 1) * w <= total - k * w
        && total - k * w <= others * k * w
        && bound.admits(k * w);
    ok.then(|| k as usize)
}

/// SM: all of the leading run if it fits, otherwise spread it evenly over the
/// fewest resources that fit and return the first (largest) share.
pub fn k_sm_spread(rem: &Remaining, bound: Bound) -> Option<usize> {
    let c = rem.lead_count();
    let w = rem.first();
    if bound.admits(c as i128 * w as i128) {
        return Some(c);
    }
    let most = bound.max_count(w, c);
    if most == 0 {
        return None;
    }
    let resources = c.div_ceil(most);
    Some(c.div_ceil(resources))
}

/// SM+Eq: all of the leading run if it fits, otherwise its largest fitting divisor.
pub fn k_sm_divisor(rem: &Remaining, bound: Bound) -> Option<usize> {
    let c = rem.lead_count();
    let w = rem.first();
    if bound.admits(c as i128 * w as i128) {
        return Some(c);
    }
    max_divisor_within(c, w, bound)
}

/// Bound on the next block for the SM families.
///
/// Continuing the same weight only requires not exceeding the previous load;
/// a lighter weight must stay strictly below it. With `woe` the lighter block
/// additionally may not envy the previous heaviest player, which tightens
/// the strict bound to `load <= t - z + w`.
pub fn sm_bound(prev: &Block, rem: &Remaining, woe: bool) -> Bound {
    if rem.first() == prev.first {
        Bound::AtMost(prev.load)
    } else if woe {
        Bound::AtMost(prev.load - prev.first + rem.first())
    } else {
        Bound::Below(prev.load)
    }
}

/// SM+Cr on the final resource: everything left, provided it is a single weight within the bound.
pub fn sm_cr_last(rem: &Remaining, bound: Bound) -> Option<usize> {
    (rem.all_equal() && bound.admits(rem.total() as i128)).then_some(rem.len())
}

/// A block of consecutive sorted players placed on one resource.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub start: usize,
    pub len: usize,
    /// Heaviest weight in the block.
    pub first: Weight,
    /// Lightest weight in the block.
    pub last: Weight,
    pub load: Weight,
}
