//! Sequential Contiguous Assignment.
//!
//! For every family handled here a satisfying assignment, if one exists, is
//! contiguous. The driver sorts players by weight, then repeatedly asks the
//! family for the number `k` of leading unassigned players to put on the next
//! resource. The load just placed becomes the bound for the next resource,
//! so loads come out non-increasing. Families whose block choices only
//! enforce necessary conditions (the credible ones) finish with a cheap
//! verification of the whole candidate.
//!
//! Every family runs in O(n log n) after sorting; block sizes are found by
//! binary search over prefix sums or by divisor enumeration.

mod subroutines;

pub use subroutines::{
    first_k_woe, first_k_woe_eq, k_search_eq1, k_sm_divisor, k_sm_spread, sm_bound, sm_cr_candidate,
    sm_cr_last, subsequent_k_woe, subsequent_k_woe_eq, Block, Bound, Remaining, SortedWeights,
};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::greedy::one_per_resource;
use crate::instance::{Assignment, Instance, Weight};
use crate::properties::{check, Property, PropertySet};

/// Property conjunctions solved by sequential contiguous assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Woe,
    WoeEq,
    WoeCr,
    WoeEqCr,
    Sm,
    SmEq,
    SmCr,
    SmEqCr,
    WoeSm,
    WoeSmEq,
    WoeSmCr,
    WoeSmEqCr,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Woe,
        Family::WoeEq,
        Family::WoeCr,
        Family::WoeEqCr,
        Family::Sm,
        Family::SmEq,
        Family::SmCr,
        Family::SmEqCr,
        Family::WoeSm,
        Family::WoeSmEq,
        Family::WoeSmCr,
        Family::WoeSmEqCr,
    ];

    /// Maps a property set onto its family. WM is dropped when WOE or SM is
    /// present since both imply it; EF-containing sets belong to the EF solver.
    pub fn from_properties(p: PropertySet) -> Option<Family> {
        if p.contains(Property::Ef) {
            return None;
        }
        let woe = p.contains(Property::Woe);
        let sm = p.contains(Property::Sm);
        let eq = p.contains(Property::Eq);
        let cr = p.contains(Property::Cr);
        Some(match (woe, sm, eq, cr) {
            (false, false, _, _) => return None,
            (true, false, false, false) => Family::Woe,
            (true, false, true, false) => Family::WoeEq,
            (true, false, false, true) => Family::WoeCr,
            (true, false, true, true) => Family::WoeEqCr,
            (false, true, false, false) => Family::Sm,
            (false, true, true, false) => Family::SmEq,
            (false, true, false, true) => Family::SmCr,
            (false, true, true, true) => Family::SmEqCr,
            (true, true, false, false) => Family::WoeSm,
            (true, true, true, false) => Family::WoeSmEq,
            (true, true, false, true) => Family::WoeSmCr,
            (true, true, true, true) => Family::WoeSmEqCr,
        })
    }

    pub fn properties(self) -> PropertySet {
        let mut p = PropertySet::TOP;
        if self.has_woe() {
            p = p.with(Property::Woe);
        }
        if self.has_sm() {
            p = p.with(Property::Sm);
        }
        if self.has_eq() {
            p = p.with(Property::Eq);
        }
        if self.has_cr() {
            p = p.with(Property::Cr);
        }
        p
    }

    fn has_woe(self) -> bool {
        matches!(
            self,
            Family::Woe
                | Family::WoeEq
                | Family::WoeCr
                | Family::WoeEqCr
                | Family::WoeSm
                | Family::WoeSmEq
                | Family::WoeSmCr
                | Family::WoeSmEqCr
        )
    }

    fn has_sm(self) -> bool {
        matches!(
            self,
            Family::Sm
                | Family::SmEq
                | Family::SmCr
                | Family::SmEqCr
                | Family::WoeSm
                | Family::WoeSmEq
                | Family::WoeSmCr
                | Family::WoeSmEqCr
        )
    }

    fn has_eq(self) -> bool {
        matches!(
            self,
            Family::WoeEq | Family::WoeEqCr | Family::SmEq | Family::SmEqCr | Family::WoeSmEq | Family::WoeSmEqCr
        )
    }

    fn has_cr(self) -> bool {
        matches!(
            self,
            Family::WoeCr | Family::WoeEqCr | Family::SmCr | Family::SmEqCr | Family::WoeSmCr | Family::WoeSmEqCr
        )
    }

    /// Credible families admit at most one satisfying load distribution.
    pub fn is_unique(self) -> bool {
        self.has_cr()
    }

    fn first_k(self, threshold: Option<Weight>, rem: &Remaining, m: usize) -> Option<usize> {
        let bound = Bound::from_threshold(threshold);
        match self {
            Family::Woe => first_k_woe(threshold, rem),
            Family::WoeEq => first_k_woe_eq(threshold, rem),
            Family::WoeCr | Family::WoeEqCr => k_search_eq1(rem, m, bound, rem.len()),
            Family::Sm | Family::WoeSm => k_sm_spread(rem, bound),
            Family::SmEq | Family::WoeSmEq => k_sm_divisor(rem, bound),
            Family::SmCr | Family::SmEqCr | Family::WoeSmCr | Family::WoeSmEqCr => sm_cr_candidate(rem, m, bound),
        }
    }

    fn subsequent_k(self, prev: &Block, rem: &Remaining, m: usize) -> Option<usize> {
        match self {
            Family::Woe => Some(subsequent_k_woe(prev.load, prev.first, rem)),
            Family::WoeEq => subsequent_k_woe_eq(prev, rem),
            Family::WoeCr | Family::WoeEqCr => {
                if m == 1 {
                    Some(rem.len())
                } else {
                    k_search_eq1(rem, m, Bound::AtMost(prev.load), rem.len())
                }
            }
            Family::Sm => k_sm_spread(rem, sm_bound(prev, rem, false)),
            Family::WoeSm => k_sm_spread(rem, sm_bound(prev, rem, true)),
            Family::SmEq => k_sm_divisor(rem, sm_bound(prev, rem, false)),
            Family::WoeSmEq => k_sm_divisor(rem, sm_bound(prev, rem, true)),
            Family::SmCr | Family::SmEqCr | Family::WoeSmCr | Family::WoeSmEqCr => {
                let bound = sm_bound(prev, rem, false);
                if m == 1 {
                    sm_cr_last(rem, bound)
                } else {
                    sm_cr_candidate(rem, m, bound)
                }
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.properties())
    }
}

/// Driver state: the sorted weights and the blocks placed so far. The next
/// resource index is `blocks.len()`, the next player `pos`, and the running
/// load bound is the last block's load.
struct ScaState {
    sorted: SortedWeights,
    blocks: Vec<Block>,
    pos: usize,
}

impl ScaState {
    fn new(instance: &Instance) -> Self {
        ScaState { sorted: SortedWeights::new(instance.weights().to_vec()), blocks: Vec::new(), pos: 0 }
    }

    fn n(&self) -> usize {
        self.sorted.weights().len()
    }

    fn place(&mut self, k: usize) {
        let (start, end) = (self.pos, self.pos + k);
        let w = self.sorted.weights();
        self.blocks.push(Block { start, len: k, first: w[start], last: w[end - 1], load: self.sorted.sum(start, end) });
        self.pos = end;
    }
}

/// Solves the threshold problem (`threshold = None` for plain satisfiability)
/// for a family-backed property set.
///
/// Returns a contiguous assignment in canonical ordering that satisfies
/// `properties` with makespan within the threshold, or `None` when no
/// assignment does.
pub fn sca_solve(properties: PropertySet, instance: &Instance, threshold: Option<Weight>) -> Result<Option<Assignment>> {
    let family = Family::from_properties(properties).ok_or(Error::UnsupportedProperty(properties))?;
    Ok(solve_family(family, instance, threshold))
}

pub fn solve_family(family: Family, instance: &Instance, threshold: Option<Weight>) -> Option<Assignment> {
    if threshold.is_some_and(|t| instance.max_weight() > t) {
        return None;
    }
    if instance.n() <= instance.m() {
        return Some(one_per_resource(instance));
    }
    if instance.m() == 1 {
        let a = Assignment::single_resource(instance.n());
        let fits = threshold.is_none_or(|t| instance.total_weight() <= t);
        let ok = fits && check(family.properties(), instance, &a).map(|v| v.is_satisfied()).unwrap_or(false);
        return ok.then_some(a);
    }

    let order = instance.sorted_order();
    let m = instance.m();
    let mut state = ScaState::new(instance);
    while state.blocks.len() < m && state.pos < state.n() {
        let left = m - state.blocks.len();
        let rem = state.sorted.remaining(state.pos);
        let k = match state.blocks.last() {
            None => family.first_k(threshold, &rem, left),
            Some(prev) => family.subsequent_k(prev, &rem, left),
        }?;
        if k == 0 || k > rem.len() {
            return None;
        }
        state.place(k);
    }
    if state.pos < state.n() {
        return None;
    }
    if !blocks_satisfy(family, &state.blocks, m, threshold) {
        return None;
    }
    let mut resources = vec![0; instance.n()];
    for (x, b) in state.blocks.iter().enumerate() {
        for &p in &order[b.start..b.start + b.len] {
            resources[p] = x;
        }
    }
    Some(Assignment::new(resources))
}

/// Final verification of a candidate given as consecutive blocks of sorted players.
///
/// The makespan bound is checked for every family. Credible families also
/// check every block's lightest player against the least-loaded resource,
/// then adjacent-resource WOE (when WOE is required) and equal costs across
/// block boundaries shared by one weight (when Eq is required). The other
/// families are satisfied by construction.
fn blocks_satisfy(family: Family, blocks: &[Block], m: usize, threshold: Option<Weight>) -> bool {
    let makespan = blocks.iter().map(|b| b.load).max().unwrap_or(0);
    if threshold.is_some_and(|t| makespan > t) {
        return false;
    }
    if !family.has_cr() {
        return true;
    }
    let vmin = if blocks.len() < m { 0 } else { blocks.iter().map(|b| b.load).min().unwrap_or(0) };
    if blocks.iter().any(|b| b.load > vmin + b.last) {
        return false;
    }
    if family.has_woe() && blocks.windows(2).any(|p| p[1].load - p[1].last > p[0].load - p[0].first) {
        return false;
    }
    if family.has_eq() && blocks.windows(2).any(|p| p[0].last == p[1].first && p[0].load != p[1].load) {
        return false;
    }
    true
}

/// [`blocks_satisfy`] for a candidate given as an assignment in canonical
/// ordering (labels non-decreasing along players sorted by weight).
/// Assignments not in that form are rejected.
pub fn final_satisfies(family: Family, instance: &Instance, candidate: &Assignment, threshold: Option<Weight>) -> Result<bool> {
    candidate.validate(instance)?;
    let order = instance.sorted_order();
    let mut blocks: Vec<Block> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    for (pos, &p) in order.iter().enumerate() {
        let (x, w) = (candidate.resource(p), instance.weight(p));
        match (labels.last(), blocks.last_mut()) {
            (Some(&last), Some(b)) if last == x => {
                b.len += 1;
                b.last = w;
                b.load += w;
            }
            _ => {
                if labels.contains(&x) {
                    return Ok(false);
                }
                labels.push(x);
                blocks.push(Block { start: pos, len: 1, first: w, last: w, load: w });
            }
        }
    }
    if labels.iter().enumerate().any(|(i, &x)| i != x) {
        return Ok(false);
    }
    Ok(blocks_satisfy(family, &blocks, instance.m(), threshold))
}
