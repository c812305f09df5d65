//! Envy-freeness solvers.
//!
//! An assignment is envy-free exactly when `v_{a_i} - w_i` equals one common
//! value `b` for every player. Each resource then holds players of a single
//! weight `w`, exactly `b / w + 1` of them, so a feasible `b` fixes the whole
//! load distribution. Candidates for `b` come from the divisors of the
//! multiplicity of the largest weight.

use serde::Serialize;

use crate::instance::{Assignment, Instance, Weight};

/// The resource layout for one feasible balance value `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EfPlan {
    pub b: Weight,
    /// `(weight, players per resource, resources)` for each distinct weight,
    /// heaviest first.
    pub layout: Vec<(Weight, usize, usize)>,
    pub resources_used: usize,
}

impl EfPlan {
    pub fn makespan(&self) -> Weight {
        self.b + self.layout.first().map_or(0, |l| l.0)
    }

    /// Realizes the plan: distinct weights descending, resources filled left
    /// to right, players within a weight taken in index order.
    pub fn realize(&self, instance: &Instance) -> Assignment {
        let order = instance.sorted_order();
        let mut resources = vec![0; instance.n()];
        let mut pos = 0;
        let mut x = 0;
        for &(_, size, count) in &self.layout {
            for _ in 0..count {
                for &p in &order[pos..pos + size] {
                    resources[p] = x;
                }
                pos += size;
                x += 1;
            }
        }
        Assignment::new(resources)
    }
}

fn divisors(c: usize) -> Vec<usize> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= c {
        if c % d == 0 {
            ds.push(d);
            if d * d != c {
                ds.push(c / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

/// Candidate balance values `(d - 1) * w_1` for every divisor `d` of the
/// multiplicity of the largest weight `w_1`, ascending.
pub fn ef_candidates(instance: &Instance) -> Vec<Weight> {
    let (w1, c1) = instance.support()[0];
    divisors(c1).into_iter().map(|d| (d as Weight - 1) * w1).collect()
}

/// Checks the three feasibility conditions for `b`: every distinct weight
/// divides `b`, `b / w + 1` divides its multiplicity, and the resulting
/// resource count fits in `m`.
pub fn ef_feasible(instance: &Instance, b: Weight) -> Option<EfPlan> {
    if b < 0 {
        return None;
    }
    let mut layout = Vec::new();
    let mut used = 0usize;
    for (w, c) in instance.support() {
        if b % w != 0 {
            return None;
        }
        let size = usize::try_from(b / w).ok()?.checked_add(1)?;
        if c % size != 0 {
            return None;
        }
        used += c / size;
        if used > instance.m() {
            return None;
        }
        layout.push((w, size, c / size));
    }
    Some(EfPlan { b, layout, resources_used: used })
}

/// The credibility variant: either every resource is used or every player is
/// alone (`b = 0`), so no player gains by moving to an empty resource.
fn credible(plan: &EfPlan, m: usize) -> bool {
    plan.resources_used == m || plan.b == 0
}

/// Every feasible plan, ascending in `b`.
pub fn ef_all_feasible(instance: &Instance, require_cr: bool) -> Vec<EfPlan> {
    ef_candidates(instance)
        .into_iter()
        .filter_map(|b| ef_feasible(instance, b))
        .filter(|p| !require_cr || credible(p, instance.m()))
        .collect()
}

/// The smallest feasible `b` whose makespan `b + max w` fits the threshold,
/// realized as an assignment.
pub fn solve_ef(instance: &Instance, threshold: Option<Weight>, require_cr: bool) -> Option<(Assignment, Weight)> {
    ef_all_feasible(instance, require_cr)
        .into_iter()
        .find(|p| threshold.is_none_or(|t| p.makespan() <= t))
        .map(|p| (p.realize(instance), p.b))
}
