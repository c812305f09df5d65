//! Solvers for the always-satisfiable properties.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::instance::{Assignment, Instance, Weight};

/// Puts every player on the first resource.
///
/// Every player then incurs the full load, which satisfies equality, weak
/// ordered envy-freeness and weak monotonicity (and their conjunctions).
pub fn solve_single_resource(instance: &Instance) -> Assignment {
    Assignment::single_resource(instance.n())
}

/// Gives every player a resource of their own, heaviest player first.
///
/// Requires `n <= m`; the remaining `m - n` resources stay empty.
pub fn one_per_resource(instance: &Instance) -> Assignment {
    debug_assert!(instance.n() <= instance.m());
    let mut resources = vec![0; instance.n()];
    for (x, p) in instance.sorted_order().into_iter().enumerate() {
        resources[p] = x;
    }
    Assignment::new(resources)
}

/// Longest Processing Time first.
///
/// Players are taken by weight descending (index ascending on ties) and each
/// is placed on the least-loaded resource, lowest index on ties. The result is
/// always credible. O(n log n).
pub fn lpt(instance: &Instance) -> Assignment {
    let mut heap: BinaryHeap<Reverse<(Weight, usize)>> = (0..instance.m()).map(|x| Reverse((0, x))).collect();
    let mut resources = vec![0; instance.n()];
    for p in instance.sorted_order() {
        let Reverse((load, x)) = heap.pop().expect("at least one resource");
        resources[p] = x;
        heap.push(Reverse((load + instance.weight(p), x)));
    }
    Assignment::new(resources)
}
