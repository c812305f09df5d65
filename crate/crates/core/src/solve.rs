//! Picks a solver for a property set and composes threshold searches.
//!
//! Polynomial solvers handle the EF sets, the SCA families and the
//! always-satisfiable sets; everything else falls back to exhaustive search,
//! which refuses instances above the enumeration cap.

use std::fmt;

use crate::ef::solve_ef;
use crate::error::Result;
use crate::exact::{brute_force, Mode};
use crate::greedy::{lpt, one_per_resource, solve_single_resource};
use crate::instance::{loads_unchecked, Assignment, Instance, LoadVector, Weight};
use crate::properties::{check_with_loads, Property, PropertySet};
use crate::sca::{solve_family, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    /// A disposition needing no search: `n <= m`, `m = 1` or `max w > t`.
    Trivial,
    SingleResource,
    Lpt,
    Sca(Family),
    Ef { credible: bool },
    BruteForce,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverKind::Trivial => f.write_str("trivial"),
            SolverKind::SingleResource => f.write_str("single-resource"),
            SolverKind::Lpt => f.write_str("lpt"),
            SolverKind::Sca(family) => write!(f, "sca[{family}]"),
            SolverKind::Ef { credible: false } => f.write_str("ef"),
            SolverKind::Ef { credible: true } => f.write_str("ef-cr"),
            SolverKind::BruteForce => f.write_str("brute-force"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub assignment: Option<Assignment>,
    pub loads: Option<LoadVector>,
    pub solver: SolverKind,
}

impl Solution {
    fn new(instance: &Instance, assignment: Option<Assignment>, solver: SolverKind) -> Self {
        let loads = assignment.as_ref().map(|a| loads_unchecked(instance, a));
        Solution { assignment, loads, solver }
    }

    pub fn is_found(&self) -> bool {
        self.assignment.is_some()
    }

    pub fn makespan(&self) -> Option<Weight> {
        self.loads.as_ref().map(LoadVector::makespan)
    }
}

fn passes(properties: PropertySet, instance: &Instance, a: &Assignment, threshold: Option<Weight>) -> bool {
    let loads = loads_unchecked(instance, a);
    threshold.is_none_or(|t| loads.makespan() <= t) && check_with_loads(properties, instance, a, &loads).is_satisfied()
}

fn trivial(properties: PropertySet, instance: &Instance, threshold: Option<Weight>) -> Option<Solution> {
    let found = |a: Option<Assignment>| Some(Solution::new(instance, a, SolverKind::Trivial));
    if threshold.is_some_and(|t| instance.max_weight() > t) {
        return found(None);
    }
    // One player per resource satisfies every property at the least possible makespan.
    if instance.n() <= instance.m() {
        return found(Some(one_per_resource(instance)));
    }
    if instance.m() == 1 {
        let a = Assignment::single_resource(instance.n());
        return found(passes(properties, instance, &a, threshold).then_some(a));
    }
    None
}

/// Solves the threshold problem for `properties` (`threshold = None` for
/// plain satisfiability).
pub fn solve(properties: PropertySet, instance: &Instance, threshold: Option<Weight>, cap: usize) -> Result<Solution> {
    if let Some(s) = trivial(properties, instance, threshold) {
        return Ok(s);
    }
    if properties.contains(Property::Ef) {
        let credible = properties.contains(Property::Cr);
        let a = solve_ef(instance, threshold, credible).map(|(a, _)| a);
        return Ok(Solution::new(instance, a, SolverKind::Ef { credible }));
    }
    if let Some(family) = Family::from_properties(properties) {
        return Ok(Solution::new(instance, solve_family(family, instance, threshold), SolverKind::Sca(family)));
    }
    // Only Cr, Eq and WM remain. Try the cheap constructions first; they are
    // complete for satisfiability without Cr (single resource) and for Cr alone (LPT).
    let single = solve_single_resource(instance);
    if passes(properties, instance, &single, threshold) {
        return Ok(Solution::new(instance, Some(single), SolverKind::SingleResource));
    }
    let greedy = lpt(instance);
    if passes(properties, instance, &greedy, threshold) {
        return Ok(Solution::new(instance, Some(greedy), SolverKind::Lpt));
    }
    let hit = brute_force(properties, instance, threshold, Mode::Exists, cap)?;
    Ok(Solution::new(instance, hit.into_iter().next().map(|c| c.assignment), SolverKind::BruteForce))
}

/// Finds a satisfying assignment of least makespan.
///
/// EF sets take the smallest feasible balance value, credible SCA families
/// have a single candidate, the other SCA families binary-search the
/// threshold between `max w` and the unconstrained solution's makespan, and
/// the remaining sets use exhaustive search.
pub fn minimize(properties: PropertySet, instance: &Instance, cap: usize) -> Result<Solution> {
    if let Some(s) = trivial(properties, instance, None) {
        return Ok(s);
    }
    let family = Family::from_properties(properties);
    if properties.contains(Property::Ef) || family.is_some_and(Family::is_unique) {
        return solve(properties, instance, None, cap);
    }
    if let Some(family) = family {
        let Some(mut best) = solve_family(family, instance, None) else {
            return Ok(Solution::new(instance, None, SolverKind::Sca(family)));
        };
        let (mut lo, mut hi) = (instance.max_weight(), loads_unchecked(instance, &best).makespan());
        // Invariant: feasible at hi (witnessed by best), lo is the lower bound.
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            match solve_family(family, instance, Some(mid)) {
                Some(a) => {
                    hi = loads_unchecked(instance, &a).makespan();
                    best = a;
                }
                None => lo = mid + 1,
            }
        }
        return Ok(Solution::new(instance, Some(best), SolverKind::Sca(family)));
    }
    let hit = brute_force(properties, instance, None, Mode::MinMakespan, cap)?;
    Ok(Solution::new(instance, hit.into_iter().next().map(|c| c.assignment), SolverKind::BruteForce))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::DEFAULT_ENUM_CAP;

    fn run(p: &str, w: &[Weight], m: usize, t: Option<Weight>) -> Solution {
        let i = Instance::new(w.to_vec(), m).unwrap();
        solve(p.parse().unwrap(), &i, t, DEFAULT_ENUM_CAP).unwrap()
    }

    fn best(p: &str, w: &[Weight], m: usize) -> Option<Weight> {
        let i = Instance::new(w.to_vec(), m).unwrap();
        minimize(p.parse().unwrap(), &i, DEFAULT_ENUM_CAP).unwrap().makespan()
    }

    #[test]
    fn dispatch() {
        assert_eq!(run("WOE+Cr", &[3, 2, 2], 2, None).solver, SolverKind::Sca(Family::WoeCr));
        assert!(!run("WOE+Cr", &[3, 2, 2], 2, None).is_found());
        let s = run("EF", &[3, 3, 3, 2, 2, 2, 2], 3, Some(9));
        assert_eq!((s.solver, s.makespan()), (SolverKind::Ef { credible: false }, Some(9)));
        assert_eq!(run("Eq", &[4, 3, 1], 2, None).solver, SolverKind::SingleResource);
        assert_eq!(run("Cr", &[4, 3, 1], 2, None).solver, SolverKind::Lpt);
        assert_eq!(run("Eq+Cr", &[1, 1, 3, 3], 2, None).makespan(), Some(4));
        assert_eq!(run("TOP", &[4, 3, 1], 5, Some(3)).solver, SolverKind::Trivial);
        assert!(!run("TOP", &[4, 3, 1], 2, Some(3)).is_found());
    }

    #[test]
    fn minimization() {
        assert_eq!(best("WM", &[4, 3, 2, 1], 2), Some(5));
        assert_eq!(best("WOE", &[4, 3, 2, 1], 2), Some(7));
        assert_eq!(best("EF", &[3, 3, 3, 2, 2, 2, 2], 3), Some(9));
        assert_eq!(best("WOE+Cr", &[3, 2, 2], 2), None);
        assert_eq!(best("SM", &[2, 2, 2, 2, 1], 3), Some(4));
    }
}
