//! Checkers for the atomic properties and their conjunctions.
//!
//! Every checker returns a [`Verdict`] carrying the lexicographically smallest
//! violating pair `(i, j)` (or `(i, x)` for credibility) when the property
//! fails.

mod set;

pub use set::{Property, PropertySet};

use serde::Serialize;

use crate::error::Result;
use crate::instance::{loads_unchecked, Assignment, Instance, LoadVector, Weight};

/// Counterexample to a property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Player `i` violates `property` with respect to player `j`.
    Pair { property: Property, i: usize, j: usize },
    /// Player `i` strictly gains by moving to `resource`.
    Deviation { i: usize, resource: usize },
}

impl Witness {
    pub fn property(&self) -> Property {
        match self {
            Witness::Pair { property, .. } => *property,
            Witness::Deviation { .. } => Property::Cr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub witness: Option<Witness>,
}

impl Verdict {
    pub const SATISFIED: Verdict = Verdict { witness: None };

    pub fn is_satisfied(&self) -> bool {
        self.witness.is_none()
    }

    fn from(witness: Option<Witness>) -> Self {
        Verdict { witness }
    }
}

/// Everything a checker needs, computed once per assignment.
struct View<'a> {
    w: &'a [Weight],
    a: &'a [usize],
    v: &'a [Weight],
}

impl View<'_> {
    fn n(&self) -> usize {
        self.w.len()
    }

    /// Cost of player `i`.
    fn cost(&self, i: usize) -> Weight {
        self.v[self.a[i]]
    }

    /// Players sorted by weight descending, index ascending.
    fn heaviest_first(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&p, &q| self.w[q].cmp(&self.w[p]).then(p.cmp(&q)));
        order
    }

    /// Smallest violating `i`, then smallest partner `j`.
    fn first_pair(
        &self,
        property: Property,
        violates: &[bool],
        partner: impl Fn(usize, usize) -> bool,
    ) -> Option<Witness> {
        let i = violates.iter().position(|&b| b)?;
        let j = (0..self.n()).find(|&j| partner(i, j))?;
        Some(Witness::Pair { property, i, j })
    }

    fn cr(&self) -> Option<Witness> {
        let vmin = self.v.iter().copied().min().unwrap_or(0);
        let i = (0..self.n()).find(|&i| self.cost(i) > vmin + self.w[i])?;
        let resource = (0..self.v.len()).find(|&x| self.cost(i) > self.v[x] + self.w[i])?;
        Some(Witness::Deviation { i, resource })
    }

    fn eq(&self) -> Option<Witness> {
        // Per weight value: first player seen, and first player whose cost differs from it.
        let mut firsts: std::collections::HashMap<Weight, (usize, Option<usize>)> = Default::default();
        for i in 0..self.n() {
            let entry = firsts.entry(self.w[i]).or_insert((i, None));
            if entry.1.is_none() && self.cost(i) != self.cost(entry.0) {
                entry.1 = Some(i);
            }
        }
        (0..self.n()).find_map(|i| {
            let (p0, p1) = firsts[&self.w[i]];
            let j = if self.cost(i) != self.cost(p0) { Some(p0) } else { p1 }?;
            Some(Witness::Pair { property: Property::Eq, i, j })
        })
    }

    fn ef(&self) -> Option<Witness> {
        let d = |i: usize| self.cost(i) - self.w[i];
        let dmin = (0..self.n()).map(d).min()?;
        let i = (0..self.n()).find(|&i| d(i) > dmin)?;
        let j = (0..self.n()).find(|&j| d(j) < d(i))?;
        Some(Witness::Pair { property: Property::Ef, i, j })
    }

    fn woe(&self) -> Option<Witness> {
        let d = |i: usize| self.cost(i) - self.w[i];
        let order = self.heaviest_first();
        let mut violates = vec![false; self.n()];
        // Smallest envy slack among strictly heavier players, tracked on two distinct resources.
        let mut best: [Option<(Weight, usize)>; 2] = [None, None];
        let mut start = 0;
        while start < order.len() {
            let weight = self.w[order[start]];
            let end = start + order[start..].iter().take_while(|&&p| self.w[p] == weight).count();
            for &i in &order[start..end] {
                let other = match best {
                    [Some((_, r)), second] if r == self.a[i] => second,
                    [first, _] => first,
                };
                if matches!(other, Some((dj, _)) if dj < d(i)) {
                    violates[i] = true;
                }
            }
            for &j in &order[start..end] {
                let (dj, rj) = (d(j), self.a[j]);
                best = match best {
                    [None, _] => [Some((dj, rj)), None],
                    [Some((d0, r0)), b1] if r0 == rj => [Some((d0.min(dj), r0)), b1],
                    [Some(b0), _] if dj < b0.0 => [Some((dj, rj)), Some(b0)],
                    [b0, Some(b1)] if b1.0 <= dj => [b0, Some(b1)],
                    [b0, _] => [b0, Some((dj, rj))],
                };
            }
            start = end;
        }
        self.first_pair(Property::Woe, &violates, |i, j| {
            self.w[i] < self.w[j] && self.a[i] != self.a[j] && d(i) > d(j)
        })
    }

    /// Shared sweep for the monotonicity conditions: `bad(cost_i, cost_j)` on a heavier `j`.
    fn monotone(&self, property: Property, bad: impl Fn(Weight, Weight) -> bool) -> Option<Witness> {
        let order = self.heaviest_first();
        let mut violates = vec![false; self.n()];
        let mut heavier_min: Option<Weight> = None;
        let mut start = 0;
        while start < order.len() {
            let weight = self.w[order[start]];
            let end = start + order[start..].iter().take_while(|&&p| self.w[p] == weight).count();
            for &i in &order[start..end] {
                if matches!(heavier_min, Some(vj) if bad(self.cost(i), vj)) {
                    violates[i] = true;
                }
            }
            for &j in &order[start..end] {
                heavier_min = Some(heavier_min.map_or(self.cost(j), |v| v.min(self.cost(j))));
            }
            start = end;
        }
        self.first_pair(property, &violates, |i, j| self.w[i] < self.w[j] && bad(self.cost(i), self.cost(j)))
    }

    fn sm(&self) -> Option<Witness> {
        self.monotone(Property::Sm, |vi, vj| vi >= vj)
    }

    fn wm(&self) -> Option<Witness> {
        self.monotone(Property::Wm, |vi, vj| vi > vj)
    }

    fn atom(&self, p: Property) -> Option<Witness> {
        match p {
            Property::Cr => self.cr(),
            Property::Eq => self.eq(),
            Property::Ef => self.ef(),
            Property::Woe => self.woe(),
            Property::Sm => self.sm(),
            Property::Wm => self.wm(),
        }
    }
}

fn checked<'a>(instance: &'a Instance, assignment: &'a Assignment) -> Result<LoadVector> {
    assignment.validate(instance)?;
    Ok(loads_unchecked(instance, assignment))
}

fn check_atom(p: Property, instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    let loads = checked(instance, assignment)?;
    let view = View { w: instance.weights(), a: assignment.as_slice(), v: loads.as_slice() };
    Ok(Verdict::from(view.atom(p)))
}

/// Credibility in its O(n + m) form: every player against the least-loaded resource.
pub fn check_cr(instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    check_atom(Property::Cr, instance, assignment)
}

pub fn check_eq(instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    check_atom(Property::Eq, instance, assignment)
}

/// Envy-freeness, checked as constancy of `cost - weight` over all players.
pub fn check_ef(instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    check_atom(Property::Ef, instance, assignment)
}

pub fn check_woe(instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    check_atom(Property::Woe, instance, assignment)
}

pub fn check_sm(instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    check_atom(Property::Sm, instance, assignment)
}

pub fn check_wm(instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    check_atom(Property::Wm, instance, assignment)
}

/// Conjunction of atoms; the first failing atom (order Cr, Eq, EF, WOE, SM, WM) supplies the witness.
pub fn check(properties: PropertySet, instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    let loads = checked(instance, assignment)?;
    Ok(check_with_loads(properties, instance, assignment, &loads))
}

pub(crate) fn check_with_loads(
    properties: PropertySet,
    instance: &Instance,
    assignment: &Assignment,
    loads: &LoadVector,
) -> Verdict {
    let view = View { w: instance.weights(), a: assignment.as_slice(), v: loads.as_slice() };
    Verdict::from(properties.atoms().find_map(|p| view.atom(p)))
}

/// WOE restricted to adjacent resources of an assignment already in canonical ordering.
///
/// For each consecutive pair of used resources `x, x + 1`, the lightest player
/// on `x + 1` must not envy the heaviest player on `x`. On canonical
/// assignments this agrees with [`check_woe`]; on anything else it is
/// meaningless.
pub fn check_woe_adjacent(instance: &Instance, assignment: &Assignment) -> Result<Verdict> {
    let loads = checked(instance, assignment)?;
    let m = instance.m();
    // (lightest player, heaviest player) per resource, smallest index on ties.
    let mut extremes: Vec<Option<(usize, usize)>> = vec![None; m];
    for (i, &x) in assignment.as_slice().iter().enumerate() {
        let w = instance.weight(i);
        extremes[x] = Some(match extremes[x] {
            None => (i, i),
            Some((lo, hi)) => (
                if w < instance.weight(lo) { i } else { lo },
                if w > instance.weight(hi) { i } else { hi },
            ),
        });
    }
    let used: Vec<(usize, (usize, usize))> = extremes
        .iter()
        .enumerate()
        .filter_map(|(x, e)| e.map(|e| (x, e)))
        .collect();
    for pair in used.windows(2) {
        let (x, (_, heavy)) = pair[0];
        let (y, (light, _)) = pair[1];
        if loads.load(y) - instance.weight(light) > loads.load(x) - instance.weight(heavy) {
            return Ok(Verdict::from(Some(Witness::Pair { property: Property::Woe, i: light, j: heavy })));
        }
    }
    Ok(Verdict::SATISFIED)
}
