//! Instances, assignments, loads and the canonical forms used to compare them.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Player weights and resource loads. Exact integers throughout.
pub type Weight = i64;

/// A weight vector together with the number of identical resources.
///
/// The total weight is checked at construction so that every load, prefix sum
/// and makespan computed later fits in an `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    weights: Vec<Weight>,
    m: usize,
    total: Weight,
}

impl Instance {
    pub fn new(weights: Vec<Weight>, m: usize) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::NoPlayers);
        }
        if m == 0 {
            return Err(Error::NoResources);
        }
        let mut total: Weight = 0;
        for (index, &weight) in weights.iter().enumerate() {
            if weight < 1 {
                return Err(Error::NonPositiveWeight { index, weight });
            }
            total = total.checked_add(weight).ok_or(Error::WeightOverflow)?;
        }
        Ok(Instance { weights, m, total })
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, player: usize) -> Weight {
        self.weights[player]
    }

    /// Number of players.
    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Number of resources.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn total_weight(&self) -> Weight {
        self.total
    }

    pub fn max_weight(&self) -> Weight {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// Player indices sorted by weight descending, ties by index ascending.
    pub fn sorted_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by(|&a, &b| self.weights[b].cmp(&self.weights[a]).then(a.cmp(&b)));
        order
    }

    /// Distinct weights in descending order with their multiplicities.
    pub fn support(&self) -> Vec<(Weight, usize)> {
        let mut sorted = self.weights.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut support: Vec<(Weight, usize)> = Vec::new();
        for w in sorted {
            match support.last_mut() {
                Some((last, count)) if *last == w => *count += 1,
                _ => support.push((w, 1)),
            }
        }
        support
    }
}

/// Resource index per player, zero-based internally.
///
/// File formats use one-based indices; see [`Assignment::from_one_based`] and
/// [`Assignment::to_one_based`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<usize>);

impl Assignment {
    pub fn new(resources: Vec<usize>) -> Self {
        Assignment(resources)
    }

    pub fn from_one_based(resources: &[usize]) -> Result<Self> {
        resources
            .iter()
            .enumerate()
            .map(|(player, &r)| {
                r.checked_sub(1).ok_or(Error::ResourceOutOfRange {
                    player,
                    resource: 0,
                    m: 0,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Assignment)
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|r| r + 1).collect()
    }

    /// Every player on resource 0.
    pub fn single_resource(n: usize) -> Self {
        Assignment(vec![0; n])
    }

    /// Builds an assignment from per-resource weight groups, e.g. `[[4, 3], [3, 1], []]`.
    ///
    /// Players are matched to groups by weight value; among players of equal
    /// weight the lowest unused index is taken first.
    pub fn from_groups(instance: &Instance, groups: &[&[Weight]]) -> Result<Self> {
        if groups.len() > instance.m() {
            return Err(Error::GroupMismatch(format!(
                "{} groups for {} resources",
                groups.len(),
                instance.m()
            )));
        }
        let mut resources = vec![usize::MAX; instance.n()];
        for (x, group) in groups.iter().enumerate() {
            for &w in group.iter() {
                let player = (0..instance.n())
                    .find(|&i| resources[i] == usize::MAX && instance.weight(i) == w)
                    .ok_or_else(|| Error::GroupMismatch(format!("no unassigned player of weight {w}")))?;
                resources[player] = x;
            }
        }
        if let Some(i) = resources.iter().position(|&r| r == usize::MAX) {
            return Err(Error::GroupMismatch(format!(
                "player {i} (weight {}) is not in any group",
                instance.weight(i)
            )));
        }
        Ok(Assignment(resources))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn resource(&self, player: usize) -> usize {
        self.0[player]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, instance: &Instance) -> Result<()> {
        if self.0.len() != instance.n() {
            return Err(Error::AssignmentLength {
                expected: instance.n(),
                actual: self.0.len(),
            });
        }
        if let Some((player, &resource)) = self.0.iter().enumerate().find(|(_, &r)| r >= instance.m()) {
            return Err(Error::ResourceOutOfRange {
                player,
                resource,
                m: instance.m(),
            });
        }
        Ok(())
    }
}

/// Load per resource; unused resources carry zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoadVector(Vec<Weight>);

impl LoadVector {
    pub fn as_slice(&self) -> &[Weight] {
        &self.0
    }

    pub fn load(&self, resource: usize) -> Weight {
        self.0[resource]
    }

    pub fn makespan(&self) -> Weight {
        makespan(self)
    }

    pub fn min_load(&self) -> Weight {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn into_vec(self) -> Vec<Weight> {
        self.0
    }
}

impl From<Vec<Weight>> for LoadVector {
    fn from(v: Vec<Weight>) -> Self {
        LoadVector(v)
    }
}

/// Largest entry of the load vector.
pub fn makespan(loads: &LoadVector) -> Weight {
    loads.0.iter().copied().max().unwrap_or(0)
}

pub fn compute_loads(instance: &Instance, assignment: &Assignment) -> Result<LoadVector> {
    assignment.validate(instance)?;
    Ok(loads_unchecked(instance, assignment))
}

pub(crate) fn loads_unchecked(instance: &Instance, assignment: &Assignment) -> LoadVector {
    let mut v = vec![0; instance.m()];
    for (&w, &x) in instance.weights().iter().zip(assignment.as_slice()) {
        v[x] += w;
    }
    LoadVector(v)
}

/// Multiset of per-resource weight multisets, stored in canonical order.
///
/// Each group is sorted non-increasingly; groups are sorted by load descending
/// with ties broken by descending lexicographic order. Two assignments are
/// equivalent exactly when their distributions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LoadDistribution {
    groups: Vec<Vec<Weight>>,
}

impl LoadDistribution {
    pub fn from_groups(mut groups: Vec<Vec<Weight>>) -> Self {
        for g in &mut groups {
            g.sort_unstable_by(|a, b| b.cmp(a));
        }
        groups.sort_by(|a, b| {
            let (la, lb): (Weight, Weight) = (a.iter().sum(), b.iter().sum());
            lb.cmp(&la).then_with(|| b.cmp(a))
        });
        LoadDistribution { groups }
    }

    pub fn groups(&self) -> &[Vec<Weight>] {
        &self.groups
    }

    pub fn loads(&self) -> Vec<Weight> {
        self.groups.iter().map(|g| g.iter().sum()).collect()
    }

    pub fn makespan(&self) -> Weight {
        self.groups.first().map(|g| g.iter().sum()).unwrap_or(0)
    }
}

impl fmt::Display for LoadDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (x, g) in self.groups.iter().enumerate() {
            if x > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (k, w) in g.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("]")
    }
}

pub fn load_distribution(instance: &Instance, assignment: &Assignment) -> Result<LoadDistribution> {
    assignment.validate(instance)?;
    Ok(distribution_unchecked(instance, assignment))
}

pub(crate) fn distribution_unchecked(instance: &Instance, assignment: &Assignment) -> LoadDistribution {
    let mut groups = vec![Vec::new(); instance.m()];
    for (&w, &x) in instance.weights().iter().zip(assignment.as_slice()) {
        groups[x].push(w);
    }
    LoadDistribution::from_groups(groups)
}

pub fn equivalent(instance: &Instance, a: &Assignment, b: &Assignment) -> Result<bool> {
    Ok(load_distribution(instance, a)? == load_distribution(instance, b)?)
}

/// Decides contiguity and, when contiguous, returns the assignment in canonical ordering.
///
/// The returned assignment relabels resources so that heavier blocks come
/// first (blocks of one repeated weight are ordered by load), and reassigns
/// equal-weight players so that, walking players by weight descending and
/// index ascending, resource labels never decrease. It is equivalent to the
/// input and identical for every member of the same equivalence class.
pub fn canonicalize(instance: &Instance, assignment: &Assignment) -> Result<Option<Assignment>> {
    assignment.validate(instance)?;
    let m = instance.m();
    let mut groups: Vec<Vec<Weight>> = vec![Vec::new(); m];
    for (&w, &x) in instance.weights().iter().zip(assignment.as_slice()) {
        groups[x].push(w);
    }
    for g in &mut groups {
        g.sort_unstable_by(|a, b| b.cmp(a));
    }
    // Empty groups last; otherwise (max desc, min desc, load desc).
    groups.sort_by(|a, b| match (a.is_empty(), b.is_empty()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => {
            let (la, lb): (Weight, Weight) = (a.iter().sum(), b.iter().sum());
            b[0].cmp(&a[0])
                .then(b[b.len() - 1].cmp(&a[a.len() - 1]))
                .then(lb.cmp(&la))
        }
    });
    let tiled: Vec<Weight> = groups.iter().flatten().copied().collect();
    if tiled.windows(2).any(|p| p[0] < p[1]) {
        return Ok(None);
    }
    let order = instance.sorted_order();
    let mut resources = vec![0; instance.n()];
    let mut pos = 0;
    for (x, g) in groups.iter().enumerate() {
        for _ in 0..g.len() {
            resources[order[pos]] = x;
            pos += 1;
        }
    }
    Ok(Some(Assignment(resources)))
}

pub fn is_contiguous(instance: &Instance, assignment: &Assignment) -> Result<bool> {
    Ok(canonicalize(instance, assignment)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(w: &[Weight], m: usize) -> Instance {
        Instance::new(w.to_vec(), m).unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Instance::new(vec![], 2), Err(Error::NoPlayers));
        assert_eq!(Instance::new(vec![1], 0), Err(Error::NoResources));
        assert_eq!(
            Instance::new(vec![3, 0], 2),
            Err(Error::NonPositiveWeight { index: 1, weight: 0 })
        );
        assert_eq!(Instance::new(vec![i64::MAX, 1], 2), Err(Error::WeightOverflow));
    }

    #[test]
    fn loads_match_listed_groups() {
        let i = inst(&[4, 3, 3, 1], 3);
        let v = compute_loads(&i, &Assignment::new(vec![0, 0, 1, 1])).unwrap();
        assert_eq!(v.as_slice(), &[7, 4, 0]);
        assert_eq!(v.makespan(), 7);

        let i = inst(&[5], 2);
        let v = compute_loads(&i, &Assignment::new(vec![0])).unwrap();
        assert_eq!(v.as_slice(), &[5, 0]);
        assert_eq!(makespan(&v), 5);

        let i = inst(&[2, 2, 2, 2], 2);
        let v = compute_loads(&i, &Assignment::new(vec![0, 0, 1, 1])).unwrap();
        assert_eq!(v.as_slice(), &[4, 4]);
        assert_eq!(v.makespan(), 4);
    }

    #[test]
    fn validation_errors() {
        let i = inst(&[1, 2], 2);
        assert_eq!(
            compute_loads(&i, &Assignment::new(vec![0])),
            Err(Error::AssignmentLength { expected: 2, actual: 1 })
        );
        assert_eq!(
            compute_loads(&i, &Assignment::new(vec![0, 2])),
            Err(Error::ResourceOutOfRange { player: 1, resource: 2, m: 2 })
        );
        assert!(Assignment::from_one_based(&[1, 0]).is_err());
    }

    #[test]
    fn distribution_display() {
        let i = inst(&[4, 3, 3, 1], 3);
        let d = load_distribution(&i, &Assignment::new(vec![0, 0, 1, 1])).unwrap();
        assert_eq!(d.to_string(), "[{4,3},{3,1},{}]");

        let i = inst(&[2, 3, 3, 3, 1, 2], 3);
        let a = Assignment::from_groups(&i, &[&[2, 3], &[3, 3], &[1, 2]]).unwrap();
        assert_eq!(load_distribution(&i, &a).unwrap().to_string(), "[{3,3},{3,2},{2,1}]");

        let i = inst(&[1, 1], 2);
        let d = load_distribution(&i, &Assignment::new(vec![0, 1])).unwrap();
        assert_eq!(d.to_string(), "[{1},{1}]");
    }

    #[test]
    fn equivalence_examples() {
        let i = inst(&[3, 3], 2);
        assert!(equivalent(&i, &Assignment::new(vec![0, 1]), &Assignment::new(vec![1, 0])).unwrap());

        let i = inst(&[2, 1, 1, 2, 1, 1], 2);
        let a = Assignment::from_groups(&i, &[&[2, 1, 1], &[2, 1, 1]]).unwrap();
        let b = Assignment::from_groups(&i, &[&[2, 2], &[1, 1, 1, 1]]).unwrap();
        assert!(!equivalent(&i, &a, &b).unwrap());
        assert!(equivalent(&i, &a, &a).unwrap());
    }

    #[test]
    fn canonicalize_examples() {
        let i = inst(&[2, 3, 3, 3, 1, 2], 3);
        let a = Assignment::from_groups(&i, &[&[2, 3], &[3, 3], &[1, 2]]).unwrap();
        let c = canonicalize(&i, &a).unwrap().expect("contiguous");
        let groups: Vec<Vec<Weight>> = (0..3)
            .map(|x| {
                let mut g: Vec<Weight> = (0..i.n()).filter(|&p| c.resource(p) == x).map(|p| i.weight(p)).collect();
                g.sort_by(|a, b| b.cmp(a));
                g
            })
            .collect();
        assert_eq!(groups, vec![vec![3, 3], vec![3, 2], vec![2, 1]]);
        assert!(equivalent(&i, &a, &c).unwrap());

        let i = inst(&[4, 3, 2, 1], 2);
        let a = Assignment::from_groups(&i, &[&[4, 1], &[3, 2]]).unwrap();
        assert_eq!(canonicalize(&i, &a).unwrap(), None);

        let i = inst(&[5, 1, 3], 3);
        let a = Assignment::new(vec![2, 2, 2]);
        assert_eq!(canonicalize(&i, &a).unwrap(), Some(Assignment::new(vec![0, 0, 0])));
    }

    #[test]
    fn canonical_ordering_is_nondecreasing_along_sorted_players() {
        let i = inst(&[2, 2, 2, 1, 2], 3);
        let a = Assignment::new(vec![2, 0, 2, 0, 1]);
        let c = canonicalize(&i, &a).unwrap().unwrap();
        let labels: Vec<usize> = i.sorted_order().iter().map(|&p| c.resource(p)).collect();
        assert!(labels.windows(2).all(|p| p[0] <= p[1]));
    }

    #[test]
    fn support_counts() {
        let i = inst(&[3, 2, 3, 2, 2, 1], 2);
        assert_eq!(i.support(), vec![(3, 2), (2, 3), (1, 1)]);
        assert_eq!(i.sorted_order(), vec![0, 2, 1, 3, 4, 5]);
    }
}
