//! Exhaustive search over load distributions and the Partition reduction.
//!
//! Enumeration walks restricted-growth strings over the players sorted by
//! weight, with at most `m` labels. Labels are kept non-decreasing inside each
//! run of equal weights, which removes most symmetric duplicates; the rest are
//! filtered through the canonical [`LoadDistribution`]. The cost is
//! exponential in `n`, so enumeration refuses instances above a cap.

use std::collections::HashSet;

use serde::Serialize;

use crate::batch::{self, Execution};
use crate::error::{Error, Result};
use crate::instance::{distribution_unchecked, loads_unchecked, Assignment, Instance, LoadDistribution, Weight};
use crate::properties::{check_with_loads, PropertySet};

pub const DEFAULT_ENUM_CAP: usize = 12;

/// One equivalence class of assignments with a representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub distribution: LoadDistribution,
    pub assignment: Assignment,
}

impl Class {
    pub fn makespan(&self) -> Weight {
        self.distribution.makespan()
    }
}

/// Iterator over every load distribution of an instance, each exactly once.
pub struct Distributions<'a> {
    instance: &'a Instance,
    order: Vec<usize>,
    sorted: Vec<Weight>,
    labels: Vec<usize>,
    seen: HashSet<LoadDistribution>,
    started: bool,
    done: bool,
}

impl<'a> Distributions<'a> {
    fn new(instance: &'a Instance) -> Self {
        let order = instance.sorted_order();
        let sorted = order.iter().map(|&p| instance.weight(p)).collect();
        Distributions {
            instance,
            labels: vec![0; order.len()],
            order,
            sorted,
            seen: HashSet::new(),
            started: false,
            done: false,
        }
    }

    /// Advances `labels` to the next admissible string; false when exhausted.
    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        let m = self.instance.m();
        // prefix_max[i] = max of labels[..i], for the growth bound.
        let mut prefix_max = vec![0; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.labels[i - 1]);
        }
        for i in (1..n).rev() {
            let limit = (prefix_max[i] + 1).min(m - 1);
            if self.labels[i] < limit {
                self.labels[i] += 1;
                for j in i + 1..n {
                    self.labels[j] = if self.sorted[j] == self.sorted[j - 1] { self.labels[j - 1] } else { 0 };
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Assignment {
        let mut resources = vec![0; self.labels.len()];
        for (pos, &p) in self.order.iter().enumerate() {
            resources[p] = self.labels[pos];
        }
        Assignment::new(resources)
    }
}

impl Iterator for Distributions<'_> {
    type Item = Class;

    fn next(&mut self) -> Option<Class> {
        loop {
            if self.done {
                return None;
            }
            if self.started && !self.advance() {
                self.done = true;
                return None;
            }
            self.started = true;
            let assignment = self.current();
            let distribution = distribution_unchecked(self.instance, &assignment);
            if self.seen.insert(distribution.clone()) {
                return Some(Class { distribution, assignment });
            }
        }
    }
}

/// Streams every assignment equivalence class of `instance`.
pub fn enumerate_distributions(instance: &Instance, cap: usize) -> Result<Distributions<'_>> {
    if instance.n() > cap {
        return Err(Error::EnumerationCap { n: instance.n(), cap });
    }
    Ok(Distributions::new(instance))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Stop at the first satisfying class.
    Exists,
    /// Every satisfying class, in enumeration order.
    All,
    /// A satisfying class of least makespan (the first one found).
    MinMakespan,
}

fn accepts(properties: PropertySet, instance: &Instance, threshold: Option<Weight>, class: &Class) -> bool {
    if threshold.is_some_and(|t| class.makespan() > t) {
        return false;
    }
    let loads = loads_unchecked(instance, &class.assignment);
    check_with_loads(properties, instance, &class.assignment, &loads).is_satisfied()
}

/// Filters every class through the property check and the makespan threshold.
pub fn brute_force(
    properties: PropertySet,
    instance: &Instance,
    threshold: Option<Weight>,
    mode: Mode,
    cap: usize,
) -> Result<Vec<Class>> {
    brute_force_with(Execution::Sequential, properties, instance, threshold, mode, cap)
}

/// [`brute_force`] with the filtering step optionally run in parallel.
/// Results do not depend on `exec`.
pub fn brute_force_with(
    exec: Execution,
    properties: PropertySet,
    instance: &Instance,
    threshold: Option<Weight>,
    mode: Mode,
    cap: usize,
) -> Result<Vec<Class>> {
    let classes = enumerate_distributions(instance, cap)?;
    let ok = |c: &Class| accepts(properties, instance, threshold, c);
    if !exec.is_parallel() {
        return Ok(match mode {
            Mode::Exists => classes.filter(ok).take(1).collect(),
            Mode::All => classes.filter(ok).collect(),
            Mode::MinMakespan => pick_min(classes.filter(ok)),
        });
    }
    let classes: Vec<Class> = classes.collect();
    Ok(match mode {
        Mode::Exists => batch::find_first(exec, &classes, |c| ok(c).then(|| c.clone())).into_iter().collect(),
        Mode::All | Mode::MinMakespan => {
            let keep = batch::map(exec, &classes, ok);
            let hits = classes.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c);
            if mode == Mode::All {
                hits.collect()
            } else {
                pick_min(hits)
            }
        }
    })
}

fn pick_min(classes: impl Iterator<Item = Class>) -> Vec<Class> {
    let mut best: Option<Class> = None;
    for c in classes {
        if best.as_ref().is_none_or(|b| c.makespan() < b.makespan()) {
            best = Some(c);
        }
    }
    best.into_iter().collect()
}

/// A Partition instance: can `s` be split into two halves of equal sum?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    s: Vec<Weight>,
    sum: Weight,
}

impl PartitionInstance {
    pub fn new(s: Vec<Weight>) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyPartition);
        }
        // Validates positivity and overflow, including the two appended players.
        let inst = Instance::new(s.clone(), 1)?;
        let sum = inst.total_weight();
        sum.checked_mul(3).and_then(|x| x.checked_add(2)).ok_or(Error::WeightOverflow)?;
        Ok(PartitionInstance { s, sum })
    }

    pub fn values(&self) -> &[Weight] {
        &self.s
    }

    pub fn sum(&self) -> Weight {
        self.sum
    }
}

/// Appends two players of weight `S + 1` and uses two resources. With the
/// threshold `floor((3S + 2) / 2)` a feasible assignment must split `s`
/// evenly between the two heavy players.
pub fn reduce_partition(p: &PartitionInstance) -> (Instance, Weight) {
    let mut w = p.s.clone();
    w.extend([p.sum + 1, p.sum + 1]);
    let inst = Instance::new(w, 2).expect("validated at construction");
    (inst, (3 * p.sum + 2) / 2)
}

/// Which problem variant the reduction targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Hardness {
    /// Existence of any satisfying assignment; the threshold is ignored.
    Satisfiability,
    /// Existence of a satisfying assignment within the threshold.
    Makespan,
}

impl Hardness {
    /// Property sets for which the reduction decides Partition.
    pub fn rows(self) -> Vec<PropertySet> {
        let names: &[&str] = match self {
            Hardness::Satisfiability => &["Eq+Cr", "WM+Cr", "WM+Eq+Cr"],
            Hardness::Makespan => &["TOP", "Eq", "Cr", "Eq+Cr", "WM", "WM+Eq", "WM+Cr", "WM+Eq+Cr"],
        };
        names.iter().map(|s| s.parse().expect("valid property names")).collect()
    }
}

/// Decides Partition on `p` by brute force over the reduced instance.
pub fn partition_decision(p: &PartitionInstance, properties: PropertySet, hardness: Hardness, cap: usize) -> Result<bool> {
    if !hardness.rows().contains(&properties) {
        return Err(Error::UnsupportedProperty(properties));
    }
    let (inst, t) = reduce_partition(p);
    let threshold = (hardness == Hardness::Makespan).then_some(t);
    Ok(!brute_force(properties, &inst, threshold, Mode::Exists, cap)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(w: &[Weight], m: usize) -> Instance {
        Instance::new(w.to_vec(), m).unwrap()
    }

    fn classes(w: &[Weight], m: usize) -> Vec<String> {
        let i = inst(w, m);
        enumerate_distributions(&i, DEFAULT_ENUM_CAP).unwrap().map(|c| c.distribution.to_string()).collect()
    }

    #[test]
    fn small_enumerations() {
        let mut c = classes(&[1, 1], 2);
        c.sort();
        assert_eq!(c, vec!["[{1,1},{}]", "[{1},{1}]"]);
        assert_eq!(classes(&[2, 1], 2).len(), 2);
        assert_eq!(classes(&[4, 3, 3, 1], 2).len(), 6);
        assert_eq!(classes(&[5], 3), vec!["[{5},{},{}]"]);
        assert_eq!(classes(&[1, 2, 3], 1), vec!["[{3,2,1}]"]);
        // Distinct weights: set partitions of 4 into at most 2 blocks, 1 + 7.
        assert_eq!(classes(&[1, 2, 3, 4], 2).len(), 8);
        // Identical weights: integer partitions of 5 into at most 3 parts.
        assert_eq!(classes(&[1; 5], 3).len(), 5);
    }

    #[test]
    fn cap_is_a_refusal() {
        let i = inst(&[1; 5], 2);
        assert!(matches!(enumerate_distributions(&i, 4), Err(Error::EnumerationCap { n: 5, cap: 4 })));
    }

    #[test]
    fn brute_force_examples() {
        let props: PropertySet = "WM+Eq+Cr".parse().unwrap();
        let i = inst(&[2, 1, 1, 2, 1, 1], 2);
        let all: Vec<String> = brute_force(props, &i, None, Mode::All, DEFAULT_ENUM_CAP)
            .unwrap()
            .iter()
            .map(|c| c.distribution.to_string())
            .collect();
        assert!(all.contains(&"[{2,1,1},{2,1,1}]".to_string()));
        assert!(all.contains(&"[{2,2},{1,1,1,1}]".to_string()));

        let i = inst(&[4, 3, 2, 1], 2);
        let best = brute_force("WM".parse().unwrap(), &i, None, Mode::MinMakespan, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(best[0].makespan(), 5);

        let i = inst(&[1, 1, 3, 3], 2);
        let hit = brute_force("Eq+Cr".parse().unwrap(), &i, None, Mode::Exists, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(hit[0].distribution.to_string(), "[{3,1},{3,1}]");
    }

    #[test]
    fn parallel_matches_sequential() {
        let i = inst(&[5, 4, 4, 3, 2, 2, 1, 1], 3);
        for mode in [Mode::Exists, Mode::All, Mode::MinMakespan] {
            for p in ["TOP", "Cr", "WM+Eq", "WOE+Cr"] {
                let props: PropertySet = p.parse().unwrap();
                let a = brute_force_with(Execution::Sequential, props, &i, Some(12), mode, 12).unwrap();
                let b = brute_force_with(Execution::Parallel, props, &i, Some(12), mode, 12).unwrap();
                assert_eq!(a, b, "{p} {mode:?}");
            }
        }
    }

    #[test]
    fn reductions() {
        let p = PartitionInstance::new(vec![1, 1, 2]).unwrap();
        let (i, t) = reduce_partition(&p);
        assert_eq!((i.weights(), i.m(), t), (&[1, 1, 2, 5, 5][..], 2, 7));
        let (i, t) = reduce_partition(&PartitionInstance::new(vec![1, 1, 1]).unwrap());
        assert_eq!((i.weights(), t), (&[1, 1, 1, 4, 4][..], 5));
        let (i, t) = reduce_partition(&PartitionInstance::new(vec![2, 2]).unwrap());
        assert_eq!((i.weights(), t), (&[2, 2, 5, 5][..], 7));
        assert_eq!(PartitionInstance::new(vec![]), Err(Error::EmptyPartition));
    }

    #[test]
    fn decisions() {
        let cap = DEFAULT_ENUM_CAP;
        let yes = PartitionInstance::new(vec![1, 1, 2]).unwrap();
        assert!(partition_decision(&yes, "WM+Eq+Cr".parse().unwrap(), Hardness::Satisfiability, cap).unwrap());
        let no = PartitionInstance::new(vec![1, 1, 1]).unwrap();
        assert!(!partition_decision(&no, PropertySet::TOP, Hardness::Makespan, cap).unwrap());
        let yes = PartitionInstance::new(vec![3, 1, 2, 2]).unwrap();
        assert!(partition_decision(&yes, "Cr".parse().unwrap(), Hardness::Makespan, cap).unwrap());
        assert!(partition_decision(&yes, PropertySet::TOP, Hardness::Satisfiability, cap).is_err());
    }
}
