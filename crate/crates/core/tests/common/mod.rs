//! Test-side oracles, written from the definitions and sharing no code with
//! the library checkers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fairsched::exact::{enumerate_distributions, Class};
use fairsched::{Assignment, Instance, LoadDistribution, Property, PropertySet, Weight};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn loads(w: &[Weight], a: &[usize], m: usize) -> Vec<Weight> {
    let mut v = vec![0; m];
    for (i, &x) in a.iter().enumerate() {
        v[x] += w[i];
    }
    v
}

/// Atomic properties satisfied by `a`, each checked over all pairs or all
/// (player, resource) combinations exactly as defined.
pub fn oracle_atoms(w: &[Weight], a: &[usize], m: usize) -> PropertySet {
    let v = loads(w, a, m);
    let n = w.len();
    let cost = |i: usize| v[a[i]];
    let all_pairs = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|i| (0..n).all(|j| f(i, j)));
    let mut set = PropertySet::TOP;
    if (0..n).all(|i| (0..m).all(|x| cost(i) <= v[x] + w[i])) {
        set = set.with(Property::Cr);
    }
    if all_pairs(&|i, j| w[i] != w[j] || cost(i) == cost(j)) {
        set = set.with(Property::Eq);
    }
    if all_pairs(&|i, j| cost(i) - w[i] <= cost(j) - w[j]) {
        set = set.with(Property::Ef);
    }
    if all_pairs(&|i, j| !(w[i] < w[j] && a[i] != a[j]) || cost(i) - w[i] <= cost(j) - w[j]) {
        set = set.with(Property::Woe);
    }
    if all_pairs(&|i, j| w[i] >= w[j] || cost(i) < cost(j)) {
        set = set.with(Property::Sm);
    }
    if all_pairs(&|i, j| w[i] >= w[j] || cost(i) <= cost(j)) {
        set = set.with(Property::Wm);
    }
    set
}

pub fn oracle_check(p: PropertySet, inst: &Instance, a: &Assignment) -> bool {
    p.is_subset(oracle_atoms(inst.weights(), a.as_slice(), inst.m()))
}

/// Every class of an instance with its makespan and satisfied atoms.
pub struct Table {
    pub classes: Vec<(Class, Weight, PropertySet)>,
}

impl Table {
    pub fn new(inst: &Instance) -> Self {
        let classes = enumerate_distributions(inst, 16)
            .unwrap()
            .map(|c| {
                let mk = c.makespan();
                let atoms = oracle_atoms(inst.weights(), c.assignment.as_slice(), inst.m());
                (c, mk, atoms)
            })
            .collect();
        Table { classes }
    }

    pub fn satisfying(&self, p: PropertySet) -> impl Iterator<Item = &(Class, Weight, PropertySet)> {
        self.classes.iter().filter(move |(_, _, atoms)| p.is_subset(*atoms))
    }

    pub fn count(&self, p: PropertySet) -> usize {
        self.satisfying(p).count()
    }

    pub fn min_makespan(&self, p: PropertySet) -> Option<Weight> {
        self.satisfying(p).map(|c| c.1).min()
    }

    pub fn feasible(&self, p: PropertySet, t: Option<Weight>) -> bool {
        self.min_makespan(p).is_some_and(|mk| t.is_none_or(|t| mk <= t))
    }
}

/// Every distinct subset sum of the weights.
pub fn achievable_loads(w: &[Weight]) -> Vec<Weight> {
    let mut sums = BTreeSet::from([0]);
    for &x in w {
        let next: Vec<Weight> = sums.iter().map(|s| s + x).collect();
        sums.extend(next);
    }
    sums.into_iter().collect()
}

/// All weight multisets with `n` in `ns`, entries in `1..=max_w`, and each
/// `m` in `ms`. Players appear in a seeded random order.
pub fn exhaustive_corpus(ns: std::ops::RangeInclusive<usize>, ms: std::ops::RangeInclusive<usize>, max_w: Weight) -> Vec<Instance> {
    fn multisets(n: usize, max_w: Weight, prefix: &mut Vec<Weight>, out: &mut Vec<Vec<Weight>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let top = prefix.last().copied().unwrap_or(max_w);
        for w in (1..=top).rev() {
            prefix.push(w);
            multisets(n, max_w, prefix, out);
            prefix.pop();
        }
    }
    let mut r = rng(0x5eed);
    let mut out = Vec::new();
    for n in ns {
        let mut ws = Vec::new();
        multisets(n, max_w, &mut Vec::new(), &mut ws);
        for mut w in ws {
            w.shuffle(&mut r);
            for m in ms.clone() {
                out.push(Instance::new(w.clone(), m).unwrap());
            }
        }
    }
    out
}

pub fn random_instance(r: &mut ChaCha8Rng, max_n: usize, max_m: usize, max_w: Weight) -> Instance {
    let n = r.gen_range(1..=max_n);
    let m = r.gen_range(1..=max_m);
    let w = (0..n).map(|_| r.gen_range(1..=max_w)).collect();
    Instance::new(w, m).unwrap()
}

pub fn random_assignment(r: &mut ChaCha8Rng, inst: &Instance) -> Assignment {
    Assignment::new((0..inst.n()).map(|_| r.gen_range(0..inst.m())).collect())
}

/// Subset-sum decision for Partition.
pub fn partition_dp(s: &[Weight]) -> bool {
    let total: Weight = s.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &x in s {
        for v in (x as usize..=half).rev() {
            reach[v] |= reach[v - x as usize];
        }
    }
    reach[half]
}

pub fn groups_of(d: &LoadDistribution) -> Vec<Vec<Weight>> {
    d.groups().to_vec()
}

pub fn props(s: &str) -> PropertySet {
    s.parse().unwrap()
}
