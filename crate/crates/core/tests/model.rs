mod common;

use common::loads;
use fairsched::{canonicalize, compute_loads, equivalent, load_distribution, Assignment, Instance, Weight};
use proptest::prelude::*;

fn instance_and_assignment() -> impl Strategy<Value = (Instance, Assignment)> {
    (1usize..10, 1usize..5)
        .prop_flat_map(|(n, m)| (prop::collection::vec(1i64..8, n), prop::collection::vec(0..m, n), Just(m)))
        .prop_map(|(w, a, m)| (Instance::new(w, m).unwrap(), Assignment::new(a)))
}

/// Applies a resource relabeling and swaps resources between equal-weight players.
fn scramble(inst: &Instance, a: &Assignment, perm: &[usize], swaps: &[(usize, usize)]) -> Assignment {
    let mut r: Vec<usize> = a.as_slice().iter().map(|&x| perm[x]).collect();
    for &(i, j) in swaps {
        let (i, j) = (i % r.len(), j % r.len());
        if inst.weight(i) == inst.weight(j) {
            r.swap(i, j);
        }
    }
    Assignment::new(r)
}

proptest! {
    #[test]
    fn loads_sum_to_total((inst, a) in instance_and_assignment()) {
        let v = compute_loads(&inst, &a).unwrap();
        prop_assert_eq!(v.as_slice().iter().sum::<Weight>(), inst.total_weight());
        prop_assert_eq!(v.as_slice(), &loads(inst.weights(), a.as_slice(), inst.m())[..]);
        prop_assert_eq!(v.makespan(), *v.as_slice().iter().max().unwrap());
    }

    #[test]
    fn distribution_is_invariant_under_symmetries(
        (inst, a) in instance_and_assignment(),
        seed in any::<u64>(),
        swaps in prop::collection::vec((0usize..10, 0usize..10), 0..6),
    ) {
        let mut perm: Vec<usize> = (0..inst.m()).collect();
        perm.rotate_left((seed as usize) % inst.m());
        if seed % 2 == 0 {
            perm.reverse();
        }
        let b = scramble(&inst, &a, &perm, &swaps);
        prop_assert_eq!(load_distribution(&inst, &a).unwrap(), load_distribution(&inst, &b).unwrap());
        prop_assert!(equivalent(&inst, &a, &b).unwrap());
    }

    #[test]
    fn distribution_reconstructs_the_weights((inst, a) in instance_and_assignment()) {
        let d = load_distribution(&inst, &a).unwrap();
        prop_assert_eq!(d.groups().len(), inst.m());
        let mut all: Vec<Weight> = d.groups().concat();
        let mut w = inst.weights().to_vec();
        all.sort_unstable();
        w.sort_unstable();
        prop_assert_eq!(all, w);
        let l = d.loads();
        prop_assert!(l.windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn equivalence_is_an_equivalence(
        (inst, a) in instance_and_assignment(),
        b_raw in prop::collection::vec(0usize..4, 9),
        c_raw in prop::collection::vec(0usize..4, 9),
    ) {
        let pick = |raw: &[usize]| Assignment::new((0..inst.n()).map(|i| raw[i] % inst.m()).collect());
        let (b, c) = (pick(&b_raw), pick(&c_raw));
        let eq = |x: &Assignment, y: &Assignment| equivalent(&inst, x, y).unwrap();
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
    }

    #[test]
    fn canonical_form_is_equivalent_and_ordered((inst, a) in instance_and_assignment()) {
        if let Some(c) = canonicalize(&inst, &a).unwrap() {
            prop_assert!(equivalent(&inst, &a, &c).unwrap());
            let labels: Vec<usize> = inst.sorted_order().iter().map(|&p| c.resource(p)).collect();
            prop_assert!(labels.windows(2).all(|p| p[0] <= p[1]));
            let v = compute_loads(&inst, &c).unwrap();
            let used = labels.last().unwrap() + 1;
            prop_assert!(v.as_slice()[used..].iter().all(|&x| x == 0));
            // Canonicalizing again is a fixed point.
            prop_assert_eq!(canonicalize(&inst, &c).unwrap(), Some(c));
        }
    }

    #[test]
    fn single_weight_resources_are_contiguous(w in prop::collection::vec(1i64..6, 1..10), m in 1usize..5) {
        let inst = Instance::new(w, m).unwrap();
        prop_assert!(canonicalize(&inst, &Assignment::single_resource(inst.n())).unwrap().is_some());
        // One resource per distinct weight (when there are enough resources).
        let support = inst.support();
        if support.len() <= m {
            let a: Vec<usize> = inst
                .weights()
                .iter()
                .map(|w| support.iter().position(|s| s.0 == *w).unwrap())
                .collect();
            prop_assert!(canonicalize(&inst, &Assignment::new(a)).unwrap().is_some());
        }
    }
}

#[test]
fn spec_examples() {
    let i = Instance::new(vec![5], 2).unwrap();
    let a = Assignment::from_one_based(&[1]).unwrap();
    assert_eq!(compute_loads(&i, &a).unwrap().into_vec(), vec![5, 0]);

    let i = Instance::new(vec![2, 2, 2, 2], 2).unwrap();
    let a = Assignment::from_one_based(&[1, 1, 2, 2]).unwrap();
    assert_eq!(compute_loads(&i, &a).unwrap().into_vec(), vec![4, 4]);

    let i = Instance::new(vec![1, 1], 2).unwrap();
    let a = Assignment::from_one_based(&[1, 2]).unwrap();
    assert_eq!(load_distribution(&i, &a).unwrap().to_string(), "[{1},{1}]");

    let i = Instance::new(vec![3, 3], 2).unwrap();
    let (a, b) = (Assignment::new(vec![0, 1]), Assignment::new(vec![1, 0]));
    assert!(equivalent(&i, &a, &b).unwrap());

    let i = Instance::new(vec![2, 1, 1, 2, 1, 1], 2).unwrap();
    let a = Assignment::from_groups(&i, &[&[2, 1, 1], &[2, 1, 1]]).unwrap();
    let b = Assignment::from_groups(&i, &[&[2, 2], &[1, 1, 1, 1]]).unwrap();
    assert!(!equivalent(&i, &a, &b).unwrap());
}
