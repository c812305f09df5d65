use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fairsched::batch::{solve_batch, Execution};
use fairsched::exact::{brute_force_with, Mode};
use fairsched::{Instance, PropertySet, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instances(count: usize, n: usize, m: usize, max_w: Weight) -> Vec<Instance> {
    let mut r = ChaCha8Rng::seed_from_u64(1);
    (0..count)
        .map(|_| Instance::new((0..n).map(|_| r.gen_range(1..=max_w)).collect(), m).unwrap())
        .collect()
}

fn brute_force(c: &mut Criterion) {
    let inst = random_instances(1, 11, 3, 9).pop().unwrap();
    let props: PropertySet = "WM+Eq+Cr".parse().unwrap();
    let mut group = c.benchmark_group("brute_force_all");
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| brute_force_with(exec, props, &inst, None, Mode::All, 12).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let instances = random_instances(2000, 9, 3, 6);
    let mut group = c.benchmark_group("solve_batch");
    for name in ["WOE+Cr", "Eq+Cr"] {
        let props: PropertySet = name.parse().unwrap();
        for exec in [Execution::Sequential, Execution::Parallel] {
            group.bench_with_input(BenchmarkId::new(name, format!("{exec:?}")), &exec, |b, &exec| {
                b.iter(|| solve_batch(exec, props, &instances, None, 12))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, brute_force, batch);
criterion_main!(benches);
