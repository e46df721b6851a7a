use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nagraph::dirichlet::solve_dp_all;
use nagraph::greenfn::g_k;
use nagraph::sample::random_instance;
use nagraph::walk::{build_pi, simulate};
use nagraph::Exec;

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn monte_carlo(c: &mut Criterion) {
    let i = random_instance(50_003, 10);
    let pi = build_pi(&i.graph, &i.interior).unwrap();
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| simulate(&pi, i.base, 200, 50_000, 7, black_box(exec)))
        });
    }
    group.finish();
}

fn all_bases(c: &mut Criterion) {
    let i = random_instance(33, 10);
    let mut group = c.benchmark_group("solve_dp_all");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| solve_dp_all(&i.graph, &i.k, black_box(exec)).unwrap())
        });
    }
    group.finish();
}

fn instance_sweep(c: &mut Criterion) {
    let seeds: Vec<u64> = (0..64).collect();
    let mut group = c.benchmark_group("g_k_sweep");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                exec.map(&seeds, |&s| {
                    let i = random_instance(s, 8);
                    g_k(&i.graph, &i.k, i.base).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, all_bases, instance_sweep);
criterion_main!(benches);
