use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use motzkin::density::{corank1_exact, max_mean_cycle_with, Digraph};
use motzkin::group::problem_from_integer_vectors;
use motzkin::par::Strategy;
use motzkin::{BigInt, BigRational, SolverOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

fn window_solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("window_solver");
    group.sample_size(10);
    for ds in [&[1i64, 3, 8][..], &[2, 7, 11, 16], &[3, 5, 13, 19]] {
        let vs: Vec<Vec<BigInt>> = ds.iter().map(|&d| vec![d.into()]).collect();
        let p = problem_from_integer_vectors(&vs).unwrap();
        for strategy in STRATEGIES {
            let opts = SolverOptions {
                strategy,
                ..SolverOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(format!("{strategy:?}"), format!("{ds:?}")), &p, |b, p| {
                b.iter(|| corank1_exact(black_box(p), &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn karp(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_mean_cycle");
    group.sample_size(10);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [500usize, 2000] {
        let mut g = Digraph::new(n);
        for v in 0..n {
            for _ in 0..4 {
                let w = BigRational::from_integer(BigInt::from(rng.gen_range(-20..=20)));
                g.add_edge(v, rng.gen_range(0..n), w);
            }
        }
        for strategy in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(format!("{strategy:?}"), n), &g, |b, g| {
                b.iter(|| max_mean_cycle_with(black_box(g), strategy).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, window_solver, karp);
criterion_main!(benches);
