use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pebblekit_bench::oracle_cases;
use pebblekit_core::diam2::conjectured_bound;
use pebblekit_core::generate::{random_configuration, random_diameter_two};
use pebblekit_core::{
    blockcut_bound, detect_cheap, families, is_solvable, pebbling_number, Configuration,
    PebblingOptions,
};

fn exact_numbers(c: &mut Criterion) {
    let mut group = c.benchmark_group("pebbling_number");
    group.sample_size(10);
    for (name, g, r, k) in oracle_cases() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &(g, r, k), |b, (g, r, k)| {
            b.iter(|| pebbling_number(g, *r, *k, PebblingOptions::default()).unwrap())
        });
    }
    group.finish();
}

fn single_queries(c: &mut Criterion) {
    let g = families::path(8);
    let solvable = Configuration::single(8, 7, 256);
    let unsolvable = Configuration::new(vec![0, 1, 1, 3, 1, 3, 7, 110]);
    c.bench_function("is_solvable P8 solvable", |b| {
        b.iter(|| is_solvable(&g, &solvable, 0, 2).unwrap())
    });
    c.bench_function("is_solvable P8 unsolvable", |b| {
        b.iter(|| is_solvable(&g, &unsolvable, 0, 2).unwrap())
    });
}

fn structural(c: &mut Criterion) {
    let g = families::triangle_path(4);
    c.bench_function("blockcut_bound triangle path", |b| {
        b.iter(|| blockcut_bound(&g, 0, 2, None).unwrap())
    });
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
    let cases: Vec<_> = (0..64)
        .map(|_| {
            let g = random_diameter_two(&mut rng, 8);
            let c = random_configuration(&mut rng, 8, conjectured_bound(8, 1), Some(0));
            (g, c)
        })
        .collect();
    c.bench_function("detect_cheap x64", |b| {
        b.iter(|| {
            for (g, c) in &cases {
                detect_cheap(g, c, 0).unwrap();
            }
        })
    });
}

criterion_group!(benches, exact_numbers, single_queries, structural);
criterion_main!(benches);
