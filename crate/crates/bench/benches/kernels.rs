use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyperim_core::lemma::sample_instance;
use polyperim_core::{construct_odd_extremal, lemma_move, optimal_bound, random_simple_polygon, Disk, GSegment, Geometry};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn bench_bound(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimal_bound");
    for g in Geometry::ALL {
        for n in [3usize, 11, 101] {
            group.bench_with_input(BenchmarkId::new(g.to_string(), n), &n, |b, &n| {
                b.iter(|| optimal_bound(g, black_box(0.7), n).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_segments(c: &mut Criterion) {
    let mut group = c.benchmark_group("segments_intersect");
    for g in Geometry::ALL {
        let p = |x: f64, y: f64| g.exp_origin(x, y);
        let s1 = GSegment::new(g, p(-0.3, -0.2), p(0.3, 0.25)).unwrap();
        let s2 = GSegment::new(g, p(-0.25, 0.3), p(0.2, -0.3)).unwrap();
        group.bench_function(g.to_string(), |b| b.iter(|| g.segments_intersect(black_box(&s1), black_box(&s2)).unwrap()));
    }
    group.finish();
}

fn bench_is_simple(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_simple");
    for g in Geometry::ALL {
        let disk = Disk::centered(g, 0.5).unwrap();
        for n in [9usize, 33] {
            let poly = random_simple_polygon(&disk, n, 1).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("{g} random"), n), &poly, |b, poly| {
                b.iter(|| poly.is_simple().unwrap())
            });
            let extremal = construct_odd_extremal(&disk, n, 1e-4).unwrap();
            group.bench_with_input(BenchmarkId::new(format!("{g} extremal"), n), &extremal, |b, poly| {
                b.iter(|| poly.is_simple().unwrap())
            });
        }
    }
    group.finish();
}

fn bench_lemma_move(c: &mut Criterion) {
    let mut group = c.benchmark_group("lemma_move");
    group.sample_size(20);
    for (g, r) in [(Geometry::Euclidean, 1.0), (Geometry::Hyperbolic, 1.0), (Geometry::Spherical, 0.5)] {
        let disk = Disk::centered(g, r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let instances: Vec<_> =
            (0..16).filter_map(|_| sample_instance(&disk, &mut rng, 100_000).unwrap().0).collect();
        group.bench_function(g.to_string(), |b| {
            b.iter(|| instances.iter().filter(|inst| lemma_move(inst).is_ok()).count())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_bound, bench_segments, bench_is_simple, bench_lemma_move);
criterion_main!(benches);
