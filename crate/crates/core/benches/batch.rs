use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plumbook_core::batch;
use plumbook_core::{ConfigGraph, Pipeline};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_trees(n: usize, seed: u64) -> Vec<ConfigGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=8);
            let mut g = ConfigGraph::new();
            for i in 0..k {
                g = g.vertex(&format!("v{i}"), rng.gen_range(0..=2), rng.gen_range(-5..=5));
            }
            for i in 1..k {
                let p = rng.gen_range(0..i);
                g = g.edge(&format!("v{p}"), &format!("v{i}"));
            }
            g
        })
        .collect()
}

fn bench(c: &mut Criterion) {
    let graphs = random_trees(64, 7);
    let mut group = c.benchmark_group("boundary_h1_plumbing");
    group.bench_with_input(BenchmarkId::new("sequential", graphs.len()), &graphs, |b, gs| {
        b.iter(|| batch::map_sequential(gs, |g| batch::boundary_h1_of(g, Pipeline::Plumbing)))
    });
    #[cfg(feature = "parallel")]
    group.bench_with_input(BenchmarkId::new("parallel", graphs.len()), &graphs, |b, gs| {
        b.iter(|| batch::map_parallel(gs, |g| batch::boundary_h1_of(g, Pipeline::Plumbing)))
    });
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
