use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quadmap::boundary::boundary_permutations;
use quadmap::corpus::connected_graphs;
use quadmap::random::RotationSpace;
use quadmap::{boundary, build_map, genus_distribution, sample_genus, SignedGraph, SignedRotationSystem};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

fn complete(n: usize) -> SignedGraph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    SignedGraph::from_pairs(n, &pairs).unwrap()
}

fn random_rotation(g: &SignedGraph, seed: u64) -> SignedRotationSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot = Vec::new();
    RotationSpace::new(g).sample(&mut rng, &mut rot);
    SignedRotationSystem::with_graph_signature(g, rot).unwrap()
}

fn faces(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_faces");
    for n in [5, 8, 12] {
        let g = complete(n);
        let srs = random_rotation(&g, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| build_map(black_box(&srs), &g).unwrap().trace_faces().unwrap().face_count)
        });
    }
    group.finish();
}

fn boundaries(c: &mut Criterion) {
    let g = complete(8);
    let srs = random_rotation(&g, 2);
    let map = build_map(&srs, &g).unwrap();
    let b = boundary(&g, &[0]).unwrap();
    c.bench_function("boundary_permutations_k8_vertex", |bench| {
        bench.iter(|| boundary_permutations(black_box(&map), &b).unwrap().ext.cycle_count())
    });
}

fn distributions(c: &mut Criterion) {
    let k5 = complete(5);
    c.bench_function("genus_distribution_k5", |b| b.iter(|| genus_distribution(black_box(&k5), 10_000).unwrap()));
    let k6 = complete(6);
    c.bench_function("sample_genus_k6_4096", |b| b.iter(|| sample_genus(black_box(&k6), 4096, 3).unwrap()));
    c.bench_function("corpus_5_6", |b| b.iter(|| connected_graphs(black_box(5), 6).len()));
}

criterion_group!(benches, faces, boundaries, distributions);
criterion_main!(benches);
