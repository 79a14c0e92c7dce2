use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tuttex::complete::{cn_linear, cn_nonlinear, inversion_enumerator, zn_sequence, InvMode, ZnMode};
use tuttex::graphs::families::complete;
use tuttex::tutte::{connected_poly, z_subset};

fn sequences(c: &mut Criterion) {
    let mut g = c.benchmark_group("complete_graph_sequences");
    g.bench_function("cn_linear_10", |b| b.iter(|| cn_linear(black_box(10)).unwrap()));
    g.bench_function("cn_nonlinear_10", |b| b.iter(|| cn_nonlinear(black_box(10)).unwrap()));
    g.bench_function("zn_from_cn_10", |b| b.iter(|| zn_sequence(black_box(10), ZnMode::FromCn).unwrap()));
    g.bench_function("zn_direct_q_10", |b| b.iter(|| zn_sequence(black_box(10), ZnMode::DirectQ).unwrap()));
    g.finish();
}

fn recursion_vs_brute(c: &mut Criterion) {
    let mut g = c.benchmark_group("recursion_vs_brute");
    let k5 = complete(5);
    g.bench_function("connected_poly_k5_subsets", |b| b.iter(|| connected_poly(black_box(&k5)).unwrap()));
    g.bench_function("cn_linear_5", |b| b.iter(|| cn_linear(black_box(5)).unwrap()));
    g.bench_function("z_subset_k5", |b| b.iter(|| z_subset(black_box(&k5)).unwrap()));
    g.bench_function("inversions_recursion_7", |b| b.iter(|| inversion_enumerator(black_box(7), InvMode::Recursion).unwrap()));
    g.bench_function("inversions_pruefer_7", |b| b.iter(|| inversion_enumerator(black_box(7), InvMode::Brute).unwrap()));
    g.finish();
}

criterion_group!(benches, sequences, recursion_vs_brute);
criterion_main!(benches);
