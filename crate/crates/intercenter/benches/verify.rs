use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use intercenter::verify::{run_with_mode, ExecutionMode, VerifyConfig, VerifyScope};

fn verify_modes(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for scope in [VerifyScope::Tri, VerifyScope::Tet] {
        let config = VerifyConfig {
            cases: 200,
            scope,
            ..VerifyConfig::default()
        };
        for (label, mode) in [("sequential", ExecutionMode::Sequential), ("parallel", ExecutionMode::Parallel)] {
            group.bench_with_input(BenchmarkId::new(label, scope), &config, |b, cfg| {
                b.iter(|| black_box(run_with_mode(cfg, mode)))
            });
        }
    }
    group.finish();
}

fn single_instance(c: &mut Criterion) {
    let edges = intercenter::TetraEdges::new([1.0, 1.2, 0.9, 1.1, 1.3, 1.0]).unwrap();
    c.bench_function("tet_pair_table", |b| {
        b.iter(|| black_box(intercenter::tet_metrics::center_pair_table4(black_box(&edges)).unwrap()))
    });
    let sides = intercenter::TriangleSides::new(4.0, 5.0, 6.0).unwrap();
    c.bench_function("tri_pair_table", |b| {
        b.iter(|| black_box(intercenter::tri_metrics::center_pair_table(black_box(&sides))))
    });
}

criterion_group!(benches, verify_modes, single_instance);
criterion_main!(benches);
