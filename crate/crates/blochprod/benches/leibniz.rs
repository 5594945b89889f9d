use std::hint::black_box;

use blochprod::{check_leibniz, check_leibniz_sequential};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use models::curves::cycle_of_p1;
use models::random::{random_valid_complex, RandomParams};

fn leibniz(c: &mut Criterion) {
    let complexes = [
        ("cycle-8", cycle_of_p1(8).unwrap()),
        ("random-3", random_valid_complex(RandomParams::default(), 3)),
    ];
    let mut group = c.benchmark_group("leibniz");
    group.sample_size(20);
    for (name, cx) in &complexes {
        group.bench_with_input(BenchmarkId::new("parallel", name), cx, |b, cx| {
            b.iter(|| check_leibniz(black_box(cx), 200, 1).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", name), cx, |b, cx| {
            b.iter(|| check_leibniz_sequential(black_box(cx), 200, 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, leibniz);
criterion_main!(benches);
