use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyts::{GeneralizedTimeScale, Segment, DEFAULT_TOL_T};
use std::hint::black_box;

fn scale(n: usize) -> GeneralizedTimeScale {
    let segs = (0..n).map(|k| Segment::closed(2.0 * k as f64, 2.0 * k as f64 + 1.0)).collect();
    GeneralizedTimeScale::from_segments(segs, DEFAULT_TOL_T).unwrap()
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("continuous_part");
    for n in [10, 1_000, 100_000] {
        let dom = scale(n);
        let probes: Vec<f64> = (0..256).map(|i| 2.0 * ((i * 7919) % n) as f64 + 0.5).collect();
        group.bench_with_input(BenchmarkId::from_parameter(n), &dom, |b, dom| {
            b.iter(|| probes.iter().map(|&t| dom.continuous_part(black_box(t)).unwrap()).sum::<f64>())
        });
    }
    group.finish();
}

fn sigma(c: &mut Criterion) {
    let dom = scale(10_000);
    c.bench_function("sigma_10k_segments", |b| b.iter(|| dom.sigma(black_box(9_999.0)).unwrap()));
}

criterion_group!(benches, decomposition, sigma);
criterion_main!(benches);
