use criterion::{criterion_group, criterion_main, Criterion};
use hyts::scenarios;
use hyts::stability;
use hyts::{ClassKInf, Distance, Ensemble, Slack};

fn checks(c: &mut Criterion) {
    let signals = scenarios::example1_continuous_ensemble(0, 20, 5.0, 1e-3).unwrap();
    let e = Ensemble::new(signals, Distance::Euclidean).unwrap();
    let beta = ClassKInf::identity();
    c.bench_function("check_ugs_20x5000", |b| b.iter(|| stability::check_ugs(&e, &beta, Slack::default())));
    c.bench_function("check_attractivity_20x5000", |b| {
        b.iter(|| stability::check_attractivity(&e, 0.1, 2.0, Slack::default()).unwrap())
    });
    c.bench_function("falsify_c1_20x5000", |b| b.iter(|| stability::falsify_c1(&e, 0.2, 1.0).unwrap()));
}

criterion_group!(benches, checks);
criterion_main!(benches);
