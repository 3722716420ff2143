use carrousel_core::pipeline::{run_pipeline, ProbeConfig, RunConfig};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    g.sample_size(20);
    for f in ["z^2 - x*y^2", "z^3 - x^2*y^3", "2*z^3 - 3*y*z^2 + 6*x*y^4"] {
        let cfg = RunConfig::new(f);
        g.bench_function(f, |b| b.iter(|| run_pipeline(black_box(&cfg)).unwrap()));
    }
    g.finish();
}

fn probe(c: &mut Criterion) {
    let mut cfg = RunConfig::new("z^3 - x*y^3");
    cfg.probe = Some(ProbeConfig::default());
    c.bench_function("probe z^3 - x*y^3", |b| b.iter(|| run_pipeline(black_box(&cfg)).unwrap()));
}

criterion_group!(benches, exact, probe);
criterion_main!(benches);
