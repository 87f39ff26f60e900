//! Parallel against sequential execution on the heavier sweeps.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ordercone::atoms::is_discrete_with;
use ordercone::bands::{enumerate_bands_with, DEFAULT_BAND_CAP};
use ordercone::classify::classify_with;
use ordercone::fixtures::{pentagon, simplex};
use ordercone::selftest::{run, Options};
use ordercone::Execution;

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn bands(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_bands");
    for space in [pentagon(), simplex(8)] {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, space.name()), &space, |b, s| {
                b.iter(|| enumerate_bands_with(black_box(s), DEFAULT_BAND_CAP, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify");
    let s = pentagon();
    for (mode, exec) in MODES {
        g.bench_function(BenchmarkId::new(mode, s.name()), |b| b.iter(|| classify_with(black_box(&s), exec).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("is_discrete");
    let x = s.generators().iter().fold(ordercone::VectorQ::zeros(3), |acc, v| &acc + v);
    for (mode, exec) in MODES {
        g.bench_function(BenchmarkId::new(mode, s.name()), |b| {
            b.iter(|| is_discrete_with(black_box(&s), black_box(&x), exec).unwrap())
        });
    }
    g.finish();
}

fn oracle_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("dual_oracle_suite");
    g.sample_size(10);
    for (mode, exec) in MODES {
        let opts = Options {
            filter: Some("dual-oracle".into()),
            exec,
            ..Options::default()
        };
        g.bench_function(mode, |b| b.iter(|| run(black_box(&opts))));
    }
    g.finish();
}

criterion_group!(benches, bands, classification, oracle_sweep);
criterion_main!(benches);
