//! Benchmarks comparing the feature-selected pipeline (parallel by default)
//! against an explicitly sequential per-item loop over the same work. Run
//! `cargo bench` for the default build and
//! `cargo bench --no-default-features` for the fully sequential one.

use criterion::{criterion_group, criterion_main, Criterion};
use flopbraid::arrangement::{build_arrangement, chambers};
use flopbraid::contraction::parse_spec;
use flopbraid::scan::{exhaustive_scan, run_target, scan_targets};
use flopbraid::tracking::explore;

fn bench_scan(c: &mut Criterion) {
    let mut g = c.benchmark_group("scan_rank6_white2");
    g.sample_size(10);
    g.bench_function("pipeline", |b| {
        b.iter(|| exhaustive_scan(6, 2).unwrap());
    });
    g.bench_function("sequential_items", |b| {
        let targets = scan_targets(6, 2);
        b.iter(|| {
            targets
                .iter()
                .map(|t| run_target(t).unwrap())
                .collect::<Vec<_>>()
        });
    });
    g.finish();
}

fn bench_chambers(c: &mut Criterion) {
    let d4_triple =
        build_arrangement(&parse_spec(r#"{"points":[{"type":"D4","white":[0,2,3]}]}"#).unwrap());
    c.bench_function("chambers/d4_triple", |b| {
        b.iter(|| chambers(&d4_triple).unwrap());
    });
}

fn bench_atlas(c: &mut Criterion) {
    let e6 = build_arrangement(&parse_spec(r#"{"points":[{"type":"E6","white":[0,2]}]}"#).unwrap());
    c.bench_function("atlas/e6_pair", |b| {
        b.iter(|| explore(&e6).unwrap());
    });
}

criterion_group!(benches, bench_scan, bench_chambers, bench_atlas);
criterion_main!(benches);
