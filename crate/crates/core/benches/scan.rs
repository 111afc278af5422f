//! Sequential against rayon on the three scan-shaped workloads.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclotome_core::heights::{self, ScanFilters};
use cyclotome_core::par::Jobs;
use cyclotome_core::verify::{self, Suite};

const MODES: [(&str, Jobs); 2] = [("sequential", Jobs::SEQUENTIAL), ("rayon", Jobs(None))];

fn heights_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("heights_scan");
    group.sample_size(10);
    let filters = ScanFilters { odd: true, squarefree: true, ..Default::default() };
    for (name, jobs) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "1..=20000"), &jobs, |b, &jobs| {
            b.iter(|| black_box(heights::scan(1..=20_000, &filters, jobs)))
        });
    }
    group.finish();
}

fn divisor_heights(c: &mut Criterion) {
    let mut group = c.benchmark_group("b_scan");
    group.sample_size(10);
    let filters = ScanFilters { squarefree: true, omega: vec![3], with_b: true, ..Default::default() };
    for (name, jobs) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "omega3..=1500"), &jobs, |b, &jobs| {
            b.iter(|| black_box(heights::scan(1..=1500, &filters, jobs)))
        });
    }
    group.finish();
}

fn decomposition_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_decomposition");
    group.sample_size(10);
    for (name, jobs) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "max=20000"), &jobs, |b, &jobs| {
            b.iter(|| black_box(verify::run(Suite::Decomposition, 20_000, jobs)))
        });
    }
    group.finish();
}

criterion_group!(benches, heights_scan, divisor_heights, decomposition_suite);
criterion_main!(benches);
