//! Parallel vs sequential throughput of the sharded suites.
//!
//! The parallel backend needs the default `parallel` feature; without it the
//! parallel benches are skipped and only the sequential baselines run.

use criterion::{criterion_group, criterion_main, Criterion};

use ordlab_core::conelang;
use ordlab_core::harness::{verify_axioms, ExecMode, WordSampler};
use ordlab_core::presets;

fn axiom_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms-2000-trials");
    group.sample_size(10);
    for (name, order) in [
        ("m2-lex", presets::m2_lex_order()),
        ("nonconvex3", presets::nonconvex3()),
    ] {
        let sampler = WordSampler::new(order.rank());
        group.bench_function(format!("{name}/sequential"), |b| {
            b.iter(|| {
                let report =
                    verify_axioms(&order, &sampler, 2000, 7, ExecMode::Sequential).unwrap();
                assert!(report.passed());
                report.violations.len()
            })
        });
        #[cfg(feature = "parallel")]
        group.bench_function(format!("{name}/parallel"), |b| {
            b.iter(|| {
                let report =
                    verify_axioms(&order, &sampler, 2000, 7, ExecMode::Parallel).unwrap();
                assert!(report.passed());
                report.violations.len()
            })
        });
    }
    group.finish();
}

fn cone_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("cone-scan-maxlen-8");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let report = conelang::soundness_scan(8, ExecMode::Sequential).unwrap();
            assert!(report.violations.is_empty());
            report.accepted
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let report = conelang::soundness_scan(8, ExecMode::Parallel).unwrap();
            assert!(report.violations.is_empty());
            report.accepted
        })
    });
    group.finish();
}

criterion_group!(benches, axiom_suite, cone_scan);
criterion_main!(benches);
