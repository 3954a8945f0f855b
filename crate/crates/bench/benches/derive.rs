use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wcv_core::{derive_case, oracle_verify, CaseName};

fn derive(c: &mut Criterion) {
    let mut group = c.benchmark_group("derive");
    for name in CaseName::ALL {
        group.bench_with_input(BenchmarkId::from_parameter(name), &name, |b, &name| {
            b.iter(|| derive_case(name).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_100");
    group.sample_size(20);
    for name in CaseName::ALL {
        let report = derive_case(name).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &report, |b, r| {
            b.iter(|| oracle_verify(r, 100, 42).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, derive, oracle);
criterion_main!(benches);
