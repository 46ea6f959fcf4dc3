use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hcsuper::cyclo::{center_check, semisimplicity_census};
use hcsuper::{Exec, Flavor, ParameterSet, Precision, Variant};

fn params(flavor: Flavor, qs: &[&str]) -> ParameterSet {
    ParameterSet::parse(Variant::Nondegenerate, flavor, "3/2", qs, Precision::default()).unwrap()
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, p, n) in [("s_m1_n4", params(Flavor::S, &["5"]), 4), ("zero_m2_n4", params(Flavor::Zero, &["5", "7"]), 4)] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), name), &p, |b, p| {
                b.iter(|| semisimplicity_census(black_box(p), n, true, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn center(c: &mut Criterion) {
    let mut group = c.benchmark_group("center");
    group.sample_size(10);
    let p = params(Flavor::Ss, &["5"]);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), "ss_m1_n3"), &p, |b, p| {
            b.iter(|| center_check(black_box(p), 3, 1e-25, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, census, center);
criterion_main!(benches);
