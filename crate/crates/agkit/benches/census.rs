use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use agkit::enumerate::{census, enumerate_ag, CensusFilter};

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    for order in [3usize, 4] {
        group.bench_with_input(BenchmarkId::new("jobs-1", order), &order, |b, &order| {
            b.iter(|| census(order, 1, false).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("jobs-8", order), &order, |b, &order| {
            b.iter(|| census(order, 8, false).unwrap())
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate-order-4");
    group.sample_size(20);
    group.bench_function("jobs-1", |b| {
        b.iter(|| {
            let mut count = 0u64;
            enumerate_ag(4, &CensusFilter::all_pass(), 1, false, |_| count += 1).unwrap();
            count
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("jobs-8", |b| {
        b.iter(|| {
            let mut count = 0u64;
            enumerate_ag(4, &CensusFilter::all_pass(), 8, false, |_| count += 1).unwrap();
            count
        })
    });
    group.finish();
}

criterion_group!(benches, bench_census, bench_enumeration);
criterion_main!(benches);
