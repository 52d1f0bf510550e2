//! One rayon worker against the full pool on the exhaustive searches.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use wapkit::amalgamation::{certify_not_cap, CertifyConfig};
use wapkit::classes::{hereditary_check, ClassId};
use wapkit::limits::{age_spot_check, generic_chain};

fn pools() -> Vec<(String, rayon::ThreadPool)> {
    let full = rayon::current_num_threads();
    [("1 thread".to_string(), 1), (format!("full pool ({full})"), full)]
        .into_iter()
        .map(|(name, n)| (name, ThreadPoolBuilder::new().num_threads(n).build().unwrap()))
        .collect()
}

fn bench(c: &mut Criterion) {
    let pools = pools();
    let mut group = c.benchmark_group("searches");
    group.sample_size(10);
    let chain = generic_chain(&ClassId::K5, 120, 30, 0).unwrap();
    for (name, pool) in &pools {
        group.bench_function(BenchmarkId::new("hereditary k5 n=4", name), |b| {
            b.iter(|| pool.install(|| hereditary_check(&ClassId::K5, 4).unwrap()))
        });
        group.bench_function(BenchmarkId::new("not cap g n=4", name), |b| {
            b.iter(|| pool.install(|| certify_not_cap(&ClassId::G, 4, &CertifyConfig::default()).unwrap()))
        });
        group.bench_function(BenchmarkId::new("age spot check k5 k=4", name), |b| {
            b.iter(|| pool.install(|| age_spot_check(&ClassId::K5, &chain.current, 4).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
