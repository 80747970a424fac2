//! Sequential against data-parallel execution of the same sweeps. Rings are
//! rebuilt per iteration so cached lattices do not leak between runs.

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

use finring::par::{with_strategy, Strategy};
use finring::properties::{almost_clean_check, hermite_check, Matrix, SnfEngine};
use finring::ring::Elem;
use finring::{Ring, RingDescriptor};

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn ring(json: &str) -> Ring {
    RingDescriptor::from_json(json).unwrap().build().unwrap()
}

const PRODUCT: &str = r#"{"kind":"product","factors":[{"kind":"zmod","n":2},{"kind":"zmod","n":4},{"kind":"zmod","n":9}]}"#;
const TRIVIAL: &str = r#"{"kind":"trivial_extension","ring":{"kind":"zmod","n":6},"module":{"cyclic_summands":[[2],[3]]}}"#;

fn bench_checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("property checks");
    g.sample_size(10);
    for (name, strategy) in STRATEGIES {
        g.bench_with_input(BenchmarkId::new("hermite Z/2×Z/4×Z/9", name), &strategy, |b, &s| {
            b.iter_batched(|| ring(PRODUCT), |r| with_strategy(s, || hermite_check(&r).unwrap()), BatchSize::SmallInput)
        });
        g.bench_with_input(BenchmarkId::new("almost clean Z/6⋉(Z/2⊕Z/3)", name), &strategy, |b, &s| {
            b.iter_batched(|| ring(TRIVIAL), |r| with_strategy(s, || almost_clean_check(&r)), BatchSize::SmallInput)
        });
    }
    g.finish();
}

fn bench_snf(c: &mut Criterion) {
    let r = Ring::zmod(12).unwrap();
    let engine = SnfEngine::new(&r).unwrap();
    // Every 2×2 matrix over Z/12.
    let mats: Vec<Matrix> = (0..12u32.pow(4))
        .map(|i| Matrix::new(2, 2, (0..4).map(|k| Elem(i / 12u32.pow(k) % 12)).collect()))
        .collect();
    let mut g = c.benchmark_group("snf 2x2 over Z/12");
    g.sample_size(10);
    for (name, strategy) in STRATEGIES {
        g.bench_function(name, |b| {
            b.iter(|| {
                with_strategy(strategy, || finring::par::map(&mats, |m| engine.diagonalize(m).unwrap().d))
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_checks, bench_snf);
criterion_main!(benches);
