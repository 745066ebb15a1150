//! Sequential against data-parallel execution of the heavier scans.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use novikov::affine::completed::{check_completed_lie_bialgebra, DEFAULT_PROBES};
use novikov::affine::laurent::check_laurent_jacobi;
use novikov::exec::{set_mode, Mode};
use novikov::sampling::{random_bialgebra_sample, random_novikov};
use novikov::search::{search, Limits, SearchSpec};
use novikov::{Class, Field};

fn modes(c: &mut Criterion) {
    let f5 = Field::prime(5).unwrap();
    let a = random_novikov(f5, 3, 7);
    let triples: Vec<[i64; 3]> = (-3..=3).flat_map(|i| (-3..=3).flat_map(move |j| (-3..=3).map(move |k| [i, j, k]))).collect();
    let (b, delta) = random_bialgebra_sample(f5, 4);
    let spec = SearchSpec {
        dim: 2,
        field: Field::prime(2).unwrap(),
        class: Class::Novikov,
        filters: Default::default(),
        sampling: None,
    };
    let mut group = c.benchmark_group("checkers");
    group.sample_size(10);
    for mode in [Mode::Sequential, Mode::Parallel] {
        let label = format!("{mode:?}");
        group.bench_with_input(BenchmarkId::new("laurent_jacobi", &label), &mode, |bench, m| {
            set_mode(*m);
            bench.iter(|| check_laurent_jacobi(&a, &triples));
        });
        group.bench_with_input(BenchmarkId::new("completed_bialgebra", &label), &mode, |bench, m| {
            set_mode(*m);
            bench.iter(|| check_completed_lie_bialgebra(&b, &delta, &DEFAULT_PROBES).unwrap());
        });
        group.bench_with_input(BenchmarkId::new("search_dim2_f2", &label), &mode, |bench, m| {
            set_mode(*m);
            bench.iter(|| search(&spec, &Limits::default()).unwrap());
        });
    }
    group.finish();
    set_mode(Mode::Parallel);
}

criterion_group!(benches, modes);
criterion_main!(benches);
