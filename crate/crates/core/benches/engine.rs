use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hquant::index::MultiIndex;
use hquant::par;
use hquant::quant::checks;
use hquant::suites::{self, SuiteConfig};
use hquant::{modular, QuantizationContext, Variant};

type Mapper = fn(&[MultiIndex], &(dyn Fn(&MultiIndex) -> bool + Sync)) -> Vec<bool>;

fn parallel(items: &[MultiIndex], f: &(dyn Fn(&MultiIndex) -> bool + Sync)) -> Vec<bool> {
    par::map(items, f)
}

fn sequential(items: &[MultiIndex], f: &(dyn Fn(&MultiIndex) -> bool + Sync)) -> Vec<bool> {
    par::map_sequential(items, f)
}

// a fresh context per run so the coproduct caches start cold
fn coassociativity(c: &mut Criterion) {
    let mut group = c.benchmark_group("coassociativity");
    group.sample_size(10);
    for (p, q) in [(3, 1), (5, 1)] {
        let gens = modular::basis_indices(1, p);
        let mappers: [(&str, Mapper); 2] = [("parallel", parallel), ("sequential", sequential)];
        for (name, map) in mappers {
            group.bench_with_input(BenchmarkId::new(name, format!("p={p}")), &gens, |b, gens| {
                b.iter(|| {
                    let qc = QuantizationContext::new(Variant::ModularUtqVertical { k: 1, p, q }, 1, 0).unwrap();
                    let ok = map(gens, &|a| checks::coassociativity(&qc, a).unwrap().is_none());
                    black_box(ok)
                })
            });
        }
    }
    group.finish();
}

fn suite_cells(c: &mut Criterion) {
    let mut group = c.benchmark_group("modular-reduction-suite");
    group.sample_size(10);
    let cfg = SuiteConfig::default();
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let cells = suites::modular_reduction(&cfg).unwrap();
            black_box(par::map(&cells, |c| c.run(false)))
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let cells = suites::modular_reduction(&cfg).unwrap();
            black_box(par::map_sequential(&cells, |c| c.run(false)))
        })
    });
    group.finish();
}

criterion_group!(benches, coassociativity, suite_cells);
criterion_main!(benches);
