use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stabsplit::constructions::{catalog_binary, catalog_ring, generator_from_parity, shp, slp};
use stabsplit::distance::{dressed_distance, DistanceQuery};
use stabsplit::gf2::BitVector;
use stabsplit::par::Execution;
use stabsplit::split::{best_combination, split_operators, SplitConfig};
use stabsplit::tableau::{build_css_tableau, center_of};

const STRATEGIES: [(&str, Execution); 2] = [
    ("serial", Execution::Serial),
    ("parallel", Execution::Parallel),
];

fn combinations(c: &mut Criterion) {
    let spec = shp(&generator_from_parity(&catalog_binary("H10_5").unwrap())).unwrap();
    let pool: Vec<BitVector> = spec.g_x.rows().to_vec();
    let target = spec
        .s_x
        .rows()
        .iter()
        .find(|r| !r.is_zero())
        .unwrap()
        .clone();
    let mut group = c.benchmark_group("best_combination");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "t=3"), &exec, |b, &exec| {
            b.iter(|| best_combination(&target, &pool, 3, exec))
        });
    }
    group.finish();
}

fn operator_search(c: &mut Criterion) {
    let spec = slp(
        &catalog_ring("A_27").unwrap(),
        &catalog_ring("GA_27").unwrap(),
    )
    .unwrap();
    let (seed, rows) = spec.gauge_fixed_seed().unwrap();
    let t = build_css_tableau(&seed).unwrap();
    let mut group = c.benchmark_group("split_operators");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let cfg = SplitConfig::new(6, rows.clone())
            .with_gauges_per_stab(3)
            .with_execution(exec);
        group.bench_with_input(BenchmarkId::new(name, "slp-27"), &cfg, |b, cfg| {
            b.iter(|| split_operators(&t, cfg).unwrap())
        });
    }
    group.finish();
}

fn distance(c: &mut Criterion) {
    let spec = shp(&generator_from_parity(&catalog_binary("H10_5").unwrap())).unwrap();
    let gauge = spec.gauge_group();
    let stabilizers = center_of(&gauge, spec.n);
    let mut group = c.benchmark_group("dressed_distance");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let q = DistanceQuery::new(stabilizers.clone(), gauge.clone(), 3)
            .with_force(true)
            .with_execution(exec);
        group.bench_with_input(BenchmarkId::new(name, "shp-100"), &q, |b, q| {
            b.iter(|| dressed_distance(q).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, combinations, operator_search, distance);
criterion_main!(benches);
