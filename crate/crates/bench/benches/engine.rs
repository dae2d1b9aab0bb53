use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use monolc::complexes::taylor_complex;
use monolc::engine::{ext_tables, ha_tables, hm_tables, tor_tables};
use monolc::lab::{check_injectivity_chain, phi_action, PowerEndomorphism};
use monolc::{MonomialIdeal, PolynomialRingSpec};

fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(PolynomialRingSpec::new(d, 0).unwrap(), gens).unwrap()
}

fn samples() -> Vec<(&'static str, MonomialIdeal)> {
    vec![
        ("triangle", ideal(3, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])),
        ("two-edges", ideal(4, &[&[1, 0, 1, 0], &[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 1, 0, 1]])),
        ("mixed", ideal(3, &[&[2, 1, 0], &[0, 2, 1], &[1, 0, 3]])),
    ]
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    for (name, a) in samples() {
        g.bench_with_input(BenchmarkId::new("taylor", name), &a, |b, a| {
            b.iter(|| taylor_complex(black_box(a)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("ext", name), &a, |b, a| b.iter(|| ext_tables(black_box(a)).unwrap()));
        g.bench_with_input(BenchmarkId::new("hm", name), &a, |b, a| b.iter(|| hm_tables(black_box(a)).unwrap()));
        g.bench_with_input(BenchmarkId::new("ha", name), &a, |b, a| b.iter(|| ha_tables(black_box(a)).unwrap()));
    }
    let primary = ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 2], &[1, 1, 1]]);
    let b = ideal(3, &[&[1, 1, 0], &[0, 0, 2]]);
    g.bench_function("tor/primary", |bench| bench.iter(|| tor_tables(black_box(&primary), black_box(&b)).unwrap()));
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(20);
    for (name, a) in samples() {
        let phi = PowerEndomorphism::uniform(a.ring(), 2).unwrap();
        g.bench_with_input(BenchmarkId::new("injectivity", name), &a, |b, a| {
            b.iter(|| check_injectivity_chain(black_box(a), &phi, 1, None).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("phi-action", name), &a, |b, a| {
            b.iter(|| phi_action(black_box(a), &phi, a.num_vars() - 1).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tables, checks);
criterion_main!(benches);
