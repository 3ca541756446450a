use criterion::{black_box, criterion_group, criterion_main, Criterion};

use spinab::catalog::Catalog;
use spinab::codes;
use spinab::fingrp::DEFAULT_CAP;
use spinab::octonion;
use spinab::rootdata::RootSystem;
use spinab::CycloElt;

fn cyclo(c: &mut Criterion) {
    let a: CycloElt = "1/3*z - 3*z^2 + 1/2*z^6".parse().unwrap();
    let b = CycloElt::cos_pi8(3);
    c.bench_function("cyclo/mul", |t| t.iter(|| black_box(&a) * black_box(&b)));
    c.bench_function("cyclo/inv", |t| t.iter(|| black_box(&a).inv().unwrap()));
}

fn code_search(c: &mut Criterion) {
    let cat = Catalog::shipped();
    let f12 = cat.get("spin.F12").unwrap().code().unwrap();
    c.bench_function("codes/canonical_form F12", |t| t.iter(|| codes::canonical_form(black_box(&f12))));
    let mut g = c.benchmark_group("codes");
    g.sample_size(10);
    g.bench_function("enumerate n=12 all-ones", |t| t.iter(|| codes::enumerate(12, true).unwrap()));
    g.finish();
}

fn groups(c: &mut Criterion) {
    let cat = Catalog::shipped();
    let mut g = c.benchmark_group("groups");
    g.sample_size(10);
    let hs = cat.get("halfspin.F1").unwrap();
    g.bench_function("closure+profile halfspin.F1", |t| t.iter(|| hs.group(DEFAULT_CAP).unwrap().profile()));
    let f7 = cat.get("spin.F7").unwrap();
    g.bench_function("weyl bounds spin.F7", |t| t.iter(|| f7.weyl_bounds(DEFAULT_CAP).unwrap()));
    g.bench_function("fixed dim spin.K", |t| t.iter(|| cat.get("spin.K").unwrap().fixed_dim().unwrap()));
    g.finish();
}

fn lie(c: &mut Criterion) {
    c.bench_function("octonion/derivation_basis", |t| t.iter(octonion::derivation_basis));
    let f4: RootSystem = "F4".parse().unwrap();
    let d8: RootSystem = "D8".parse().unwrap();
    c.bench_function("rootdata/bds_closure F4", |t| t.iter(|| black_box(&f4).bds_closure()));
    let mut g = c.benchmark_group("rootdata");
    g.sample_size(10);
    g.bench_function("bds_closure D8", |t| t.iter(|| black_box(&d8).bds_closure()));
    g.finish();
}

criterion_group!(benches, cyclo, code_search, groups, lie);
criterion_main!(benches);
