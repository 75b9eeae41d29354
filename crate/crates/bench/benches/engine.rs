use std::hint::black_box;

use ccybe_core::exactpoly::int;
use ccybe_core::families::{family_rmat, FamilyCase, FamilySpec};
use ccybe_core::search::{run_search, Ansatz, SearchConfig, SearchMode};
use ccybe_core::ybe::{ccybe_bracket, check_catalog, generic_profile, weak_defect, EquationCatalog};
use ccybe_core::{ConfAlgebra, MPoly};
use criterion::{criterion_group, criterion_main, Criterion};

fn bracket(c: &mut Criterion) {
    let alg = ConfAlgebra::cur_sl2();
    let generic = generic_profile(1).lift();
    c.bench_function("ccybe_bracket generic deg 1", |b| {
        b.iter(|| ccybe_bracket(&alg, black_box(&generic)))
    });

    let t = MPoly::var(ccybe_core::exactpoly::syms::t());
    let spec = FamilySpec::new(FamilyCase::Thm5I)
        .param("alpha", 1)
        .with_f(&t.pow(3) + &MPoly::one());
    let r = family_rmat(&spec).unwrap();
    c.bench_function("weak_defect thm5_i deg 7", |b| {
        b.iter(|| weak_defect(&alg, black_box(&r)))
    });
}

fn catalog(c: &mut Criterion) {
    let cat = EquationCatalog::stock();
    c.bench_function("catalog re-derivation", |b| b.iter(|| check_catalog(black_box(&cat))));
}

fn search(c: &mut Criterion) {
    let grid = vec![int(-1), int(0), int(1)];
    let cfg = SearchConfig::new(1, Ansatz::Odd, grid.clone(), grid, SearchMode::Weak);
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("weak odd deg 1 grid -1..1", |b| {
        b.iter(|| run_search(black_box(&cfg)).unwrap())
    });
    group.bench_function("same, 4 workers", |b| {
        let cfg = cfg.clone().with_workers(4);
        b.iter(|| run_search(black_box(&cfg)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bracket, catalog, search);
criterion_main!(benches);
