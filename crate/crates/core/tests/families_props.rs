mod common;

use ccybe_core::conformal::ConfAlgebra;
use ccybe_core::exactpoly::{syms, MPoly, Sym};
use ccybe_core::families::{
    build_profile, characterize, family_rmat, scalar_relations, vir_diagonal, vir_rmatrix, FamilyCase, FamilySpec,
};
use ccybe_core::ybe::{all_zero, invariance_defect, is_strict_solution, weak_defect, F, H};
use common::*;

/// `t^k + g_{k-1} t^{k-1} + ... + g_0` with formal lower coefficients.
fn formal_monic(k: u16) -> MPoly {
    let t = MPoly::var(syms::t());
    let mut f = t.pow(k as u32);
    for i in 0..k {
        f += &(&MPoly::var(Sym::new(&format!("g{i}"))) * &t.pow(i as u32));
    }
    f
}

fn formal_specs(f: &MPoly) -> Vec<FamilySpec> {
    vec![
        FamilySpec::new(FamilyCase::Thm5I)
            .param("alpha", p("s"))
            .param("beta", p("u"))
            .with_f(f.clone()),
        FamilySpec::new(FamilyCase::Thm5Ii)
            .param("lhh", p("s"))
            .param("beta", p("u"))
            .param("zeta", p("w"))
            .with_f(f.clone()),
        FamilySpec::new(FamilyCase::Thm5Iii)
            .param("alpha", p("s"))
            .param("beta", p("u"))
            .param("gamma", p("v"))
            .param("zeta", p("w"))
            .with_f(f.clone()),
        FamilySpec::new(FamilyCase::Cor6I)
            .param("alpha", p("s"))
            .with_f(f.clone()),
        FamilySpec::new(FamilyCase::Cor6Ii)
            .param("lhh", p("s"))
            .with_f(f.clone()),
        FamilySpec::new(FamilyCase::Cor6Iii)
            .param("alpha", p("s^2"))
            .param("beta", p("2*s*u"))
            .param("gamma", p("u^2"))
            .with_f(f.clone()),
    ]
}

#[test]
fn formal_families_are_certified() {
    let alg = ConfAlgebra::cur_sl2();
    for k in 0..=3 {
        let f = formal_monic(k);
        for spec in formal_specs(&f) {
            let r = family_rmat(&spec).unwrap();
            let name = spec.case.name();
            assert!(all_zero(&invariance_defect(&alg, &r)), "{name} deg {k}: invariance");
            assert!(all_zero(&weak_defect(&alg, &r)), "{name} deg {k}: weak");
            if spec.case.is_strict() {
                assert!(is_strict_solution(&alg, &r).0, "{name} deg {k}: strict");
            }
            let ch = characterize(&build_profile(&spec).unwrap());
            assert!(ch.odd && ch.sym && ch.constants_ok, "{name} deg {k}: {ch:?}");
        }
    }
}

#[test]
fn family_constraints_are_enforced() {
    let bad = [
        FamilySpec::new(FamilyCase::Thm5I).param("gamma", 1),
        FamilySpec::new(FamilyCase::Thm5I).param("beta", 2).param("zeta", 0),
        FamilySpec::new(FamilyCase::Thm5Ii).param("alpha", 1),
        FamilySpec::new(FamilyCase::Thm5Ii).param("lhh", 0),
        FamilySpec::new(FamilyCase::Cor6I).param("beta", 1),
        FamilySpec::new(FamilyCase::Cor6Iii)
            .param("alpha", 1)
            .param("beta", 1)
            .param("gamma", 1),
        FamilySpec::new(FamilyCase::Thm5I).with_f(p("2*t + 1")),
        FamilySpec::new(FamilyCase::Thm5I).with_f(p("x")),
        FamilySpec::new(FamilyCase::Thm5I).param("omega", 1),
        FamilySpec::vir(p("1")),
    ];
    for spec in bad {
        assert!(family_rmat(&spec).is_err(), "{spec:?}");
    }
    let ok = FamilySpec::new(FamilyCase::Cor6Iii)
        .param("alpha", 1)
        .param("beta", 2)
        .param("gamma", 1);
    assert!(family_rmat(&ok).is_ok());
}

#[test]
fn near_misses_fail() {
    let alg = ConfAlgebra::cur_sl2();
    // ζ ≠ β/2 in case (i) breaks the constants relation.
    let mut prof = build_profile(&FamilySpec::new(FamilyCase::Thm5I).param("beta", 2)).unwrap();
    prof.set(H, H, p("2"));
    assert!(!all_zero(&weak_defect(&alg, &prof.lift())) || !all_zero(&invariance_defect(&alg, &prof.lift())));
    // Two different f's on e⊗e and f⊗f.
    let mut prof = build_profile(&FamilySpec::new(FamilyCase::Thm5I).with_f(p("t + 1"))).unwrap();
    prof.set(F, F, p("x"));
    let ch = characterize(&prof);
    assert!(ch.shared_f.is_none());
    assert!(!all_zero(&weak_defect(&alg, &prof.lift())));
}

#[test]
fn family_profiles_satisfy_scalar_relations() {
    for spec in formal_specs(&formal_monic(2)) {
        let prof = build_profile(&spec).unwrap();
        for (name, v) in scalar_relations(&prof).unwrap() {
            assert!(v.is_zero(), "{} {name}: {v}", spec.case.name());
        }
    }
}

#[test]
fn family_spec_json_roundtrip() {
    let spec = FamilySpec::new(FamilyCase::Thm5Ii)
        .param("lhh", p("s"))
        .param("beta", 3)
        .with_f(p("t^2 + 1/2"));
    assert_eq!(FamilySpec::from_json(&spec.to_json()).unwrap(), spec);
    let (name, v) = FamilySpec::parse_param("alpha = 2*s - 1").unwrap();
    assert_eq!((name.as_str(), v), ("alpha", p("2*s - 1")));
    assert!(FamilySpec::parse_param("alpha").is_err());
    assert!(FamilySpec::parse_param("delta=1").is_err());
}

fn vir_passes(b: &MPoly) -> bool {
    let alg = ConfAlgebra::vir();
    let r = vir_rmatrix(b);
    all_zero(&invariance_defect(&alg, &r)) && all_zero(&weak_defect(&alg, &r))
}

#[test]
fn vir_solutions_are_exactly_the_vanishing_diagonals() {
    let (x, y) = (syms::x(), syms::y());
    let mut r = rng(11);
    let sum = &MPoly::var(x) + &MPoly::var(y);
    for i in 0..50 {
        let mut b = rand_poly(&mut r, &[x, y], 4, 5);
        if i % 2 == 0 {
            b = &sum * &rand_poly(&mut r, &[x, y], 3, 4);
        }
        assert_eq!(vir_passes(&b), vir_diagonal(&b).is_zero(), "B = {b}");
    }
    assert!(!vir_passes(&p("x")));
    assert!(!vir_passes(&p("x^3 - y^3")));
    assert!(vir_passes(&p("x^2 - y^2 + x + y")));
}
