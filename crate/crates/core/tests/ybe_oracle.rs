mod common;

use ccybe_core::conformal::{ConfAlgebra, ConfElem};
use ccybe_core::exactpoly::{int, MPoly, Sym};
use ccybe_core::families::{build_profile, lemma1_r0, FamilyCase, FamilySpec};
use ccybe_core::liealg::{cybe, weak_cybe_defect, LieAlg};
use ccybe_core::ybe::{ccybe_bracket, cocommutator, invariance_defect, is_strict_solution, weak_defect, RMat, E, F, H};
use common::*;

fn agree_at(engine: &ccybe_core::ConfTensor, oracle: impl Fn(&[ccybe_core::Rat]) -> Values, arity: usize, seed: u64) {
    let mut r = rng(seed);
    for _ in 0..6 {
        let pt: Vec<_> = (0..arity).map(|_| rand_point::<1>(&mut r)[0].clone()).collect();
        assert_eq!(eval_tensor(engine, &pt), oracle(&pt), "at {pt:?}");
    }
}

#[test]
fn bracket_matches_pointwise_expansion() {
    for (alg, seed) in [(ConfAlgebra::cur_sl2(), 1u64), (ConfAlgebra::vir(), 2)] {
        let kind = Kind::of(&alg);
        let mut r = rng(seed);
        for i in 0..8 {
            let rm = rand_rmat(&mut r, &alg, 2, 4);
            let rr = ccybe_bracket(&alg, &rm);
            agree_at(
                &rr,
                |pt| oracle_rr(kind, &rm, &[pt[0].clone(), pt[1].clone(), pt[2].clone()]),
                3,
                seed * 100 + i,
            );
        }
    }
}

#[test]
fn weak_defect_matches_pointwise_expansion() {
    for (alg, seed) in [(ConfAlgebra::cur_sl2(), 3u64), (ConfAlgebra::vir(), 4)] {
        let kind = Kind::of(&alg);
        let mut r = rng(seed);
        for i in 0..4 {
            let rm = rand_rmat(&mut r, &alg, 2, 3);
            for (a, t) in weak_defect(&alg, &rm) {
                agree_at(
                    &t,
                    |pt| oracle_weak(kind, a, &rm, &[pt[0].clone(), pt[1].clone(), pt[2].clone()]),
                    3,
                    seed * 100 + i,
                );
            }
        }
    }
}

#[test]
fn invariance_and_cocommutator_match_pointwise_expansion() {
    for (alg, seed) in [(ConfAlgebra::cur_sl2(), 5u64), (ConfAlgebra::vir(), 6)] {
        let kind = Kind::of(&alg);
        let mut r = rng(seed);
        for i in 0..6 {
            let rm = rand_rmat(&mut r, &alg, 3, 4);
            for (a, t) in invariance_defect(&alg, &rm) {
                agree_at(
                    &t,
                    |pt| oracle_invariance(kind, a, &rm, &[pt[0].clone(), pt[1].clone()]),
                    2,
                    seed * 100 + i,
                );
            }
            let elem = rand_elem(&mut r, &alg, 2);
            let t = cocommutator(&alg, &elem, &rm).unwrap();
            agree_at(
                &t,
                |pt| oracle_cocommutator(kind, &elem, &rm, &[pt[0].clone(), pt[1].clone()]),
                2,
                seed * 100 + i,
            );
        }
    }
}

#[test]
fn weak_defect_examples() {
    let alg = ConfAlgebra::cur_sl2();
    // Family (ii) with β = 2, ζ = 1, a_hh = 1, f = 1: weak holds, strict fails.
    let spec = FamilySpec::new(FamilyCase::Thm5Ii).param("beta", 2).param("zeta", 1);
    let r = build_profile(&spec).unwrap().lift();
    for (a, t) in weak_defect(&alg, &r) {
        assert!(t.is_zero());
        let mut g = rng(7);
        for _ in 0..4 {
            assert!(oracle_weak(Kind::Sl2, a, &r, &rand_point::<3>(&mut g)).is_empty());
        }
    }
    assert!(!is_strict_solution(&alg, &r).0);

    // e⊗e constant: every bracket in ⟦r, r⟧ is [e, e] = 0.
    let ee = RMat::zero().with(E, E, MPoly::one());
    assert!(ccybe_bracket(&alg, &ee).is_zero());
    assert!(weak_defect(&alg, &ee).iter().all(|(_, t)| t.is_zero()));
    assert!(oracle_rr(Kind::Sl2, &ee, &rand_point::<3>(&mut rng(8))).is_empty());
    // The cond-full violation shows up in the invariance defect instead.
    let inv = invariance_defect(&alg, &ee);
    assert!(inv.iter().any(|(_, t)| !t.is_zero()));
}

#[test]
fn strict_examples() {
    let alg = ConfAlgebra::cur_sl2();
    let cor6_i = FamilySpec::new(FamilyCase::Cor6I).param("alpha", 1);
    let r = build_profile(&cor6_i).unwrap().lift();
    assert!(is_strict_solution(&alg, &r).0);
    // Reduced bracket vanishes: ⟦r, r⟧ at d1 = -d2 - d3 is zero pointwise.
    let mut g = rng(9);
    for _ in 0..5 {
        let [_, b, c] = rand_point::<3>(&mut g);
        let a = -(&b + &c);
        assert!(oracle_rr(Kind::Sl2, &r, &[a, b, c]).is_empty());
    }
    let cor6_ii = FamilySpec::new(FamilyCase::Cor6Ii);
    assert!(is_strict_solution(&alg, &build_profile(&cor6_ii).unwrap().lift()).0);
    let hh = RMat::zero().with(H, H, p("d1^2 - d2"));
    assert!(ccybe_bracket(&alg, &hh).is_zero());
}

#[test]
fn cocommutator_examples() {
    let alg = ConfAlgebra::cur_sl2();
    let a = p("d1^2 + 3*d2 - 1");
    let h = ConfElem::generator(H);
    // The two slot contributions carry A(-d2, d2) and A(d1, -d1); they
    // cancel exactly when the diagonal of A is constant.
    let flat = p("d1 + d2 + 5");
    assert!(cocommutator(&alg, &h, &RMat::zero().with(E, F, flat))
        .unwrap()
        .is_zero());
    let d = cocommutator(&alg, &h, &RMat::zero().with(E, F, a.clone())).unwrap();
    let (d1, d2) = (MPoly::var(Sym::slot(1)), MPoly::var(Sym::slot(2)));
    let expected = &a
        .subst_many(&[(Sym::slot(1), -&d2), (Sym::slot(2), d2.clone())])
        .scale(&int(2))
        - &a.subst(Sym::slot(2), &-&d1).scale(&int(2));
    assert_eq!(d.project(&[E, F]), expected);
    assert_eq!(d.len(), 1);

    let hh = RMat::zero().with(H, H, a.clone());
    let d = cocommutator(&alg, &ConfElem::generator(E), &hh).unwrap();
    // e_λ acting on slot 1 gives [e, h] = -2e with d1 -> d1 + λ = -d2, and
    // on slot 2 gives -2e with d2 -> -d1.
    let slot1 = a.subst(Sym::slot(1), &-&d2).scale(&int(-2));
    let slot2 = a.subst(Sym::slot(2), &-&d1).scale(&int(-2));
    assert_eq!(d.project(&[E, H]), slot1);
    assert_eq!(d.project(&[H, E]), slot2);
    assert_eq!(d.len(), 2);
    assert!(cocommutator(&alg, &ConfElem::generator(E), &RMat::zero())
        .unwrap()
        .is_zero());
}

#[test]
fn classical_cybe_examples() {
    let g = LieAlg::sl2();
    let skew = RMat::zero().with(H, E, MPoly::one()).with(E, H, MPoly::int(-1));
    assert!(cybe(&g, &skew).unwrap().is_zero());
    assert!(cybe(&g, &RMat::zero()).unwrap().is_zero());
    assert!(cybe(&g, &RMat::zero().with(E, E, MPoly::one())).unwrap().is_zero());
    assert!(cybe(&g, &RMat::zero().with(E, F, p("d1"))).is_err());

    let r0 = lemma1_r0(&MPoly::one(), &MPoly::zero(), &MPoly::zero(), &MPoly::zero());
    assert!(weak_cybe_defect(&g, &r0).unwrap().iter().all(|(_, t)| t.is_zero()));
    let ef = RMat::zero().with(E, F, MPoly::one());
    assert!(weak_cybe_defect(&g, &ef).unwrap().iter().any(|(_, t)| !t.is_zero()));

    // The engine's classical specialization agrees with the textbook
    // expansion on random constant tensors.
    let mut r = rng(10);
    for _ in 0..20 {
        let mut m = RMat::zero();
        for (q, l) in [(E, E), (E, F), (F, E), (H, H), (E, H), (H, F)] {
            m.set(q, l, MPoly::constant(small_rat(&mut r)));
        }
        assert_eq!(eval_tensor(&cybe(&g, &m).unwrap(), &[]), textbook_cybe(&m));
    }
}
