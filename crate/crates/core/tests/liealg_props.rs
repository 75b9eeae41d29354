#![allow(clippy::needless_range_loop)]

mod common;

use ccybe_core::exactpoly::{int, MPoly};
use ccybe_core::families::{build_profile, characterize, lemma1_r0, FamilyCase, FamilySpec};
use ccybe_core::liealg::{cybe, weak_cybe_defect, AutMatrix, LieAlg, SymMat3};
use ccybe_core::ybe::{diagonal_of, RMat, E, F, H};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn rand_constant_rmat(r: &mut rand_chacha::ChaCha8Rng) -> RMat {
    let mut m = RMat::zero();
    for q in [E, F, H] {
        for l in [E, F, H] {
            if r.gen_bool(0.6) {
                m.set(q, l, MPoly::constant(small_rat(r)));
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn automorphisms_preserve_the_bracket(seed in any::<u64>()) {
        let phi = rand_phi(&mut rng(seed));
        prop_assert!(phi.preserves_bracket(&LieAlg::sl2()).unwrap());
    }

    #[test]
    fn cybe_is_covariant(seed in any::<u64>()) {
        let g = LieAlg::sl2();
        let mut r = rng(seed);
        let phi = rand_phi(&mut r);
        let m = rand_constant_rmat(&mut r);
        let lhs = cybe(&g, &m.map_basis(phi.rows())).unwrap();
        prop_assert_eq!(lhs, cybe(&g, &m).unwrap().map_basis(phi.rows()));
        prop_assert_eq!(eval_tensor(&cybe(&g, &m).unwrap(), &[]), textbook_cybe(&m));
    }

    #[test]
    fn congruence_matches_the_transformed_profile(seed in any::<u64>()) {
        // Build r = (v vᵀ)_ql x q⊗l, transform by Φ, and read the matrix back.
        let mut r = rng(seed);
        let phi = rand_phi(&mut r);
        let v: [_; 3] = std::array::from_fn(|_| small_rat(&mut r));
        let outer: [[_; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| &v[i] * &v[j]));
        let m = SymMat3::from_rat(outer.clone()).unwrap();
        let mut rm = RMat::zero();
        for q in 0..3 {
            for l in 0..3 {
                rm.set(q as u8, l as u8, &p("d1") * &MPoly::constant(outer[q][l].clone()));
            }
        }
        let moved = characterize(&diagonal_of(&rm.map_basis(phi.rows())));
        let got = moved.matrix.expect("odd and symmetric");
        prop_assert_eq!(&got, &m.congruence(&phi).unwrap());
        prop_assert!(got.rank_le_1().unwrap());
    }
}

#[test]
fn congruence_of_the_unit_matrix() {
    // Φ(a, 0, c, 1/a) E11 Φᵀ is the outer product of Φ's first column
    // (a², -c², -ac).
    let a = p("a");
    let c = p("c");
    let d = p("1/3");
    let phi = AutMatrix::phi(MPoly::int(3), MPoly::zero(), c.clone(), d).unwrap();
    let col = [MPoly::int(9), -&(&c * &c), c.scale(&int(-3))];
    let got = SymMat3::unit(0).congruence(&phi).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(got.get(i, j), &(&col[i] * &col[j]), "({i}, {j})");
        }
    }
    let sym = AutMatrix::phi(a.clone(), MPoly::zero(), c.clone(), p("d")).unwrap();
    let got = SymMat3::unit(0).congruence(&sym).unwrap();
    assert_eq!(got.get(0, 0), &a.pow(4));
    assert_eq!(got.get(0, 2), &(&a.pow(3) * &c).scale(&int(-1)));
}

#[test]
fn family_i_moves_to_family_ii() {
    // e⊗e x and Φ(1, 0, c, 1): the odd matrix picks up h⊗h weight c².
    let prof = build_profile(&FamilySpec::new(FamilyCase::Cor6I)).unwrap();
    let m = characterize(&prof).matrix.unwrap();
    let phi = AutMatrix::phi_int(1, 0, 2, 1).unwrap();
    let moved = m.congruence(&phi).unwrap();
    assert_eq!(moved.get(2, 2), &MPoly::int(4));
    assert!(moved.rank_le_1().unwrap());
    assert!(AutMatrix::phi_int(2, 1, 1, 2).is_err());
}

#[test]
fn lemma1_suite() {
    let g = LieAlg::sl2();
    let r0 = lemma1_r0(&p("s"), &p("u"), &p("v"), &p("w"));
    assert!(weak_cybe_defect(&g, &r0).unwrap().iter().all(|(_, t)| t.is_zero()));
    let skew = lemma1_r0(&MPoly::one(), &MPoly::zero(), &MPoly::zero(), &MPoly::zero());
    assert!(cybe(&g, &skew).unwrap().is_zero());
    let minus = lemma1_r0(&p("s"), &p("u"), &p("v"), &MPoly::zero());
    let c = cybe(&g, &minus).unwrap();
    for perm in [[1, 0, 2], [0, 2, 1], [2, 1, 0]] {
        assert_eq!(c.permute_slots(&perm), c.scale(&int(-1)), "{perm:?}");
    }
}
