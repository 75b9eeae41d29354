#![allow(dead_code)]

pub mod laws;

use std::collections::BTreeMap;

use ccybe_core::conformal::{ConfAlgebra, ConfElem, ConfTensor};
use ccybe_core::exactpoly::{int, parse_poly, rat, syms, MPoly, Monomial, Rat, Registry, Sym};
use ccybe_core::liealg::AutMatrix;
use ccybe_core::ybe::RMat;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(text: &str) -> MPoly {
    parse_poly(text, &Registry::auto()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    if r.gen_bool(0.2) {
        rat(r.gen_range(-3..=3), r.gen_range(1..=3))
    } else {
        int(r.gen_range(-3..=3))
    }
}

/// Random polynomial in `vars` with total degree at most `deg`.
pub fn rand_poly(r: &mut ChaCha8Rng, vars: &[Sym], deg: u16, terms: usize) -> MPoly {
    let mut out = MPoly::zero();
    for _ in 0..terms {
        let mut left = r.gen_range(0..=deg);
        let mut pairs = Vec::new();
        for &v in vars {
            if left == 0 {
                break;
            }
            let e = r.gen_range(0..=left);
            if e > 0 {
                pairs.push((v, e));
            }
            left -= e;
        }
        out += &MPoly::term(Monomial::from_pairs(pairs), small_rat(r));
    }
    out
}

pub fn rand_elem(r: &mut ChaCha8Rng, alg: &ConfAlgebra, deg: u16) -> ConfElem {
    let mut e = ConfElem::zero();
    for i in alg.generators() {
        if r.gen_bool(0.7) {
            e.add_term(i, rand_poly(r, &[syms::d()], deg, 3));
        }
    }
    e
}

pub fn rand_tensor(r: &mut ChaCha8Rng, alg: &ConfAlgebra, arity: usize, deg: u16, terms: usize) -> ConfTensor {
    let slots: Vec<Sym> = (1..=arity).map(Sym::slot).collect();
    let mut t = ConfTensor::zero(arity);
    for _ in 0..terms {
        let tuple: Vec<u8> = (0..arity).map(|_| r.gen_range(0..alg.dim() as u8)).collect();
        t.add_term(tuple, rand_poly(r, &slots, deg, 3));
    }
    t
}

pub fn rand_rmat(r: &mut ChaCha8Rng, alg: &ConfAlgebra, deg: u16, terms: usize) -> RMat {
    RMat::from_tensor(rand_tensor(r, alg, 2, deg, terms)).unwrap()
}

/// Structure constants written out by hand: sl2 with e, f, h = 0, 1, 2.
fn sl2_bracket(a: u8, b: u8) -> Option<(u8, i64)> {
    match (a, b) {
        (0, 1) => Some((2, 1)),
        (1, 0) => Some((2, -1)),
        (2, 0) => Some((0, 2)),
        (0, 2) => Some((0, -2)),
        (2, 1) => Some((1, -2)),
        (1, 2) => Some((1, 2)),
        _ => None,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Sl2,
    Vir,
}

impl Kind {
    pub fn of(alg: &ConfAlgebra) -> Kind {
        if alg.dim() == 1 {
            Kind::Vir
        } else {
            Kind::Sl2
        }
    }

    /// `[a_λ b] = P(∂, λ) c` at numeric `∂`, `λ`.
    pub fn bracket(self, a: u8, b: u8, d: &Rat, lam: &Rat) -> Option<(u8, Rat)> {
        match self {
            Kind::Sl2 => sl2_bracket(a, b).map(|(c, k)| (c, int(k))),
            Kind::Vir => Some((0, d + lam * int(2))),
        }
    }
}

pub type Values = BTreeMap<Vec<u8>, Rat>;

fn add(out: &mut Values, key: Vec<u8>, v: Rat) {
    if v.is_zero() {
        return;
    }
    let e = out.entry(key.clone()).or_insert_with(Rat::zero);
    *e += v;
    if e.is_zero() {
        out.remove(&key);
    }
}

fn ev2(a: &MPoly, x: &Rat, y: &Rat) -> Rat {
    a.eval_rat(&[(Sym::slot(1), x.clone()), (Sym::slot(2), y.clone())])
        .expect("numeric coefficient")
}

/// Numeric value of a tensor at a point of the slot variables.
pub fn eval_tensor(t: &ConfTensor, point: &[Rat]) -> Values {
    let subs: Vec<(Sym, Rat)> = point
        .iter()
        .enumerate()
        .map(|(i, v)| (Sym::slot(i + 1), v.clone()))
        .collect();
    let mut out = Values::new();
    for (tuple, c) in t.iter() {
        add(&mut out, tuple.clone(), c.eval_rat(&subs).expect("numeric tensor"));
    }
    out
}

/// `⟦r, r⟧` at `(d1, d2, d3) = point`, summed term by term.
pub fn oracle_rr(kind: Kind, r: &RMat, pt: &[Rat; 3]) -> Values {
    let [d1, d2, d3] = pt;
    let mut out = Values::new();
    let entries: Vec<(u8, u8, MPoly)> = r.entries().map(|(q, l, a)| (q, l, a.clone())).collect();
    for (q, l, a) in &entries {
        for (q2, l2, b) in &entries {
            if let Some((c, k)) = kind.bracket(*q, *q2, d1, d2) {
                let v = ev2(a, &-d2.clone(), d2) * ev2(b, &(d1 + d2), d3) * k;
                add(&mut out, vec![c, *l, *l2], v);
            }
            if let Some((c, k)) = kind.bracket(*q2, *l, d2, d3) {
                let v = ev2(a, d1, &(d2 + d3)) * ev2(b, &-d3.clone(), d3) * k;
                add(&mut out, vec![*q, c, *l2], -v);
            }
            if let Some((c, k)) = kind.bracket(*l2, *l, d3, d2) {
                let v = ev2(a, d1, &(d2 + d3)) * ev2(b, d2, &-d2.clone()) * k;
                add(&mut out, vec![*q, *q2, c], -v);
            }
        }
    }
    out
}

/// `a_μ F` at a point, where `F` is given pointwise: slot `i` is shifted by
/// `μ` and the acted generator is replaced by the bracket.
pub fn oracle_act(kind: Kind, a: u8, f: &dyn Fn(&[Rat]) -> Values, pt: &[Rat], mu: &Rat) -> Values {
    let mut out = Values::new();
    for i in 0..pt.len() {
        let mut shifted = pt.to_vec();
        shifted[i] += mu;
        let inner = f(&shifted);
        for (tuple, v) in inner {
            if let Some((c, k)) = kind.bracket(a, tuple[i], &pt[i], mu) {
                let mut nt = tuple.clone();
                nt[i] = c;
                add(&mut out, nt, v * k);
            }
        }
    }
    out
}

/// `a_μ ⟦r, r⟧` at `μ = -(d1 + d2 + d3)`.
pub fn oracle_weak(kind: Kind, a: u8, r: &RMat, pt: &[Rat; 3]) -> Values {
    let mu = -(&pt[0] + &pt[1] + &pt[2]);
    let f = |q: &[Rat]| oracle_rr(kind, r, &[q[0].clone(), q[1].clone(), q[2].clone()]);
    oracle_act(kind, a, &f, pt, &mu)
}

/// `r + τ r` at a point.
pub fn oracle_sym(r: &RMat, pt: &[Rat]) -> Values {
    let mut out = Values::new();
    for (q, l, a) in r.entries() {
        add(&mut out, vec![q, l], ev2(a, &pt[0], &pt[1]));
        add(&mut out, vec![l, q], ev2(a, &pt[1], &pt[0]));
    }
    out
}

/// `a_λ (r + τ r)` at `λ = -(d1 + d2)`.
pub fn oracle_invariance(kind: Kind, a: u8, r: &RMat, pt: &[Rat; 2]) -> Values {
    let lam = -(&pt[0] + &pt[1]);
    let f = |q: &[Rat]| oracle_sym(r, q);
    oracle_act(kind, a, &f, pt, &lam)
}

/// `(sum g_k(∂) a_k)_λ r` at `λ = -(d1 + d2)`, using `(g(∂)a)_λ = g(-λ) a_λ`.
pub fn oracle_cocommutator(kind: Kind, elem: &ConfElem, r: &RMat, pt: &[Rat; 2]) -> Values {
    let lam = -(&pt[0] + &pt[1]);
    let f = |q: &[Rat]| {
        let mut out = Values::new();
        for (a, b, c) in r.entries() {
            add(&mut out, vec![a, b], ev2(c, &q[0], &q[1]));
        }
        out
    };
    let mut out = Values::new();
    for (k, g) in elem.iter() {
        let gk = g.eval_rat(&[(syms::d(), -lam.clone())]).unwrap();
        for (t, v) in oracle_act(kind, k, &f, pt, &lam) {
            add(&mut out, t, v * &gk);
        }
    }
    out
}

/// Textbook `[r12, r13] + [r12, r23] + [r13, r23]` for a constant sl2 tensor.
pub fn textbook_cybe(r: &RMat) -> Values {
    let mut out = Values::new();
    let entries: Vec<(u8, u8, Rat)> = r.entries().map(|(q, l, a)| (q, l, a.as_constant().unwrap())).collect();
    for (i, j, x) in &entries {
        for (k, l, y) in &entries {
            let xy = x * y;
            if let Some((c, s)) = sl2_bracket(*i, *k) {
                add(&mut out, vec![c, *j, *l], &xy * int(s));
            }
            if let Some((c, s)) = sl2_bracket(*j, *k) {
                add(&mut out, vec![*i, c, *l], &xy * int(s));
            }
            if let Some((c, s)) = sl2_bracket(*j, *l) {
                add(&mut out, vec![*i, *k, c], &xy * int(s));
            }
        }
    }
    out
}

pub fn rand_point<const N: usize>(r: &mut ChaCha8Rng) -> [Rat; N] {
    std::array::from_fn(|_| rat(r.gen_range(-40..=40), r.gen_range(1..=7)))
}

/// A random integer sl2 automorphism `Φ(a, b, c, d)` with `ad - bc = 1`.
pub fn rand_phi(r: &mut ChaCha8Rng) -> AutMatrix {
    loop {
        let (a, b, c) = (r.gen_range(-3i64..=3), r.gen_range(-3i64..=3), r.gen_range(-3i64..=3));
        if a != 0 && (1 + b * c) % a == 0 {
            return AutMatrix::phi_int(a, b, c, (1 + b * c) / a).unwrap();
        }
    }
}

/// `sum_b Φ[b][a] T_b`: the defect of the element `φ(a)` from per-generator
/// defects.
pub fn combine(phi: &AutMatrix, defects: &[(u8, ConfTensor)], a: usize) -> ConfTensor {
    let mut out = ConfTensor::zero(defects[0].1.arity());
    for (b, t) in defects {
        out = out.add(&t.map_coeffs(|c| c * phi.entry(*b as usize, a))).unwrap();
    }
    out
}
