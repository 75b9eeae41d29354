//! The conformal algebra axioms as exact identities on given elements.

use std::collections::BTreeMap;

use ccybe_core::conformal::{act_on_tensor, lambda_bracket, ConfAlgebra, ConfElem, ConfTensor};
use ccybe_core::exactpoly::{syms, MPoly, Sym};

fn elem(map: BTreeMap<u8, MPoly>) -> ConfElem {
    let mut e = ConfElem::zero();
    for (k, v) in map {
        e.add_term(k, v);
    }
    e
}

fn map_subst(m: &BTreeMap<u8, MPoly>, s: Sym, v: &MPoly) -> BTreeMap<u8, MPoly> {
    m.iter()
        .map(|(k, p)| (*k, p.subst(s, v)))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

fn map_sub(a: &BTreeMap<u8, MPoly>, b: &BTreeMap<u8, MPoly>) -> BTreeMap<u8, MPoly> {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(*k).or_default() -= v;
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn map_scale(m: &BTreeMap<u8, MPoly>, f: &MPoly) -> BTreeMap<u8, MPoly> {
    m.iter()
        .map(|(k, p)| (*k, p * f))
        .filter(|(_, p)| !p.is_zero())
        .collect()
}

/// `[∂a_λ b] = -λ[a_λ b]` and `[a_λ ∂b] = (λ + ∂)[a_λ b]`.
pub fn sesquilinear(alg: &ConfAlgebra, a: &ConfElem, b: &ConfElem) -> bool {
    let (lam, d) = (syms::lam(), syms::d());
    let ab = lambda_bracket(alg, a, b, lam);
    let left = lambda_bracket(alg, &a.derive(), b, lam);
    let right = lambda_bracket(alg, a, &b.derive(), lam);
    let l = MPoly::var(lam);
    left == map_scale(&ab, &-&l) && right == map_scale(&ab, &(&l + &MPoly::var(d)))
}

/// `[b_λ a] = -[a_{-λ-∂} b]`.
pub fn anticommutative(alg: &ConfAlgebra, a: &ConfElem, b: &ConfElem) -> bool {
    let (lam, mu, d) = (syms::lam(), syms::mu(), syms::d());
    let ba = lambda_bracket(alg, b, a, lam);
    let ab = lambda_bracket(alg, a, b, mu);
    let flipped = map_subst(&ab, mu, &-&(&MPoly::var(lam) + &MPoly::var(d)));
    ba == map_scale(&flipped, &-MPoly::one())
}

/// `[a_λ [b_μ c]] - [b_μ [a_λ c]] = [[a_λ b]_{λ+μ} c]`.
pub fn jacobi(alg: &ConfAlgebra, a: &ConfElem, b: &ConfElem, c: &ConfElem) -> bool {
    let (lam, mu, nu) = (syms::lam(), syms::mu(), Sym::new("nu"));
    let bc = elem(lambda_bracket(alg, b, c, mu));
    let ac = elem(lambda_bracket(alg, a, c, lam));
    let ab = elem(lambda_bracket(alg, a, b, lam));
    let left = map_sub(&lambda_bracket(alg, a, &bc, lam), &lambda_bracket(alg, b, &ac, mu));
    let sum = &MPoly::var(lam) + &MPoly::var(mu);
    let right = map_subst(&lambda_bracket(alg, &ab, c, nu), nu, &sum);
    left == right
}

/// `a_λ (b_μ T) - b_μ (a_λ T) = [a_λ b]_{λ+μ} T`.
pub fn module_compatible(alg: &ConfAlgebra, a: &ConfElem, b: &ConfElem, t: &ConfTensor) -> bool {
    let (lam, mu, nu) = (syms::lam(), syms::mu(), Sym::new("nu"));
    let bt = act_on_tensor(alg, b, t, mu).unwrap();
    let at = act_on_tensor(alg, a, t, lam).unwrap();
    let left = act_on_tensor(alg, a, &bt, lam)
        .unwrap()
        .sub(&act_on_tensor(alg, b, &at, mu).unwrap())
        .unwrap();
    let ab = elem(lambda_bracket(alg, a, b, lam));
    let sum = &MPoly::var(lam) + &MPoly::var(mu);
    let right = act_on_tensor(alg, &ab, t, nu).unwrap().subst(nu, &sum);
    left == right
}
