//! Lie conformal algebras over a free `C[∂]`-module with finite basis.
//!
//! Brackets are evaluated on generators via the closed-form rules of
//! `Cur(g)` and `Vir`, then extended by sesquilinearity. Tensor slots use the
//! symbols `d1..dN` for the copies of `∂`.

mod tensor;

use std::collections::BTreeMap;
use std::sync::Arc;

pub use tensor::ConfTensor;

use crate::error::Error;
use crate::exactpoly::{int, syms, MPoly, Sym};
use crate::liealg::LieAlg;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfAlgebra {
    Cur(Arc<LieAlg>),
    Vir,
}

impl ConfAlgebra {
    pub fn cur(g: LieAlg) -> Self {
        ConfAlgebra::Cur(Arc::new(g))
    }

    pub fn cur_sl2() -> Self {
        Self::cur(LieAlg::sl2())
    }

    pub fn vir() -> Self {
        ConfAlgebra::Vir
    }

    pub fn dim(&self) -> usize {
        match self {
            ConfAlgebra::Cur(g) => g.dim(),
            ConfAlgebra::Vir => 1,
        }
    }

    pub fn basis_names(&self) -> Vec<String> {
        match self {
            ConfAlgebra::Cur(g) => g.basis_names().to_vec(),
            ConfAlgebra::Vir => vec!["v".into()],
        }
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        match self {
            ConfAlgebra::Cur(g) => g.index_of(name),
            ConfAlgebra::Vir => (name == "v").then_some(0),
        }
    }

    pub fn name_of(&self, i: u8) -> String {
        self.basis_names()[i as usize].clone()
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> {
        0..self.dim() as u8
    }

    /// `[a_λ b]` on generators as `(c, P)` pairs, meaning `sum P(∂, λ) c`,
    /// with `∂` and `λ` replaced by the given polynomials.
    pub fn bracket_poly(&self, a: u8, b: u8, d: &MPoly, lam: &MPoly) -> Vec<(u8, MPoly)> {
        match self {
            ConfAlgebra::Cur(g) => g
                .bracket_basis(a, b)
                .iter()
                .map(|(k, c)| (*k, MPoly::constant(c.clone())))
                .collect(),
            ConfAlgebra::Vir => vec![(0, d + &lam.scale(&int(2)))],
        }
    }

    pub fn tuple_name(&self, tuple: &[u8]) -> String {
        tuple.iter().map(|&i| self.name_of(i)).collect::<Vec<_>>().join("⊗")
    }
}

/// `sum_i g_i(∂) b_i` with coefficients in the symbol `d`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConfElem {
    coeffs: BTreeMap<u8, MPoly>,
}

impl ConfElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(i: u8) -> Self {
        Self::term(i, MPoly::one())
    }

    pub fn term(i: u8, g: MPoly) -> Self {
        let mut e = Self::zero();
        e.add_term(i, g);
        e
    }

    pub fn add_term(&mut self, i: u8, g: MPoly) {
        let slot = self.coeffs.entry(i).or_default();
        *slot += &g;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn coeff(&self, i: u8) -> MPoly {
        self.coeffs.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &MPoly)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Applies `∂`.
    pub fn derive(&self) -> Self {
        let d = MPoly::var(syms::d());
        ConfElem {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * &d)).collect(),
        }
    }
}

/// `[a_λ b] = sum f(-λ) g(λ+∂) [a_i λ b_j]`, as a map from basis index to a
/// polynomial in `d` and `lam`.
pub fn lambda_bracket(alg: &ConfAlgebra, a: &ConfElem, b: &ConfElem, lam: Sym) -> BTreeMap<u8, MPoly> {
    let d = syms::d();
    let (dp, lp) = (MPoly::var(d), MPoly::var(lam));
    let neg_lam = -&lp;
    let shifted = &lp + &dp;
    let mut out: BTreeMap<u8, MPoly> = BTreeMap::new();
    for (i, f) in a.iter() {
        let f_neg = f.subst(d, &neg_lam);
        for (j, g) in b.iter() {
            let g_shift = g.subst(d, &shifted);
            let fg = &f_neg * &g_shift;
            for (k, p) in alg.bracket_poly(i, j, &dp, &lp) {
                *out.entry(k).or_default() += &(&fg * &p);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Action of generator `a` on a tensor with the action variable already
/// replaced by `value`: slot `i` gets `d_i -> d_i + value` and the bracket
/// polynomial `P(d_i, value)`.
pub fn act_with(alg: &ConfAlgebra, a: u8, t: &ConfTensor, value: &MPoly) -> ConfTensor {
    let n = t.arity();
    let slots: Vec<Sym> = (1..=n).map(Sym::slot).collect();
    let shifted: Vec<MPoly> = slots.iter().map(|s| &MPoly::var(*s) + value).collect();
    let mut out = ConfTensor::zero(n);
    for (tuple, coeff) in t.iter() {
        for i in 0..n {
            let terms = alg.bracket_poly(a, tuple[i], &MPoly::var(slots[i]), value);
            if terms.is_empty() {
                continue;
            }
            let moved = coeff.subst(slots[i], &shifted[i]);
            for (c, p) in terms {
                let mut nt = tuple.clone();
                nt[i] = c;
                out.add_term(nt, &moved * &p);
            }
        }
    }
    out
}

/// `a_var T` for an arbitrary element `a = sum g_k(∂) a_k`, using
/// `(g(∂) a)_μ = g(-μ) a_μ`.
pub fn act_on_tensor(alg: &ConfAlgebra, a: &ConfElem, t: &ConfTensor, var: Sym) -> Result<ConfTensor, Error> {
    let reserved = (1..=t.arity()).map(Sym::slot).chain([syms::d()]);
    if reserved.into_iter().any(|s| s == var) || t.symbols().contains(&var) {
        return Err(Error::SymbolCollision(var.name()));
    }
    let v = MPoly::var(var);
    let neg = -&v;
    let mut out = ConfTensor::zero(t.arity());
    for (k, g) in a.iter() {
        let gk = g.subst(syms::d(), &neg);
        let part = act_with(alg, k, t, &v).map_coeffs(|p| p * &gk);
        out = out.add(&part)?;
    }
    Ok(out)
}

/// `τ(A(d1, d2) q⊗l) = A(d2, d1) l⊗q`.
pub fn tau(t: &ConfTensor) -> Result<ConfTensor, Error> {
    t.check_arity(2)?;
    Ok(t.permute_slots(&[1, 0]))
}

/// Reduction modulo the total derivative. Without `extra`, eliminates
/// `d1 := -(d2 + ... + dN)`; with `extra = s`, substitutes
/// `s := -(d1 + ... + dN)` instead.
pub fn reduce_mod_total(t: &ConfTensor, extra: Option<Sym>) -> ConfTensor {
    let n = t.arity();
    match extra {
        None => {
            let rest: MPoly = (2..=n).map(|i| -MPoly::var(Sym::slot(i))).sum();
            t.subst(Sym::slot(1), &rest)
        }
        Some(s) => {
            let total: MPoly = (1..=n).map(|i| -MPoly::var(Sym::slot(i))).sum();
            t.subst(s, &total)
        }
    }
}

pub fn project(t: &ConfTensor, tuple: &[u8]) -> Result<MPoly, Error> {
    if tuple.len() != t.arity() {
        return Err(Error::Arity {
            expected: t.arity(),
            found: tuple.len(),
        });
    }
    Ok(t.project(tuple))
}
