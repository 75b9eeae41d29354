use crate::conformal::{act_on_tensor, act_with, reduce_mod_total, tau, ConfAlgebra, ConfElem, ConfTensor};
use crate::error::Error;
use crate::exactpoly::{syms, MPoly, Sym};

/// `r = sum A_ql(d1, d2) q⊗l`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RMat {
    t: ConfTensor,
}

impl RMat {
    pub fn zero() -> Self {
        RMat { t: ConfTensor::zero(2) }
    }

    pub fn from_tensor(t: ConfTensor) -> Result<Self, Error> {
        t.check_arity(2)?;
        Ok(RMat { t })
    }

    pub fn set(&mut self, q: u8, l: u8, a: MPoly) {
        let old = self.t.project(&[q, l]);
        self.t.add_term(vec![q, l], &a - &old);
    }

    pub fn with(mut self, q: u8, l: u8, a: MPoly) -> Self {
        self.set(q, l, a);
        self
    }

    pub fn get(&self, q: u8, l: u8) -> MPoly {
        self.t.project(&[q, l])
    }

    pub fn tensor(&self) -> &ConfTensor {
        &self.t
    }

    pub fn entries(&self) -> impl Iterator<Item = (u8, u8, &MPoly)> {
        self.t.iter().map(|(k, v)| (k[0], k[1], v))
    }

    pub fn is_constant(&self) -> bool {
        let (d1, d2) = (Sym::slot(1), Sym::slot(2));
        self.t.iter().all(|(_, v)| !v.contains(d1) && !v.contains(d2))
    }

    /// `(φ⊗φ) r`.
    pub fn map_basis(&self, m: &[Vec<MPoly>]) -> RMat {
        RMat { t: self.t.map_basis(m) }
    }

    /// `r + τ(r)`.
    pub fn symmetrized(&self) -> ConfTensor {
        self.t.add(&tau(&self.t).expect("arity 2")).expect("arity 2")
    }
}

struct Evaluated {
    q: u8,
    l: u8,
    /// `A(-d2, d2)`
    u: MPoly,
    /// `A(d1, d2 + d3)`
    w: MPoly,
    /// `A(d1 + d2, d3)`
    v1: MPoly,
    /// `A(-d3, d3)`
    v2: MPoly,
    /// `A(d2, -d2)`
    v3: MPoly,
}

fn eval2(a: &MPoly, x: MPoly, y: MPoly) -> MPoly {
    a.subst_many(&[(Sym::slot(1), x), (Sym::slot(2), y)])
}

/// `⟦r, r⟧` before reduction modulo the total derivative:
///
/// ```text
/// sum  A_ql(-d2, d2) A_q'l'(d1+d2, d3) P_qq'(d1, d2)   [q,q']⊗l⊗l'
///    - A_ql(d1, d2+d3) A_q'l'(-d3, d3) P_q'l(d2, d3)   q⊗[q',l]⊗l'
///    - A_ql(d1, d2+d3) A_q'l'(d2, -d2)  P_l'l(d3, d2)   q⊗q'⊗[l',l]
/// ```
pub fn ccybe_bracket(alg: &ConfAlgebra, r: &RMat) -> ConfTensor {
    let (d1, d2, d3) = (
        MPoly::var(Sym::slot(1)),
        MPoly::var(Sym::slot(2)),
        MPoly::var(Sym::slot(3)),
    );
    let ev: Vec<Evaluated> = r
        .entries()
        .map(|(q, l, a)| Evaluated {
            q,
            l,
            u: eval2(a, -&d2, d2.clone()),
            w: eval2(a, d1.clone(), &d2 + &d3),
            v1: eval2(a, &d1 + &d2, d3.clone()),
            v2: eval2(a, -&d3, d3.clone()),
            v3: eval2(a, d2.clone(), -&d2),
        })
        .collect();
    let mut out = ConfTensor::zero(3);
    for x in &ev {
        for y in &ev {
            for (c, p) in alg.bracket_poly(x.q, y.q, &d1, &d2) {
                out.add_term(vec![c, x.l, y.l], &(&x.u * &y.v1) * &p);
            }
            for (c, p) in alg.bracket_poly(y.q, x.l, &d2, &d3) {
                out.add_term(vec![x.q, c, y.l], -(&(&x.w * &y.v2) * &p));
            }
            for (c, p) in alg.bracket_poly(y.l, x.l, &d3, &d2) {
                out.add_term(vec![x.q, y.q, c], -(&(&x.w * &y.v3) * &p));
            }
        }
    }
    out
}

/// `⟦r, r⟧` reduced with `d1 := -d2 - d3`.
pub fn reduced_bracket(alg: &ConfAlgebra, r: &RMat) -> ConfTensor {
    reduce_mod_total(&ccybe_bracket(alg, r), None)
}

/// Returns whether `⟦r, r⟧ ≡ 0` modulo the total derivative, together with
/// the reduced residue.
pub fn is_strict_solution(alg: &ConfAlgebra, r: &RMat) -> (bool, ConfTensor) {
    let res = reduced_bracket(alg, r);
    (res.is_zero(), res)
}

fn minus_total(n: usize) -> MPoly {
    (1..=n).map(|i| -MPoly::var(Sym::slot(i))).sum()
}

/// `a_μ ⟦r, r⟧` at `μ = -(d1 + d2 + d3)` for every generator `a`.
pub fn weak_defect(alg: &ConfAlgebra, r: &RMat) -> Vec<(u8, ConfTensor)> {
    let rr = ccybe_bracket(alg, r);
    weak_defect_of(alg, &rr)
}

/// As [`weak_defect`], starting from an already computed `⟦r, r⟧`.
pub fn weak_defect_of(alg: &ConfAlgebra, rr: &ConfTensor) -> Vec<(u8, ConfTensor)> {
    let mu = minus_total(3);
    alg.generators().map(|a| (a, act_with(alg, a, rr, &mu))).collect()
}

/// `a_λ (r + τ r)` at `λ = -(d1 + d2)` for every generator `a`.
pub fn invariance_defect(alg: &ConfAlgebra, r: &RMat) -> Vec<(u8, ConfTensor)> {
    let sym = r.symmetrized();
    let lam = minus_total(2);
    alg.generators().map(|a| (a, act_with(alg, a, &sym, &lam))).collect()
}

/// `δ(a) = a_λ r` at `λ = -(d1 + d2)`.
pub fn cocommutator(alg: &ConfAlgebra, a: &ConfElem, r: &RMat) -> Result<ConfTensor, Error> {
    let lam = syms::lam();
    let acted = act_on_tensor(alg, a, r.tensor(), lam)?;
    Ok(acted.subst(lam, &minus_total(2)))
}

pub fn all_zero(defects: &[(u8, ConfTensor)]) -> bool {
    defects.iter().all(|(_, t)| t.is_zero())
}
