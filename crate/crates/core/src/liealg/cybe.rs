use crate::conformal::{act_with, ConfAlgebra, ConfTensor};
use crate::error::Error;
use crate::exactpoly::{MPoly, Sym};
use crate::ybe::{ccybe_bracket, RMat};

use super::LieAlg;

fn at_zero(t: &ConfTensor) -> ConfTensor {
    let subs: Vec<(Sym, MPoly)> = (1..=t.arity()).map(|i| (Sym::slot(i), MPoly::zero())).collect();
    t.subst_many(&subs)
}

/// `CYBE(r)`, defined as `⟦r, r⟧` of the constant tensor with every slot
/// variable set to zero.
pub fn cybe(g: &LieAlg, r: &RMat) -> Result<ConfTensor, Error> {
    if !r.is_constant() {
        return Err(Error::NonConstant("r-matrix coefficients depend on d1, d2".into()));
    }
    let alg = ConfAlgebra::cur(g.clone());
    Ok(at_zero(&ccybe_bracket(&alg, r)))
}

/// Adjoint action of each basis element on `CYBE(r)`.
pub fn weak_cybe_defect(g: &LieAlg, r: &RMat) -> Result<Vec<(u8, ConfTensor)>, Error> {
    let c = cybe(g, r)?;
    let alg = ConfAlgebra::cur(g.clone());
    Ok(alg
        .generators()
        .map(|a| (a, act_with(&alg, a, &c, &MPoly::zero())))
        .collect())
}
