//! Finite-dimensional Lie algebras, sl2 automorphisms and the classical
//! Yang–Baxter equation.

mod algebra;
mod aut;
mod cybe;

pub use algebra::{LieAlg, LieAlgDef, LieElem};
pub use aut::{AutMatrix, Provenance, SymMat3};
pub use cybe::{cybe, weak_cybe_defect};
