//! Symbolic engine for the conformal classical Yang–Baxter equation on the
//! current algebra Cur(sl2) and the Virasoro conformal algebra.

#![allow(clippy::needless_range_loop)]

pub mod conformal;
pub mod error;
pub mod exactpoly;
pub mod families;
pub mod liealg;
pub mod rmatfile;
pub mod search;
pub mod ybe;

pub use conformal::{ConfAlgebra, ConfElem, ConfTensor};
pub use error::Error;
pub use exactpoly::{MPoly, Rat, Sym};
pub use liealg::{AutMatrix, LieAlg, SymMat3};
pub use ybe::{DiagProfile, RMat};
