//! The conformal classical Yang–Baxter equation over Cur(g) and Vir.

mod bracket;
pub mod catalog;
pub mod profile;
mod symmetry;

pub use bracket::{
    all_zero, ccybe_bracket, cocommutator, invariance_defect, is_strict_solution, reduced_bracket, weak_defect,
    weak_defect_of, RMat,
};
pub use catalog::{
    check_catalog, derive_projection, derive_weak_projection, match_up_to_scale, CatalogEntry, CatalogTerm, EntryCheck,
    EntryKind, EquationCatalog,
};
pub use profile::{
    cond_full_generic, cond_full_residues, diagonal_of, generic_profile, Constants, DiagProfile, E, F, H,
};
pub use symmetry::{s3_symmetry_check, S3Mismatch};
