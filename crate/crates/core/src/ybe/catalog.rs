use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::bracket::{ccybe_bracket, reduced_bracket, weak_defect_of};
use super::profile::{cond_full_residues, generic_profile, parse_pair, DiagProfile, BASIS};
use crate::conformal::{ConfAlgebra, ConfTensor};
use crate::error::Error;
use crate::exactpoly::{syms, MPoly, Rat, Sym};

const STOCK: &str = include_str!("../../data/catalog.json");

/// Degree of the generic profile used for re-derivation. Every catalog
/// identity is bilinear in the profile, so any degree >= 1 exercises all
/// cross terms; 3 keeps odd and even parts of each entry independent.
pub const DERIVATION_DEGREE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    CondFull,
    Projection,
    Weak,
    Artificial,
}

/// `coeff * prod A'_ql(arg)` over the listed factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogTerm {
    pub coeff: MPoly,
    pub factors: Vec<(String, MPoly)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: EntryKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub triple: Option<[String; 3]>,
    pub terms: Vec<CatalogTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationCatalog {
    pub entries: Vec<CatalogEntry>,
}

fn allowed_symbols() -> BTreeSet<Sym> {
    ["x", "y", "z", "lam", "alpha", "beta", "gamma", "zeta"]
        .iter()
        .map(|s| Sym::new(s))
        .collect()
}

fn basis_index(name: &str) -> Option<u8> {
    BASIS.iter().position(|b| *b == name).map(|i| i as u8)
}

impl CatalogEntry {
    /// Substitutes `profile` into the entry; α, β, γ, ζ take the values
    /// read off the profile.
    pub fn evaluate(&self, profile: &DiagProfile) -> Result<MPoly, Error> {
        let c = profile.constants();
        let consts = [
            (syms::alpha(), c.alpha),
            (syms::beta(), c.beta),
            (syms::gamma(), c.gamma),
            (syms::zeta(), c.zeta),
        ];
        let mut acc = MPoly::zero();
        for term in &self.terms {
            let mut prod = term.coeff.subst_many(&consts);
            for (pair, arg) in &term.factors {
                let (q, l) =
                    parse_pair(pair).ok_or_else(|| Error::Input(format!("{}: bad entry name '{pair}'", self.name)))?;
                prod = &prod * &profile.at(q, l, arg);
            }
            acc += &prod;
        }
        Ok(acc)
    }

    /// Symbols outside the contract vocabulary (x, y, z, lam, constants).
    pub fn foreign_symbols(&self) -> Vec<Sym> {
        let allowed = allowed_symbols();
        let mut out = BTreeSet::new();
        for t in &self.terms {
            out.extend(t.coeff.symbols());
            for (_, a) in &t.factors {
                out.extend(a.symbols());
            }
        }
        out.retain(|s| !allowed.contains(s));
        out.into_iter().collect()
    }

    pub fn triple_indices(&self) -> Result<[u8; 3], Error> {
        let t = self
            .triple
            .as_ref()
            .ok_or_else(|| Error::Input(format!("{}: missing triple", self.name)))?;
        let mut out = [0u8; 3];
        for (o, n) in out.iter_mut().zip(t) {
            *o = basis_index(n).ok_or_else(|| Error::Input(format!("{}: bad basis name '{n}'", self.name)))?;
        }
        Ok(out)
    }

    pub fn generator_index(&self) -> Result<u8, Error> {
        let g = self
            .generator
            .as_ref()
            .ok_or_else(|| Error::Input(format!("{}: missing generator", self.name)))?;
        basis_index(g).ok_or_else(|| Error::Input(format!("{}: bad generator '{g}'", self.name)))
    }
}

impl EquationCatalog {
    pub fn stock() -> Self {
        Self::from_json(STOCK).expect("stock catalog parses")
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes")
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn of_kind(&self, kind: EntryKind) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }
}

struct Derived {
    reduced: ConfTensor,
    weak: Vec<(u8, ConfTensor)>,
}

fn derived() -> &'static Derived {
    static CACHE: OnceLock<Derived> = OnceLock::new();
    CACHE.get_or_init(|| {
        let alg = ConfAlgebra::cur_sl2();
        let r = generic_profile(DERIVATION_DEGREE).lift();
        let rr = ccybe_bracket(&alg, &r);
        Derived {
            reduced: reduced_bracket(&alg, &r),
            weak: weak_defect_of(&alg, &rr),
        }
    })
}

/// Renames `d1 -> z`, `d2 -> x`, `d3 -> y`.
fn to_xyz(p: &MPoly) -> MPoly {
    p.rename(&[
        (Sym::slot(1), syms::z()),
        (Sym::slot(2), syms::x()),
        (Sym::slot(3), syms::y()),
    ])
}

/// Projection of the reduced `⟦r, r⟧` of the generic profile, in `x`, `y`.
pub fn derive_projection(triple: [u8; 3]) -> MPoly {
    to_xyz(&derived().reduced.project(&triple))
}

/// Projection of `a_μ ⟦r, r⟧` at `μ = -(d1+d2+d3)` for the generic profile,
/// in `x`, `y`, `z`.
pub fn derive_weak_projection(a: u8, triple: [u8; 3]) -> MPoly {
    let (_, t) = &derived().weak[a as usize];
    to_xyz(&t.project(&triple))
}

/// `Some(s)` with `derived = s * transcribed`, comparing after scaling both
/// to leading coefficient 1.
pub fn match_up_to_scale(derived: &MPoly, transcribed: &MPoly) -> Option<Rat> {
    match (derived.is_zero(), transcribed.is_zero()) {
        (true, true) => return Some(Rat::from_integer(1.into())),
        (false, false) => {}
        _ => return None,
    }
    let (ld, nd) = derived.monic();
    let (lt, nt) = transcribed.monic();
    (nd == nt).then(|| ld / lt)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub kind: EntryKind,
    /// Ratio derived/transcribed when they agree up to a rational factor.
    pub scale: Option<String>,
    /// Normalized difference when they do not.
    pub diff: Option<String>,
    pub error: Option<String>,
}

impl EntryCheck {
    pub fn ok(&self) -> bool {
        self.scale.is_some() && self.error.is_none()
    }
}

fn check_entry(entry: &CatalogEntry) -> EntryCheck {
    let mut out = EntryCheck {
        name: entry.name.clone(),
        kind: entry.kind,
        scale: None,
        diff: None,
        error: None,
    };
    let foreign = entry.foreign_symbols();
    if !foreign.is_empty() {
        let names: Vec<String> = foreign.iter().map(|s| s.name()).collect();
        out.error = Some(format!("unexpected symbols: {}", names.join(", ")));
        return out;
    }
    let generic = generic_profile(DERIVATION_DEGREE);
    let result = (|| -> Result<(MPoly, MPoly), Error> {
        let transcribed = entry.evaluate(&generic)?;
        let derived = match entry.kind {
            EntryKind::Projection => derive_projection(entry.triple_indices()?),
            EntryKind::Weak => derive_weak_projection(entry.generator_index()?, entry.triple_indices()?),
            EntryKind::CondFull => {
                let idx = cond_full_index(&entry.name)?;
                cond_full_residues(&generic)[idx].clone()
            }
            EntryKind::Artificial => return Err(Error::Input("artificial entries are not derived".into())),
        };
        Ok((derived, transcribed))
    })();
    match result {
        Err(e) => out.error = Some(e.to_string()),
        Ok((derived, transcribed)) => match match_up_to_scale(&derived, &transcribed) {
            Some(s) => out.scale = Some(crate::exactpoly::fmt_rat(&s)),
            None => {
                let (_, nd) = derived.monic();
                let (_, nt) = transcribed.monic();
                out.diff = Some((&nd - &nt).to_string());
            }
        },
    }
    out
}

fn cond_full_index(name: &str) -> Result<usize, Error> {
    let tag = name.rsplit(' ').next().unwrap_or("");
    super::profile::COND_FULL_NAMES
        .iter()
        .position(|n| *n == tag)
        .ok_or_else(|| Error::Input(format!("unknown cond-full relation '{name}'")))
}

/// Re-derives every non-artificial entry and compares it with the
/// transcription.
pub fn check_catalog(catalog: &EquationCatalog) -> Vec<EntryCheck> {
    catalog
        .entries
        .iter()
        .filter(|e| e.kind != EntryKind::Artificial)
        .map(check_entry)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stock_catalog_loads() {
        let cat = EquationCatalog::stock();
        assert_eq!(cat.of_kind(EntryKind::Projection).count(), 10);
        assert_eq!(cat.of_kind(EntryKind::Weak).count(), 2);
        assert_eq!(cat.of_kind(EntryKind::CondFull).count(), 6);
        assert!(cat.entries.iter().all(|e| e.foreign_symbols().is_empty()));
        let again = EquationCatalog::from_json(&cat.to_json()).unwrap();
        assert_eq!(again, cat);
    }

    #[test]
    fn scale_matching() {
        let x = MPoly::var(syms::x());
        let two_x = x.scale(&Rat::from_integer(2.into()));
        assert_eq!(match_up_to_scale(&two_x, &x), Some(Rat::from_integer(2.into())));
        assert_eq!(match_up_to_scale(&x, &MPoly::zero()), None);
        assert_eq!(match_up_to_scale(&x, &(&x + &MPoly::one())), None);
    }
}
