//! JSON file format for r-matrices over Cur(sl2) and Vir.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::conformal::ConfAlgebra;
use crate::error::Error;
use crate::exactpoly::{parse_poly, MPoly, Registry, Sym};
use crate::ybe::RMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraName {
    CurSl2,
    Vir,
}

impl AlgebraName {
    pub fn algebra(self) -> ConfAlgebra {
        match self {
            AlgebraName::CurSl2 => ConfAlgebra::cur_sl2(),
            AlgebraName::Vir => ConfAlgebra::vir(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryRecord {
    pub left: String,
    pub right: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMatFile {
    pub algebra: AlgebraName,
    #[serde(default)]
    pub parameters: Vec<String>,
    pub entries: Vec<EntryRecord>,
}

const SLOT_NAMES: [&str; 2] = ["d1", "d2"];

impl RMatFile {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rmat file serializes")
    }

    /// Writes `r` with its entries in basis order; parameters are the
    /// symbols other than `d1`, `d2`, sorted by name.
    pub fn from_rmat(algebra: AlgebraName, r: &RMat) -> Self {
        let alg = algebra.algebra();
        let names = alg.basis_names();
        let slots: BTreeSet<Sym> = [Sym::slot(1), Sym::slot(2)].into();
        let mut params = BTreeSet::new();
        let mut entries = Vec::new();
        for (q, l, a) in r.entries() {
            params.extend(a.symbols().into_iter().filter(|s| !slots.contains(s)).map(|s| s.name()));
            entries.push(EntryRecord {
                left: names[q as usize].clone(),
                right: names[l as usize].clone(),
                coeff: a.to_string(),
            });
        }
        RMatFile {
            algebra,
            parameters: params.into_iter().collect(),
            entries,
        }
    }

    /// Parses the entries; repeated (left, right) pairs add up.
    pub fn to_rmat(&self) -> Result<(ConfAlgebra, RMat), Error> {
        let alg = self.algebra.algebra();
        for p in &self.parameters {
            if SLOT_NAMES.contains(&p.as_str()) {
                return Err(Error::SymbolCollision(format!(
                    "parameter '{p}' shadows a slot variable"
                )));
            }
        }
        let reg = Registry::with_names(
            SLOT_NAMES
                .iter()
                .copied()
                .chain(self.parameters.iter().map(String::as_str)),
        );
        let index = |name: &str| {
            alg.index_of(name).ok_or_else(|| {
                Error::Input(format!(
                    "'{name}' is not a basis element of {}",
                    alg_label(self.algebra)
                ))
            })
        };
        let mut r = RMat::zero();
        for e in &self.entries {
            let (q, l) = (index(&e.left)?, index(&e.right)?);
            let c = parse_poly(&e.coeff, &reg)?;
            let sum = &r.get(q, l) + &c;
            r.set(q, l, sum);
        }
        Ok((alg, r))
    }
}

fn alg_label(a: AlgebraName) -> &'static str {
    match a {
        AlgebraName::CurSl2 => "cur_sl2",
        AlgebraName::Vir => "vir",
    }
}

/// Parses `text` with `d1`, `d2` and the given parameters declared.
pub fn parse_coeff(text: &str, parameters: &[String]) -> Result<MPoly, Error> {
    let reg = Registry::with_names(SLOT_NAMES.iter().copied().chain(parameters.iter().map(String::as_str)));
    Ok(parse_poly(text, &reg)?)
}
