//! Constructors for the classified solution families and the checks that
//! certify a diagonal profile's shape.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactpoly::{int, parse_poly, syms, MPoly, Registry, Sym};
use crate::liealg::SymMat3;
use crate::ybe::profile::pairs;
use crate::ybe::{Constants, DiagProfile, RMat, E, F, H};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyCase {
    Lemma1,
    Thm5I,
    Thm5Ii,
    Thm5Iii,
    Cor6I,
    Cor6Ii,
    Cor6Iii,
    Vir,
}

impl FamilyCase {
    pub const ALL: [FamilyCase; 8] = [
        FamilyCase::Lemma1,
        FamilyCase::Thm5I,
        FamilyCase::Thm5Ii,
        FamilyCase::Thm5Iii,
        FamilyCase::Cor6I,
        FamilyCase::Cor6Ii,
        FamilyCase::Cor6Iii,
        FamilyCase::Vir,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyCase::Lemma1 => "lemma1",
            FamilyCase::Thm5I => "thm5_i",
            FamilyCase::Thm5Ii => "thm5_ii",
            FamilyCase::Thm5Iii => "thm5_iii",
            FamilyCase::Cor6I => "cor6_i",
            FamilyCase::Cor6Ii => "cor6_ii",
            FamilyCase::Cor6Iii => "cor6_iii",
            FamilyCase::Vir => "vir",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Whether the family is claimed to solve the strict equation.
    pub fn is_strict(self) -> bool {
        matches!(self, FamilyCase::Cor6I | FamilyCase::Cor6Ii | FamilyCase::Cor6Iii)
    }
}

/// A family instance: case, parameter values (numbers or symbols) and the
/// monic polynomial `f(t)`; `b` is the Virasoro coefficient `B(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub case: FamilyCase,
    #[serde(default)]
    pub params: BTreeMap<String, MPoly>,
    #[serde(default = "MPoly::one")]
    pub f: MPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<MPoly>,
}

const PARAM_NAMES: [&str; 5] = ["alpha", "beta", "gamma", "zeta", "lhh"];

impl FamilySpec {
    pub fn new(case: FamilyCase) -> Self {
        FamilySpec {
            case,
            params: BTreeMap::new(),
            f: MPoly::one(),
            b: None,
        }
    }

    pub fn param(mut self, name: &str, value: impl Into<MPoly>) -> Self {
        self.params.insert(name.to_owned(), value.into());
        self
    }

    pub fn with_f(mut self, f: MPoly) -> Self {
        self.f = f;
        self
    }

    pub fn vir(b: MPoly) -> Self {
        FamilySpec {
            b: Some(b),
            ..Self::new(FamilyCase::Vir)
        }
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Parses `name=expr` parameter assignments.
    pub fn parse_param(text: &str) -> Result<(String, MPoly), Error> {
        let (name, value) = text
            .split_once('=')
            .ok_or_else(|| Error::Input(format!("expected name=value, got '{text}'")))?;
        let name = name.trim();
        if !PARAM_NAMES.contains(&name) {
            return Err(Error::Input(format!("unknown parameter '{name}'")));
        }
        Ok((name.to_owned(), parse_poly(value, &Registry::auto())?))
    }

    fn get(&self, name: &str) -> Option<&MPoly> {
        self.params.get(name)
    }

    fn get_or_zero(&self, name: &str) -> MPoly {
        self.get(name).cloned().unwrap_or_default()
    }

    /// Constants with defaults filled in: missing values are 0, except ζ in
    /// case (i) of Theorem 5, which defaults to β/2.
    pub fn constants(&self) -> Constants {
        let beta = self.get_or_zero("beta");
        let zeta = match (self.case, self.get("zeta")) {
            (_, Some(z)) => z.clone(),
            (FamilyCase::Thm5I, None) => beta.scale(&crate::exactpoly::rat(1, 2)),
            _ => MPoly::zero(),
        };
        Constants {
            alpha: self.get_or_zero("alpha"),
            beta,
            gamma: self.get_or_zero("gamma"),
            zeta,
        }
    }

    pub fn lhh(&self) -> MPoly {
        self.get("lhh").cloned().unwrap_or_else(MPoly::one)
    }

    /// Checks the case constraints as polynomial identities.
    pub fn validate(&self) -> Result<(), Error> {
        for k in self.params.keys() {
            if !PARAM_NAMES.contains(&k.as_str()) {
                return Err(Error::Input(format!("unknown parameter '{k}'")));
            }
        }
        if self.case == FamilyCase::Vir {
            let b = self
                .b
                .as_ref()
                .ok_or_else(|| Error::Input("vir family needs b".into()))?;
            if !vir_diagonal(b).is_zero() {
                return Err(Error::Constraint("B(x, -x) = 0 required".into()));
            }
            return Ok(());
        }
        let t = syms::t();
        if self.f.symbols().contains(&syms::x()) {
            return Err(Error::Input("f must be written in t".into()));
        }
        let top = self.f.coeff_of(t, self.f.degree_in(t));
        if top != MPoly::one() {
            return Err(Error::Constraint(format!(
                "f must be monic in t, leading coefficient is {top}"
            )));
        }
        let c = self.constants();
        let need_zero = |p: &MPoly, what: &str| -> Result<(), Error> {
            if p.is_zero() {
                Ok(())
            } else {
                Err(Error::Constraint(format!("{what} = 0 required")))
            }
        };
        let two_zeta_minus_beta = &c.zeta.scale(&int(2)) - &c.beta;
        match self.case {
            FamilyCase::Lemma1 | FamilyCase::Thm5Iii => {}
            FamilyCase::Thm5I => {
                need_zero(&c.gamma, "γ")?;
                need_zero(&two_zeta_minus_beta, "2ζ − β")?;
            }
            FamilyCase::Thm5Ii => {
                need_zero(&c.alpha, "α")?;
                need_zero(&c.gamma, "γ")?;
                if self.lhh().is_zero() {
                    return Err(Error::Constraint("lhh ≠ 0 required".into()));
                }
            }
            FamilyCase::Cor6I => {
                need_zero(&c.zeta, "ζ")?;
                need_zero(&c.gamma, "γ")?;
                need_zero(&c.beta, "β")?;
            }
            FamilyCase::Cor6Ii => {
                need_zero(&c.zeta, "ζ")?;
                need_zero(&c.alpha, "α")?;
                need_zero(&c.beta, "β")?;
                need_zero(&c.gamma, "γ")?;
                if self.lhh().is_zero() {
                    return Err(Error::Constraint("lhh ≠ 0 required".into()));
                }
            }
            FamilyCase::Cor6Iii => {
                need_zero(&c.zeta, "ζ")?;
                let disc = &(&c.beta * &c.beta) - &(&c.alpha * &c.gamma).scale(&int(4));
                need_zero(&disc, "β² − 4αγ")?;
            }
            FamilyCase::Vir => unreachable!(),
        }
        Ok(())
    }
}

/// `x f(x^2)`.
pub fn x_f_x2(f: &MPoly) -> MPoly {
    let x = MPoly::var(syms::x());
    &x * &f.subst(syms::t(), &x.pow(2))
}

/// The diagonal profile of a Cur(sl2) family.
pub fn build_profile(spec: &FamilySpec) -> Result<DiagProfile, Error> {
    spec.validate()?;
    let mut odd: [[MPoly; 3]; 3] = Default::default();
    let xf = x_f_x2(&spec.f);
    match spec.case {
        FamilyCase::Thm5I | FamilyCase::Cor6I => odd[E as usize][E as usize] = xf,
        FamilyCase::Thm5Ii | FamilyCase::Cor6Ii => odd[H as usize][H as usize] = &spec.lhh() * &xf,
        FamilyCase::Lemma1 | FamilyCase::Thm5Iii | FamilyCase::Cor6Iii => {}
        FamilyCase::Vir => return Err(Error::Input("vir families have no sl2 profile".into())),
    }
    Ok(DiagProfile::from_parts(&spec.constants(), odd))
}

/// Canonical lift `A_ql(d1, d2) := A'_ql(d1)`.
pub fn lift_to_rmat(p: &DiagProfile) -> RMat {
    p.lift()
}

/// The r-matrix of a family (over Cur(sl2), or over Vir for the vir case).
pub fn family_rmat(spec: &FamilySpec) -> Result<RMat, Error> {
    match spec.case {
        FamilyCase::Vir => {
            spec.validate()?;
            Ok(vir_rmatrix(spec.b.as_ref().expect("validated")))
        }
        FamilyCase::Lemma1 => {
            spec.validate()?;
            let c = spec.constants();
            Ok(lemma1_r0(&c.alpha, &c.beta, &c.gamma, &c.zeta))
        }
        _ => Ok(lift_to_rmat(&build_profile(spec)?)),
    }
}

/// `α(h⊗e − e⊗h) + β(f⊗e − e⊗f) + γ(h⊗f − f⊗h) + ζ(h⊗h + 4e⊗f)`.
pub fn lemma1_r0(alpha: &MPoly, beta: &MPoly, gamma: &MPoly, zeta: &MPoly) -> RMat {
    RMat::zero()
        .with(H, E, alpha.clone())
        .with(E, H, -alpha)
        .with(F, E, beta.clone())
        .with(E, F, &zeta.scale(&int(4)) - beta)
        .with(H, F, gamma.clone())
        .with(F, H, -gamma)
        .with(H, H, zeta.clone())
}

/// `r = B(d1, d2) v⊗v` over Vir, from `B(x, y)`.
pub fn vir_rmatrix(b: &MPoly) -> RMat {
    let coeff = b.rename(&[(syms::x(), Sym::slot(1)), (syms::y(), Sym::slot(2))]);
    RMat::zero().with(0, 0, coeff)
}

/// `B(x, -x)`.
pub fn vir_diagonal(b: &MPoly) -> MPoly {
    let x = MPoly::var(syms::x());
    b.subst(syms::y(), &-&x)
}

/// Outcome of decomposing a profile as `A'_ql(x) = A'_ql(0) + a_ql x f(x^2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Characterization {
    /// Every `A'_ql − A'_ql(0)` is odd with a single-term leading coefficient.
    pub odd: bool,
    /// `A'_ql − A'_ql(0) = A'_lq − A'_lq(0)` for all pairs.
    pub sym: bool,
    /// The common monic `f` of all nonzero entries (1 if all vanish).
    pub shared_f: Option<MPoly>,
    /// The scalars `a_ql`, when `odd` and `sym` hold.
    pub matrix: Option<SymMat3>,
    pub rank_le_1: bool,
    pub constants_ok: bool,
}

impl Characterization {
    pub fn all_ok(&self) -> bool {
        self.odd && self.sym && self.shared_f.is_some() && self.rank_le_1 && self.constants_ok
    }
}

pub fn characterize(p: &DiagProfile) -> Characterization {
    let (x, t) = (syms::x(), syms::t());
    let mut odd = true;
    let mut scales: [[MPoly; 3]; 3] = Default::default();
    let mut fs: Vec<MPoly> = Vec::new();
    for (q, l) in pairs() {
        match p.odd_part(q, l).match_axf(x, t) {
            Some(m) => {
                if !m.scale.is_zero() {
                    fs.push(m.f);
                }
                scales[q as usize][l as usize] = m.scale;
            }
            None => odd = false,
        }
    }
    let sym = pairs().all(|(q, l)| p.odd_part(q, l) == p.odd_part(l, q));
    let shared_f = if !odd {
        None
    } else if fs.is_empty() {
        Some(MPoly::one())
    } else if fs.iter().all(|f| *f == fs[0]) {
        Some(fs[0].clone())
    } else {
        None
    };
    let matrix = (odd && sym).then(|| SymMat3::new(scales).expect("symmetric by construction"));
    let rank_le_1 = matrix.as_ref().is_some_and(|m| m.minors().iter().all(MPoly::is_zero));
    Characterization {
        odd,
        sym,
        shared_f,
        matrix,
        rank_le_1,
        constants_ok: p.constants_ok(),
    }
}

/// Residues of the scalar relations among `a_ql`, `A'_ql` and the constants
/// that every invariant weak solution satisfies (zero when they hold). The
/// matrix entries come from [`characterize`]; `None` if it has no matrix.
pub fn scalar_relations(p: &DiagProfile) -> Option<Vec<(&'static str, MPoly)>> {
    let m = characterize(p).matrix?;
    let a = |q: u8, l: u8| m.get(q as usize, l as usize).clone();
    let c = p.constants();
    let ap = |q: u8, l: u8| p.get(q, l).clone();
    let two = int(2);
    let k = &c.zeta.scale(&two) - &c.beta;
    let rel = |l: MPoly, r: MPoly| &l - &r;
    Some(vec![
        ("he·ee", rel(&a(H, E) * &ap(E, E), &a(E, E) * &(&ap(H, E) - &c.alpha))),
        (
            "he·hh",
            rel(&a(H, E) * &(&ap(H, H) - &c.zeta), &a(H, H) * &(&ap(H, E) - &c.alpha)),
        ),
        ("ee·hh=he²", rel(&a(E, E) * &a(H, H), &a(H, E) * &a(H, E))),
        ("ee·(2ζ−β)", rel(&k * &a(E, E), (&c.alpha * &a(H, E)).scale(&two))),
        ("hh·α", rel((&c.alpha * &a(H, H)).scale(&two), &k * &a(H, E))),
        ("hf·ff", rel(&a(H, F) * &ap(F, F), &a(F, F) * &(&ap(H, F) - &c.gamma))),
        (
            "hf·hh",
            rel(&a(H, F) * &(&ap(H, H) - &c.zeta), &a(H, H) * &(&ap(H, F) - &c.gamma)),
        ),
        ("ff·hh=hf²", rel(&a(F, F) * &a(H, H), &a(H, F) * &a(H, F))),
        (
            "ff·(2ζ−β)",
            rel(&k * &a(F, F), (&c.gamma * &a(H, F)).scale(&-two.clone())),
        ),
        ("hh·γ", rel((&c.gamma * &a(H, H)).scale(&-two.clone()), &k * &a(H, F))),
        ("fe·ee", rel(&a(F, E) * &ap(E, E), &a(E, E) * &(&ap(F, E) - &c.beta))),
        ("fe·ff", rel(&a(F, E) * &ap(F, F), &a(F, F) * &(&ap(F, E) - &c.beta))),
        ("ee·ff=fe²", rel(&a(E, E) * &a(F, F), &a(F, E) * &a(F, E))),
        ("γ·ee", rel(&c.gamma * &a(E, E), -(&c.alpha * &a(F, E)))),
        ("α·ff", rel(&c.alpha * &a(F, F), -(&c.gamma * &a(F, E)))),
    ])
}
