use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::config::{SearchConfig, SearchMode};
use crate::exactpoly::{common_denominator, syms, MPoly, Monomial, Rat, Sym};
use crate::ybe::catalog::{EntryKind, EquationCatalog};
use crate::ybe::profile::{coeff_sym, pairs};
use crate::ybe::{cond_full_residues, Constants, DiagProfile, E, F, H};

/// Search variables in assignment order with their domains, and the
/// profile written in them.
pub(crate) struct Space {
    pub vars: Vec<Sym>,
    pub domains: Vec<Vec<Rat>>,
    pub profile: DiagProfile,
}

/// Pairs ordered so that each entry sits next to its transpose.
const PAIR_ORDER: [(u8, u8); 9] = [(E, E), (F, F), (H, H), (F, E), (E, F), (H, E), (E, H), (H, F), (F, H)];

pub(crate) fn space(cfg: &SearchConfig) -> Space {
    let mut vars = vec![syms::alpha(), syms::beta(), syms::gamma(), syms::zeta()];
    let mut domains = vec![cfg.constants_grid(); 4];
    let x = MPoly::var(syms::x());
    let mut odd: [[MPoly; 3]; 3] = Default::default();
    for k in cfg.powers() {
        for (q, l) in PAIR_ORDER {
            let s = coeff_sym(q, l, k);
            vars.push(s);
            domains.push(cfg.coeff_grid());
            odd[q as usize][l as usize] += &(&MPoly::var(s) * &x.pow(k as u32));
        }
    }
    Space {
        vars,
        domains,
        profile: DiagProfile::from_parts(&Constants::symbolic(), odd),
    }
}

/// Coefficients of `p` with respect to the power products of `free`.
pub(crate) fn coefficients_in(p: &MPoly, free: &[Sym]) -> Vec<MPoly> {
    let mut groups: HashMap<Monomial, Vec<(Monomial, Rat)>> = HashMap::new();
    for (m, c) in p.terms() {
        let mut key = Vec::new();
        let mut rest = m.clone();
        for s in free {
            let (e, r) = rest.split(*s);
            if e > 0 {
                key.push((*s, e));
            }
            rest = r;
        }
        groups
            .entry(Monomial::from_pairs(key))
            .or_default()
            .push((rest, c.clone()));
    }
    let mut keys: Vec<Monomial> = groups.keys().cloned().collect();
    keys.sort();
    keys.into_iter()
        .map(|k| MPoly::from_terms(groups.remove(&k).unwrap()))
        .collect()
}

/// The polynomial identities (in x, y, z, lam) a candidate must satisfy.
pub(crate) fn identities(cfg: &SearchConfig, profile: &DiagProfile) -> Vec<MPoly> {
    let mut out: Vec<MPoly> = cond_full_residues(profile).to_vec();
    if cfg.mode == SearchMode::Strict {
        let x = MPoly::var(syms::x());
        let neg = -&x;
        for (q, l) in pairs().filter(|(q, l)| q <= l) {
            out.push(&profile.at(q, l, &x) + &profile.at(l, q, &neg));
        }
    }
    let catalog = EquationCatalog::stock();
    for entry in &catalog.entries {
        let keep = match (entry.kind, cfg.mode) {
            (EntryKind::Projection, SearchMode::Weak) => !all_distinct(entry.triple.as_ref()),
            (EntryKind::Projection, _) => true,
            (EntryKind::Weak, SearchMode::Weak) => true,
            _ => false,
        };
        if keep {
            out.push(entry.evaluate(profile).expect("stock catalog is well formed"));
        }
    }
    out
}

fn all_distinct(triple: Option<&[String; 3]>) -> bool {
    triple.is_some_and(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2])
}

type Powers = SmallVec<[(u16, u16); 4]>;

/// An integer-coefficient polynomial constraint in the search variables,
/// checked once its highest-index variable is assigned.
#[derive(Clone, Debug)]
pub(crate) struct Constraint {
    pub last: usize,
    pub big: Vec<(BigInt, Powers)>,
    pub small: Option<Vec<(i128, Powers)>>,
}

impl Constraint {
    fn new(p: &MPoly, index: &HashMap<Sym, u16>) -> Constraint {
        let den = common_denominator(p.terms().iter().map(|(_, c)| c));
        let mut big = Vec::with_capacity(p.num_terms());
        let mut last = 0usize;
        for (m, c) in p.terms() {
            let scaled = (c * Rat::from_integer(den.clone())).to_integer();
            let powers: Powers = m
                .iter()
                .map(|(s, e)| {
                    let i = index[&s];
                    last = last.max(i as usize);
                    (i, e)
                })
                .collect();
            big.push((scaled, powers));
        }
        let small = big
            .iter()
            .map(|(c, pw)| c.to_i128().map(|c| (c, pw.clone())))
            .collect::<Option<Vec<_>>>();
        Constraint { last, big, small }
    }

    /// Evaluates in `i128` when possible, falling back to exact rationals.
    pub fn holds(&self, ints: Option<&[i128]>, rats: &[Rat]) -> bool {
        if let (Some(small), Some(vals)) = (&self.small, ints) {
            if let Some(v) = eval_i128(small, vals) {
                return v == 0;
            }
        }
        let mut acc = Rat::zero();
        for (c, pw) in &self.big {
            let mut t = Rat::from_integer(c.clone());
            for &(i, e) in pw {
                t *= num_traits::pow(rats[i as usize].clone(), e as usize);
            }
            acc += t;
        }
        acc.is_zero()
    }
}

fn eval_i128(terms: &[(i128, Powers)], vals: &[i128]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (c, pw) in terms {
        let mut t = *c;
        for &(i, e) in pw {
            let v = vals[i as usize];
            for _ in 0..e {
                t = t.checked_mul(v)?;
            }
        }
        acc = acc.checked_add(t)?;
    }
    Some(acc)
}

/// Compiles the identities into per-variable constraint lists. Constant
/// nonzero constraints make the space empty; they are kept under index 0.
pub(crate) fn compile(cfg: &SearchConfig, sp: &Space) -> Vec<Vec<Constraint>> {
    let index: HashMap<Sym, u16> = sp.vars.iter().enumerate().map(|(i, s)| (*s, i as u16)).collect();
    let free = [syms::x(), syms::y(), syms::z(), syms::lam()];
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut by_last: Vec<Vec<Constraint>> = vec![Vec::new(); sp.vars.len()];
    for ident in identities(cfg, &sp.profile) {
        for c in coefficients_in(&ident, &free) {
            if c.is_zero() {
                continue;
            }
            let (_, monic) = c.monic();
            if !seen.insert(monic.to_string()) {
                continue;
            }
            let k = Constraint::new(&monic, &index);
            by_last[k.last].push(k);
        }
    }
    by_last
}

pub(crate) fn as_i128(values: &[Rat]) -> Option<Vec<i128>> {
    values
        .iter()
        .map(|v| if v.denom().is_one() { v.numer().to_i128() } else { None })
        .collect()
}
