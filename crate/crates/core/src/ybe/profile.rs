use serde::{Deserialize, Serialize};

use super::bracket::RMat;
use crate::exactpoly::{int, syms, MPoly, Rat, Sym};

pub const E: u8 = 0;
pub const F: u8 = 1;
pub const H: u8 = 2;
pub const BASIS: [&str; 3] = ["e", "f", "h"];

/// Index pairs in row-major order ee, ef, eh, fe, ..., hh.
pub fn pairs() -> impl Iterator<Item = (u8, u8)> {
    (0..3u8).flat_map(|q| (0..3u8).map(move |l| (q, l)))
}

pub fn pair_name(q: u8, l: u8) -> String {
    format!("{}{}", BASIS[q as usize], BASIS[l as usize])
}

pub fn parse_pair(name: &str) -> Option<(u8, u8)> {
    let mut it = name
        .chars()
        .map(|c| BASIS.iter().position(|b| b.starts_with(c)).map(|i| i as u8));
    let (q, l) = (it.next()??, it.next()??);
    it.next().is_none().then_some((q, l))
}

/// The four scalars fixing `A'_ql(0)` for an invariant profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    pub alpha: MPoly,
    pub beta: MPoly,
    pub gamma: MPoly,
    pub zeta: MPoly,
}

impl Constants {
    pub fn zero() -> Self {
        Self::from_rat([int(0), int(0), int(0), int(0)])
    }

    pub fn from_rat([a, b, c, z]: [Rat; 4]) -> Self {
        Constants {
            alpha: MPoly::constant(a),
            beta: MPoly::constant(b),
            gamma: MPoly::constant(c),
            zeta: MPoly::constant(z),
        }
    }

    pub fn symbolic() -> Self {
        Constants {
            alpha: MPoly::var(syms::alpha()),
            beta: MPoly::var(syms::beta()),
            gamma: MPoly::var(syms::gamma()),
            zeta: MPoly::var(syms::zeta()),
        }
    }

    /// `A'_ql(0)`: ee = ff = 0, ef = 4ζ - β, fe = β, he = -eh = α,
    /// hf = -fh = γ, hh = ζ.
    pub fn table(&self) -> [[MPoly; 3]; 3] {
        let z = MPoly::zero();
        let ef = &self.zeta.scale(&int(4)) - &self.beta;
        [
            [z.clone(), ef, -&self.alpha],
            [self.beta.clone(), z, -&self.gamma],
            [self.alpha.clone(), self.gamma.clone(), self.zeta.clone()],
        ]
    }

    pub fn as_array(&self) -> [&MPoly; 4] {
        [&self.alpha, &self.beta, &self.gamma, &self.zeta]
    }
}

/// `A'_ql(x) = A_ql(x, -x)` for Cur(sl2), in the symbol `x`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiagProfile {
    a: [[MPoly; 3]; 3],
}

impl DiagProfile {
    pub fn new(a: [[MPoly; 3]; 3]) -> Self {
        DiagProfile { a }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Constant part from the table plus the given odd parts.
    pub fn from_parts(c: &Constants, odd: [[MPoly; 3]; 3]) -> Self {
        let t = c.table();
        let mut a: [[MPoly; 3]; 3] = Default::default();
        for (q, l) in pairs() {
            a[q as usize][l as usize] = &t[q as usize][l as usize] + &odd[q as usize][l as usize];
        }
        DiagProfile { a }
    }

    pub fn get(&self, q: u8, l: u8) -> &MPoly {
        &self.a[q as usize][l as usize]
    }

    pub fn set(&mut self, q: u8, l: u8, p: MPoly) {
        self.a[q as usize][l as usize] = p;
    }

    pub fn entries(&self) -> &[[MPoly; 3]; 3] {
        &self.a
    }

    /// `A'_ql(arg)`.
    pub fn at(&self, q: u8, l: u8, arg: &MPoly) -> MPoly {
        self.get(q, l).subst(syms::x(), arg)
    }

    pub fn value_at_zero(&self, q: u8, l: u8) -> MPoly {
        self.at(q, l, &MPoly::zero())
    }

    /// Constants read off the profile: α = A'_he(0), β = A'_fe(0),
    /// γ = A'_hf(0), ζ = A'_hh(0).
    pub fn constants(&self) -> Constants {
        Constants {
            alpha: self.value_at_zero(H, E),
            beta: self.value_at_zero(F, E),
            gamma: self.value_at_zero(H, F),
            zeta: self.value_at_zero(H, H),
        }
    }

    /// Differences between `A'_ql(0)` and the invariant constants table.
    pub fn constants_residues(&self) -> Vec<((u8, u8), MPoly)> {
        let t = self.constants().table();
        pairs()
            .map(|(q, l)| ((q, l), &self.value_at_zero(q, l) - &t[q as usize][l as usize]))
            .filter(|(_, r)| !r.is_zero())
            .collect()
    }

    pub fn constants_ok(&self) -> bool {
        self.constants_residues().is_empty()
    }

    /// `A'_ql(x) - A'_ql(0)`.
    pub fn odd_part(&self, q: u8, l: u8) -> MPoly {
        self.get(q, l) - &self.value_at_zero(q, l)
    }

    /// Canonical lift `A_ql(d1, d2) := A'_ql(d1)`.
    pub fn lift(&self) -> RMat {
        let d1 = MPoly::var(Sym::slot(1));
        let mut r = RMat::zero();
        for (q, l) in pairs() {
            r.set(q, l, self.at(q, l, &d1));
        }
        r
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Sym> {
        self.a.iter().flatten().flat_map(MPoly::symbols).collect()
    }

    pub fn is_numeric(&self) -> bool {
        self.symbols().iter().all(|s| *s == syms::x())
    }

    pub fn subst_many(&self, subs: &[(Sym, MPoly)]) -> DiagProfile {
        DiagProfile {
            a: self.a.clone().map(|row| row.map(|p| p.subst_many(subs))),
        }
    }
}

/// `A_ql(x, -x)` for each entry of `r`.
pub fn diagonal_of(r: &RMat) -> DiagProfile {
    let x = MPoly::var(syms::x());
    let mut p = DiagProfile::zero();
    for (q, l, a) in r.entries() {
        p.set(q, l, a.subst_many(&[(Sym::slot(1), x.clone()), (Sym::slot(2), -&x)]));
    }
    p
}

/// The six invariance relations, as polynomials in `lam`:
/// ee, fe/ef, he/eh, ff, hf/fh, hh.
pub fn cond_full_residues(p: &DiagProfile) -> [MPoly; 6] {
    let lam = MPoly::var(syms::lam());
    let neg = -&lam;
    let zeta = p.constants().zeta;
    let rel = |q: u8, l: u8| &p.at(q, l, &lam) + &p.at(l, q, &neg);
    [
        rel(E, E),
        &rel(F, E) - &zeta.scale(&int(4)),
        rel(H, E),
        rel(F, F),
        rel(H, F),
        &rel(H, H) - &zeta.scale(&int(2)),
    ]
}

pub const COND_FULL_NAMES: [&str; 6] = ["ee", "fe", "he", "ff", "hf", "hh"];

/// Coefficient symbol `c_<q><l>_<k>`.
pub fn coeff_sym(q: u8, l: u8, k: usize) -> Sym {
    Sym::new(&format!("c_{}_{k}", pair_name(q, l)))
}

/// `A'_ql(x) = sum_{k<=degree} c_ql_k x^k` with independent symbols.
pub fn generic_profile(degree: usize) -> DiagProfile {
    let x = syms::x();
    let mut p = DiagProfile::zero();
    for (q, l) in pairs() {
        let poly: MPoly = (0..=degree)
            .map(|k| &MPoly::var(coeff_sym(q, l, k)) * &MPoly::var(x).pow(k as u32))
            .sum();
        p.set(q, l, poly);
    }
    p
}

/// The generic profile cut down to the solution set of the invariance
/// relations, with constants α, β, γ, ζ as symbols. Free coefficients are
/// the odd `c_ee_k`, `c_ff_k`, `c_hh_k` and the `k >= 1` coefficients of
/// fe, he, hf; the transposed entries are determined by them.
pub fn cond_full_generic(degree: usize) -> DiagProfile {
    let x = MPoly::var(syms::x());
    let c = Constants::symbolic();
    let xk = |k: usize| x.pow(k as u32);
    let odd_sum = |q: u8, l: u8| -> MPoly {
        (1..=degree)
            .filter(|k| k % 2 == 1)
            .map(|k| &MPoly::var(coeff_sym(q, l, k)) * &xk(k))
            .sum()
    };
    let tail = |q: u8, l: u8| -> MPoly { (1..=degree).map(|k| &MPoly::var(coeff_sym(q, l, k)) * &xk(k)).sum() };
    let mut p = DiagProfile::zero();
    p.set(E, E, odd_sum(E, E));
    p.set(F, F, odd_sum(F, F));
    p.set(H, H, &c.zeta + &odd_sum(H, H));
    p.set(F, E, &c.beta + &tail(F, E));
    p.set(H, E, &c.alpha + &tail(H, E));
    p.set(H, F, &c.gamma + &tail(H, F));
    let neg_x = -&x;
    // A'_ef(x) = 4ζ - A'_fe(-x), A'_eh(x) = -A'_he(-x), A'_fh(x) = -A'_hf(-x).
    let ef = &c.zeta.scale(&int(4)) - &p.at(F, E, &neg_x);
    let eh = -p.at(H, E, &neg_x);
    let fh = -p.at(H, F, &neg_x);
    p.set(E, F, ef);
    p.set(E, H, eh);
    p.set(F, H, fh);
    p
}
