use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::rat::{fmt_rat, int, Rat};
use super::sym::Sym;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, Rat)>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(s: Sym) -> Self {
        Self::term(Monomial::var(s), Rat::one())
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// `sum_k coeffs[k] * s^k`.
    pub fn from_univariate(s: Sym, coeffs: &[Rat]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::power(s, k as u16), c.clone()));
        Self::from_terms(terms)
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut acc: HashMap<Monomial, Rat> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rat>) -> Self {
        let mut terms: Vec<(Monomial, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rat {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rat::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rat)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.total_degree())
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms.iter().flat_map(|(m, _)| m.iter().map(|(s, _)| s)).collect()
    }

    pub fn contains(&self, s: Sym) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(s) > 0)
    }

    pub fn degree_in(&self, s: Sym) -> u16 {
        self.terms.iter().map(|(m, _)| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        // Multiplying by a monomial preserves the term order.
        MPoly {
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients in `s`: entry `k` is the coefficient of `s^k`.
    pub fn univariate_coeffs(&self, s: Sym) -> Vec<MPoly> {
        let mut buckets: BTreeMap<u16, Vec<(Monomial, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            buckets.entry(e).or_default().push((rest, c.clone()));
        }
        let top = buckets.keys().next_back().copied().unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(); if self.is_zero() { 0 } else { top + 1 }];
        for (e, terms) in buckets {
            // Removing the same variable from every term keeps relative order.
            out[e as usize] = MPoly { terms };
        }
        out
    }

    pub fn coeff_of(&self, s: Sym, k: u16) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let (e, rest) = m.split(s);
                (e == k).then(|| (rest, c.clone()))
            })
            .collect();
        MPoly { terms }
    }

    /// Substitutes `s := value`.
    pub fn subst(&self, s: Sym, value: &MPoly) -> MPoly {
        if !self.contains(s) {
            return self.clone();
        }
        let coeffs = self.univariate_coeffs(s);
        // Horner in the substituted value.
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Simultaneous substitution `s_i := v_i`.
    pub fn subst_many(&self, subs: &[(Sym, MPoly)]) -> MPoly {
        if subs.is_empty() {
            return self.clone();
        }
        // Group terms by the exponent vector of the substituted symbols.
        let mut groups: HashMap<Vec<u16>, Vec<(Monomial, Rat)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut key = Vec::with_capacity(subs.len());
            let mut rest = m.clone();
            for (s, _) in subs {
                let (e, r) = rest.split(*s);
                key.push(e);
                rest = r;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        let mut powers: Vec<Vec<MPoly>> = subs.iter().map(|(_, v)| vec![MPoly::one(), v.clone()]).collect();
        let mut acc: HashMap<Monomial, Rat> = HashMap::new();
        for (key, rest_terms) in groups {
            let mut factor = MPoly::one();
            for (i, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &subs[i].1;
                    powers[i].push(next);
                }
                factor = &factor * &powers[i][e as usize];
            }
            for (rm, rc) in &rest_terms {
                for (fm, fc) in &factor.terms {
                    *acc.entry(rm.mul(fm)).or_insert_with(Rat::zero) += rc * fc;
                }
            }
        }
        Self::from_map(acc)
    }

    /// Substitutes rational values for the given symbols.
    pub fn eval(&self, values: &[(Sym, Rat)]) -> MPoly {
        let subs: Vec<(Sym, MPoly)> = values.iter().map(|(s, v)| (*s, MPoly::constant(v.clone()))).collect();
        self.subst_many(&subs)
    }

    /// Full evaluation; `None` if a symbol is left unassigned.
    pub fn eval_rat(&self, values: &[(Sym, Rat)]) -> Option<Rat> {
        self.eval(values).as_constant()
    }

    /// Renames symbols according to `map`.
    pub fn rename(&self, map: &[(Sym, Sym)]) -> MPoly {
        let subs: Vec<(Sym, MPoly)> = map.iter().map(|(a, b)| (*a, MPoly::var(*b))).collect();
        self.subst_many(&subs)
    }

    /// Splits into the parts odd and even in `s`.
    pub fn odd_even_split(&self, s: Sym) -> (MPoly, MPoly) {
        let (mut odd, mut even) = (Vec::new(), Vec::new());
        for (m, c) in &self.terms {
            if m.exponent(s) % 2 == 1 {
                odd.push((m.clone(), c.clone()));
            } else {
                even.push((m.clone(), c.clone()));
            }
        }
        (MPoly { terms: odd }, MPoly { terms: even })
    }

    pub fn is_odd_in(&self, s: Sym) -> bool {
        self.terms.iter().all(|(m, _)| m.exponent(s) % 2 == 1)
    }

    /// Divides every coefficient by the leading one.
    pub fn monic(&self) -> (Rat, MPoly) {
        match self.terms.first() {
            None => (Rat::zero(), MPoly::zero()),
            Some((_, c)) => {
                let c = c.clone();
                (c.clone(), self.scale(&c.recip()))
            }
        }
    }

    /// Exact division by a single term; `None` if some term is not divisible.
    pub fn div_term(&self, m: &Monomial, c: &Rat) -> Option<MPoly> {
        if c.is_zero() {
            return None;
        }
        let inv = c.recip();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, k) in &self.terms {
            terms.push((t.div(m)?, k * &inv));
        }
        Some(MPoly { terms })
    }

    /// Writes `self = a * s * f(s^2)` with `f` monic in `t`.
    ///
    /// Succeeds iff the polynomial is odd in `s` and its top coefficient in
    /// `s` is a single term (a rational times a power product of other
    /// symbols) dividing every other coefficient. The zero polynomial
    /// matches with `a = 0`, `f = 1`.
    pub fn match_axf(&self, s: Sym, t: Sym) -> Option<AxfMatch> {
        if self.is_zero() {
            return Some(AxfMatch {
                scale: MPoly::zero(),
                f: MPoly::one(),
            });
        }
        if !self.is_odd_in(s) {
            return None;
        }
        let coeffs = self.univariate_coeffs(s);
        let top = coeffs.last().expect("nonzero polynomial");
        let (lm, lc) = match top.terms.as_slice() {
            [(m, c)] => (m.clone(), c.clone()),
            _ => return None,
        };
        let mut f_terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = c.div_term(&lm, &lc)?;
            let tk = Monomial::power(t, ((k - 1) / 2) as u16);
            for (m, v) in q.terms {
                f_terms.push((m.mul(&tk), v));
            }
        }
        Some(AxfMatch {
            scale: MPoly::term(lm, lc),
            f: MPoly::from_terms(f_terms),
        })
    }

    /// Canonical text form with explicit `*` and `^`.
    pub fn to_canonical(&self) -> String {
        self.to_string()
    }
}

/// Result of [`MPoly::match_axf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxfMatch {
    pub scale: MPoly,
    pub f: MPoly,
}

fn write_monomial(out: &mut String, m: &Monomial) {
    let mut first = true;
    for (s, e) in m.iter() {
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&s.name());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&fmt_rat(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&fmt_rat(&mag));
                    out.push('*');
                }
                write_monomial(&mut out, m);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

fn merge(a: &[(Monomial, Rat)], b: &[(Monomial, Rat)], negate_b: bool) -> Vec<(Monomial, Rat)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &Rat| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((b[j].0.clone(), sign(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 + sign(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
    out
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        MPoly {
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        MPoly {
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        MPoly::from_map(acc)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for (_, c) in &mut self.terms {
            *c = -&*c;
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        self.terms = merge(&self.terms, &rhs.terms, false);
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        self.terms = merge(&self.terms, &rhs.terms, true);
    }
}

impl From<Sym> for MPoly {
    fn from(s: Sym) -> Self {
        MPoly::var(s)
    }
}

impl From<Rat> for MPoly {
    fn from(c: Rat) -> Self {
        MPoly::constant(c)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> Self {
        MPoly::int(n)
    }
}

impl std::iter::Sum for MPoly {
    fn sum<I: Iterator<Item = MPoly>>(iter: I) -> MPoly {
        iter.fold(MPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl serde::Serialize for MPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for MPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        super::parse::parse_poly(&text, &super::parse::Registry::auto()).map_err(serde::de::Error::custom)
    }
}
