use std::cmp::Ordering;

use smallvec::SmallVec;

use super::sym::Sym;

/// A power product `s1^e1 * s2^e2 * ...`, stored sparsely and sorted by
/// symbol id. Zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    vars: SmallVec<[(u16, u16); 4]>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(s: Sym) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: Sym, exp: u16) -> Self {
        let mut m = Self::one();
        if exp > 0 {
            m.vars.push((s.id(), exp));
            m.degree = exp as u32;
        }
        m
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Sym, u16)>) -> Self {
        let mut m = Self::one();
        for (s, e) in pairs {
            m = m.mul(&Self::power(s, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, s: Sym) -> u16 {
        match self.vars.binary_search_by_key(&s.id(), |&(id, _)| id) {
            Ok(i) => self.vars[i].1,
            Err(_) => 0,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Sym, u16)> + '_ {
        self.vars.iter().map(|&(id, e)| (Sym::from_id(id), e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.vars, &other.vars);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).expect("exponent overflow");
                    out.push((a[i].0, e));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial {
            vars: out,
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(id, e) in &self.vars {
            if j < other.vars.len() && other.vars[j].0 < id {
                return None;
            }
            if j < other.vars.len() && other.vars[j].0 == id {
                let f = other.vars[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((id, e - f)),
                }
            } else {
                out.push((id, e));
            }
        }
        if j < other.vars.len() {
            return None;
        }
        Some(Monomial {
            vars: out,
            degree: self.degree - other.degree,
        })
    }

    /// Splits off the power of `s`: returns `(exp, rest)`.
    pub fn split(&self, s: Sym) -> (u16, Self) {
        match self.vars.binary_search_by_key(&s.id(), |&(id, _)| id) {
            Ok(i) => {
                let mut rest = self.clone();
                let (_, e) = rest.vars.remove(i);
                rest.degree -= e as u32;
                (e, rest)
            }
            Err(_) => (0, self.clone()),
        }
    }
}

/// Graded lexicographic order: higher total degree first, ties broken by
/// comparing exponents symbol by symbol in id order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.vars, &other.vars);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(&(ia, ea)), Some(&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(s, e)| {
                if e == 1 {
                    s.name()
                } else {
                    format!("{}^{}", s.name(), e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
