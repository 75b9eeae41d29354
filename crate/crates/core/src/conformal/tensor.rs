use std::collections::BTreeMap;

use crate::error::Error;
use crate::exactpoly::{MPoly, Rat, Sym};

/// An element of `L^{⊗N}`: basis N-tuples mapped to coefficient
/// polynomials in the slot symbols `d1..dN` (plus parameters).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConfTensor {
    arity: usize,
    entries: BTreeMap<Vec<u8>, MPoly>,
}

impl ConfTensor {
    pub fn zero(arity: usize) -> Self {
        ConfTensor {
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<u8>, coeff: MPoly) {
        assert_eq!(tuple.len(), self.arity, "tuple arity");
        if coeff.is_zero() {
            return;
        }
        match self.entries.entry(tuple) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn with_term(mut self, tuple: Vec<u8>, coeff: MPoly) -> Self {
        self.add_term(tuple, coeff);
        self
    }

    /// The coefficient at `tuple` (zero when absent).
    pub fn project(&self, tuple: &[u8]) -> MPoly {
        self.entries.get(tuple).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &MPoly)> {
        self.entries.iter()
    }

    pub fn map_coeffs(&self, f: impl Fn(&MPoly) -> MPoly) -> ConfTensor {
        let mut out = ConfTensor::zero(self.arity);
        for (k, v) in &self.entries {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    pub fn add(&self, other: &ConfTensor) -> Result<ConfTensor, Error> {
        self.check_arity(other.arity)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ConfTensor) -> Result<ConfTensor, Error> {
        self.check_arity(other.arity)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_term(k.clone(), -v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> ConfTensor {
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn subst(&self, s: Sym, value: &MPoly) -> ConfTensor {
        self.map_coeffs(|p| p.subst(s, value))
    }

    pub fn subst_many(&self, subs: &[(Sym, MPoly)]) -> ConfTensor {
        self.map_coeffs(|p| p.subst_many(subs))
    }

    pub fn symbols(&self) -> std::collections::BTreeSet<Sym> {
        self.entries.values().flat_map(|p| p.symbols()).collect()
    }

    pub fn check_arity(&self, expected: usize) -> Result<(), Error> {
        if self.arity != expected {
            return Err(Error::Arity {
                expected,
                found: self.arity,
            });
        }
        Ok(())
    }

    /// Applies a linear map to every slot. `m[i][j]` is the `i`-th
    /// coordinate of the image of basis vector `j`.
    pub fn map_basis(&self, m: &[Vec<MPoly>]) -> ConfTensor {
        let mut out = ConfTensor::zero(self.arity);
        for (tuple, coeff) in &self.entries {
            let mut partial: Vec<(Vec<u8>, MPoly)> = vec![(Vec::with_capacity(self.arity), coeff.clone())];
            for &j in tuple {
                let mut next = Vec::new();
                for (prefix, c) in &partial {
                    for (i, row) in m.iter().enumerate() {
                        let w = &row[j as usize];
                        if w.is_zero() {
                            continue;
                        }
                        let mut t = prefix.clone();
                        t.push(i as u8);
                        next.push((t, c * w));
                    }
                }
                partial = next;
            }
            for (t, c) in partial {
                out.add_term(t, c);
            }
        }
        out
    }

    /// Permutes tensor slots and the matching slot symbols: slot `i` of the
    /// result is slot `perm[i]` of `self`.
    pub fn permute_slots(&self, perm: &[usize]) -> ConfTensor {
        assert_eq!(perm.len(), self.arity);
        let subs: Vec<(Sym, MPoly)> = (0..self.arity)
            .map(|i| (Sym::slot(perm[i] + 1), MPoly::var(Sym::slot(i + 1))))
            .collect();
        let mut out = ConfTensor::zero(self.arity);
        for (tuple, coeff) in &self.entries {
            let t: Vec<u8> = perm.iter().map(|&p| tuple[p]).collect();
            out.add_term(t, coeff.subst_many(&subs));
        }
        out
    }
}
