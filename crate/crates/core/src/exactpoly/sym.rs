//! Process-wide symbol interning.
//!
//! Every polynomial in the crate shares one append-only interner, so a
//! [`Sym`] is just a small integer. Reserved names are interned eagerly in a
//! fixed order on first use; that keeps ids (and therefore the canonical
//! term order) identical across runs and across threads.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

/// Highest `k` pre-interned for the `c_<q><l>_<k>` and `f<k>` families.
pub const RESERVED_DEGREE: usize = 15;

const BASIS: [&str; 3] = ["e", "f", "h"];

/// An interned symbol. Equal names always map to equal ids.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(u16);

struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u16>,
}

impl Interner {
    fn intern(&mut self, name: &str) -> u16 {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = u16::try_from(self.names.len()).expect("symbol table exhausted");
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }
}

fn reserved_names() -> Vec<String> {
    let mut names: Vec<String> = ["d", "d1", "d2", "d3", "d4", "d5", "d6", "lam", "mu", "nu"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for s in ["x", "y", "z", "t", "alpha", "beta", "gamma", "zeta", "lhh"] {
        names.push(s.to_string());
    }
    for s in ["a", "b", "c", "s", "u", "v", "w"] {
        names.push(s.to_string());
    }
    for q in BASIS {
        for l in BASIS {
            names.push(format!("a_{q}{l}"));
        }
    }
    for k in 0..=RESERVED_DEGREE {
        names.push(format!("f{k}"));
    }
    for q in BASIS {
        for l in BASIS {
            for k in 0..=RESERVED_DEGREE {
                names.push(format!("c_{q}{l}_{k}"));
            }
        }
    }
    names
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| {
        let mut interner = Interner {
            names: Vec::new(),
            ids: HashMap::new(),
        };
        for name in reserved_names() {
            interner.intern(&name);
        }
        RwLock::new(interner)
    })
}

impl Sym {
    /// Interns `name`, returning the existing symbol when already present.
    pub fn new(name: &str) -> Sym {
        {
            let guard = interner().read().expect("interner poisoned");
            if let Some(&id) = guard.ids.get(name) {
                return Sym(id);
            }
        }
        let mut guard = interner().write().expect("interner poisoned");
        Sym(guard.intern(name))
    }

    /// Looks a name up without interning it.
    pub fn lookup(name: &str) -> Option<Sym> {
        let guard = interner().read().expect("interner poisoned");
        guard.ids.get(name).copied().map(Sym)
    }

    pub fn name(self) -> String {
        let guard = interner().read().expect("interner poisoned");
        guard.names[self.0 as usize].clone()
    }

    pub fn id(self) -> u16 {
        self.0
    }

    pub(crate) fn from_id(id: u16) -> Sym {
        Sym(id)
    }

    /// The `i`-th tensor slot variable `d<i>` (1-based).
    pub fn slot(i: usize) -> Sym {
        assert!((1..=6).contains(&i), "slot index {i} out of range");
        Sym::new(&format!("d{i}"))
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Commonly used symbols, resolved once.
pub mod syms {
    use super::Sym;

    pub fn d() -> Sym {
        Sym::new("d")
    }
    pub fn lam() -> Sym {
        Sym::new("lam")
    }
    pub fn mu() -> Sym {
        Sym::new("mu")
    }
    pub fn x() -> Sym {
        Sym::new("x")
    }
    pub fn y() -> Sym {
        Sym::new("y")
    }
    pub fn z() -> Sym {
        Sym::new("z")
    }
    pub fn t() -> Sym {
        Sym::new("t")
    }
    pub fn alpha() -> Sym {
        Sym::new("alpha")
    }
    pub fn beta() -> Sym {
        Sym::new("beta")
    }
    pub fn gamma() -> Sym {
        Sym::new("gamma")
    }
    pub fn zeta() -> Sym {
        Sym::new("zeta")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_bijective() {
        let a = Sym::new("some_param");
        let b = Sym::new("some_param");
        let c = Sym::new("other_param");
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.name(), "some_param");
    }

    #[test]
    fn reserved_ids_are_fixed() {
        assert_eq!(Sym::new("d").id(), 0);
        assert_eq!(Sym::slot(1).id(), 1);
        assert!(Sym::lookup("c_hh_15").is_some());
        assert!(Sym::slot(3) < Sym::new("lam"));
    }
}
