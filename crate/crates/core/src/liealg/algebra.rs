use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactpoly::{fmt_rat, int, parse_rat, MPoly, Rat};

/// A finite-dimensional Lie algebra given by structure constants
/// `[b_i, b_j] = sum_k c_ij^k b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlg {
    name: String,
    basis: Vec<String>,
    table: Vec<Vec<Vec<(u8, Rat)>>>,
}

/// JSON algebra definition: basis names plus nonzero `(i, j, k, c)` triples.
/// A triple fixes `c_ij^k`; the antisymmetric partner is implied unless
/// listed explicitly, in which case it must agree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LieAlgDef {
    #[serde(default)]
    pub name: String,
    pub basis: Vec<String>,
    pub constants: Vec<(usize, usize, usize, String)>,
}

/// An element of the algebra with polynomial coefficients.
pub type LieElem = Vec<MPoly>;

impl LieAlg {
    pub fn new(name: &str, basis: Vec<String>, triples: &[(usize, usize, usize, Rat)]) -> Result<Self, Error> {
        let n = basis.len();
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::Algebra(format!("unsupported dimension {n}")));
        }
        let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
        let mut given = vec![vec![vec![false; n]; n]; n];
        for (i, j, k, v) in triples {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::Algebra(format!("index out of range in ({i},{j},{k})")));
            }
            if given[i][j][k] && c[i][j][k] != *v {
                return Err(Error::Algebra(format!("conflicting constant for ({i},{j},{k})")));
            }
            c[i][j][k] = v.clone();
            given[i][j][k] = true;
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if given[i][j][k] && given[j][i][k] && c[i][j][k] != -c[j][i][k].clone() {
                        return Err(Error::Algebra(format!("antisymmetry fails at ({i},{j},{k})")));
                    }
                    if given[i][j][k] && !given[j][i][k] {
                        c[j][i][k] = -c[i][j][k].clone();
                    }
                }
            }
        }
        for i in 0..n {
            if c[i][i].iter().any(|v| !v.is_zero()) {
                return Err(Error::Algebra(format!("[b{i}, b{i}] must vanish")));
            }
        }
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .filter(|&k| !c[i][j][k].is_zero())
                            .map(|k| (k as u8, c[i][j][k].clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let alg = LieAlg {
            name: name.to_owned(),
            basis,
            table,
        };
        if let Some((i, j, k)) = alg.jacobi_violation() {
            return Err(Error::Algebra(format!("Jacobi identity fails on ({i},{j},{k})")));
        }
        Ok(alg)
    }

    /// sl2 with basis (e, f, h): `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f`.
    pub fn sl2() -> Self {
        let triples = [(0, 1, 2, int(1)), (2, 0, 0, int(2)), (2, 1, 1, int(-2))];
        LieAlg::new("sl2", vec!["e".into(), "f".into(), "h".into()], &triples).expect("sl2 is a Lie algebra")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        (name == "sl2").then(Self::sl2)
    }

    pub fn from_def(def: &LieAlgDef) -> Result<Self, Error> {
        let mut triples = Vec::with_capacity(def.constants.len());
        for (i, j, k, text) in &def.constants {
            let v = parse_rat(text).ok_or_else(|| Error::Algebra(format!("bad rational '{text}'")))?;
            triples.push((*i, *j, *k, v));
        }
        Self::new(&def.name, def.basis.clone(), &triples)
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        let def: LieAlgDef = serde_json::from_str(text).map_err(|e| Error::Algebra(e.to_string()))?;
        Self::from_def(&def)
    }

    pub fn to_def(&self) -> LieAlgDef {
        let mut constants = Vec::new();
        for (i, row) in self.table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                for (k, v) in entry {
                    constants.push((i, j, *k as usize, fmt_rat(v)));
                }
            }
        }
        LieAlgDef {
            name: self.name.clone(),
            basis: self.basis.clone(),
            constants,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.basis.iter().position(|b| b == name).map(|i| i as u8)
    }

    /// `[b_i, b_j]` as sparse `(k, c_ij^k)` pairs.
    pub fn bracket_basis(&self, i: u8, j: u8) -> &[(u8, Rat)] {
        &self.table[i as usize][j as usize]
    }

    pub fn basis_elem(&self, i: u8) -> LieElem {
        let mut v = vec![MPoly::zero(); self.dim()];
        v[i as usize] = MPoly::one();
        v
    }

    pub fn bracket(&self, x: &LieElem, y: &LieElem) -> Result<LieElem, Error> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: x.len().max(y.len()),
            });
        }
        let mut out = vec![MPoly::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                let prod = xi * yj;
                for (k, c) in self.bracket_basis(i as u8, j as u8) {
                    out[*k as usize] += &prod.scale(c);
                }
            }
        }
        Ok(out)
    }

    fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let br = |x: &Vec<Rat>, y: &Vec<Rat>| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); n];
            for i in 0..n {
                for j in 0..n {
                    if x[i].is_zero() || y[j].is_zero() {
                        continue;
                    }
                    for (k, c) in &self.table[i][j] {
                        out[*k as usize] += &x[i] * &y[j] * c;
                    }
                }
            }
            out
        };
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); n];
            v[i] = int(1);
            v
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (unit(i), unit(j), unit(k));
                    let t1 = br(&a, &br(&b, &c));
                    let t2 = br(&b, &br(&c, &a));
                    let t3 = br(&c, &br(&a, &b));
                    if (0..n).any(|m| !(&t1[m] + &t2[m] + &t3[m]).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }
}
