use super::algebra::{LieAlg, LieElem};
use crate::error::Error;
use crate::exactpoly::{int, MPoly, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Literal,
    Phi { a: MPoly, b: MPoly, c: MPoly, d: MPoly },
    Psi,
}

/// A linear map of the algebra; column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutMatrix {
    m: Vec<Vec<MPoly>>,
    provenance: Provenance,
}

impl AutMatrix {
    pub fn literal(m: Vec<Vec<MPoly>>) -> Result<Self, Error> {
        let n = m.len();
        if n == 0 || m.iter().any(|row| row.len() != n) {
            return Err(Error::Automorphism("matrix must be square".into()));
        }
        Ok(AutMatrix {
            m,
            provenance: Provenance::Literal,
        })
    }

    pub fn identity(n: usize) -> Self {
        let m = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { MPoly::one() } else { MPoly::zero() })
                    .collect()
            })
            .collect();
        AutMatrix {
            m,
            provenance: Provenance::Literal,
        }
    }

    /// The sl2 automorphism with `e -> a^2 e - c^2 f - ac h`,
    /// `f -> -b^2 e + d^2 f + bd h`, `h -> -2ab e + 2cd f + (ad+bc) h`.
    ///
    /// Numeric arguments must satisfy `ad - bc = 1`. Symbolic arguments are
    /// accepted; identities are then checked modulo `ad - bc - 1`.
    pub fn phi(a: MPoly, b: MPoly, c: MPoly, d: MPoly) -> Result<Self, Error> {
        let det = &(&a * &d) - &(&b * &c);
        if let Some(v) = det.as_constant() {
            if v != int(1) {
                return Err(Error::Automorphism(format!("ad - bc = {v}, expected 1")));
            }
        }
        let two = int(2);
        let m = vec![
            vec![&a * &a, -(&b * &b), (&a * &b).scale(&-two.clone())],
            vec![-(&c * &c), &d * &d, (&c * &d).scale(&two)],
            vec![-(&a * &c), &b * &d, &(&a * &d) + &(&b * &c)],
        ];
        Ok(AutMatrix {
            m,
            provenance: Provenance::Phi { a, b, c, d },
        })
    }

    pub fn phi_int(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        Self::phi(MPoly::int(a), MPoly::int(b), MPoly::int(c), MPoly::int(d))
    }

    /// `e <-> f`, `h -> -h`.
    pub fn psi() -> Self {
        let (o, z) = (MPoly::one(), MPoly::zero());
        let m = vec![
            vec![z.clone(), o.clone(), z.clone()],
            vec![o, z.clone(), z.clone()],
            vec![z.clone(), z, MPoly::int(-1)],
        ];
        AutMatrix {
            m,
            provenance: Provenance::Psi,
        }
    }

    pub fn dim(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &MPoly {
        &self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<MPoly>] {
        &self.m
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn apply(&self, v: &LieElem) -> LieElem {
        (0..self.dim())
            .map(|i| v.iter().enumerate().map(|(j, vj)| &self.m[i][j] * vj).sum())
            .collect()
    }

    pub fn transpose(&self) -> AutMatrix {
        let n = self.dim();
        AutMatrix {
            m: (0..n).map(|i| (0..n).map(|j| self.m[j][i].clone()).collect()).collect(),
            provenance: Provenance::Literal,
        }
    }

    /// Reduces `p` modulo `ad - bc - 1` when this is a symbolic `phi`;
    /// otherwise returns `p` unchanged. The result is zero iff `p` lies in
    /// the ideal (for `a`, `b`, `c`, `d` independent symbols).
    pub fn reduce_relation(&self, p: &MPoly) -> MPoly {
        let Provenance::Phi { a, b, c, d } = &self.provenance else {
            return p.clone();
        };
        let Some(ds) = d.symbols().into_iter().next().filter(|s| *d == MPoly::var(*s)) else {
            return p.clone();
        };
        if a.is_constant() {
            return p.clone();
        }
        // a^k p(d) = sum_j p_j a^(k-j) (ad)^j with ad := 1 + bc.
        let coeffs = p.univariate_coeffs(ds);
        let k = coeffs.len().saturating_sub(1) as u32;
        let ad = &MPoly::one() + &(b * c);
        let mut out = MPoly::zero();
        let mut ad_pow = MPoly::one();
        for (j, pj) in coeffs.iter().enumerate() {
            out += &(&(pj * &a.pow(k - j as u32)) * &ad_pow);
            ad_pow = &ad_pow * &ad;
        }
        out
    }

    /// Checks `[phi(u), phi(v)] = phi([u, v])` on all basis pairs.
    pub fn preserves_bracket(&self, g: &LieAlg) -> Result<bool, Error> {
        if g.dim() != self.dim() {
            return Err(Error::Dimension {
                expected: g.dim(),
                found: self.dim(),
            });
        }
        for i in 0..g.dim() as u8 {
            for j in 0..g.dim() as u8 {
                let (u, v) = (g.basis_elem(i), g.basis_elem(j));
                let lhs = g.bracket(&self.apply(&u), &self.apply(&v))?;
                let rhs = self.apply(&g.bracket(&u, &v)?);
                for (l, r) in lhs.iter().zip(&rhs) {
                    if !self.reduce_relation(&(l - r)).is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// A symmetric 3x3 matrix in the basis order (e, f, h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMat3 {
    a: [[MPoly; 3]; 3],
}

impl SymMat3 {
    pub fn new(a: [[MPoly; 3]; 3]) -> Result<Self, Error> {
        for i in 0..3 {
            for j in 0..i {
                if a[i][j] != a[j][i] {
                    return Err(Error::Input(format!("matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(SymMat3 { a })
    }

    pub fn from_rat(a: [[Rat; 3]; 3]) -> Result<Self, Error> {
        Self::new(a.map(|row| row.map(MPoly::constant)))
    }

    pub fn zero() -> Self {
        SymMat3 { a: Default::default() }
    }

    /// The matrix with a single 1 at `(i, i)`.
    pub fn unit(i: usize) -> Self {
        let mut m = Self::zero();
        m.a[i][i] = MPoly::one();
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.a[i][j]
    }

    pub fn entries(&self) -> &[[MPoly; 3]; 3] {
        &self.a
    }

    pub fn is_numeric(&self) -> bool {
        self.a.iter().flatten().all(MPoly::is_constant)
    }

    /// All nine 2x2 minors.
    pub fn minors(&self) -> Vec<MPoly> {
        let pairs = [(0, 1), (0, 2), (1, 2)];
        let mut out = Vec::with_capacity(9);
        for (r1, r2) in pairs {
            for (c1, c2) in pairs {
                let m = &(&self.a[r1][c1] * &self.a[r2][c2]) - &(&self.a[r1][c2] * &self.a[r2][c1]);
                out.push(m);
            }
        }
        out
    }

    pub fn rank_le_1(&self) -> Result<bool, Error> {
        if !self.is_numeric() {
            return Err(Error::Parametric);
        }
        Ok(self.minors().iter().all(MPoly::is_zero))
    }

    /// `phi M phi^T`.
    pub fn congruence(&self, phi: &AutMatrix) -> Result<SymMat3, Error> {
        if phi.dim() != 3 {
            return Err(Error::Dimension {
                expected: 3,
                found: phi.dim(),
            });
        }
        let mut out: [[MPoly; 3]; 3] = Default::default();
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut acc = MPoly::zero();
                for k in 0..3 {
                    if phi.entry(i, k).is_zero() {
                        continue;
                    }
                    for l in 0..3 {
                        if self.a[k][l].is_zero() || phi.entry(j, l).is_zero() {
                            continue;
                        }
                        acc += &(&(phi.entry(i, k) * &self.a[k][l]) * phi.entry(j, l));
                    }
                }
                *cell = acc;
            }
        }
        Ok(SymMat3 { a: out })
    }
}
