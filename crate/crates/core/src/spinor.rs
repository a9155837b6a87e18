//! Complex spinors of dimension `2^m`, `m = floor(n/2)`, and Clifford
//! multiplication by frame vectors.
//!
//! Basis spinor `u_k` is the tensor product state whose bit `r` is bit `r` of
//! `k`. For `r < m` the generators `e_{2r+1}`, `e_{2r+2}` act as
//! `σ3 ⊗ … ⊗ σ3 ⊗ iσ1 ⊗ 1 ⊗ …` and `σ3 ⊗ … ⊗ σ3 ⊗ iσ2 ⊗ 1 ⊗ …`, with the
//! Pauli factor on bit `r`. In odd dimension the last generator is
//! `c·γ1⋯γ2m` with `c = i` for even `m` and `c = 1` for odd `m`, so that it
//! squares to −1. With this table, `u_0` is annihilated by the
//! anti-self-dual 2-forms `e12−e34`, `e13−e42`, `e14−e23` in dimension 4.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::exterior::Form;
use crate::scalar::{GaussRat, Poly, Symbol};
use crate::{Error, Result};

/// A dense square matrix over Q(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    dim: usize,
    entries: Vec<GaussRat>,
}

impl Matrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: alloc::vec![GaussRat::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = GaussRat::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &GaussRat {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: GaussRat) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GaussRat::is_zero)
    }

    pub fn scale(&self, c: &GaussRat) -> Matrix {
        Matrix { dim: self.dim, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix { dim: self.dim, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() }
    }
}

/// An element of the spinor module with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Spinor {
    terms: BTreeMap<usize, Poly>,
}

impl Spinor {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis spinor `u_k`.
    pub fn basis(k: usize) -> Self {
        let mut s = Self::zero();
        s.add_term(k, Poly::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: usize, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry += &coeff;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: usize) -> Poly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Poly) -> Spinor {
        self.map_coefficients(|p| p * c)
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Poly) -> Poly) -> Spinor {
        let mut out = Spinor::zero();
        for (k, p) in &self.terms {
            out.add_term(*k, f(p));
        }
        out
    }

    pub fn substitute_symbols(&self, rules: &BTreeMap<Symbol, Poly>) -> Spinor {
        self.map_coefficients(|p| p.substitute(rules))
    }
}

impl Add<&Spinor> for &Spinor {
    type Output = Spinor;
    fn add(self, rhs: &Spinor) -> Spinor {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_term(*k, p.clone());
        }
        out
    }
}

impl Sub<&Spinor> for &Spinor {
    type Output = Spinor;
    fn sub(self, rhs: &Spinor) -> Spinor {
        let mut out = self.clone();
        for (k, p) in &rhs.terms {
            out.add_term(*k, -p);
        }
        out
    }
}

impl Neg for &Spinor {
    type Output = Spinor;
    fn neg(self) -> Spinor {
        self.map_coefficients(|p| -p)
    }
}

impl fmt::Display for Spinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, p)) in self.terms.iter().enumerate() {
            let s = if p.num_terms() == 1 && p.constant_value().is_some() {
                let c = p.constant_value().expect("constant");
                if c.is_one() {
                    alloc::format!("u{k}")
                } else if (-&c).is_one() {
                    alloc::format!("-u{k}")
                } else {
                    alloc::format!("{c}*u{k}")
                }
            } else {
                alloc::format!("({p})*u{k}")
            };
            if n > 0 && !s.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&s)?;
        }
        Ok(())
    }
}

/// The action of the frame vectors `e_1..e_n` on spinors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordTable {
    n: usize,
    gammas: Vec<Matrix>,
}

fn pauli_action(dim: usize, bit: usize, factor: u8) -> Matrix {
    // factor: 1 => iσ1, 2 => iσ2, 3 => σ3, 0 => identity
    let mut m = Matrix::zero(dim);
    for k in 0..dim {
        let b = (k >> bit) & 1;
        let (target, value) = match factor {
            0 => (k, GaussRat::one()),
            3 => (k, if b == 0 { GaussRat::one() } else { GaussRat::from_integer(-1) }),
            // iσ1 |b> = i |1-b>
            1 => (k ^ (1 << bit), GaussRat::i()),
            // iσ2 |0> = -|1>, iσ2 |1> = |0>
            2 => (k ^ (1 << bit), if b == 0 { GaussRat::from_integer(-1) } else { GaussRat::one() }),
            _ => unreachable!(),
        };
        m.set(target, k, value);
    }
    m
}

impl CliffordTable {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension(n));
        }
        let m = n / 2;
        let dim = 1usize << m;
        let mut gammas = Vec::with_capacity(n);
        for r in 0..m {
            for factor in [1u8, 2] {
                let mut g = pauli_action(dim, r, factor);
                for lower in 0..r {
                    g = g.mul(&pauli_action(dim, lower, 3));
                }
                gammas.push(g);
            }
        }
        if n % 2 == 1 {
            let mut vol = Matrix::identity(dim);
            for g in &gammas {
                vol = vol.mul(g);
            }
            let c = if m.is_multiple_of(2) { GaussRat::i() } else { GaussRat::one() };
            gammas.push(vol.scale(&c));
        }
        Ok(Self { n, gammas })
    }

    /// Builds a table from explicit matrices, checking the Clifford relations.
    pub fn from_matrices(gammas: Vec<Matrix>) -> Result<Self> {
        let n = gammas.len();
        if n == 0 || gammas.iter().any(|g| g.dim() != 1 << (n / 2)) {
            return Err(Error::Dimension(n));
        }
        let table = Self { n, gammas };
        if !table.satisfies_relations() {
            return Err(Error::UnsupportedKind("matrices violate the Clifford relations".to_string()));
        }
        Ok(table)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn spinor_dimension(&self) -> usize {
        1 << (self.n / 2)
    }

    /// The matrix of `e_i·` (1-based).
    pub fn gamma(&self, i: usize) -> &Matrix {
        &self.gammas[i - 1]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.gammas
    }

    /// `γ_i γ_j + γ_j γ_i = −2 δ_ij` for all pairs.
    pub fn satisfies_relations(&self) -> bool {
        let dim = self.spinor_dimension();
        for i in 0..self.n {
            for j in 0..self.n {
                let anti = self.gammas[i].mul(&self.gammas[j]).add(&self.gammas[j].mul(&self.gammas[i]));
                let expected =
                    if i == j { Matrix::identity(dim).scale(&GaussRat::from_integer(-2)) } else { Matrix::zero(dim) };
                if anti != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Action of the single frame vector `e_i`.
    pub fn apply(&self, i: usize, psi: &Spinor) -> Spinor {
        let g = self.gamma(i);
        let mut out = Spinor::zero();
        for (&k, p) in &psi.terms {
            for row in 0..g.dim() {
                let c = g.get(row, k);
                if !c.is_zero() {
                    out.add_term(row, p.scale(c));
                }
            }
        }
        out
    }

    /// Clifford multiplication by a vector given as a degree-one form.
    pub fn clifford_mul(&self, v: &Form, psi: &Spinor) -> Result<Spinor> {
        let mut out = Spinor::zero();
        for (m, p) in v.terms() {
            if m.degree() != 1 {
                return Err(Error::Degree { expected: 1, found: v.to_string() });
            }
            let i = m.indices().next().expect("degree one");
            if i > self.n {
                return Err(Error::Index { index: i, dimension: self.n });
            }
            out = &out + &self.apply(i, psi).scale(p);
        }
        Ok(out)
    }
}
