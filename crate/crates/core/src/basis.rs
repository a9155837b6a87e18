//! Flag-preserving bases of sparse vectors with lazy dual bases.
//!
//! A vector is a finite combination of *simple* elements (wedge monomials,
//! symbols, basis spinors), on which the canonical pairing is orthonormal.
//! [`Basis`] keeps the inserted independent elements verbatim, in insertion
//! order, and tracks their span through a separate reduced echelon copy.
//!
//! The first call to [`Basis::components`] or [`Basis::dual_basis`] collects
//! the set `S` of simple elements met by the basis, completes the basis with
//! elements of `S` to a basis of `span S`, and inverts the matrix
//! `a[j][α] = <x_j, α>`. The inverse `b[α][j]` expresses each `α` in the
//! completed basis, so the dual basis is `x^k = Σ_α b[α][k] α`. The result is
//! cached until the next insertion.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cell::{Cell, OnceCell};
use core::fmt;

use crate::exterior::{Form, Monomial};
use crate::scalar::{GaussRat, Poly, Symbol};
use crate::spinor::Spinor;
use crate::{Error, Result};

/// A vector space element with a sparse expansion in simple elements.
pub trait SimpleExpansion: Clone {
    type Simple: Ord + Clone + fmt::Debug;

    /// Constant coordinates in the simple elements.
    fn expand(&self) -> Result<BTreeMap<Self::Simple, GaussRat>>;

    /// `Σ c α` over the given simple elements.
    fn from_simple(coords: &BTreeMap<Self::Simple, GaussRat>) -> Self;
}

impl SimpleExpansion for Form {
    type Simple = Monomial;

    fn expand(&self) -> Result<BTreeMap<Monomial, GaussRat>> {
        self.terms()
            .map(|(m, p)| match p.constant_value() {
                Some(c) => Ok((m.clone(), c)),
                None => Err(Error::NonConstant(p.to_string())),
            })
            .collect()
    }

    fn from_simple(coords: &BTreeMap<Monomial, GaussRat>) -> Self {
        let mut f = Form::zero();
        for (m, c) in coords {
            f.add_term(m.clone(), Poly::constant(c.clone()));
        }
        f
    }
}

/// Homogeneous linear polynomials, with symbols as simple elements.
impl SimpleExpansion for Poly {
    type Simple = Symbol;

    fn expand(&self) -> Result<BTreeMap<Symbol, GaussRat>> {
        self.terms()
            .map(|(pp, c)| match pp.as_symbol() {
                Some(s) => Ok((s.clone(), c.clone())),
                None => Err(Error::NonLinear(self.to_string())),
            })
            .collect()
    }

    fn from_simple(coords: &BTreeMap<Symbol, GaussRat>) -> Self {
        let mut p = Poly::zero();
        for (s, c) in coords {
            p += &Poly::symbol(s).scale(c);
        }
        p
    }
}

impl SimpleExpansion for Spinor {
    type Simple = usize;

    fn expand(&self) -> Result<BTreeMap<usize, GaussRat>> {
        self.terms()
            .map(|(k, p)| match p.constant_value() {
                Some(c) => Ok((*k, c)),
                None => Err(Error::NonConstant(p.to_string())),
            })
            .collect()
    }

    fn from_simple(coords: &BTreeMap<usize, GaussRat>) -> Self {
        let mut s = Spinor::zero();
        for (k, c) in coords {
            s.add_term(*k, Poly::constant(c.clone()));
        }
        s
    }
}

/// Outcome of inserting an element or equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Insertion {
    Retained,
    Dropped,
    Inconsistent,
}

type Row<K> = BTreeMap<K, GaussRat>;

/// Reduced echelon rows, each scaled to 1 at its pivot, with no pivot
/// occurring in any other row.
#[derive(Clone, Debug)]
struct Echelon<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self { rows: Vec::new(), pivots: BTreeMap::new() }
    }
}

fn axpy<K: Ord + Clone>(target: &mut Row<K>, f: &GaussRat, row: &Row<K>) {
    for (k, c) in row {
        let delta = f * c;
        let e = target.entry(k.clone()).or_insert_with(GaussRat::zero);
        *e -= &delta;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    fn reduce(&self, v: &mut Row<K>) {
        let hits: Vec<(usize, GaussRat)> =
            v.iter().filter_map(|(k, c)| self.pivots.get(k).map(|&r| (r, c.clone()))).collect();
        for (r, c) in hits {
            axpy(v, &c, &self.rows[r]);
        }
    }

    /// Adds a nonzero reduced row, pivoting on its first key.
    fn push(&mut self, mut v: Row<K>) {
        let (pivot, lead) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())).expect("nonzero row");
        let inv = lead.inv().expect("nonzero pivot");
        for c in v.values_mut() {
            *c = &*c * &inv;
        }
        for row in self.rows.iter_mut() {
            if let Some(f) = row.get(&pivot).cloned() {
                axpy(row, &f, &v);
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(v);
    }
}

#[derive(Clone, Debug)]
struct Setup<T: SimpleExpansion> {
    simples: Vec<T::Simple>,
    /// `b[α][j]` for α in `simples` and j over the completed basis.
    b: Vec<Vec<GaussRat>>,
    dual: Vec<T>,
}

/// An ordered, linearly independent generating set.
#[derive(Clone, Debug)]
pub struct Basis<T: SimpleExpansion> {
    elements: Vec<T>,
    shadow: Echelon<T::Simple>,
    cache: OnceCell<Setup<T>>,
    setups: Cell<usize>,
}

impl<T: SimpleExpansion> Default for Basis<T> {
    fn default() -> Self {
        Self { elements: Vec::new(), shadow: Echelon::default(), cache: OnceCell::new(), setups: Cell::new(0) }
    }
}

impl<T: SimpleExpansion> Basis<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends `x` verbatim if it is independent of the current elements.
    pub fn insert(&mut self, x: T) -> Result<Insertion> {
        let mut v = x.expand()?;
        self.shadow.reduce(&mut v);
        if v.is_empty() {
            return Ok(Insertion::Dropped);
        }
        self.shadow.push(v);
        self.elements.push(x);
        self.cache = OnceCell::new();
        Ok(Insertion::Retained)
    }

    pub fn extend<I: IntoIterator<Item = T>>(&mut self, items: I) -> Result<()> {
        for x in items {
            self.insert(x)?;
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.elements.get(i)
    }

    /// Whether `x` lies in the span of the elements.
    pub fn contains(&self, x: &T) -> Result<bool> {
        let mut v = x.expand()?;
        self.shadow.reduce(&mut v);
        Ok(v.is_empty())
    }

    /// Number of matrix inversions performed so far.
    pub fn setup_count(&self) -> usize {
        self.setups.get()
    }

    /// The simple elements meeting the basis, in canonical order.
    pub fn simple_elements(&self) -> Result<&[T::Simple]> {
        Ok(&self.setup()?.simples)
    }

    pub fn dual_basis(&self) -> Result<&[T]> {
        Ok(&self.setup()?.dual)
    }

    /// Coordinates of `x` with respect to the elements.
    pub fn components(&self, x: &T) -> Result<Vec<GaussRat>> {
        let setup = self.setup()?;
        let v = x.expand()?;
        let mut out = alloc::vec![GaussRat::zero(); setup.simples.len()];
        for (alpha, c) in &v {
            let row = setup.simples.binary_search(alpha).map_err(|_| Error::NotInSpan)?;
            for (j, b) in setup.b[row].iter().enumerate() {
                if !b.is_zero() {
                    out[j] += &(c * b);
                }
            }
        }
        if out[self.elements.len()..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotInSpan);
        }
        out.truncate(self.elements.len());
        Ok(out)
    }

    fn setup(&self) -> Result<&Setup<T>> {
        if let Some(s) = self.cache.get() {
            return Ok(s);
        }
        let expanded: Vec<Row<T::Simple>> = self.elements.iter().map(T::expand).collect::<Result<_>>()?;
        let mut simples: Vec<T::Simple> = expanded.iter().flat_map(|r| r.keys().cloned()).collect();
        simples.sort();
        simples.dedup();
        let n = simples.len();
        let col = |alpha: &T::Simple| simples.binary_search(alpha).expect("collected above");

        // a[j][α]: the elements, then the non-pivot simples as unit rows
        let mut a: Vec<Vec<GaussRat>> = Vec::with_capacity(n);
        for r in &expanded {
            let mut row = alloc::vec![GaussRat::zero(); n];
            for (alpha, c) in r {
                row[col(alpha)] = c.clone();
            }
            a.push(row);
        }
        for (k, alpha) in simples.iter().enumerate() {
            if !self.shadow.pivots.contains_key(alpha) {
                let mut row = alloc::vec![GaussRat::zero(); n];
                row[k] = GaussRat::one();
                a.push(row);
            }
        }
        debug_assert_eq!(a.len(), n);
        let b = invert(a).expect("completed basis is invertible");
        self.setups.set(self.setups.get() + 1);

        let dual = (0..self.elements.len())
            .map(|k| {
                let coords: BTreeMap<T::Simple, GaussRat> = simples
                    .iter()
                    .enumerate()
                    .filter(|(alpha, _)| !b[*alpha][k].is_zero())
                    .map(|(alpha, s)| (s.clone(), b[alpha][k].clone()))
                    .collect();
                T::from_simple(&coords)
            })
            .collect();
        let _ = self.cache.set(Setup { simples, b, dual });
        Ok(self.cache.get().expect("just set"))
    }
}

/// Gauss–Jordan inverse of a square matrix; `None` if singular.
pub(crate) fn invert(mut a: Vec<Vec<GaussRat>>) -> Option<Vec<Vec<GaussRat>>> {
    let n = a.len();
    let mut inv: Vec<Vec<GaussRat>> = (0..n)
        .map(|i| {
            let mut row = alloc::vec![GaussRat::zero(); n];
            row[i] = GaussRat::one();
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let f = a[c][c].inv()?;
        for x in a[c].iter_mut() {
            *x = &*x * &f;
        }
        for x in inv[c].iter_mut() {
            *x = &*x * &f;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let g = a[r][c].clone();
            for k in 0..n {
                if !a[c][k].is_zero() {
                    let d = &g * &a[c][k];
                    a[r][k] -= &d;
                }
                if !inv[c][k].is_zero() {
                    let d = &g * &inv[c][k];
                    inv[r][k] -= &d;
                }
            }
        }
    }
    Some(inv)
}

impl<T: SimpleExpansion + fmt::Display> fmt::Display for Basis<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum AffineKey {
    Var(Symbol),
    /// Sorts after every symbol, so it is never chosen as a pivot.
    Const,
}

/// Independent affine equations `p = 0` in real symbols.
#[derive(Clone, Debug, Default)]
pub struct AffineBasis {
    equations: Vec<Poly>,
    shadow: Echelon<AffineKey>,
    inconsistent: bool,
}

impl AffineBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: Poly) -> Result<Insertion> {
        let mut v = BTreeMap::new();
        for (pp, c) in p.terms() {
            if pp.is_one() {
                v.insert(AffineKey::Const, c.clone());
            } else if let Some(s) = pp.as_symbol() {
                v.insert(AffineKey::Var(s.clone()), c.clone());
            } else {
                return Err(Error::NonLinear(p.to_string()));
            }
        }
        self.shadow.reduce(&mut v);
        match v.keys().next() {
            None => Ok(Insertion::Dropped),
            Some(AffineKey::Const) => {
                self.inconsistent = true;
                Ok(Insertion::Inconsistent)
            }
            Some(AffineKey::Var(_)) => {
                self.shadow.push(v);
                self.equations.push(p);
                Ok(Insertion::Retained)
            }
        }
    }

    /// Number of independent equations retained.
    pub fn size(&self) -> usize {
        self.equations.len()
    }

    /// False once some equation reduced to a nonzero constant.
    pub fn is_consistent(&self) -> bool {
        !self.inconsistent
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }
}

/// A container collecting equations on the Grassmannian coordinates.
pub trait EquationSink {
    fn push_equation(&mut self, equation: Poly) -> Result<Insertion>;
    fn size(&self) -> usize;
    fn is_consistent(&self) -> bool {
        true
    }
}

impl EquationSink for Basis<Poly> {
    fn push_equation(&mut self, equation: Poly) -> Result<Insertion> {
        self.insert(equation)
    }

    fn size(&self) -> usize {
        Basis::size(self)
    }
}

impl EquationSink for AffineBasis {
    fn push_equation(&mut self, equation: Poly) -> Result<Insertion> {
        self.insert(equation)
    }

    fn size(&self) -> usize {
        AffineBasis::size(self)
    }

    fn is_consistent(&self) -> bool {
        AffineBasis::is_consistent(self)
    }
}
