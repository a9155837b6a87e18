use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{Signed, Zero};

use super::{GaussRat, Symbol};

/// A product of symbol powers, sorted by symbol with positive exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PowerProduct(Vec<(Symbol, u32)>);

impl PowerProduct {
    pub fn one() -> Self {
        Self(Vec::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// The symbol if this is a single symbol to the first power.
    pub fn as_symbol(&self) -> Option<&Symbol> {
        match self.0.as_slice() {
            [(s, 1)] => Some(s),
            _ => None,
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((sa, ea)), Some((sb, eb))) => {
                    if sa < sb {
                        out.push((sa.clone(), *ea));
                        a.next();
                    } else if sb < sa {
                        out.push((sb.clone(), *eb));
                        b.next();
                    } else {
                        out.push((sa.clone(), ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(_), None) => out.extend(a.by_ref().cloned()),
                (None, Some(_)) => out.extend(b.by_ref().cloned()),
                (None, None) => break,
            }
        }
        Self(out)
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in real symbols with Gaussian-rational coefficients.
///
/// Zero coefficients are never stored, so equal polynomials have identical
/// term maps.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<PowerProduct, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Self::zero();
        p.add_term(PowerProduct::one(), c);
        p
    }

    pub fn symbol(s: &Symbol) -> Self {
        let mut p = Self::zero();
        p.add_term(PowerProduct(alloc::vec![(s.clone(), 1)]), GaussRat::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (including zero).
    pub fn constant_value(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&PowerProduct::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PowerProduct, &GaussRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(PowerProduct::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|pp| pp.0.iter().map(|(s, _)| s.clone())).collect()
    }

    pub fn add_term(&mut self, pp: PowerProduct, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(pp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(pp, a)| (pp.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Simultaneous substitution of symbols by polynomials.
    pub fn substitute(&self, rules: &BTreeMap<Symbol, Poly>) -> Poly {
        if rules.is_empty() || self.terms.keys().all(|pp| pp.0.iter().all(|(s, _)| !rules.contains_key(s))) {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (pp, c) in &self.terms {
            let mut kept = PowerProduct::one();
            let mut factor = Poly::one();
            for (s, e) in &pp.0 {
                match rules.get(s) {
                    Some(r) => factor = &factor * &r.pow(*e),
                    None => kept.0.push((s.clone(), *e)),
                }
            }
            for (fpp, fc) in factor.terms {
                out.add_term(kept.mul(&fpp), &fc * c);
            }
        }
        out
    }

    /// Real part, reading every symbol as real.
    pub fn real_part(&self) -> Poly {
        let mut out = Poly::zero();
        for (pp, c) in &self.terms {
            out.add_term(pp.clone(), GaussRat::from_rational(c.re().clone()));
        }
        out
    }

    /// Imaginary part, reading every symbol as real.
    pub fn imag_part(&self) -> Poly {
        let mut out = Poly::zero();
        for (pp, c) in &self.terms {
            if !c.im().is_zero() {
                out.add_term(pp.clone(), GaussRat::from_rational(c.im().clone()));
            }
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRat::is_real)
    }
}

impl From<GaussRat> for Poly {
    fn from(c: GaussRat) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::constant(GaussRat::from_integer(n))
    }
}

impl From<&Symbol> for Poly {
    fn from(s: &Symbol) -> Self {
        Poly::symbol(s)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (pp, c) in &rhs.terms {
            self.add_term(pp.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (pp, c) in &rhs.terms {
            self.add_term(pp.clone(), -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &rhs.terms {
                out.add_term(pa.mul(pb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(pp, c)| (pp.clone(), -c)).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Writes `c*pp` for a single term, omitting unit coefficients.
pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    c: &GaussRat,
    pp: &dyn fmt::Display,
    pp_is_one: bool,
) -> fmt::Result {
    if pp_is_one {
        return write!(f, "{c}");
    }
    if c.is_one() {
        write!(f, "{pp}")
    } else if (-c).is_one() {
        write!(f, "-{pp}")
    } else {
        write!(f, "{c}*{pp}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (pp, c)) in self.terms.iter().enumerate() {
            let negative = c.is_real() && c.re().is_negative();
            if k > 0 && !negative {
                f.write_str("+")?;
            }
            write_term(f, c, pp, pp.is_one())?;
        }
        Ok(())
    }
}
