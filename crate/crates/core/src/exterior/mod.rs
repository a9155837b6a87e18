//! The exterior algebra over the generators `e1..en` of a coframe.
//!
//! A [`Form`] is a polynomial-weighted sum of wedge monomials. Monomials are
//! kept with strictly increasing generator indices and are ordered
//! lexicographically, so every form has exactly one stored representation.
//! Generators double as vector fields through the canonical pairing, which
//! makes the coframe orthonormal.

mod parse;

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub, SubAssign};

pub use parse::parse_form;

use crate::scalar::{write_term, GaussRat, Poly, Symbol};
use crate::{Error, Result};

/// A wedge product of distinct generators, stored with strictly increasing
/// 1-based indices. The empty monomial is the unit scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    /// Sorts `indices`, returning the permutation sign, or `None` when an
    /// index repeats (the product vanishes).
    pub fn normalize(indices: &[usize]) -> Option<(Monomial, bool)> {
        let mut v: Vec<u16> = indices.iter().map(|&i| i as u16).collect();
        let mut negative = false;
        // insertion sort; the inputs are short
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Monomial(v), negative))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&i| i as usize)
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&(index as u16)).is_ok()
    }

    /// Wedge of two monomials with its sign; `None` if they share a generator.
    pub fn wedge(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let mut negative = false;
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    // b[j] moves past the remaining a's
                    if (a.len() - i) % 2 == 1 {
                        negative = !negative;
                    }
                    j += 1;
                }
                core::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((Monomial(out), negative))
    }

    fn without_position(&self, pos: usize) -> Monomial {
        let mut v = self.0.clone();
        v.remove(pos);
        Monomial(v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("e")?;
        if self.0.iter().all(|&i| i < 10) {
            for i in &self.0 {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            f.write_str("(")?;
            for (k, i) in self.0.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{i}")?;
            }
            f.write_str(")")
        }
    }
}

/// A differential form (or, through the pairing, a vector field when it has
/// degree one).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Form {
    terms: BTreeMap<Monomial, Poly>,
}

impl Form {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(p: Poly) -> Self {
        let mut f = Self::zero();
        f.add_term(Monomial::unit(), p);
        f
    }

    /// The generator `e^index` (1-based).
    pub fn generator(index: usize) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        Self::from_monomial(Monomial(alloc::vec![index as u16]), Poly::one())
    }

    pub fn from_monomial(m: Monomial, coeff: Poly) -> Self {
        let mut f = Self::zero();
        f.add_term(m, coeff);
        f
    }

    /// `coeff * e^{i1} ^ e^{i2} ^ ...` in the given (possibly unsorted) order.
    pub fn wedge_of(indices: &[usize], coeff: Poly) -> Self {
        match Monomial::normalize(indices) {
            None => Self::zero(),
            Some((m, negative)) => Self::from_monomial(m, if negative { -coeff } else { coeff }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// All monomial/coefficient pairs in canonical monomial order.
    pub fn coefficients(&self) -> Vec<(Monomial, Poly)> {
        self.terms.iter().map(|(m, p)| (m.clone(), p.clone())).collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Coefficient of the generator `e^index` in a one-form.
    pub fn component(&self, index: usize) -> Poly {
        self.coefficient(&Monomial(alloc::vec![index as u16]))
    }

    /// Common degree of all monomials; 0 for scalars and for the zero form.
    pub fn degree(&self) -> Result<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next().unwrap_or(0);
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::MixedDegree(self.to_string()))
        }
    }

    pub fn max_index(&self) -> usize {
        self.terms.keys().flat_map(|m| m.0.last().copied()).max().unwrap_or(0) as usize
    }

    pub fn scale(&self, c: &Poly) -> Form {
        if c.is_zero() {
            return Form::zero();
        }
        let mut out = Form::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), p * c);
        }
        out
    }

    pub fn scale_by(&self, c: &GaussRat) -> Form {
        let mut out = Form::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), p.scale(c));
        }
        out
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Poly) -> Poly) -> Form {
        let mut out = Form::zero();
        for (m, p) in &self.terms {
            out.add_term(m.clone(), f(p));
        }
        out
    }

    pub fn substitute_symbols(&self, rules: &BTreeMap<Symbol, Poly>) -> Form {
        if rules.is_empty() {
            return self.clone();
        }
        self.map_coefficients(|p| p.substitute(rules))
    }

    pub fn wedge(&self, other: &Form) -> Form {
        let mut out = Form::zero();
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                if let Some((m, negative)) = ma.wedge(mb) {
                    let c = pa * pb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// Interior product `v ⌟ self` by a degree-one `v`.
    pub fn hook(&self, v: &Form) -> Result<Form> {
        hook(v, self)
    }

    /// Replaces generators simultaneously by one-forms (or zero).
    pub fn substitute(&self, rules: &BTreeMap<usize, Form>) -> Result<Form> {
        for rhs in rules.values() {
            if !rhs.is_zero() && rhs.degree().ok() != Some(1) {
                return Err(Error::Degree { expected: 1, found: rhs.to_string() });
            }
        }
        let mut out = Form::zero();
        for (m, p) in &self.terms {
            if m.indices().all(|i| !rules.contains_key(&i)) {
                out.add_term(m.clone(), p.clone());
                continue;
            }
            let mut acc = Form::scalar(p.clone());
            for i in m.indices() {
                let factor = rules.get(&i).cloned().unwrap_or_else(|| Form::generator(i));
                acc = acc.wedge(&factor);
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        Ok(out)
    }
}

/// `v ⌟ ω`: the degree −1 antiderivation determined by the pairing.
pub fn hook(v: &Form, omega: &Form) -> Result<Form> {
    let mut weights: BTreeMap<u16, &Poly> = BTreeMap::new();
    for (m, p) in &v.terms {
        if m.degree() != 1 {
            return Err(Error::Degree { expected: 1, found: v.to_string() });
        }
        weights.insert(m.0[0], p);
    }
    let mut out = Form::zero();
    for (m, p) in &omega.terms {
        for (pos, g) in m.0.iter().enumerate() {
            if let Some(w) = weights.get(g) {
                let c = *w * p;
                out.add_term(m.without_position(pos), if pos % 2 == 1 { -c } else { c });
            }
        }
    }
    Ok(out)
}

/// The canonical pairing, for which distinct monomials are orthonormal.
pub fn pairing(a: &Form, b: &Form) -> Poly {
    let (small, large) = if a.terms.len() <= b.terms.len() { (a, b) } else { (b, a) };
    let mut out = Poly::zero();
    for (m, p) in &small.terms {
        if let Some(q) = large.terms.get(m) {
            out += &(p * q);
        }
    }
    out
}

impl From<Poly> for Form {
    fn from(p: Poly) -> Self {
        Form::scalar(p)
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        for (m, p) in &rhs.terms {
            self.add_term(m.clone(), p.clone());
        }
    }
}

impl SubAssign<&Form> for Form {
    fn sub_assign(&mut self, rhs: &Form) {
        for (m, p) in &rhs.terms {
            self.add_term(m.clone(), -p);
        }
    }
}

impl Add<&Form> for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Form> for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Form {
    type Output = Form;
    fn add(mut self, rhs: Form) -> Form {
        self += &rhs;
        self
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(mut self, rhs: Form) -> Form {
        self -= &rhs;
        self
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map_coefficients(|p| -p)
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

/// Prints monomials in canonical order as `e12`, with exact coefficients:
/// `-e12`, `1/4*e23`, `(Gamma_1+Gamma_2)*e13`. The zero form prints as `0`.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, p) in &self.terms {
            let mut s = alloc::string::String::new();
            {
                use core::fmt::Write;
                let mut w = FmtAdapter(&mut s);
                if m.degree() == 0 {
                    write!(w, "{p}")?;
                } else if p.num_terms() == 1 {
                    let (pp, c) = p.terms().next().expect("one term");
                    if pp.is_one() {
                        write!(w, "{}", Term(c, m))?;
                    } else {
                        write!(w, "{}", Term(c, &ProductDisplay(pp, m)))?;
                    }
                } else {
                    write!(w, "({p})*{m}")?;
                }
            }
            if !first && !s.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&s)?;
            first = false;
        }
        Ok(())
    }
}

struct FmtAdapter<'a>(&'a mut alloc::string::String);

impl fmt::Write for FmtAdapter<'_> {
    fn write_str(&mut self, s: &str) -> fmt::Result {
        self.0.push_str(s);
        Ok(())
    }
}

struct Term<'a, D: fmt::Display>(&'a GaussRat, &'a D);

impl<D: fmt::Display> fmt::Display for Term<'_, D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self.0, self.1, false)
    }
}

struct ProductDisplay<'a>(&'a crate::scalar::PowerProduct, &'a Monomial);

impl fmt::Display for ProductDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{}", self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Session;
    use alloc::string::ToString;

    fn e(i: usize) -> Form {
        Form::generator(i)
    }

    fn w(idx: &[usize]) -> Form {
        Form::wedge_of(idx, Poly::one())
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(1).wedge(&e(2)), w(&[1, 2]));
        assert_eq!(e(2).wedge(&e(1)), -w(&[1, 2]));
        let s = &e(1) + &e(2);
        assert!(s.wedge(&s).is_zero());
        assert_eq!(w(&[3, 1, 2]), w(&[1, 2, 3]));
        assert_eq!(w(&[2, 1, 3]), -w(&[1, 2, 3]));
    }

    #[test]
    fn hook_examples() {
        let kahler = &w(&[1, 2]) + &w(&[3, 4]);
        assert_eq!(hook(&e(1), &kahler).unwrap(), e(2));
        assert_eq!(hook(&e(2), &kahler).unwrap(), -e(1));
        assert!(hook(&e(5), &w(&[1, 2])).unwrap().is_zero());
        assert!(matches!(hook(&w(&[1, 2]), &kahler), Err(Error::Degree { .. })));
        assert!(hook(&Form::zero(), &kahler).unwrap().is_zero());
    }

    #[test]
    fn pairing_examples() {
        assert!(pairing(&e(1), &e(1)).is_one());
        assert!(pairing(&e(1), &e(2)).is_zero());
        assert_eq!(pairing(&w(&[1, 2]), &e(2).wedge(&e(1))), Poly::from(-1));
        assert!(pairing(&e(1), &w(&[1, 2])).is_zero());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(w(&[1, 2]).degree().unwrap(), 2);
        assert_eq!(Form::scalar(Poly::from(7)).degree().unwrap(), 0);
        assert!(matches!((&e(1) + &w(&[1, 2])).degree(), Err(Error::MixedDegree(_))));
    }

    #[test]
    fn coefficient_listing() {
        let f = &w(&[1, 2]) + &w(&[3, 4]).scale(&Poly::from(3));
        let c = f.coefficients();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1, Poly::one());
        assert_eq!(c[1].1, Poly::from(3));
        assert!(Form::zero().coefficients().is_empty());
        let mut s = Session::new();
        let p = &Poly::symbol(&s.symbol("p1")) + &Poly::symbol(&s.symbol("p2"));
        let g = w(&[1, 2]).scale(&p);
        assert_eq!(g.coefficients(), alloc::vec![(Monomial::normalize(&[1, 2]).unwrap().0, p)]);
    }

    #[test]
    fn substitute_examples() {
        let f = &w(&[1, 3]) + &w(&[4, 2]);
        let rules: BTreeMap<usize, Form> = [(3, Form::zero())].into_iter().collect();
        assert_eq!(f.substitute(&rules).unwrap(), w(&[4, 2]));
        let rules: BTreeMap<usize, Form> = [(1, &e(1) + &e(2))].into_iter().collect();
        assert_eq!(w(&[1, 2]).substitute(&rules).unwrap(), w(&[1, 2]));
        let rules: BTreeMap<usize, Form> = [(1, e(2)), (2, e(1))].into_iter().collect();
        assert_eq!(w(&[1, 2]).substitute(&rules).unwrap(), -w(&[1, 2]));
        let rules: BTreeMap<usize, Form> = [(1, w(&[2, 3]))].into_iter().collect();
        assert!(matches!(e(1).substitute(&rules), Err(Error::Degree { .. })));
    }

    #[test]
    fn printing() {
        assert_eq!(e(2).wedge(&e(1)).to_string(), "-e12");
        assert_eq!(Form::zero().to_string(), "0");
        let q = w(&[2, 3]).scale_by(&GaussRat::from_ratio(1, 4));
        assert_eq!(q.to_string(), "1/4*e23");
        assert_eq!((&w(&[1, 2]) - &w(&[3, 4])).to_string(), "e12-e34");
        assert_eq!(Form::generator(15).to_string(), "e(15)");
        let mut s = Session::new();
        let g = Poly::symbol(&s.symbol("G"));
        assert_eq!(e(1).scale(&-&g).to_string(), "-G*e1");
        assert_eq!(e(1).scale(&(&g + &Poly::one())).to_string(), "(1+G)*e1");
    }
}
