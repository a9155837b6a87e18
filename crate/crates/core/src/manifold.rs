//! Parallelizable manifolds described by a global coframe.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::exterior::{hook, parse_form, Form};
use crate::scalar::Poly;
use crate::{Error, Result};

/// A manifold with a global coframe `e1..en` on which `d` is known.
///
/// Symbols are constants for `d`. Implementors supply `d` on generators; the
/// Leibniz extension, Lie bracket and Lie derivative follow.
pub trait Manifold {
    fn dimension(&self) -> usize;

    /// `d e^i`.
    fn d_generator(&self, index: usize) -> Result<Form>;

    /// Normal form of a coefficient under substitutions this manifold owns.
    fn reduce(&self, p: &Poly) -> Poly {
        p.clone()
    }

    fn d(&self, form: &Form) -> Result<Form> {
        let mut cache: Vec<Option<Form>> = alloc::vec![None; self.dimension() + 1];
        let mut out = Form::zero();
        for (m, coeff) in form.terms() {
            let indices: Vec<usize> = m.indices().collect();
            for (pos, &g) in indices.iter().enumerate() {
                if g > self.dimension() {
                    return Err(Error::Index { index: g, dimension: self.dimension() });
                }
                if cache[g].is_none() {
                    cache[g] = Some(self.d_generator(g)?);
                }
                let dg = cache[g].as_ref().expect("filled above");
                if dg.is_zero() {
                    continue;
                }
                let before = Form::wedge_of(&indices[..pos], coeff.clone());
                let after = Form::wedge_of(&indices[pos + 1..], Poly::one());
                let term = before.wedge(dg).wedge(&after);
                if pos % 2 == 1 {
                    out -= &term;
                } else {
                    out += &term;
                }
            }
        }
        Ok(out.map_coefficients(|p| self.reduce(p)))
    }

    /// `<[X,Y], e^k> = −(de^k)(X,Y)` with `(α∧β)(X,Y) = Y ⌟ X ⌟ (α∧β)`.
    fn lie_bracket(&self, x: &Form, y: &Form) -> Result<Form> {
        check_vector(x)?;
        check_vector(y)?;
        let mut out = Form::zero();
        for k in 1..=self.dimension() {
            let dk = self.d_generator(k)?;
            let value = hook(y, &hook(x, &dk)?)?;
            let c = value.coefficient(&crate::exterior::Monomial::unit());
            out -= &Form::generator(k).scale(&c);
        }
        Ok(out.map_coefficients(|p| self.reduce(p)))
    }

    /// Cartan's formula `L_X ω = X ⌟ dω + d(X ⌟ ω)`.
    fn lie_derivative(&self, x: &Form, form: &Form) -> Result<Form> {
        check_vector(x)?;
        Ok(&hook(x, &self.d(form)?)? + &self.d(&hook(x, form)?)?)
    }
}

fn check_vector(v: &Form) -> Result<()> {
    if v.is_zero() || v.degree().ok() == Some(1) {
        Ok(())
    } else {
        Err(Error::Degree { expected: 1, found: v.to_string() })
    }
}

/// A manifold whose exterior derivative is given by a table of `d e^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameManifold {
    n: usize,
    d_table: Vec<Option<Form>>,
}

impl FrameManifold {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension(n));
        }
        Ok(Self { n, d_table: alloc::vec![None; n] })
    }

    /// `e^i` for `i` in `1..=n`.
    pub fn e(&self, i: usize) -> Form {
        assert!((1..=self.n).contains(&i), "generator e{i} outside 1..={}", self.n);
        Form::generator(i)
    }

    pub fn generators(&self) -> Vec<Form> {
        (1..=self.n).map(Form::generator).collect()
    }

    pub fn parse(&self, text: &str) -> Result<Form> {
        parse_form(self.n, text)
    }

    pub fn declare_d(&mut self, index: usize, value: Form) -> Result<()> {
        if !(1..=self.n).contains(&index) {
            return Err(Error::Index { index, dimension: self.n });
        }
        if !value.is_zero() && value.degree().ok() != Some(2) {
            return Err(Error::Degree { expected: 2, found: value.to_string() });
        }
        if value.max_index() > self.n {
            return Err(Error::Index { index: value.max_index(), dimension: self.n });
        }
        let slot = &mut self.d_table[index - 1];
        if slot.is_some() {
            return Err(Error::Redeclaration(index));
        }
        *slot = Some(value);
        Ok(())
    }

    pub fn declared(&self, index: usize) -> Option<&Form> {
        self.d_table.get(index.wrapping_sub(1)).and_then(Option::as_ref)
    }

    pub fn is_complete(&self) -> bool {
        self.d_table.iter().all(Option::is_some)
    }
}

impl Manifold for FrameManifold {
    fn dimension(&self) -> usize {
        self.n
    }

    fn d_generator(&self, index: usize) -> Result<Form> {
        self.declared(index).cloned().ok_or(Error::MissingDeclaration(index))
    }
}
