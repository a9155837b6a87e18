use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{GaussRat, Poly, PowerProduct, Symbol};
use crate::{Error, Result};

/// Result of [`linear_solve`]: solved unknowns in terms of free unknowns and
/// parameters, plus the unknowns left free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSolution {
    pub assignments: BTreeMap<Symbol, Poly>,
    pub free: BTreeSet<Symbol>,
}

impl LinearSolution {
    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute(&self.assignments)
    }
}

struct Row {
    coeffs: BTreeMap<Symbol, GaussRat>,
    /// The unknown-free part; may involve parameters.
    rest: Poly,
}

impl Row {
    fn from_equation(eq: &Poly, unknowns: &BTreeSet<Symbol>) -> Result<Row> {
        let mut coeffs = BTreeMap::new();
        let mut rest = Poly::zero();
        for (pp, c) in eq.terms() {
            let in_unknowns = pp.factors().iter().filter(|(s, _)| unknowns.contains(s)).count();
            if in_unknowns == 0 {
                rest.add_term(pp.clone(), c.clone());
                continue;
            }
            match pp.as_symbol() {
                Some(s) => {
                    coeffs.insert(s.clone(), c.clone());
                }
                None => return Err(Error::NonLinear(eq.to_string())),
            }
        }
        Ok(Row { coeffs, rest })
    }

    fn scale(&mut self, f: &GaussRat) {
        for c in self.coeffs.values_mut() {
            *c = &*c * f;
        }
        self.rest = self.rest.scale(f);
    }

    /// `self -= f * other`
    fn sub_scaled(&mut self, f: &GaussRat, other: &Row) {
        for (s, c) in &other.coeffs {
            let delta = f * c;
            let entry = self.coeffs.entry(s.clone()).or_insert_with(GaussRat::zero);
            *entry -= &delta;
            if entry.is_zero() {
                self.coeffs.remove(s);
            }
        }
        self.rest -= &other.rest.scale(f);
    }
}

/// Solves a system of equations `eq = 0`, linear in `unknowns`.
///
/// Every symbol denotes a real quantity, so an equation with non-real
/// coefficients contributes its real and imaginary parts separately.
/// Coefficients of unknowns must be constants; other symbols are parameters
/// and may only occur in the unknown-free part. Unknowns are eliminated in
/// creation order, pivoting on the first equation (in input order) that
/// contains the current unknown.
pub fn linear_solve(equations: &[Poly], unknowns: &BTreeSet<Symbol>) -> Result<LinearSolution> {
    let mut rows = Vec::with_capacity(equations.len());
    for eq in equations {
        if eq.is_zero() {
            continue;
        }
        if eq.is_real() {
            rows.push(Row::from_equation(eq, unknowns)?);
        } else {
            rows.push(Row::from_equation(&eq.real_part(), unknowns)?);
            rows.push(Row::from_equation(&eq.imag_part(), unknowns)?);
        }
    }

    let mut pivot_of: Vec<Option<Symbol>> = alloc::vec![None; rows.len()];
    for u in unknowns {
        let Some(r) = (0..rows.len()).find(|&r| pivot_of[r].is_none() && rows[r].coeffs.contains_key(u)) else {
            continue;
        };
        let inv = rows[r].coeffs[u].inv().expect("stored coefficients are nonzero");
        rows[r].scale(&inv);
        let pivot = core::mem::replace(&mut rows[r], Row { coeffs: BTreeMap::new(), rest: Poly::zero() });
        for row in rows.iter_mut() {
            if let Some(f) = row.coeffs.get(u).cloned() {
                row.sub_scaled(&f, &pivot);
            }
        }
        rows[r] = pivot;
        pivot_of[r] = Some(u.clone());
    }

    let mut solution = LinearSolution::default();
    for (row, pivot) in rows.iter().zip(&pivot_of) {
        match pivot {
            None => {
                debug_assert!(row.coeffs.is_empty());
                if !row.rest.is_zero() {
                    return Err(Error::Inconsistent(row.rest.to_string()));
                }
            }
            Some(u) => {
                let mut value = -&row.rest;
                for (s, c) in &row.coeffs {
                    if s != u {
                        value.add_term(single(s), -c);
                    }
                }
                solution.assignments.insert(u.clone(), value);
            }
        }
    }
    solution.free = unknowns.iter().filter(|u| !solution.assignments.contains_key(*u)).cloned().collect();
    Ok(solution)
}

fn single(s: &Symbol) -> PowerProduct {
    Poly::symbol(s).terms().next().expect("symbol has one term").0.clone()
}

#[cfg(test)]
mod tests {
    use super::super::Session;
    use super::*;

    fn set(syms: &[&Symbol]) -> BTreeSet<Symbol> {
        syms.iter().map(|s| (*s).clone()).collect()
    }

    #[test]
    fn square_system() {
        let mut s = Session::new();
        let (xs, ys) = (s.symbol("x"), s.symbol("y"));
        let (x, y) = (Poly::symbol(&xs), Poly::symbol(&ys));
        let eqs = [&(&x + &y) - &Poly::one(), &x - &y];
        let sol = linear_solve(&eqs, &set(&[&xs, &ys])).unwrap();
        let half = Poly::constant(GaussRat::from_ratio(1, 2));
        assert_eq!(sol.assignments[&xs], half);
        assert_eq!(sol.assignments[&ys], half);
        assert!(sol.free.is_empty());
    }

    #[test]
    fn underdetermined() {
        let mut s = Session::new();
        let (xs, ys) = (s.symbol("x"), s.symbol("y"));
        let (x, y) = (Poly::symbol(&xs), Poly::symbol(&ys));
        let sol = linear_solve(&[&x + &y], &set(&[&xs, &ys])).unwrap();
        assert_eq!(sol.assignments[&xs], -&y);
        assert_eq!(sol.free, set(&[&ys]));
    }

    #[test]
    fn parametric_right_hand_side() {
        let mut s = Session::new();
        let (xs, a_s) = (s.symbol("x"), s.symbol("a"));
        let (x, a) = (Poly::symbol(&xs), Poly::symbol(&a_s));
        let sol = linear_solve(&[&x.scale(&GaussRat::from_integer(2)) - &a], &set(&[&xs])).unwrap();
        assert_eq!(sol.assignments[&xs], a.scale(&GaussRat::from_ratio(1, 2)));
    }

    #[test]
    fn errors() {
        let mut s = Session::new();
        let (xs, a_s) = (s.symbol("x"), s.symbol("a"));
        let (x, a) = (Poly::symbol(&xs), Poly::symbol(&a_s));
        let unknowns = set(&[&xs]);
        assert!(matches!(linear_solve(&[&x * &x], &unknowns), Err(Error::NonLinear(_))));
        assert!(matches!(linear_solve(&[&x * &a], &unknowns), Err(Error::NonLinear(_))));
        let eqs = [x.clone(), &x - &Poly::one()];
        assert!(matches!(linear_solve(&eqs, &unknowns), Err(Error::Inconsistent(_))));
        let eqs = [x.clone(), &x - &a];
        assert!(matches!(linear_solve(&eqs, &unknowns), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn complex_equation_splits_for_real_unknowns() {
        let mut s = Session::new();
        let (xs, ys) = (s.symbol("x"), s.symbol("y"));
        let (x, y) = (Poly::symbol(&xs), Poly::symbol(&ys));
        // x + i y = 0 forces both to vanish when x, y are real.
        let sol = linear_solve(&[&x + &y.scale(&GaussRat::i())], &set(&[&xs, &ys])).unwrap();
        assert!(sol.assignments[&xs].is_zero());
        assert!(sol.assignments[&ys].is_zero());
    }

    #[test]
    fn pivot_on_first_equation_containing_earliest_unknown() {
        let mut s = Session::new();
        let (xs, ys) = (s.symbol("x"), s.symbol("y"));
        let (x, y) = (Poly::symbol(&xs), Poly::symbol(&ys));
        // Both equations are proportional; the first one decides the pivot,
        // x is solved and y stays free.
        let eqs = [&x - &y, (&x - &y).scale(&GaussRat::from_integer(3))];
        let sol = linear_solve(&eqs, &set(&[&xs, &ys])).unwrap();
        assert_eq!(sol.assignments[&xs], y);
        assert_eq!(sol.free, set(&[&ys]));
    }
}
