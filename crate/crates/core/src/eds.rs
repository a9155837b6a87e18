//! Linear exterior differential systems on the frame bundle.
//!
//! The bundle over an n-manifold has generators `θ^i = e^i` for `i ≤ n` and
//! `ω_ij = e^{i·n+j}`, with `dθ^i = Σ_j θ^j ∧ ω_ij`. A candidate integral
//! element is the graph `ω_g = Σ_j p_gj θ^j`; substituting it into the ideal
//! gives the equations cutting out `V_n`, affine in the `p` symbols.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::basis::{AffineBasis, Basis, EquationSink, Insertion};
use crate::exterior::{hook, Form};
use crate::manifold::{FrameManifold, Manifold};
use crate::scalar::{Poly, Session, Symbol};
use crate::{Error, Result};

/// The outcome of Cartan's test at one flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport {
    /// `c_j` for `j = 0..n-1`.
    pub c: Vec<usize>,
    /// Codimension of `V_n`: the number of independent equations.
    pub codim: usize,
    /// False when the equations for `V_n` have no solution.
    pub consistent: bool,
    pub involutive: bool,
    /// The retained equations for `V_n`.
    pub equations: Vec<Poly>,
    /// The retained reduced polar one-forms for each `j`.
    pub polar: Vec<Vec<Form>>,
}

impl CartanReport {
    pub fn character_sum(&self) -> usize {
        self.c.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct EdsProblem {
    n: usize,
    bundle: FrameManifold,
    /// `p[g - n - 1][j - 1]` for ω-generator `g` and base index `j`.
    p: Vec<Vec<Symbol>>,
}

impl EdsProblem {
    pub fn frame_bundle(session: &mut Session, n: usize) -> Result<Self> {
        if !(1..=9).contains(&n) {
            return Err(Error::Dimension(n));
        }
        let mut bundle = FrameManifold::new(n * (n + 1))?;
        for i in 1..=n {
            let mut x = Form::zero();
            for j in 1..=n {
                x += &Form::generator(j).wedge(&Form::generator(i * n + j));
            }
            bundle.declare_d(i, x)?;
        }
        let p = (n + 1..=n * (n + 1)).map(|g| (1..=n).map(|j| session.symbol(format!("p{g}{j}"))).collect()).collect();
        Ok(Self { n, bundle, p })
    }

    pub fn base_dimension(&self) -> usize {
        self.n
    }

    pub fn bundle(&self) -> &FrameManifold {
        &self.bundle
    }

    pub fn theta(&self, i: usize) -> Form {
        Form::generator(i)
    }

    pub fn omega(&self, i: usize, j: usize) -> Form {
        Form::generator(i * self.n + j)
    }

    /// `p_gj` for ω-generator index `g` in `n+1..=n(n+1)` and `j` in `1..=n`.
    pub fn p(&self, g: usize, j: usize) -> &Symbol {
        &self.p[g - self.n - 1][j - 1]
    }

    /// Exterior derivative on the bundle.
    pub fn d(&self, form: &Form) -> Result<Form> {
        self.bundle.d(form)
    }

    /// True iff every monomial of every generator has exactly one ω factor.
    pub fn is_linear(&self, ideal: &[Form]) -> bool {
        ideal.iter().all(|f| f.terms().all(|(m, _)| m.indices().filter(|&g| g > self.n).count() == 1))
    }

    /// Sets every θ to zero.
    pub fn modulo_ic(&self, form: &Form) -> Result<Form> {
        let subs: BTreeMap<usize, Form> = (1..=self.n).map(|i| (i, Form::zero())).collect();
        form.substitute(&subs)
    }

    /// Inserts the coefficients of the ideal restricted to the graph
    /// `ω_g = Σ_j p_gj θ^j` into `sink`.
    pub fn equations_for_vn<S: EquationSink>(&self, ideal: &[Form], sink: &mut S) -> Result<()> {
        let n = self.n;
        let subs: BTreeMap<usize, Form> = (n + 1..=n * (n + 1))
            .map(|g| {
                let mut x = Form::zero();
                for j in 1..=n {
                    x += &Form::generator(j).scale(&Poly::symbol(self.p(g, j)));
                }
                (g, x)
            })
            .collect();
        for form in ideal {
            let restricted = form.substitute(&subs)?;
            for (_, coeff) in restricted.terms() {
                sink.push_equation(coeff.clone())?;
            }
        }
        Ok(())
    }

    /// Appends the reduced polar equations of `form` for the flag element
    /// spanned by the first `j` entries of `flag` (θ indices).
    pub fn reduced_polar_equations(&self, form: &Form, j: usize, flag: &[usize], out: &mut Vec<Form>) -> Result<()> {
        if form.is_zero() {
            return Ok(());
        }
        if form.degree()? == 1 {
            out.push(self.modulo_ic(form)?);
        } else if j > 0 {
            self.reduced_polar_equations(form, j - 1, flag, out)?;
            let contracted = hook(&self.theta(flag[j - 1]), form)?;
            self.reduced_polar_equations(&contracted, j - 1, flag, out)?;
        }
        Ok(())
    }

    /// Cartan's test at the flag `E_j = span{θ_σ(1)..θ_σ(j)}`; `flag` is
    /// `σ` as a permutation of `1..=n`, the identity when absent.
    pub fn cartan_test(&self, ideal: &[Form], flag: Option<&[usize]>) -> Result<CartanReport> {
        let n = self.n;
        let identity: Vec<usize> = (1..=n).collect();
        let flag = flag.unwrap_or(&identity);
        check_permutation(flag, n)?;
        if let Some(bad) = ideal.iter().find(|f| !self.is_linear(core::slice::from_ref(*f))) {
            return Err(Error::NotLinear(bad.to_string()));
        }

        let mut c = Vec::with_capacity(n);
        let mut polar = Vec::with_capacity(n);
        for j in 0..n {
            let mut raw = Vec::new();
            for form in ideal {
                self.reduced_polar_equations(form, j, flag, &mut raw)?;
            }
            let mut basis = Basis::new();
            let mut kept = Vec::new();
            for f in raw {
                if basis.insert(f.clone())? == Insertion::Retained {
                    kept.push(f);
                }
            }
            c.push(basis.size());
            polar.push(kept);
        }

        let mut sink = AffineBasis::new();
        self.equations_for_vn(ideal, &mut sink)?;
        let codim = sink.size();
        let consistent = sink.is_consistent();
        let involutive = consistent && c.iter().sum::<usize>() == codim;
        Ok(CartanReport { c, codim, consistent, involutive, equations: sink.equations().to_vec(), polar })
    }
}

fn check_permutation(flag: &[usize], n: usize) -> Result<()> {
    let mut seen = alloc::vec![false; n + 1];
    if flag.len() != n {
        return Err(Error::InvalidFlag(format!("expected {n} entries, found {}", flag.len())));
    }
    for &i in flag {
        if !(1..=n).contains(&i) || seen[i] {
            return Err(Error::InvalidFlag(format!("{flag:?} is not a permutation of 1..{n}")));
        }
        seen[i] = true;
    }
    Ok(())
}
