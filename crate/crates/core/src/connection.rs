//! Connections on a framed manifold.
//!
//! A connection stores one symbol per Christoffel parameter
//! `Γ_ijk = <∇_{e_i} e_j, e^k>` and an accumulated substitution produced by
//! the constraints declared on it. Declarations never assign parameters
//! directly: they produce equations, linear in the connection's own unsolved
//! parameters, which are solved and folded into the substitution. Symbols
//! owned by anything else (another connection, the manifold) are treated as
//! parameters of the solution.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::basis::Basis;
use crate::exterior::{pairing, Form};
use crate::manifold::Manifold;
use crate::scalar::{linear_solve, GaussRat, Poly, Session, Symbol};
use crate::spinor::{CliffordTable, Spinor};
use crate::{Error, Result};

/// A coframe `e^1..e^n` together with its dual frame `e_1..e_n`, both
/// represented as one-forms through the canonical pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    coframe: Vec<Form>,
    vectors: Vec<Form>,
}

impl Frame {
    /// The generators themselves, which are self-dual.
    pub fn standard(n: usize) -> Self {
        let gens: Vec<Form> = (1..=n).map(Form::generator).collect();
        Self { coframe: gens.clone(), vectors: gens }
    }

    /// A coframe given by a basis of one-forms; the vectors are its dual basis.
    pub fn from_basis(basis: &Basis<Form>) -> Result<Self> {
        for x in basis.elements() {
            if x.degree()? != 1 {
                return Err(Error::Degree { expected: 1, found: x.to_string() });
            }
        }
        let vectors = basis.dual_basis()?.to_vec();
        Ok(Self { coframe: basis.elements().to_vec(), vectors })
    }

    pub fn dimension(&self) -> usize {
        self.coframe.len()
    }

    /// `e^i`, 1-based.
    pub fn form(&self, i: usize) -> &Form {
        &self.coframe[i - 1]
    }

    /// `e_i`, 1-based.
    pub fn vector(&self, i: usize) -> &Form {
        &self.vectors[i - 1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConnectionMode {
    Generic,
    /// Torsion-free with respect to the manifold's `d`.
    TorsionFreeFromD,
    /// Metric for the orthonormal frame: `Γ_ijk = −Γ_ikj`. Defines `d` on a
    /// [`RiemannianManifold`].
    LeviCivitaFree,
}

/// The argument of a covariant derivative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tensor {
    Vector(Form),
    Form(Form),
    Spinor(Spinor),
}

impl Tensor {
    pub fn is_zero(&self) -> bool {
        match self {
            Tensor::Vector(f) | Tensor::Form(f) => f.is_zero(),
            Tensor::Spinor(s) => s.is_zero(),
        }
    }

    fn coefficients(&self) -> Vec<Poly> {
        match self {
            Tensor::Vector(f) | Tensor::Form(f) => f.terms().map(|(_, p)| p.clone()).collect(),
            Tensor::Spinor(s) => s.terms().map(|(_, p)| p.clone()).collect(),
        }
    }

    fn map(&self, f: impl FnMut(&Poly) -> Poly) -> Tensor {
        match self {
            Tensor::Vector(v) => Tensor::Vector(v.map_coefficients(f)),
            Tensor::Form(v) => Tensor::Form(v.map_coefficients(f)),
            Tensor::Spinor(s) => Tensor::Spinor(s.map_coefficients(f)),
        }
    }

    fn difference(&self, other: &Tensor) -> Result<Tensor> {
        match (self, other) {
            (Tensor::Vector(a), Tensor::Vector(b)) => Ok(Tensor::Vector(a - b)),
            (Tensor::Form(a), Tensor::Form(b)) => Ok(Tensor::Form(a - b)),
            (Tensor::Spinor(a), Tensor::Spinor(b)) => Ok(Tensor::Spinor(a - b)),
            _ => Err(Error::UnsupportedKind("value has a different kind than the argument".into())),
        }
    }

    pub fn into_form(self) -> Option<Form> {
        match self {
            Tensor::Vector(f) | Tensor::Form(f) => Some(f),
            Tensor::Spinor(_) => None,
        }
    }

    pub fn into_spinor(self) -> Option<Spinor> {
        match self {
            Tensor::Spinor(s) => Some(s),
            _ => None,
        }
    }
}

type Reduce<'a> = &'a dyn Fn(&Poly) -> Poly;

fn gamma_name(prefix: &str, n: usize, i: usize, j: usize, k: usize) -> String {
    if n <= 9 {
        format!("{prefix}_{i}{j}{k}")
    } else {
        format!("{prefix}_{i}_{j}_{k}")
    }
}

/// A linear connection with symbolic Christoffel parameters.
#[derive(Clone, Debug)]
pub struct Connection {
    frame: Frame,
    mode: ConnectionMode,
    /// Γ as created, indexed by `((i-1)·n + j-1)·n + k-1`.
    base: Vec<Poly>,
    /// `base` with `subs` applied.
    gamma: Vec<Poly>,
    own: BTreeSet<Symbol>,
    subs: BTreeMap<Symbol, Poly>,
    clifford: Option<CliffordTable>,
}

impl Connection {
    /// A connection with `n³` independent parameters named `<prefix>_ijk`.
    pub fn new(session: &mut Session, frame: Frame, prefix: &str) -> Self {
        let n = frame.dimension();
        let mut base = Vec::with_capacity(n * n * n);
        let mut own = BTreeSet::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let s = session.symbol(gamma_name(prefix, n, i, j, k));
                    base.push(Poly::symbol(&s));
                    own.insert(s);
                }
            }
        }
        Self::from_parts(frame, ConnectionMode::Generic, base, own, None)
    }

    /// A generic connection made torsion-free by solving `Σ_i e^i ∧ ∇_{e_i} e^j = de^j`.
    pub fn torsion_free<M: Manifold + ?Sized>(
        session: &mut Session,
        manifold: &M,
        frame: Frame,
        prefix: &str,
    ) -> Result<Self> {
        check_frame(manifold, &frame)?;
        let mut c = Self::new(session, frame, prefix);
        let torsion = c.torsion(manifold)?;
        c.declare_zero(manifold, &torsion)?;
        c.mode = ConnectionMode::TorsionFreeFromD;
        Ok(c)
    }

    fn levi_civita_free(session: &mut Session, n: usize, prefix: &str, table: CliffordTable) -> Self {
        let mut base = alloc::vec![Poly::zero(); n * n * n];
        let mut own = BTreeSet::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in j + 1..=n {
                    let s = session.symbol(gamma_name(prefix, n, i, j, k));
                    base[index(n, i, j, k)] = Poly::symbol(&s);
                    base[index(n, i, k, j)] = -Poly::symbol(&s);
                    own.insert(s);
                }
            }
        }
        Self::from_parts(Frame::standard(n), ConnectionMode::LeviCivitaFree, base, own, Some(table))
    }

    fn from_parts(
        frame: Frame,
        mode: ConnectionMode,
        base: Vec<Poly>,
        own: BTreeSet<Symbol>,
        clifford: Option<CliffordTable>,
    ) -> Self {
        Self { frame, mode, gamma: base.clone(), base, own, subs: BTreeMap::new(), clifford }
    }

    pub fn dimension(&self) -> usize {
        self.frame.dimension()
    }

    pub fn mode(&self) -> ConnectionMode {
        self.mode
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// `Γ_ijk` after the declared constraints, 1-based.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Poly {
        &self.gamma[index(self.dimension(), i, j, k)]
    }

    pub fn own_symbols(&self) -> &BTreeSet<Symbol> {
        &self.own
    }

    /// Own parameters not yet determined by a declaration.
    pub fn free_symbols(&self) -> BTreeSet<Symbol> {
        self.own.iter().filter(|s| !self.subs.contains_key(*s)).cloned().collect()
    }

    pub fn substitutions(&self) -> &BTreeMap<Symbol, Poly> {
        &self.subs
    }

    /// The connection one-forms `ω_jk = Σ_i Γ_ijk e^i`, as `[j-1][k-1]`.
    pub fn connection_forms(&self) -> Vec<Vec<Form>> {
        let n = self.dimension();
        (1..=n)
            .map(|j| {
                (1..=n)
                    .map(|k| {
                        let mut w = Form::zero();
                        for i in 1..=n {
                            w += &self.frame.form(i).scale(self.gamma(i, j, k));
                        }
                        w
                    })
                    .collect()
            })
            .collect()
    }

    fn frame_components(&self, x: &Form) -> Result<Vec<Poly>> {
        if !x.is_zero() && x.degree()? != 1 {
            return Err(Error::Degree { expected: 1, found: x.to_string() });
        }
        Ok((1..=self.dimension()).map(|i| pairing(x, self.frame.form(i))).collect())
    }

    fn nabla_vector_raw(&self, x: &[Poly], y: &Form) -> Result<Form> {
        let ys = self.frame_components(y)?;
        let n = self.dimension();
        let mut out = Form::zero();
        for k in 1..=n {
            let mut c = Poly::zero();
            for (i, xi) in x.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (j, yj) in ys.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    let g = self.gamma(i + 1, j + 1, k);
                    if !g.is_zero() {
                        c += &(&(xi * yj) * g);
                    }
                }
            }
            out += &self.frame.vector(k).scale(&c);
        }
        Ok(out)
    }

    /// `∇_X e^k = −Σ_{i,j} X^i Γ_ijk e^j` for every k.
    fn nabla_coframe(&self, x: &[Poly]) -> Vec<Form> {
        let n = self.dimension();
        (1..=n)
            .map(|k| {
                let mut out = Form::zero();
                for j in 1..=n {
                    let mut c = Poly::zero();
                    for (i, xi) in x.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                        let g = self.gamma(i + 1, j, k);
                        if !g.is_zero() {
                            c -= &(xi * g);
                        }
                    }
                    out += &self.frame.form(j).scale(&c);
                }
                out
            })
            .collect()
    }

    fn nabla_form_raw(&self, x: &[Poly], alpha: &Form) -> Form {
        self.nabla_form_raw_from(&self.nabla_coframe(x), alpha)
    }

    fn nabla_spinor_raw(&self, x: &[Poly], psi: &Spinor) -> Result<Spinor> {
        let table = match (&self.clifford, self.mode) {
            (Some(t), ConnectionMode::LeviCivitaFree) => t,
            _ => return Err(Error::UnsupportedKind("spinor derivative needs a Riemannian connection".into())),
        };
        let n = self.dimension();
        let quarter = Poly::constant(GaussRat::from_ratio(1, 4));
        let mut products: BTreeMap<(usize, usize), Spinor> = BTreeMap::new();
        let mut out = Spinor::zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
            for j in 1..=n {
                for k in 1..=n {
                    let g = self.gamma(i + 1, j, k);
                    if g.is_zero() {
                        continue;
                    }
                    let gjk = match products.get(&(j, k)) {
                        Some(s) => s.clone(),
                        None => {
                            let inner = table.clifford_mul(self.frame.vector(k), psi)?;
                            let s = table.clifford_mul(self.frame.vector(j), &inner)?;
                            products.insert((j, k), s.clone());
                            s
                        }
                    };
                    out = &out + &gjk.scale(&(&(xi * g) * &quarter));
                }
            }
        }
        Ok(out)
    }

    fn nabla_with(&self, reduce: Reduce<'_>, x: &Form, t: &Tensor) -> Result<Tensor> {
        let xs = self.frame_components(x)?;
        let raw = match t {
            Tensor::Vector(y) => Tensor::Vector(self.nabla_vector_raw(&xs, y)?),
            Tensor::Form(a) => Tensor::Form(self.nabla_form_raw(&xs, a)),
            Tensor::Spinor(psi) => Tensor::Spinor(self.nabla_spinor_raw(&xs, psi)?),
        };
        Ok(raw.map(|p| reduce(p)))
    }

    /// Covariant derivative of a vector field, form or spinor along `x`.
    /// Spinors are only supported by the Levi-Civita connection of a
    /// [`RiemannianManifold`].
    pub fn nabla<M: Manifold + ?Sized>(&self, manifold: &M, x: &Form, t: &Tensor) -> Result<Tensor> {
        self.nabla_with(&|p| manifold.reduce(p), x, t)
    }

    fn solve_and_fold(&mut self, reduce: Reduce<'_>, equations: Vec<Poly>) -> Result<()> {
        let equations: Vec<Poly> =
            equations.iter().map(|e| reduce(&e.substitute(&self.subs))).filter(|e| !e.is_zero()).collect();
        if equations.is_empty() {
            return Ok(());
        }
        let unknowns = self.free_symbols();
        let solution = linear_solve(&equations, &unknowns)?;
        if solution.assignments.is_empty() {
            return Ok(());
        }
        for value in self.subs.values_mut() {
            *value = value.substitute(&solution.assignments);
        }
        self.subs.extend(solution.assignments);
        self.gamma = self.base.iter().map(|p| p.substitute(&self.subs)).collect();
        Ok(())
    }

    fn declare_nabla_with(&mut self, reduce: Reduce<'_>, x: &Form, t: &Tensor, value: &Tensor) -> Result<()> {
        let diff = self.nabla_with(reduce, x, t)?.difference(value)?;
        self.solve_and_fold(reduce, diff.coefficients())
    }

    fn declare_zero_with(&mut self, reduce: Reduce<'_>, exprs: &[Form]) -> Result<()> {
        let equations = exprs.iter().flat_map(|f| f.terms().map(|(_, p)| p.clone())).collect();
        self.solve_and_fold(reduce, equations)
    }

    /// Imposes `∇_x t = value`, solving for this connection's parameters.
    pub fn declare_nabla<M: Manifold + ?Sized>(
        &mut self,
        manifold: &M,
        x: &Form,
        t: &Tensor,
        value: &Tensor,
    ) -> Result<()> {
        self.declare_nabla_with(&|p| manifold.reduce(p), x, t, value)
    }

    /// Imposes that every coefficient of every expression vanishes.
    pub fn declare_zero<M: Manifold + ?Sized>(&mut self, manifold: &M, exprs: &[Form]) -> Result<()> {
        self.declare_zero_with(&|p| manifold.reduce(p), exprs)
    }

    /// Cartan torsion `Θ^j = d e^j − Σ_i e^i ∧ ∇_{e_i} e^j`, so that
    /// `Θ^j(X,Y) = <∇_X Y − ∇_Y X − [X,Y], e^j>`.
    pub fn torsion<M: Manifold + ?Sized>(&self, manifold: &M) -> Result<Vec<Form>> {
        check_frame(manifold, &self.frame)?;
        let n = self.dimension();
        let nablas: Vec<Vec<Form>> = (1..=n)
            .map(|i| {
                let xs = self.frame_components(self.frame.vector(i))?;
                Ok(self.nabla_coframe(&xs))
            })
            .collect::<Result<_>>()?;
        (1..=n)
            .map(|j| {
                let mut theta = manifold.d(self.frame.form(j))?;
                for (i, ni) in nablas.iter().enumerate() {
                    let nj = self.nabla_form_raw_from(&ni[..], self.frame.form(j));
                    theta -= &self.frame.form(i + 1).wedge(&nj);
                }
                Ok(self.finish(manifold, &theta))
            })
            .collect()
    }

    /// `Ω_jk = dω_jk + Σ_l ω_jl ∧ ω_lk`, as `[j-1][k-1]`.
    pub fn curvature<M: Manifold + ?Sized>(&self, manifold: &M) -> Result<Vec<Vec<Form>>> {
        check_frame(manifold, &self.frame)?;
        let omega = self.connection_forms();
        let n = self.dimension();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let mut out = manifold.d(&omega[j][k])?;
                        for (w_jl, row_l) in omega[j].iter().zip(&omega) {
                            out += &w_jl.wedge(&row_l[k]);
                        }
                        Ok(self.finish(manifold, &out))
                    })
                    .collect()
            })
            .collect()
    }

    fn finish<M: Manifold + ?Sized>(&self, manifold: &M, f: &Form) -> Form {
        f.map_coefficients(|p| manifold.reduce(&p.substitute(&self.subs)))
    }

    /// Derivation extension of precomputed `∇ e^k` to an arbitrary form.
    fn nabla_form_raw_from(&self, coframe_derivatives: &[Form], alpha: &Form) -> Form {
        let mut out = Form::zero();
        for (m, coeff) in alpha.terms() {
            let indices: Vec<usize> = m.indices().collect();
            for (pos, &g) in indices.iter().enumerate() {
                let gen = Form::generator(g);
                let mut dg = Form::zero();
                for (k, nk) in coframe_derivatives.iter().enumerate() {
                    let c = pairing(&gen, self.frame.vector(k + 1));
                    if !c.is_zero() {
                        dg += &nk.scale(&c);
                    }
                }
                if dg.is_zero() {
                    continue;
                }
                let before = Form::wedge_of(&indices[..pos], coeff.clone());
                let after = Form::wedge_of(&indices[pos + 1..], Poly::one());
                out += &before.wedge(&dg).wedge(&after);
            }
        }
        out
    }
}

fn index(n: usize, i: usize, j: usize, k: usize) -> usize {
    ((i - 1) * n + (j - 1)) * n + (k - 1)
}

fn check_frame<M: Manifold + ?Sized>(manifold: &M, frame: &Frame) -> Result<()> {
    if frame.dimension() != manifold.dimension() {
        return Err(Error::Dimension(frame.dimension()));
    }
    Ok(())
}

/// A Riemannian manifold with a global orthonormal frame whose exterior
/// derivative is not known in advance: `d` is computed from the Levi-Civita
/// connection as `d e^j = Σ_i e^i ∧ ∇_{e_i} e^j`, so everything depends on the
/// connection's free parameters.
#[derive(Clone, Debug)]
pub struct RiemannianManifold {
    lc: Connection,
}

impl RiemannianManifold {
    pub fn new(session: &mut Session, n: usize) -> Result<Self> {
        Self::with_clifford_table(session, CliffordTable::new(n)?)
    }

    pub fn with_clifford_table(session: &mut Session, table: CliffordTable) -> Result<Self> {
        let n = table.dimension();
        Ok(Self { lc: Connection::levi_civita_free(session, n, "Gamma", table) })
    }

    pub fn levi_civita(&self) -> &Connection {
        &self.lc
    }

    pub fn clifford(&self) -> &CliffordTable {
        self.lc.clifford.as_ref().expect("Riemannian connections carry a table")
    }

    pub fn e(&self, i: usize) -> Form {
        Form::generator(i)
    }

    pub fn nabla(&self, x: &Form, t: &Tensor) -> Result<Tensor> {
        self.lc.nabla_with(&|p| p.clone(), x, t)
    }

    pub fn declare_nabla(&mut self, x: &Form, t: &Tensor, value: &Tensor) -> Result<()> {
        self.lc.declare_nabla_with(&|p| p.clone(), x, t, value)
    }

    pub fn declare_zero(&mut self, exprs: &[Form]) -> Result<()> {
        self.lc.declare_zero_with(&|p| p.clone(), exprs)
    }

    /// Constrains the connection so that `d(form) = value`.
    pub fn impose_d(&mut self, form: &Form, value: &Form) -> Result<()> {
        let diff = &self.d(form)? - value;
        self.declare_zero(&[diff])
    }
}

impl Manifold for RiemannianManifold {
    fn dimension(&self) -> usize {
        self.lc.dimension()
    }

    fn d_generator(&self, index: usize) -> Result<Form> {
        let n = self.dimension();
        if !(1..=n).contains(&index) {
            return Err(Error::Index { index, dimension: n });
        }
        let mut out = Form::zero();
        for i in 1..=n {
            let xs = self.lc.frame_components(&Form::generator(i))?;
            let nabla = &self.lc.nabla_coframe(&xs)[index - 1];
            out += &Form::generator(i).wedge(nabla);
        }
        Ok(out)
    }

    fn reduce(&self, p: &Poly) -> Poly {
        p.substitute(&self.lc.subs)
    }

    /// `[X,Y] = ∇_X Y − ∇_Y X` for the Levi-Civita connection.
    fn lie_bracket(&self, x: &Form, y: &Form) -> Result<Form> {
        let xy = self.nabla(x, &Tensor::Vector(y.clone()))?.into_form().expect("vector");
        let yx = self.nabla(y, &Tensor::Vector(x.clone()))?.into_form().expect("vector");
        Ok(&xy - &yx)
    }
}
