//! Built-in worked examples.

use std::collections::BTreeSet;
use std::fmt::Write;

use coframe_core::{
    hook, parse_form, Basis, CartanReport, Connection, EdsProblem, Form, Frame, FrameManifold, GaussRat, Manifold,
    RiemannianManifold, Session, Spinor, Symbol, Tensor,
};

use crate::{report, CliError};

pub const NAMES: [&str; 5] = ["nilpotent-torsion", "su2-spinor", "bilagrangian", "iwasawa", "g2"];

pub const G2_IDEAL: &str = "d: 567-512-534-613-642-714-723\nd: 1234-6712-6734-7513-7542-5614-5623\n";

fn e(i: usize) -> Form {
    Form::generator(i)
}

fn vector(t: Tensor) -> Form {
    t.into_form().expect("vector fields differentiate to vector fields")
}

/// The four-dimensional nilpotent group with `de^3 = e^12`, `de^4 = e^13`.
pub fn nilpotent_manifold() -> FrameManifold {
    let mut m = FrameManifold::new(4).expect("positive dimension");
    m.declare_d(1, Form::zero()).unwrap();
    m.declare_d(2, Form::zero()).unwrap();
    m.declare_d(3, e(1).wedge(&e(2))).unwrap();
    m.declare_d(4, e(1).wedge(&e(3))).unwrap();
    m
}

/// `d e^5 = e^13 + e^42`, `d e^6 = e^14 + e^23`, the rest closed.
pub fn iwasawa_manifold() -> FrameManifold {
    let mut m = FrameManifold::new(6).expect("positive dimension");
    for i in 1..=4 {
        m.declare_d(i, Form::zero()).unwrap();
    }
    m.declare_d(5, parse_form(6, "13+42").unwrap()).unwrap();
    m.declare_d(6, parse_form(6, "14+23").unwrap()).unwrap();
    m
}

pub struct AlmostComplex {
    pub manifold: FrameManifold,
    /// The generic torsion-free connection.
    pub torsion_free: Connection,
    /// The almost complex connection built from it.
    pub complex: Connection,
    pub torsion: Vec<Form>,
}

impl AlmostComplex {
    pub fn parameters(&self) -> BTreeSet<Symbol> {
        let mut p = self.torsion_free.free_symbols();
        p.extend(self.complex.free_symbols());
        p
    }
}

fn complex_structure(y: &Form) -> Form {
    hook(y, &(&e(1).wedge(&e(2)) + &e(3).wedge(&e(4)))).expect("vector argument")
}

/// `∇̃ = ∇ − Q` for `J e1 = e2`, `J e3 = e4`, with
/// `4Q(X,Y) = A(JY,X) + J A(Y,X) + 2 J A(X,Y)` and `A(X,Y) = (∇_X J) Y`.
pub fn almost_complex(session: &mut Session) -> Result<AlmostComplex, CliError> {
    let m = nilpotent_manifold();
    let h = Connection::torsion_free(session, &m, Frame::standard(4), "Gamma")?;
    let nabla =
        |x: &Form, y: &Form| -> Result<Form, CliError> { Ok(vector(h.nabla(&m, x, &Tensor::Vector(y.clone()))?)) };
    let j = complex_structure;
    let a = |x: &Form, y: &Form| -> Result<Form, CliError> { Ok(&nabla(x, &j(y))? - &j(&nabla(x, y)?)) };
    let q = |x: &Form, y: &Form| -> Result<Form, CliError> {
        let sum = &(&a(&j(y), x)? + &j(&a(y, x)?)) + &j(&a(x, y)?).scale_by(&GaussRat::from_integer(2));
        Ok(sum.scale_by(&GaussRat::from_ratio(1, 4)))
    };
    let mut k = Connection::new(session, Frame::standard(4), "Gamma'");
    for i in 1..=4 {
        for jj in 1..=4 {
            let value = &nabla(&e(i), &e(jj))? - &q(&e(i), &e(jj))?;
            k.declare_nabla(&m, &e(i), &Tensor::Vector(e(jj)), &Tensor::Vector(value))?;
        }
    }
    let torsion = k.torsion(&m)?;
    Ok(AlmostComplex { manifold: m, torsion_free: h, complex: k, torsion })
}

/// The hyperkähler triple on an orthonormal four-frame.
pub fn su2_forms() -> Vec<Form> {
    ["12+34", "13+42", "14+23"].iter().map(|t| parse_form(4, t).expect("valid literal")).collect()
}

/// A Riemannian four-manifold on which `u0` is parallel.
pub fn su2_manifold(session: &mut Session) -> Result<RiemannianManifold, CliError> {
    let mut mw = RiemannianManifold::new(session, 4)?;
    for i in 1..=4 {
        mw.declare_nabla(&e(i), &Tensor::Spinor(Spinor::basis(0)), &Tensor::Spinor(Spinor::zero()))?;
    }
    Ok(mw)
}

pub struct Bilagrangian {
    pub manifold: RiemannianManifold,
    pub connection: Connection,
    pub bracket13: Form,
    pub bracket24: Form,
}

/// Canonical connection of the splitting `<e1,e3> ⊕ <e2,e4>`, Lagrangian for
/// `e^12 + e^34`, followed by imposing that it is torsion-free.
pub fn bilagrangian(session: &mut Session) -> Result<Bilagrangian, CliError> {
    let mut mw = su2_manifold(session)?;
    let mut omega = Connection::new(session, Frame::standard(4), "Gamma'");
    let symplectic = &e(1).wedge(&e(2)) + &e(3).wedge(&e(4));
    let odd = |a: usize, b: usize| (a + b) % 2 == 1;
    for k in 1..=4 {
        omega.declare_nabla(&mw, &e(k), &Tensor::Form(symplectic.clone()), &Tensor::Form(Form::zero()))?;
        for i in 1..=4 {
            for j in (1..=4).filter(|&j| odd(i, j)) {
                let n = vector(omega.nabla(&mw, &e(k), &Tensor::Form(e(i)))?);
                omega.declare_zero(&mw, &[hook(&e(j), &n)?])?;
            }
        }
    }
    for k in 1..=4 {
        for i in (1..=4).filter(|&i| odd(i, k)) {
            for j in (1..=4).filter(|&j| !odd(i, j)) {
                let n = vector(omega.nabla(&mw, &e(k), &Tensor::Vector(e(i)))?);
                let diff = &n - &mw.lie_bracket(&e(k), &e(i))?;
                omega.declare_zero(&mw, &[hook(&e(j), &diff)?])?;
            }
        }
    }
    let torsion = omega.torsion(&mw)?;
    mw.declare_zero(&torsion)?;
    let bracket13 = mw.lie_bracket(&e(1), &e(3))?;
    let bracket24 = mw.lie_bracket(&e(2), &e(4))?;
    Ok(Bilagrangian { manifold: mw, connection: omega, bracket13, bracket24 })
}

/// Exact invariant three-forms `d(e^ij)` in loop order.
pub fn iwasawa_exact_forms(m: &FrameManifold) -> Result<Basis<Form>, CliError> {
    let mut b = Basis::new();
    for i in 1..=6 {
        for j in i + 1..=6 {
            b.insert(m.d(&e(i).wedge(&e(j)))?)?;
        }
    }
    Ok(b)
}

pub fn g2(session: &mut Session) -> Result<CartanReport, CliError> {
    let p = EdsProblem::frame_bundle(session, 7)?;
    let ideal = crate::files::parse_ideal_file(G2_IDEAL, &p)?;
    Ok(p.cartan_test(&ideal, None)?)
}

/// Runs a named example and renders its report.
pub fn run(name: &str) -> Result<String, CliError> {
    let mut s = Session::new();
    let mut out = String::new();
    match name {
        "nilpotent-torsion" => {
            let ac = almost_complex(&mut s)?;
            writeln!(out, "d(e4)={}", ac.manifold.d(&e(4))?).unwrap();
            writeln!(out, "torsion-free parameters: {}", ac.torsion_free.free_symbols().len()).unwrap();
            for (j, t) in ac.torsion.iter().enumerate() {
                writeln!(out, "Theta^{}={t}", j + 1).unwrap();
            }
        }
        "su2-spinor" => {
            let mw = su2_manifold(&mut s)?;
            for f in su2_forms() {
                writeln!(out, "{}", mw.d(&f)?).unwrap();
            }
        }
        "bilagrangian" => {
            let b = bilagrangian(&mut s)?;
            writeln!(out, "[e1,e3]={}", b.bracket13).unwrap();
            writeln!(out, "[e2,e4]={}", b.bracket24).unwrap();
        }
        "iwasawa" => {
            let m = iwasawa_manifold();
            let b = iwasawa_exact_forms(&m)?;
            for x in b.elements() {
                writeln!(out, "{x}").unwrap();
            }
            let c = b.components(&m.d(&e(4).wedge(&e(5)))?)?;
            writeln!(out, "{}", report::tuple(&c)).unwrap();
        }
        "g2" => out = report::cartan(&g2(&mut s)?, false),
        other => {
            return Err(CliError::Input(format!("unknown example `{other}`; expected one of {}", NAMES.join(", "))))
        }
    }
    Ok(out)
}
