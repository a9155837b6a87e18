use coframe_core::{
    parse_form, AffineBasis, Basis, Error, Form, FrameManifold, GaussRat, Insertion, Manifold, Poly, Session, Spinor,
};

fn iwasawa() -> FrameManifold {
    let mut m = FrameManifold::new(6).unwrap();
    for i in 1..=4 {
        m.declare_d(i, Form::zero()).unwrap();
    }
    m.declare_d(5, parse_form(6, "13+42").unwrap()).unwrap();
    m.declare_d(6, parse_form(6, "14+23").unwrap()).unwrap();
    m
}

fn exact_three_forms(m: &FrameManifold) -> Basis<Form> {
    let mut b = Basis::new();
    for i in 1..=6 {
        for j in i + 1..=6 {
            b.insert(m.d(&Form::generator(i).wedge(&Form::generator(j))).unwrap()).unwrap();
        }
    }
    b
}

fn ints(v: &[i64]) -> Vec<GaussRat> {
    v.iter().map(|&k| GaussRat::from_integer(k)).collect()
}

#[test]
fn iwasawa_exact_three_forms() {
    let m = iwasawa();
    let b = exact_three_forms(&m);
    let expected: Vec<Form> =
        ["412", "-312", "-342", "341", "642-631-352+415"].iter().map(|t| parse_form(6, t).unwrap()).collect();
    assert_eq!(b.elements(), &expected[..]);
    let d45 = m.d(&parse_form(6, "45").unwrap()).unwrap();
    assert_eq!(b.components(&d45).unwrap(), ints(&[0, 0, 0, -1, 0]));
    for (k, x) in b.elements().iter().enumerate() {
        let mut unit = vec![0; 5];
        unit[k] = 1;
        assert_eq!(b.components(x).unwrap(), ints(&unit));
    }
}

#[test]
fn dual_of_non_orthonormal_basis() {
    let mut b = Basis::new();
    b.insert(parse_form(2, "1+2").unwrap()).unwrap();
    b.insert(parse_form(2, "2").unwrap()).unwrap();
    assert_eq!(b.dual_basis().unwrap(), &[parse_form(2, "1").unwrap(), parse_form(2, "2-1").unwrap()][..]);

    let mut b = Basis::new();
    b.insert(parse_form(1, "2*1").unwrap()).unwrap();
    assert_eq!(b.dual_basis().unwrap(), &[parse_form(1, "1/2*1").unwrap()][..]);
}

#[test]
fn dependent_elements_are_dropped() {
    let mut b = Basis::new();
    assert_eq!(b.insert(parse_form(3, "1+2").unwrap()).unwrap(), Insertion::Retained);
    assert_eq!(b.insert(parse_form(3, "3").unwrap()).unwrap(), Insertion::Retained);
    assert_eq!(b.insert(parse_form(3, "2*1+2*2-3").unwrap()).unwrap(), Insertion::Dropped);
    assert_eq!(b.insert(Form::zero()).unwrap(), Insertion::Dropped);
    assert_eq!(b.size(), 2);
    assert!(b.contains(&parse_form(3, "1+2+3").unwrap()).unwrap());
    assert!(!b.contains(&parse_form(3, "1").unwrap()).unwrap());
    assert!(matches!(b.components(&parse_form(3, "1").unwrap()), Err(Error::NotInSpan)));
    assert_eq!(b.to_string(), "e1+e2, e3");
}

#[test]
fn symbolic_coefficients_are_rejected() {
    let mut s = Session::new();
    let x = s.symbol("x");
    let mut b = Basis::new();
    let f = Form::generator(1).scale(&Poly::symbol(&x));
    assert!(matches!(b.insert(f), Err(Error::NonConstant(_))));
}

#[test]
fn polynomial_and_spinor_bases() {
    let mut s = Session::new();
    let x = s.symbol("x");
    let y = s.symbol("y");
    let mut b: Basis<Poly> = Basis::new();
    b.insert(&Poly::symbol(&x) + &Poly::symbol(&y)).unwrap();
    assert_eq!(
        b.insert(
            Poly::symbol(&x).scale(&GaussRat::from_integer(3)) + Poly::symbol(&y).scale(&GaussRat::from_integer(3))
        )
        .unwrap(),
        Insertion::Dropped
    );
    assert!(matches!(b.insert(&Poly::symbol(&x) * &Poly::symbol(&y)), Err(Error::NonLinear(_))));

    let mut b: Basis<Spinor> = Basis::new();
    b.insert(&Spinor::basis(0) + &Spinor::basis(1).scale(&Poly::constant(GaussRat::i()))).unwrap();
    b.insert(Spinor::basis(1)).unwrap();
    let c = b.components(&Spinor::basis(0)).unwrap();
    assert_eq!(c, vec![GaussRat::one(), -GaussRat::i()]);
}

#[test]
fn setup_is_lazy_and_cached() {
    let m = iwasawa();
    let mut b = Basis::new();
    for i in 1..=6 {
        b.insert(m.d(&Form::generator(i).wedge(&Form::generator(5))).unwrap()).unwrap();
    }
    assert_eq!(b.setup_count(), 0);
    b.dual_basis().unwrap();
    b.components(&b.elements()[0].clone()).unwrap();
    b.simple_elements().unwrap();
    assert_eq!(b.setup_count(), 1);
    assert_eq!(b.insert(parse_form(6, "123").unwrap()).unwrap(), Insertion::Dropped);
    assert_eq!(b.setup_count(), 1);
    b.dual_basis().unwrap();
    assert_eq!(b.setup_count(), 1);
    assert_eq!(b.insert(parse_form(6, "456").unwrap()).unwrap(), Insertion::Retained);
    assert_eq!(b.setup_count(), 1);
    b.dual_basis().unwrap();
    b.dual_basis().unwrap();
    assert_eq!(b.setup_count(), 2);
}

#[test]
fn affine_equations() {
    let mut s = Session::new();
    let x = Poly::symbol(&s.symbol("x"));
    let y = Poly::symbol(&s.symbol("y"));
    let one = Poly::one();
    let mut a = AffineBasis::new();
    assert_eq!(a.insert(&x - &one).unwrap(), Insertion::Retained);
    assert_eq!(a.insert(&(&x + &y) - &one).unwrap(), Insertion::Retained);
    assert_eq!(a.insert(y.clone()).unwrap(), Insertion::Dropped);
    assert!(a.is_consistent());
    assert_eq!(a.size(), 2);
    assert_eq!(a.insert(&y - &one).unwrap(), Insertion::Inconsistent);
    assert!(!a.is_consistent());
    assert_eq!(a.size(), 2);
    assert!(matches!(a.insert(&x * &y), Err(Error::NonLinear(_))));
    let mut a = AffineBasis::new();
    assert_eq!(a.insert(Poly::zero()).unwrap(), Insertion::Dropped);
    assert_eq!(a.insert(one).unwrap(), Insertion::Inconsistent);
}

#[test]
fn small_examples() {
    let mut b = Basis::new();
    b.insert(parse_form(3, "1").unwrap()).unwrap();
    assert!(matches!(b.components(&parse_form(3, "3").unwrap()), Err(Error::NotInSpan)));
    b.insert(parse_form(3, "1+2").unwrap()).unwrap();
    assert_eq!(b.insert(parse_form(3, "2").unwrap()).unwrap(), Insertion::Dropped);

    let mut b = Basis::new();
    assert_eq!(b.size(), 0);
    let frame: Vec<Form> = (1..=5).map(Form::generator).collect();
    b.extend(frame.clone()).unwrap();
    assert_eq!(b.dual_basis().unwrap(), &frame[..]);

    let mut s = Session::new();
    let p1 = Poly::symbol(&s.symbol("p1"));
    let p2 = Poly::symbol(&s.symbol("p2"));
    let mut a = AffineBasis::new();
    a.insert(&(&p1 + &p2) - &Poly::one()).unwrap();
    a.insert(&p1 - &p2).unwrap();
    assert_eq!((a.size(), a.is_consistent()), (2, true));
    let mut a = AffineBasis::new();
    a.insert(p1.clone()).unwrap();
    a.insert(&p1 - &Poly::one()).unwrap();
    assert!(!a.is_consistent());
    let mut a = AffineBasis::new();
    a.insert(&p1 + &p2).unwrap();
    a.insert((&p1 + &p2).scale(&GaussRat::from_integer(2))).unwrap();
    assert_eq!(a.size(), 1);
}

/// Bidiagonal families keep entries bounded, so time measures arithmetic
/// count rather than coefficient growth.
fn bidiagonal(n: usize) -> Basis<Form> {
    let mut b = Basis::new();
    for j in 1..=n {
        let next = if j < n { Form::generator(j + 1) } else { Form::zero() };
        b.insert(&Form::generator(j) + &next).unwrap();
    }
    b
}

fn setup_time(n: usize) -> std::time::Duration {
    (0..3)
        .map(|_| {
            let b = bidiagonal(n);
            let start = std::time::Instant::now();
            b.dual_basis().unwrap();
            start.elapsed()
        })
        .min()
        .unwrap()
}

#[test]
fn setup_growth_is_at_most_cubic() {
    let small = setup_time(20).as_secs_f64().max(1e-6);
    let large = setup_time(40).as_secs_f64();
    // cubic growth predicts a ratio of 8; the slack absorbs timer noise
    assert!(large / small < 8.0 * 4.0, "ratio {}", large / small);
}

mod recombination {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn components_reproduce_the_input(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..6),
            weights in proptest::collection::vec(-4i64..=4, 6),
        ) {
            let forms: Vec<Form> = rows
                .iter()
                .map(|r| r.iter().enumerate().fold(Form::zero(), |acc, (i, &c)| {
                    &acc + &Form::generator(i + 1).scale(&Poly::from(c))
                }))
                .collect();
            let mut b = Basis::new();
            b.extend(forms.clone()).unwrap();
            let x = forms.iter().zip(&weights).fold(Form::zero(), |acc, (f, &w)| &acc + &f.scale(&Poly::from(w)));
            let c = b.components(&x).unwrap();
            let back = b.elements().iter().zip(&c).fold(Form::zero(), |acc, (f, k)| &acc + &f.scale_by(k));
            prop_assert_eq!(back, x);
        }
    }
}
