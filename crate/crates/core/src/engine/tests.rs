use super::*;
use crate::{engine, Coeff, Expr, Scalar};

fn g(x: Gen) -> Expr {
    Expr::gen(1, x)
}

fn word(ls: &[Gen]) -> Expr {
    let letters: Vec<Letter> = ls.iter().map(|&x| x.into()).collect();
    Expr::word(1, &letters)
}

#[test]
fn momenta_sort() {
    let e = engine();
    let n = e.normalize(&word(&[Gen::P(1), Gen::P(0)])).unwrap();
    assert_eq!(n, word(&[Gen::P(0), Gen::P(1)]));
}

#[test]
fn dilatation_past_momentum() {
    let e = engine();
    let n = e.normalize(&word(&[Gen::D, Gen::P(0)])).unwrap();
    let expect = word(&[Gen::P(0), Gen::D]) + g(Gen::P(0)).scale(&Coeff::i_hbar());
    assert_eq!(n, expect);
}

#[test]
fn p0_square_rule() {
    let e = engine();
    let n = e.normalize(&word(&[Gen::P(0), Gen::P(0)])).unwrap();
    let mut expect = Expr::rho(1, 2);
    for i in 1..4 {
        expect = expect + word(&[Gen::P(i), Gen::P(i)]);
    }
    assert_eq!(n, expect);
}

#[test]
fn pauli_lubanski_square_is_spin_half() {
    let e = engine();
    let mut sum = Expr::zero(1);
    for a in 0..4u8 {
        let s = crate::symbol::eta_diag(a as usize);
        sum = sum + word(&[Gen::W(a), Gen::W(a)]).scale(&Coeff::int(s));
    }
    let n = e.normalize(&sum).unwrap();
    let expect = Expr::rho(1, 2).scale(&Coeff::hbar_pow(Scalar::from_ratio(-3, 4), 2));
    assert_eq!(n, expect);
}

#[test]
fn conformal_commutators() {
    let e = engine();
    assert_eq!(e.commutator(&g(Gen::D), &g(Gen::C(2))).unwrap(), -g(Gen::C(2)));
    assert_eq!(e.commutator(&g(Gen::P(0)), &g(Gen::C(0))).unwrap(), g(Gen::D).scale(&Coeff::int(-2)));
    assert_eq!(e.commutator(&g(Gen::P(1)), &g(Gen::C(2))).unwrap(), g(Gen::J(1, 2)).scale(&Coeff::int(-2)));
    assert!(e.commutator(&g(Gen::P(0)), &g(Gen::P(3))).unwrap().is_zero());
}

#[test]
fn symmetrized_products() {
    let e = engine();
    assert!(e.sym_product(&g(Gen::Gamma), &g(Gen::Eps)).unwrap().is_zero());
    assert_eq!(e.sym_product(&g(Gen::P(0)), &g(Gen::P(1))).unwrap(), word(&[Gen::P(0), Gen::P(1)]));
    let expect = word(&[Gen::P(0), Gen::D]) + g(Gen::P(0)).scale(&Coeff::i_hbar().scale(&Scalar::from_ratio(1, 2)));
    assert_eq!(e.sym_product(&g(Gen::D), &g(Gen::P(0))).unwrap(), expect);
}

#[test]
fn symmetrized_division() {
    let e = engine();
    assert_eq!(e.sym_divide(&Expr::rho(1, 1), &Expr::rho(1, -1)).unwrap(), Expr::one(1));
    assert!(matches!(e.sym_divide(&g(Gen::D), &g(Gen::P(0))), Err(EngineError::NotInvertible(_))));
    let inv_m = Expr::term(1, Monomial { rho: -1, word: vec![Gen::Eps.into()] }, Coeff::one());
    assert!(e.sym_divide(&g(Gen::D), &inv_m).is_ok());
}

#[test]
fn bootstrap_entries() {
    let e = engine();
    assert!(e.commutator(&g(Gen::P(2)), &g(Gen::W(1))).unwrap().is_zero());
    assert_eq!(e.commutator(&g(Gen::D), &g(Gen::W(3))).unwrap(), g(Gen::W(3)));
    let report = e.bootstrap_report().unwrap();
    assert!(report.verified.len() > 40);
}

#[test]
fn jacobi_all_triples() {
    let report = engine().jacobi_selfcheck().unwrap();
    assert_eq!(report.triples, 455);
    for (a, b, c, r) in &report.failures {
        eprintln!("jacobi fails on ({}, {}, {}): {:?}", a, b, c, r);
    }
    assert!(report.passed());
}

#[test]
fn check_equal_reports_residual() {
    let e = engine();
    let status = e.check_equal(&word(&[Gen::Gamma, Gen::Gamma]), &Expr::scalar(1, Coeff::int(2)));
    assert_eq!(status, CheckStatus::Failed { residual: Expr::scalar(1, Coeff::int(-1)) });
}

#[test]
fn c_gamma_is_undefined() {
    let e = engine();
    let r = e.normalize(&word(&[Gen::Gamma, Gen::C(0)]));
    assert_eq!(r, Err(EngineError::UndefinedCommutator(Gen::Gamma, Gen::C(0))));
}

#[test]
fn table_antisymmetric() {
    assert!(engine().table().antisymmetry_violations().is_empty());
}
