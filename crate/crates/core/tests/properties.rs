use proptest::prelude::*;

use qalg_core::dsl::{self, Env};
use qalg_core::engine::EngineError;
use qalg_core::{catalog, engine, frames, motion, Coeff, Expr, Field, Gen, Letter, Scalar, Symbolic, FREE};

fn letter(with_c: bool, with_gamma: bool) -> impl Strategy<Value = Letter> {
    let mut gens: Vec<Gen> = (0..4).map(Gen::P).collect();
    if !with_c {
        gens.extend((0..4).map(Gen::W));
    }
    gens.extend(qalg_core::symbol::J_PAIRS.iter().map(|&(i, j)| Gen::J(i, j)));
    gens.push(Gen::D);
    gens.push(Gen::Eps);
    if with_c {
        gens.extend((0..4).map(Gen::C));
    }
    if with_gamma {
        gens.push(Gen::Gamma);
    }
    prop_oneof![
        4 => proptest::sample::select(gens).prop_map(Letter::Gen),
        1 => (-2i32..=2).prop_filter("nonzero", |k| *k != 0).prop_map(Letter::Rho),
    ]
}

fn coeff() -> impl Strategy<Value = Coeff> {
    (-3i64..=3, -2i64..=2, -1i32..=1).prop_filter("nonzero", |(a, b, _)| *a != 0 || *b != 0).prop_map(
        |(re, im, h)| {
            let s = Scalar::from_int(re) + Scalar::imag_unit() * Scalar::from_int(im);
            Coeff::hbar_pow(s, h)
        },
    )
}

fn expr_with(with_c: bool, with_gamma: bool, max_terms: usize) -> impl Strategy<Value = Expr> {
    proptest::collection::vec((coeff(), proptest::collection::vec(letter(with_c, with_gamma), 0..=3)), 1..=max_terms)
        .prop_map(|terms| {
            let mut e = Expr::zero(FREE);
            for (c, word) in terms {
                e = e + Expr::word(FREE, &word).scale(&c);
            }
            e
        })
}

/// Small expressions, keeping `C` away from `W` and `γ`.
fn small() -> impl Strategy<Value = Expr> {
    prop_oneof![expr_with(true, false, 3), expr_with(false, true, 3)]
}

fn nf(e: &Expr) -> Expr {
    engine().normalize(e).expect("normalizes")
}

#[test]
fn c_between_spin_vectors_is_refused() {
    let e = engine();
    let w = Expr::gen(FREE, Gen::W(0));
    let cw = Expr::word(FREE, &[Letter::Gen(Gen::C(0)), Letter::Gen(Gen::W(0))]);
    assert!(matches!(e.mul(&w, &cw), Err(EngineError::SectorUnsupported(_))));
    assert!(e.normalize(&cw).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn normalize_is_idempotent(e in small()) {
        let once = nf(&e);
        prop_assert_eq!(nf(&once), once);
    }

    #[test]
    fn normalize_is_linear(a in small(), b in small(), c in coeff(), d in coeff()) {
        let lhs = nf(&(a.scale(&c) + b.scale(&d)));
        let rhs = nf(&a).scale(&c) + nf(&b).scale(&d);
        prop_assert!(engine().check_equal(&lhs, &rhs).is_verified());
    }

    #[test]
    fn adjoint_is_an_involution_commuting_with_normalize(e in small()) {
        prop_assert_eq!(e.adjoint().adjoint(), e.clone());
        let a = nf(&nf(&e).adjoint());
        let b = nf(&e.adjoint());
        prop_assert!(engine().check_equal(&a, &b).is_verified(), "{}", dsl::render(&e));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn product_is_associative_and_distributive(
        (a, b, c) in prop_oneof![
            (expr_with(true, false, 2), expr_with(true, false, 2), expr_with(true, false, 2)),
            (expr_with(false, true, 2), expr_with(false, true, 2), expr_with(false, true, 2)),
        ]
    ) {
        let m = |x: &Expr, y: &Expr| engine().mul(x, y).unwrap();
        let left = m(&m(&a, &b), &c);
        let right = m(&a, &m(&b, &c));
        prop_assert!(engine().check_equal(&left, &right).is_verified(), "({})({})({})", dsl::render(&a), dsl::render(&b), dsl::render(&c));
        let dist = m(&a, &(b.clone() + c.clone()));
        prop_assert!(engine().check_equal(&dist, &(m(&a, &b) + m(&a, &c))).is_verified());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn prime_obeys_leibniz(a in expr_with(false, true, 2), b in expr_with(false, true, 2)) {
        let (e, cat) = (engine(), catalog());
        let ab = e.mul(&a, &b).unwrap();
        let lhs = motion::prime(e, cat, &ab).unwrap();
        let pa = motion::prime(e, cat, &a).unwrap();
        let pb = motion::prime(e, cat, &b).unwrap();
        let rhs = e.mul(&pa, &b).unwrap() + e.mul(&a, &pb).unwrap();
        prop_assert!(e.check_equal(&lhs, &rhs).is_verified());
    }

    #[test]
    fn conjugation_is_a_first_order_homomorphism(a in expr_with(true, false, 2), b in expr_with(true, false, 2)) {
        let e = engine();
        let conj = |x: &Expr| frames::conjugate(e, &x.clone().with_trunc(1), 1).unwrap();
        let lhs = conj(&e.mul(&a, &b).unwrap());
        let rhs = e.mul(&conj(&a), &conj(&b)).unwrap().truncated(1);
        prop_assert!(e.check_equal(&lhs, &rhs).is_verified(), "({})({})", dsl::render(&a), dsl::render(&b));
    }

    #[test]
    fn render_then_parse_round_trips(a in small()) {
        let n = nf(&a);
        let text = dsl::render(&n);
        let node = dsl::parse(&text).unwrap();
        let back = dsl::evaluate(&Symbolic::global(FREE), &node, &Env::new()).unwrap();
        prop_assert!(engine().check_equal(&back, &n).is_verified(), "{}", text);
    }
}
